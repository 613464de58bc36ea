#include "lmax/oracle.hpp"

#include <algorithm>
#include <random>

namespace lmax {

namespace {

constexpr Var kTruthTableVars = 20;

// Variable v is bit (n - v) of an assignment index, so counting upwards walks
// assignments in lexicographic order with x1 most significant.
struct ClauseMask {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
  bool satisfied_by(std::uint32_t bits) const { return (bits & pos) || (~bits & neg); }
};

ClauseMask mask_of(const Clause& c, Var n) {
  ClauseMask m;
  for (Lit l : c) {
    std::uint32_t bit = 1u << (n - l.var());
    (l.positive() ? m.pos : m.neg) |= bit;
  }
  return m;
}

Assignment assignment_of(std::uint32_t bits, Var n) {
  Assignment tau(n);
  for (Var v = 1; v <= n; ++v) tau.set(v, (bits >> (n - v)) & 1u);
  return tau;
}

Var vars_of(const std::vector<Clause>& f, Var declared) {
  Var n = declared;
  for (const auto& c : f) n = std::max(n, c.max_var());
  return n;
}

// Satisfying assignments of one clause as a bitset over 2^n assignments.
using Table = std::vector<std::uint64_t>;

Table table_of(const Clause& c, Var n) {
  std::size_t count = std::size_t{1} << n;
  Table t((count + 63) / 64, 0);
  ClauseMask m = mask_of(c, n);
  for (std::uint32_t bits = 0; bits < count; ++bits)
    if (m.satisfied_by(bits)) t[bits / 64] |= std::uint64_t{1} << (bits % 64);
  return t;
}

Table full_table(Var n) {
  std::size_t count = std::size_t{1} << n;
  Table t((count + 63) / 64, ~std::uint64_t{0});
  if (count % 64) t.back() = (std::uint64_t{1} << (count % 64)) - 1;
  return t;
}

bool any(const Table& t) {
  return std::any_of(t.begin(), t.end(), [](std::uint64_t w) { return w != 0; });
}

// Clauses tagged with bitmasks over a small label universe.
struct Tagged {
  Var nvars = 0;
  std::vector<std::uint32_t> universe;
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> masks;
};

Tagged tag(const LCNF& phi) {
  Tagged t;
  LabelSet lbls = phi.labels();
  if (lbls.size() > 16) throw OracleLimit("oracle handles at most 16 labels");
  t.universe.assign(lbls.begin(), lbls.end());
  t.nvars = std::max(phi.num_vars(), phi.max_var());
  for (const auto& c : phi) {
    std::uint32_t m = 0;
    for (Label l : c.labels) m |= 1u << (std::lower_bound(lbls.begin(), lbls.end(), l) - lbls.begin());
    t.clauses.push_back(c.clause);
    t.masks.push_back(m);
  }
  return t;
}

Tagged tag(const std::vector<Clause>& f) {
  if (f.size() > 16) throw OracleLimit("oracle handles at most 16 clauses");
  Tagged t;
  t.nvars = vars_of(f, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    t.universe.push_back(static_cast<std::uint32_t>(i + 1));
    t.clauses.push_back(f[i]);
    t.masks.push_back(1u << i);
  }
  return t;
}

// sat[M] for every subset M of the universe. A set with an unsatisfiable
// immediate subset is unsatisfiable without a table scan.
std::vector<bool> satisfiable_subsets(const Tagged& t) {
  if (t.nvars > kTruthTableVars) throw OracleLimit("oracle handles at most 20 variables");
  std::vector<Table> tables;
  for (const auto& c : t.clauses) tables.push_back(table_of(c, t.nvars));
  std::size_t k = t.universe.size();
  std::vector<bool> sat(std::size_t{1} << k, false);
  for (std::uint32_t m = 0; m < sat.size(); ++m) {
    bool pruned = false;
    for (std::size_t i = 0; i < k; ++i)
      if (((m >> i) & 1u) && !sat[m & ~(1u << i)]) {
        pruned = true;
        break;
      }
    if (pruned) continue;
    Table acc = full_table(t.nvars);
    for (std::size_t c = 0; c < tables.size(); ++c) {
      if ((t.masks[c] & ~m) != 0) continue;
      for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= tables[c][w];
    }
    sat[m] = any(acc);
  }
  return sat;
}

std::vector<std::uint32_t> members(std::uint32_t m, const std::vector<std::uint32_t>& universe) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if ((m >> i) & 1u) out.push_back(universe[i]);
  return out;
}

SetFamily muses(const Tagged& t) {
  auto sat = satisfiable_subsets(t);
  SetFamily out;
  for (std::uint32_t m = 0; m < sat.size(); ++m) {
    if (sat[m]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < t.universe.size(); ++i)
      if (((m >> i) & 1u) && !sat[m & ~(1u << i)]) {
        minimal = false;
        break;
      }
    if (minimal) out.insert(members(m, t.universe));
  }
  return out;
}

SetFamily mcses(const Tagged& t) {
  auto sat = satisfiable_subsets(t);
  std::uint32_t all = static_cast<std::uint32_t>(sat.size() - 1);
  SetFamily out;
  for (std::uint32_t r = 0; r < sat.size(); ++r) {
    std::uint32_t keep = all & ~r;
    if (!sat[keep]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < t.universe.size(); ++i)
      if (((r >> i) & 1u) && sat[keep | (1u << i)]) {
        minimal = false;
        break;
      }
    if (minimal) out.insert(members(r, t.universe));
  }
  return out;
}

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Clause random_clause(std::mt19937_64& rng, Var nvars, std::size_t max_len) {
  std::size_t len = uniform(rng, 1, std::min<std::size_t>(max_len, nvars));
  std::vector<Var> vars;
  while (vars.size() < len) {
    Var v = static_cast<Var>(uniform(rng, 1, nvars));
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  std::vector<Lit> lits;
  for (Var v : vars) lits.emplace_back(v, rng() & 1u);
  return Clause(std::move(lits));
}

// Flip one literal so the planted assignment satisfies the clause.
Clause make_true_under(std::mt19937_64& rng, const Clause& c, const Assignment& planted) {
  if (planted.satisfies(c)) return c;
  std::vector<Lit> lits(c.begin(), c.end());
  std::size_t i = uniform(rng, 0, lits.size() - 1);
  lits[i] = ~lits[i];
  return Clause(std::move(lits));
}

Assignment plant(std::mt19937_64& rng, Var nvars) {
  Assignment tau(nvars);
  for (Var v = 1; v <= nvars; ++v) tau.set(v, rng() & 1u);
  return tau;
}

}  // namespace

BruteForceResult brute_force_maxsat(const WCNF& f, Var max_vars) {
  Var n = std::max(f.num_vars, f.max_var());
  if (n > max_vars || n > kTruthTableVars) throw OracleLimit("too many variables for brute force");
  std::vector<ClauseMask> hard, soft;
  for (const auto& c : f.hard) hard.push_back(mask_of(c, n));
  for (const auto& s : f.soft) soft.push_back(mask_of(s.clause, n));

  BruteForceResult out;
  std::uint32_t best_bits = 0;
  Cost best = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::uint32_t b = static_cast<std::uint32_t>(bits);
    bool ok = std::all_of(hard.begin(), hard.end(), [&](const ClauseMask& m) { return m.satisfied_by(b); });
    if (!ok) continue;
    Cost cost = 0;
    for (std::size_t i = 0; i < soft.size(); ++i)
      if (!soft[i].satisfied_by(b)) cost = checked_add(cost, f.soft[i].weight);
    if (!out.hard_satisfiable || cost < best) {
      out.hard_satisfiable = true;
      best = cost;
      best_bits = b;
    }
  }
  if (!out.hard_satisfiable) return out;
  out.solution.model = assignment_of(best_bits, n);
  out.solution.cost = best;
  for (std::size_t i = 0; i < soft.size(); ++i)
    if (!soft[i].satisfied_by(best_bits)) out.solution.removed.push_back(static_cast<std::uint32_t>(i + 1));
  return out;
}

std::optional<MaxSatSolution> brute_force_lcnf(const LCNF& phi) {
  SetFamily all = enumerate_mcs(phi);
  if (all.empty()) return std::nullopt;
  std::optional<MaxSatSolution> best;
  for (const auto& r : all) {
    Cost c = cost_of_labels(phi, LabelSet(r.begin(), r.end()));
    if (!best || c < best->cost) {
      best.emplace();
      best->cost = c;
      best->removed = r;
    }
  }
  // a witness model for the retained labels
  LabelSet retained;
  for (Label l : phi.labels())
    if (!std::binary_search(best->removed.begin(), best->removed.end(), l)) retained.push_back(l);
  LCNF kept = induced_subformula(phi, retained);
  std::vector<Clause> cls;
  for (const auto& c : kept) cls.push_back(c.clause);
  Var n = std::max(phi.num_vars(), phi.max_var());
  std::vector<ClauseMask> masks;
  for (const auto& c : cls) masks.push_back(mask_of(c, n));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::uint32_t b = static_cast<std::uint32_t>(bits);
    if (std::all_of(masks.begin(), masks.end(), [&](const ClauseMask& m) { return m.satisfied_by(b); })) {
      best->model = assignment_of(b, n);
      break;
    }
  }
  return best;
}

SetFamily enumerate_mus(const LCNF& phi) { return muses(tag(phi)); }
SetFamily enumerate_mcs(const LCNF& phi) { return mcses(tag(phi)); }
SetFamily enumerate_mus(const std::vector<Clause>& f) { return muses(tag(f)); }
SetFamily enumerate_mcs(const std::vector<Clause>& f) { return mcses(tag(f)); }

SetFamily minimal_hitting_sets(const SetFamily& family) {
  std::vector<std::uint32_t> universe;
  for (const auto& s : family) universe.insert(universe.end(), s.begin(), s.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.size() > 24) throw OracleLimit("hitting-set universe too large");

  std::vector<std::uint32_t> masks;
  for (const auto& s : family) {
    std::uint32_t m = 0;
    for (auto e : s) m |= 1u << (std::lower_bound(universe.begin(), universe.end(), e) - universe.begin());
    masks.push_back(m);
  }
  auto hits = [&](std::uint32_t h) {
    return std::all_of(masks.begin(), masks.end(), [&](std::uint32_t m) { return (m & h) != 0; });
  };
  SetFamily out;
  for (std::uint32_t h = 0; h < (1u << universe.size()); ++h) {
    if (!hits(h)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (((h >> i) & 1u) && hits(h & ~(1u << i))) {
        minimal = false;
        break;
      }
    if (minimal) out.insert(members(h, universe));
  }
  return out;
}

bool check_hitting_duality(const SetFamily& muses, const SetFamily& mcses) {
  return minimal_hitting_sets(mcses) == muses && minimal_hitting_sets(muses) == mcses;
}

bool brute_force_sat(const std::vector<Clause>& f, Var num_vars) {
  Var n = vars_of(f, num_vars);
  if (n > kTruthTableVars) throw OracleLimit("too many variables for brute force");
  std::vector<ClauseMask> masks;
  for (const auto& c : f) masks.push_back(mask_of(c, n));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::uint32_t b = static_cast<std::uint32_t>(bits);
    if (std::all_of(masks.begin(), masks.end(), [&](const ClauseMask& m) { return m.satisfied_by(b); })) return true;
  }
  return false;
}

WCNF random_wcnf(std::uint64_t seed, Var nvars, std::size_t nclauses, Cost max_weight, double hard_fraction,
                 Assignment* planted) {
  std::mt19937_64 rng(seed);
  Assignment hidden = plant(rng, nvars);
  WCNF f;
  f.num_vars = nvars;
  for (std::size_t i = 0; i < nclauses; ++i) {
    Clause c = random_clause(rng, nvars, 4);
    bool hard = unit(rng) < hard_fraction;
    Cost w = uniform(rng, 1, std::max<Cost>(max_weight, 1));
    if (hard)
      f.add_hard(make_true_under(rng, c, hidden));
    else
      f.add_soft(std::move(c), w);
  }
  if (planted) *planted = hidden;
  return f;
}

LCNF random_lcnf(std::uint64_t seed, Var nvars, std::size_t nclauses, Label num_labels, std::size_t max_labelset,
                 Cost max_weight, double hard_fraction, Assignment* planted) {
  std::mt19937_64 rng(seed);
  Assignment hidden = plant(rng, nvars);
  LCNF phi;
  phi.set_num_vars(nvars);
  for (Label l = 1; l <= num_labels; ++l) phi.set_weight(l, uniform(rng, 1, std::max<Cost>(max_weight, 1)));
  for (std::size_t i = 0; i < nclauses; ++i) {
    Clause c = random_clause(rng, nvars, 4);
    if (unit(rng) < hard_fraction || num_labels == 0) {
      phi.add(make_true_under(rng, c, hidden), {});
      continue;
    }
    std::size_t k = uniform(rng, 1, std::min<std::size_t>(std::max<std::size_t>(max_labelset, 1), num_labels));
    std::vector<Label> ls;
    while (ls.size() < k) {
      Label l = static_cast<Label>(uniform(rng, 1, num_labels));
      if (std::find(ls.begin(), ls.end(), l) == ls.end()) ls.push_back(l);
    }
    phi.add(std::move(c), std::move(ls));
  }
  if (planted) *planted = hidden;
  return phi;
}

std::vector<Clause> random_cnf(std::uint64_t seed, Var nvars, std::size_t nclauses, std::size_t max_len) {
  std::mt19937_64 rng(seed);
  std::vector<Clause> out;
  for (std::size_t i = 0; i < nclauses; ++i) out.push_back(random_clause(rng, nvars, max_len));
  return out;
}

}  // namespace lmax
