#include "lmax/lcnf_prep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace lmax {

LabelledClause l_resolve(const LabelledClause& c1, const LabelledClause& c2, Var x) {
  Lit pos(x, true);
  if (!c1.clause.contains(pos) || !c2.clause.contains(~pos))
    throw std::invalid_argument("l_resolve: x must occur positively in c1 and negatively in c2");
  LabelledClause out;
  out.clause = Clause::merge(c1.clause.without(pos), c2.clause.without(~pos));
  out.labels = label_union(c1.labels, c2.labels);
  return out;
}

namespace {

bool tautological_on(const Clause& c, Var x) { return c.contains(Lit(x, true)) && c.contains(Lit(x, false)); }

}  // namespace

// A clause holding both x and ~x is dropped without taking part in resolution.
LCNF l_ve(const LCNF& phi, Var x) {
  Lit pos(x, true);
  std::vector<const LabelledClause*> with_pos, with_neg;
  LCNF::Set rest;
  for (const auto& c : phi) {
    bool p = c.clause.contains(pos), n = c.clause.contains(~pos);
    if (p && n) continue;
    if (p)
      with_pos.push_back(&c);
    else if (n)
      with_neg.push_back(&c);
    else
      rest.insert(c);
  }
  for (const auto* a : with_pos)
    for (const auto* b : with_neg) {
      LabelledClause r = l_resolve(*a, *b, x);
      if (!r.clause.is_tautology()) rest.insert(std::move(r));
    }
  return phi.with_clauses(std::move(rest));
}

LCNF l_bve(const LCNF& phi, Var x) {
  LCNF ve = l_ve(phi, x);
  return ve.size() < phi.size() ? ve : phi;
}

bool l_subsumes(const LabelledClause& c1, const LabelledClause& c2) {
  return c1.clause.size() < c2.clause.size() && c1.clause.subset_of(c2.clause) && label_subset(c1.labels, c2.labels);
}

LCNF l_sub(const LCNF& phi, const LabelledClause& c1, const LabelledClause& c2) {
  if (!phi.contains(c1) || !phi.contains(c2) || !l_subsumes(c1, c2)) return phi;
  LCNF out = phi;
  out.erase(c2);
  return out;
}

std::optional<LabelledClause> l_ssr_result(const LabelledClause& c1, const LabelledClause& c2) {
  if (!label_subset(c1.labels, c2.labels)) return std::nullopt;
  if (c1.clause.size() >= c2.clause.size()) return std::nullopt;
  for (Lit l : c1.clause) {
    if (!c2.clause.contains(~l)) continue;
    Clause a = c1.clause.without(l);
    Clause b = c2.clause.without(~l);
    if (a.size() < b.size() && a.subset_of(b)) {
      LabelledClause out;
      out.clause = std::move(b);
      out.labels = c2.labels;
      return out;
    }
  }
  return std::nullopt;
}

LCNF l_ssr(const LCNF& phi, const LabelledClause& c1, const LabelledClause& c2) {
  if (!phi.contains(c1) || !phi.contains(c2)) return phi;
  auto strengthened = l_ssr_result(c1, c2);
  if (!strengthened) return phi;
  LCNF out = phi;
  out.erase(c2);
  out.add(std::move(*strengthened));
  return out;
}

namespace {

// Mutable clause store with literal occurrence lists, used by the schedule.
class Workspace {
 public:
  explicit Workspace(const LCNF& phi) : base_(phi) {
    for (const auto& c : phi) add(c);
  }

  bool add(const LabelledClause& c) {
    if (!index_.insert(c).second) return false;
    std::size_t i = cls_.size();
    cls_.push_back(c);
    alive_.push_back(true);
    for (Lit l : c.clause) occ_for(l).push_back(i);
    return true;
  }

  void remove(std::size_t i) {
    if (!alive_[i]) return;
    alive_[i] = false;
    index_.erase(cls_[i]);
  }

  bool alive(std::size_t i) const { return alive_[i]; }
  const LabelledClause& at(std::size_t i) const { return cls_[i]; }
  std::size_t capacity() const { return cls_.size(); }
  std::size_t size() const { return index_.size(); }

  /// Live clause indices containing l (compacts the list on the way).
  const std::vector<std::size_t>& occ(Lit l) {
    auto& v = occ_for(l);
    v.erase(std::remove_if(v.begin(), v.end(), [&](std::size_t i) { return !alive_[i]; }), v.end());
    return v;
  }

  std::vector<std::size_t> live() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cls_.size(); ++i)
      if (alive_[i]) out.push_back(i);
    return out;
  }

  LCNF to_lcnf() const { return base_.with_clauses(LCNF::Set(index_.begin(), index_.end())); }

 private:
  std::vector<std::size_t>& occ_for(Lit l) {
    std::size_t code = l.code();
    if (occ_.size() <= code) occ_.resize(code + 2);
    return occ_[code];
  }

  const LCNF& base_;
  std::vector<LabelledClause> cls_;
  std::vector<bool> alive_;
  std::set<LabelledClause> index_;
  std::vector<std::vector<std::size_t>> occ_;
};

std::size_t subsumption_pass(Workspace& ws) {
  std::vector<std::size_t> order = ws.live();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ws.at(a).clause.size() < ws.at(b).clause.size(); });
  std::size_t removed = 0;
  for (std::size_t i : order) {
    if (!ws.alive(i)) continue;
    const LabelledClause c1 = ws.at(i);
    std::vector<std::size_t> candidates;
    if (c1.clause.empty()) {
      candidates = ws.live();
    } else {
      Lit best = *c1.clause.begin();
      for (Lit l : c1.clause)
        if (ws.occ(l).size() < ws.occ(best).size()) best = l;
      candidates = ws.occ(best);
    }
    for (std::size_t j : candidates) {
      if (j == i || !ws.alive(j)) continue;
      if (l_subsumes(c1, ws.at(j))) {
        ws.remove(j);
        ++removed;
      }
    }
  }
  return removed;
}

std::size_t ssr_pass(Workspace& ws) {
  std::size_t strengthened = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i : ws.live()) {
      if (!ws.alive(i)) continue;
      const LabelledClause c2 = ws.at(i);
      std::optional<LabelledClause> result;
      for (Lit m : c2.clause) {
        for (std::size_t j : ws.occ(~m)) {
          if (j == i) continue;
          result = l_ssr_result(ws.at(j), c2);
          if (result) break;
        }
        if (result) break;
      }
      if (!result) continue;
      ws.remove(i);
      ws.add(*result);
      ++strengthened;
      changed = true;
    }
  }
  return strengthened;
}

// One sweep of bounded variable elimination in ascending occurrence order.
std::size_t bve_sweep(Workspace& ws, const PrepConfig& config, BveRecord& record) {
  std::set<Var> frozen(config.frozen.begin(), config.frozen.end());
  std::map<Var, std::size_t> counts;
  for (std::size_t i : ws.live())
    for (Lit l : ws.at(i).clause) ++counts[l.var()];
  std::vector<std::pair<std::size_t, Var>> order;
  for (const auto& [v, n] : counts)
    if (!frozen.count(v)) order.push_back({n, v});
  std::sort(order.begin(), order.end());

  std::size_t eliminated = 0;
  for (const auto& entry : order) {
    Var x = entry.second;
    Lit pos(x, true);
    std::vector<std::size_t> ps = ws.occ(pos), ns = ws.occ(~pos);
    if (ps.empty() && ns.empty()) continue;
    bool taut = false;
    for (std::size_t i : ps)
      if (tautological_on(ws.at(i).clause, x)) taut = true;
    if (taut) continue;

    const std::size_t budget = ps.size() + ns.size();
    std::set<LabelledClause> resolvents;
    bool abort = false;
    for (std::size_t i : ps) {
      for (std::size_t j : ns) {
        LabelledClause r = l_resolve(ws.at(i), ws.at(j), x);
        if (r.clause.is_tautology()) continue;
        if (r.labels.size() > config.max_label_set) {
          abort = true;
          break;
        }
        resolvents.insert(std::move(r));
        if (resolvents.size() >= budget) {
          abort = true;
          break;
        }
      }
      if (abort) break;
    }
    if (abort) continue;

    // resolvents identical to a surviving clause do not grow the formula
    std::size_t fresh = 0;
    for (const auto& r : resolvents) {
      bool exists = false;
      for (std::size_t k : r.clause.empty() ? std::vector<std::size_t>{} : ws.occ(*r.clause.begin()))
        if (ws.at(k) == r) exists = true;
      if (r.clause.empty())
        for (std::size_t k : ws.live())
          if (ws.at(k) == r) exists = true;
      fresh += !exists;
    }
    if (fresh >= budget) continue;

    BveStep step;
    step.var = x;
    for (std::size_t i : ps) step.clauses.push_back(ws.at(i));
    for (std::size_t j : ns) step.clauses.push_back(ws.at(j));
    for (std::size_t i : ps) ws.remove(i);
    for (std::size_t j : ns) ws.remove(j);
    for (const auto& r : resolvents) ws.add(r);
    record.push_back(std::move(step));
    ++eliminated;
  }
  return eliminated;
}

}  // namespace

PrepResult preprocess_lcnf(const LCNF& phi, const PrepConfig& config) {
  PrepResult out;
  bool any_pass = config.subsumption || config.self_subsumption || config.variable_elimination;
  if (!any_pass || config.max_rounds <= 0) {
    out.formula = phi;
    return out;
  }
  Workspace ws(phi);
  for (int round = 0; round < config.max_rounds; ++round) {
    ++out.stats.rounds;
    std::size_t changes = 0;
    if (config.subsumption) {
      std::size_t n = subsumption_pass(ws);
      out.stats.subsumed += n;
      changes += n;
    }
    if (config.self_subsumption) {
      std::size_t n = ssr_pass(ws);
      out.stats.strengthened += n;
      changes += n;
    }
    if (config.variable_elimination) {
      std::size_t n = bve_sweep(ws, config, out.record);
      out.stats.eliminated_vars += n;
      changes += n;
    }
    if (changes == 0) break;
  }
  out.formula = ws.to_lcnf();
  return out;
}

Assignment bve_reconstruct(const BveRecord& rec, Assignment tau, const LabelSet& retained) {
  for (auto it = rec.rbegin(); it != rec.rend(); ++it) {
    Var x = it->var;
    if (tau.num_vars() < x) tau.resize(x);
    tau.set(x, false);
    bool ok = true;
    for (const auto& c : it->clauses)
      if (label_subset(c.labels, retained) && !tau.satisfies(c.clause)) {
        ok = false;
        break;
      }
    if (!ok) tau.set(x, true);
  }
  return tau;
}

void write_bve_record(std::ostream& os, const BveRecord& rec) {
  for (const auto& step : rec) {
    os << "x " << step.var << '\n';
    for (const auto& c : step.clauses) {
      for (Lit l : c.clause) os << l.to_dimacs() << ' ';
      os << '|';
      for (Label l : c.labels) os << ' ' << l;
      os << '\n';
    }
  }
}

}  // namespace lmax
