#include "lmax/bce.hpp"

#include <algorithm>
#include <deque>

namespace lmax {

bool is_blocked(std::span<const Clause> f, const Clause& c, Lit l) {
  const Clause rest = c.without(l);
  for (const Clause& d : f) {
    if (!d.contains(~l)) continue;
    if (!Clause::merge(rest, d.without(~l)).is_tautology()) return false;
  }
  return true;
}

namespace {

struct Entry {
  const Clause* clause;
  ClauseOrigin origin;
  bool alive = true;
  bool queued = false;
};

}  // namespace

BceResult bce_fixpoint(const WCNF& f, const BceOptions& opts) {
  std::vector<Entry> all;
  all.reserve(f.hard.size() + f.soft.size());
  for (std::size_t i = 0; i < f.hard.size(); ++i) all.push_back({&f.hard[i], {true, i, 0}});
  for (std::size_t i = 0; i < f.soft.size(); ++i) all.push_back({&f.soft[i].clause, {false, i, f.soft[i].weight}});

  Var nv = std::max(f.num_vars, f.max_var());
  std::vector<std::vector<std::size_t>> occ(2 * (static_cast<std::size_t>(nv) + 1));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (Lit l : *all[i].clause) occ[l.code()].push_back(i);

  BceResult out;
  auto eliminable = [&](const Entry& e) { return e.alive && !(opts.soft_only && e.origin.hard); };

  // tautologies go first; they are blocked on the positive literal of a clashing pair
  for (auto& e : all) {
    if (!eliminable(e) || !e.clause->is_tautology()) continue;
    auto lits = e.clause->lits();
    Lit blocking;
    for (std::size_t i = 1; i < lits.size(); ++i)
      if (lits[i].var() == lits[i - 1].var()) {
        blocking = lits[i - 1];
        break;
      }
    e.alive = false;
    out.record.push_back({*e.clause, blocking, e.origin});
  }

  std::vector<std::uint8_t> mark(occ.size(), 0);
  auto blocked_on = [&](const Clause& c, Lit l) {
    for (std::size_t di : occ[(~l).code()]) {
      const Entry& d = all[di];
      if (!d.alive) continue;
      if (d.clause->is_tautology()) {
        if (!Clause::merge(c.without(l), d.clause->without(~l)).is_tautology()) return false;
        continue;
      }
      bool tautological = false;
      for (Lit k : *d.clause)
        if (k != ~l && mark[(~k).code()]) {
          tautological = true;
          break;
        }
      if (!tautological) return false;
    }
    return true;
  };

  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (eliminable(all[i])) {
      queue.push_back(i);
      all[i].queued = true;
    }

  while (!queue.empty()) {
    std::size_t ci = queue.front();
    queue.pop_front();
    Entry& e = all[ci];
    e.queued = false;
    if (!eliminable(e)) continue;
    const Clause& c = *e.clause;
    for (Lit m : c) mark[m.code()] = 1;
    Lit blocking;
    bool found = false;
    for (Lit l : c)
      if (blocked_on(c, l)) {
        blocking = l;
        found = true;
        break;
      }
    for (Lit m : c) mark[m.code()] = 0;
    if (!found) continue;

    e.alive = false;
    out.record.push_back({c, blocking, e.origin});
    // clauses resolving with c may have lost their only non-tautological resolvent
    for (Lit m : c)
      for (std::size_t di : occ[(~m).code()]) {
        Entry& d = all[di];
        if (eliminable(d) && !d.queued) {
          d.queued = true;
          queue.push_back(di);
        }
      }
  }

  out.formula.num_vars = f.num_vars;
  for (const auto& e : all) {
    if (!e.alive) continue;
    if (e.origin.hard) {
      out.formula.hard.push_back(*e.clause);
      out.kept_hard.push_back(e.origin.index);
    } else {
      out.formula.soft.push_back({*e.clause, e.origin.weight});
      out.kept_soft.push_back(e.origin.index);
    }
  }
  return out;
}

Assignment bce_reconstruct(const BceRecord& rec, Assignment tau) {
  Var need = 0;
  for (const auto& e : rec) need = std::max(need, e.clause.max_var());
  if (tau.num_vars() < need) tau.resize(need);
  for (auto it = rec.rbegin(); it != rec.rend(); ++it)
    if (!tau.satisfies(it->clause)) tau.flip(it->blocking.var());
  return tau;
}

void write_bce_record(std::ostream& os, const BceRecord& rec) {
  for (const auto& e : rec) {
    for (Lit l : e.clause) os << l.to_dimacs() << ' ';
    os << "0 " << e.blocking.to_dimacs() << '\n';
  }
}

}  // namespace lmax
