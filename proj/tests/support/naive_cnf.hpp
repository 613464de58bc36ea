// Clause-level BVE and subsumption that ignore weights, used only to show
// that applying them straight to a WCNF changes the MaxSAT optimum.
#pragma once

#include <algorithm>
#include <vector>

#include "lmax/core.hpp"

namespace lmax::test {

/// Eliminates every variable in turn (1..n) whenever that shrinks the clause
/// count. Resolvents become soft clauses of weight 1.
inline WCNF naive_bve(const WCNF& f) {
  std::vector<Clause> cls;
  for (const auto& s : f.soft) cls.push_back(s.clause);
  Var n = std::max(f.num_vars, f.max_var());
  for (Var x = 1; x <= n; ++x) {
    std::vector<Clause> pos, neg, rest;
    for (const auto& c : cls) {
      if (c.contains(Lit(x, true)))
        pos.push_back(c);
      else if (c.contains(Lit(x, false)))
        neg.push_back(c);
      else
        rest.push_back(c);
    }
    std::vector<Clause> res = rest;
    for (const auto& a : pos)
      for (const auto& b : neg) {
        Clause r = Clause::merge(a.without(Lit(x, true)), b.without(Lit(x, false)));
        if (!r.is_tautology() && std::find(res.begin(), res.end(), r) == res.end()) res.push_back(r);
      }
    if (res.size() < cls.size()) cls = res;
  }
  WCNF out;
  out.num_vars = f.num_vars;
  for (auto& c : cls) out.add_soft(c, 1);
  return out;
}

/// Removes every soft clause that strictly contains another soft clause.
inline WCNF naive_sub(const WCNF& f) {
  WCNF out;
  out.num_vars = f.num_vars;
  for (const auto& s : f.soft) {
    bool subsumed = std::any_of(f.soft.begin(), f.soft.end(), [&](const SoftClause& o) {
      return o.clause.size() < s.clause.size() && o.clause.subset_of(s.clause);
    });
    if (!subsumed) out.add_soft(s.clause, s.weight);
  }
  return out;
}

}  // namespace lmax::test
