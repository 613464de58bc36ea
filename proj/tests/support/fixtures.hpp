// Shared formulas and helpers for the test programs.
#pragma once

#include <string>
#include <vector>

#include "lmax/core.hpp"

namespace lmax::test {

inline Lit L(long long d) { return Lit::from_dimacs(d); }
inline Clause C(std::initializer_list<long long> lits) { return Clause::from_dimacs(lits); }

// Variables: p = 1, q = 2, r = 3.
constexpr Var p = 1, q = 2, r = 3;

/// (p), (~p), (p v q), (p v ~q), (r), (~r), all soft with weight 1.
inline WCNF example1() {
  WCNF f;
  f.num_vars = 3;
  for (auto c : {C({1}), C({-1}), C({1, 2}), C({1, -2}), C({3}), C({-3})}) f.add_soft(c, 1);
  return f;
}

/// (~p)^{}, (r)^{}, (p v q)^{1}, (p v ~q)^{1,2}, (p)^{2}, (~r)^{3}; unit weights.
inline LCNF example2() {
  LCNF phi;
  phi.set_num_vars(3);
  phi.add(C({-1}), {});
  phi.add(C({3}), {});
  phi.add(C({1, 2}), {1});
  phi.add(C({1, -2}), {1, 2});
  phi.add(C({1}), {2});
  phi.add(C({-3}), {3});
  return phi;
}

/// All clauses of a WCNF in one list, hard first.
inline std::vector<Clause> all_clauses(const WCNF& f) {
  std::vector<Clause> out = f.hard;
  for (const auto& s : f.soft) out.push_back(s.clause);
  return out;
}

inline std::vector<Clause> clauses_of(const LCNF& phi) {
  std::vector<Clause> out;
  for (const auto& c : phi) out.push_back(c.clause);
  return out;
}

}  // namespace lmax::test
