#include "lmax/cardinality.hpp"

#include <algorithm>

namespace lmax {

Equals1Encoding encode_equals1(const std::vector<Var>& vars, const VarAllocator&) {
  if (vars.empty()) throw std::invalid_argument("equals1 over an empty variable list");
  std::vector<Var> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("equals1 variables must be distinct");

  Equals1Encoding out;
  std::vector<Lit> alo;
  for (Var v : vars) alo.push_back(Lit::pos(v));
  out.clauses.emplace_back(std::move(alo));
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) out.clauses.push_back(Clause{Lit::neg(vars[i]), Lit::neg(vars[j])});
  return out;
}

}  // namespace lmax
