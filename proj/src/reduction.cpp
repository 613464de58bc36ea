#include "lmax/reduction.hpp"

namespace lmax {

Reduction lcnf_to_wcnf(const LCNF& phi) {
  Reduction red;
  red.original_vars = std::max(phi.num_vars(), phi.max_var());
  Var next = red.original_vars;
  for (Label l : phi.labels()) {
    red.selector[l] = ++next;
    red.labels.push_back(l);
  }
  red.wcnf.num_vars = next;
  for (const auto& c : phi) {
    std::vector<Lit> lits(c.clause.begin(), c.clause.end());
    for (Label l : c.labels) lits.push_back(Lit::neg(red.selector.at(l)));
    red.wcnf.add_hard(Clause(std::move(lits)));
  }
  for (Label l : red.labels) red.wcnf.add_soft(Clause{Lit::pos(red.selector.at(l))}, phi.weight(l));
  return red;
}

MaxSatSolution lift_reduction_solution(const MaxSatSolution& sol, const Reduction& red) {
  MaxSatSolution out;
  out.cost = sol.cost;
  out.model = Assignment(red.original_vars);
  for (Var v = 1; v <= red.original_vars; ++v) out.model.set(v, sol.model.value(v));
  for (Label l : red.labels)
    if (!sol.model.value(red.selector.at(l))) out.removed.push_back(l);
  return out;
}

}  // namespace lmax
