// Encoding of a weighted LCNF as a WCNF, so that any weighted partial MaxSAT
// solver can work on labelled instances.
//
// Every label l gets a selector a_l. A labelled clause C^L becomes the hard
// clause C v ~a_l for l in L, and every label becomes the soft unit (a_l) with
// the label's weight. Falsifying (a_l) frees all clauses carrying l.
#pragma once

#include <map>

#include "lmax/core.hpp"

namespace lmax {

struct Reduction {
  WCNF wcnf;
  /// label -> selector variable
  std::map<Label, Var> selector;
  /// Labels in soft clause order: soft clause i (0-based) is (a_{labels[i]}).
  std::vector<Label> labels;
  /// Variables of the labelled formula (selectors start above this).
  Var original_vars = 0;
};

/// Selectors are allocated above the largest variable, in ascending label order.
Reduction lcnf_to_wcnf(const LCNF& phi);

/// Maps a WCNF answer (removed = 1-based falsified soft indices) back to the
/// labelled formula: removed labels, same cost, model cut to the original variables.
MaxSatSolution lift_reduction_solution(const MaxSatSolution& sol, const Reduction& red);

}  // namespace lmax
