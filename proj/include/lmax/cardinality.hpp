// Exactly-one constraints over relaxation variables.
#pragma once

#include <functional>
#include <vector>

#include "lmax/core.hpp"

namespace lmax {

struct Equals1Encoding {
  std::vector<Clause> clauses;
  /// Auxiliary variables introduced by the encoding (none for pairwise).
  std::vector<Var> aux_vars;
};

using VarAllocator = std::function<Var()>;

/// Pairwise encoding: one at-least-one clause plus (~vi v ~vj) for i < j.
/// Throws std::invalid_argument on an empty or repeating variable list.
Equals1Encoding encode_equals1(const std::vector<Var>& vars, const VarAllocator& fresh = {});

}  // namespace lmax
