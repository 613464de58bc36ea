// Core-guided MaxSAT on weighted labelled CNF.
//
// The loop relaxes labels rather than clauses: every clause carrying a core
// label gets that label's relaxation variable, and an exactly-one constraint
// over the iteration's relaxation variables is added with the empty label-set.
// Unit label weights give Fu and Malik's algorithm; otherwise labels heavier
// than the cheapest core label are split in the style of WMSU1.
//
// Two SAT drivers are provided. The non-incremental one builds a fresh solver
// every iteration; the incremental one keeps a single solver and retires
// relaxed clauses by finalizing a versioned selector variable per label.
#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "lmax/core.hpp"
#include "lmax/sat_solver.hpp"

namespace lmax {

enum class SolveMode { NonIncremental, Incremental };
enum class Algorithm { FuMalik, Wmsu1 };
enum class MaxSatStatus { Optimum, HardUnsat, Unknown };

struct WorkingClause {
  Clause clause;
  LabelSet labels;
};

/// The evolving clause list the loop solves; clauses may repeat.
using WorkingFormula = std::vector<WorkingClause>;

struct MaxSatOptions {
  Algorithm algorithm = Algorithm::Wmsu1;
  SolveMode mode = SolveMode::Incremental;
  /// Source of SAT solvers; the built-in CDCL solver when empty.
  OracleFactory factory;
  /// One line per UNSAT iteration: iteration, core size, w_min, lower bound.
  std::ostream* trace = nullptr;
};

struct MaxSatStats {
  std::uint64_t iterations = 0;
  std::uint64_t sat_calls = 0;
  /// Number of times a clause database was built from scratch.
  std::uint64_t database_loads = 0;
  std::uint64_t relaxation_vars = 0;
  std::uint64_t split_labels = 0;
  std::uint64_t selector_versions = 0;
  /// Lower bound after each UNSAT iteration.
  std::vector<Cost> lower_bounds;
};

struct MaxSatResult {
  MaxSatStatus status = MaxSatStatus::Unknown;
  /// model is restricted to the variables of the input formula.
  MaxSatSolution solution;
  MaxSatStats stats;
};

/// Labels whose selectors occur among the failed assumptions.
/// Throws std::logic_error if the outcome is not UNSAT or nothing maps.
LabelSet extract_core_labels(const SolveOutcome& outcome, const std::map<Var, Label>& selector_map);

/// Adds r to every clause whose label-set contains l.
void relax_label(WorkingFormula& phi, Label l, Var r);

/// Minimum-cost set of labels hitting every label-set in `sets`.
LabelSet min_cost_hitting_set(const std::vector<LabelSet>& sets, const LCNF& phi);

MaxSatResult solve_lcnf(const LCNF& phi, const MaxSatOptions& opts = {});
/// Requires every label of phi to have weight 1.
MaxSatResult solve_fu_malik_lcnf(const LCNF& phi, SolveMode mode, const MaxSatOptions& opts = {});
MaxSatResult solve_wmsu1_lcnf(const LCNF& phi, SolveMode mode, const MaxSatOptions& opts = {});

/// Convenience entry for plain WCNF; `removed` holds 1-based soft indices.
MaxSatResult solve_wcnf(const WCNF& f, const MaxSatOptions& opts = {});

}  // namespace lmax
