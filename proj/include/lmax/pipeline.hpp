// End-to-end solving of a WCNF: optional blocked clause elimination, lift to
// labelled CNF (one label per surviving soft clause), optional resolution and
// subsumption preprocessing on the labelled formula, core-guided MaxSAT, and
// reconstruction of a model of the original formula.
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>

#include "lmax/bce.hpp"
#include "lmax/core.hpp"
#include "lmax/lcnf_prep.hpp"
#include "lmax/maxsat.hpp"

namespace lmax {

struct PipelineConfig {
  bool bce = false;
  bool rs = false;
  bool bce_soft_only = false;
  PrepConfig prep;
  SolveMode mode = SolveMode::Incremental;
  Algorithm algorithm = Algorithm::Wmsu1;
  /// Conflicts per SAT call; 0 is unlimited.
  std::uint64_t conflict_budget = 0;
  std::uint64_t seed = 0;
  bool verify = true;
  std::ostream* trace = nullptr;
  /// Overrides the SAT back end (tests).
  OracleFactory factory;
};

/// Thrown when the reconstructed model fails the final check.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Preprocessed {
  std::optional<BceResult> bce;
  /// Labels are 1-based soft clause indices of the input formula.
  LCNF lcnf;
  PrepResult prep;
};

Preprocessed preprocess(const WCNF& f, const PipelineConfig& config);

struct PipelineResult {
  MaxSatStatus status = MaxSatStatus::Unknown;
  /// Model over the input variables; `removed` are the 1-based indices of the
  /// falsified soft clauses.
  MaxSatSolution solution;
  MaxSatStats stats;
  PrepStats prep_stats;
  std::size_t bce_eliminated = 0;
};

PipelineResult solve_pipeline(const WCNF& f, const PipelineConfig& config);

/// Maps a model of the preprocessed labelled formula back to the input
/// formula, given the labels the solver removed.
Assignment reconstruct(const Preprocessed& pre, const Assignment& tau, const LabelSet& removed);

}  // namespace lmax
