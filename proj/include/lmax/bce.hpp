// Blocked clause elimination on weighted CNF, with model reconstruction.
//
// Blockedness is decided against every clause of the formula, hard and soft,
// with weights ignored. Because BCE is monotone it preserves the MUSes (and
// so the MCSes) of the input, which makes it safe to run before MaxSAT.
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "lmax/core.hpp"

namespace lmax {

struct ClauseOrigin {
  bool hard = false;
  /// 0-based index into WCNF::hard or WCNF::soft of the input formula.
  std::size_t index = 0;
  /// Soft weight; 0 for hard clauses.
  Cost weight = 0;
};

struct BceEntry {
  Clause clause;
  Lit blocking;
  ClauseOrigin origin;
};

/// Eliminated clauses in elimination order.
using BceRecord = std::vector<BceEntry>;

struct BceOptions {
  /// Only soft clauses may be eliminated (hard clauses still block).
  bool soft_only = false;
};

struct BceResult {
  WCNF formula;
  BceRecord record;
  /// kept_soft[i] is the 0-based input index of formula.soft[i].
  std::vector<std::size_t> kept_soft;
  std::vector<std::size_t> kept_hard;
};

/// True iff every resolvent of `c` on `l` with a clause of `f` containing ~l
/// is tautological (vacuously true for a pure literal).
bool is_blocked(std::span<const Clause> f, const Clause& c, Lit l);

BceResult bce_fixpoint(const WCNF& f, const BceOptions& opts = {});

/// Processes the record last-eliminated first, flipping the blocking literal of
/// every eliminated clause the current assignment falsifies. Variables missing
/// from `tau` default to 0.
Assignment bce_reconstruct(const BceRecord& rec, Assignment tau);

/// One line per eliminated clause: "<literals> 0 <blocking literal>".
void write_bce_record(std::ostream& os, const BceRecord& rec);

}  // namespace lmax
