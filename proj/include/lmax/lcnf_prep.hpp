// Resolution and subsumption based preprocessing on labelled CNF.
//
// Resolvents carry the union of their parents' label-sets and subsumption
// additionally requires label-set inclusion. Under those rules variable
// elimination, subsumption elimination and self-subsuming resolution keep
// the MCSes of the formula intact, so a minimum-cost MCS of the result is one
// of the input.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "lmax/core.hpp"

namespace lmax {

/// Resolvent on `x`: `c1` must contain x, `c2` must contain ~x.
LabelledClause l_resolve(const LabelledClause& c1, const LabelledClause& c2, Var x);

/// All clauses mentioning x replaced by their non-tautological resolvents.
LCNF l_ve(const LCNF& phi, Var x);
/// l_ve when it strictly reduces the number of labelled clauses, else phi.
LCNF l_bve(const LCNF& phi, Var x);

/// Strict labelled subsumption: clause(c1) is a proper subset of clause(c2)
/// and labels(c1) is a subset of labels(c2).
bool l_subsumes(const LabelledClause& c1, const LabelledClause& c2);
LCNF l_sub(const LCNF& phi, const LabelledClause& c1, const LabelledClause& c2);

/// The strengthened form of c2 if c1 = (l v A)^L1 and c2 = (~l v B)^L2 with A a
/// proper subset of B and L1 a subset of L2.
std::optional<LabelledClause> l_ssr_result(const LabelledClause& c1, const LabelledClause& c2);
LCNF l_ssr(const LCNF& phi, const LabelledClause& c1, const LabelledClause& c2);

struct BveStep {
  Var var = 0;
  /// Clauses containing var or ~var at the moment of elimination.
  std::vector<LabelledClause> clauses;
};

using BveRecord = std::vector<BveStep>;

struct PrepConfig {
  bool subsumption = true;
  bool self_subsumption = true;
  bool variable_elimination = true;
  int max_rounds = 10;
  /// Elimination is skipped when a resolvent would carry more labels.
  std::size_t max_label_set = 32;
  /// Variables that must survive (never eliminated).
  std::vector<Var> frozen;

  static PrepConfig none() { return {false, false, false, 0, 32, {}}; }
};

struct PrepStats {
  std::size_t rounds = 0;
  std::size_t subsumed = 0;
  std::size_t strengthened = 0;
  std::size_t eliminated_vars = 0;
};

struct PrepResult {
  LCNF formula;
  BveRecord record;
  PrepStats stats;
};

PrepResult preprocess_lcnf(const LCNF& phi, const PrepConfig& config = {});

/// Lifts a model of the preprocessed formula's subformula induced by
/// `retained` back through the eliminated variables, last elimination first.
/// Only recorded clauses whose labels lie inside `retained` constrain the
/// chosen value; ties go to 0.
Assignment bve_reconstruct(const BveRecord& rec, Assignment tau, const LabelSet& retained);

void write_bve_record(std::ostream& os, const BveRecord& rec);

}  // namespace lmax
