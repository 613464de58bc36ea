// Brute-force reference answers for small instances, and seeded random
// instance generators.
//
// Nothing here uses the CDCL solver: satisfiability is decided with truth
// tables, so the oracle stays independent of the code it is checking.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "lmax/core.hpp"

namespace lmax {

class OracleLimit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BruteForceResult {
  bool hard_satisfiable = false;
  /// Lexicographically least optimal assignment (x1 most significant);
  /// `removed` holds the 1-based indices of the falsified soft clauses.
  MaxSatSolution solution;
};

BruteForceResult brute_force_maxsat(const WCNF& f, Var max_vars = 20);

/// Minimum-cost MCS of a labelled formula, found by enumeration. Empty when
/// the empty-labelled part is unsatisfiable.
std::optional<MaxSatSolution> brute_force_lcnf(const LCNF& phi);

using SetFamily = std::set<std::vector<std::uint32_t>>;

/// MUSes/MCSes as label-sets over Lbls(phi). At most 16 labels, 20 variables.
SetFamily enumerate_mus(const LCNF& phi);
SetFamily enumerate_mcs(const LCNF& phi);
/// Plain CNF: members are 1-based clause indices. At most 16 clauses.
SetFamily enumerate_mus(const std::vector<Clause>& f);
SetFamily enumerate_mcs(const std::vector<Clause>& f);

/// Irreducible (inclusion-minimal) hitting sets of a family.
SetFamily minimal_hitting_sets(const SetFamily& family);
/// MUSes are the irreducible hitting sets of the MCSes and vice versa.
bool check_hitting_duality(const SetFamily& muses, const SetFamily& mcses);

/// Truth-table satisfiability test, at most 20 variables.
bool brute_force_sat(const std::vector<Clause>& f, Var num_vars);

// Random instances. Clause lengths are uniform in 1..4 (capped by nvars)
// over distinct variables. Hard (or empty-labelled) clauses are made true
// under a hidden planted assignment, so the hard part is always satisfiable.

WCNF random_wcnf(std::uint64_t seed, Var nvars, std::size_t nclauses, Cost max_weight, double hard_fraction,
                 Assignment* planted = nullptr);

LCNF random_lcnf(std::uint64_t seed, Var nvars, std::size_t nclauses, Label num_labels, std::size_t max_labelset,
                 Cost max_weight, double hard_fraction, Assignment* planted = nullptr);

/// Plain random CNF with no planted structure.
std::vector<Clause> random_cnf(std::uint64_t seed, Var nvars, std::size_t nclauses, std::size_t max_len = 4);

}  // namespace lmax
