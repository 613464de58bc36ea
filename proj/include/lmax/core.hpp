// Core data model: literals, clauses, weights, weighted and labelled CNF,
// assignments and MaxSAT solutions.
#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmax {

using Var = std::uint32_t;
using Label = std::uint32_t;
using Cost = std::uint64_t;

class WeightOverflow : public std::overflow_error {
 public:
  WeightOverflow() : std::overflow_error("weight sum overflows 64 bits") {}
};

/// Checked addition for weights and costs.
inline Cost checked_add(Cost a, Cost b) {
  Cost out = a + b;
  if (out < a) throw WeightOverflow();
  return out;
}

/// A literal in DIMACS convention: variable index >= 1 plus a polarity.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : code_(2 * v + (positive ? 0u : 1u)) {}

  static Lit pos(Var v) { return check(Lit(v, true)); }
  static Lit neg(Var v) { return check(Lit(v, false)); }
  static Lit from_dimacs(long long d);

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr Lit operator~() const { return from_code(code_ ^ 1u); }
  long long to_dimacs() const {
    return positive() ? static_cast<long long>(var()) : -static_cast<long long>(var());
  }

  /// Dense index (2*var + sign) for per-literal arrays.
  constexpr std::uint32_t code() const { return code_; }
  static constexpr Lit from_code(std::uint32_t c) {
    Lit l;
    l.code_ = c;
    return l;
  }

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  static Lit check(Lit l) {
    if (l.var() == 0) throw std::invalid_argument("variable index must be >= 1");
    return l;
  }
  std::uint32_t code_ = 0;
};

/// A set of literals, stored sorted by (variable, polarity) with no duplicates.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}
  explicit Clause(std::vector<Lit> lits);
  static Clause from_dimacs(std::initializer_list<long long> lits);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool contains(Lit l) const;
  bool contains_var(Var v) const;
  bool is_tautology() const;
  /// Subset test on literal sets (not necessarily strict).
  bool subset_of(const Clause& other) const;
  Var max_var() const { return lits_.empty() ? 0 : lits_.back().var(); }

  Clause without(Lit l) const;
  Clause with(Lit l) const;
  /// Literal-set union of two clauses.
  static Clause merge(const Clause& a, const Clause& b);

  std::string to_string() const;

  auto operator<=>(const Clause&) const = default;
  bool operator==(const Clause&) const = default;

 private:
  std::vector<Lit> lits_;
};

/// Positive integer weight or the hard marker. The hard marker never takes
/// part in arithmetic.
class Weight {
 public:
  static Weight hard() { return Weight(); }
  static Weight soft(Cost w) {
    if (w == 0) throw std::invalid_argument("soft weight must be >= 1");
    return Weight(w);
  }

  bool is_hard() const { return !value_.has_value(); }
  Cost value() const {
    if (!value_) throw std::logic_error("hard weight has no integer value");
    return *value_;
  }

  std::strong_ordering operator<=>(const Weight& o) const {
    if (is_hard() || o.is_hard()) return is_hard() <=> o.is_hard();
    return *value_ <=> *o.value_;
  }
  bool operator==(const Weight& o) const = default;

 private:
  Weight() = default;
  explicit Weight(Cost w) : value_(w) {}
  std::optional<Cost> value_;
};

struct SoftClause {
  Clause clause;
  Cost weight = 1;
  bool operator==(const SoftClause&) const = default;
};

/// Weighted partial CNF. Soft clause i (1-based) is soft[i - 1].
struct WCNF {
  Var num_vars = 0;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;

  void add_hard(Clause c);
  void add_soft(Clause c, Cost weight);
  Cost total_soft_weight() const;
  Var max_var() const;

  bool operator==(const WCNF&) const = default;
};

/// Sorted, duplicate-free set of labels.
using LabelSet = std::vector<Label>;

LabelSet make_label_set(std::vector<Label> labels);
bool label_subset(const LabelSet& a, const LabelSet& b);
LabelSet label_union(const LabelSet& a, const LabelSet& b);

struct LabelledClause {
  Clause clause;
  LabelSet labels;

  LabelledClause() = default;
  LabelledClause(Clause c, std::vector<Label> ls);

  bool hard() const { return labels.empty(); }
  std::string to_string() const;

  auto operator<=>(const LabelledClause&) const = default;
  bool operator==(const LabelledClause&) const = default;
};

/// Labelled CNF with set semantics over (clause, label-set) pairs.
class LCNF {
 public:
  using Set = std::set<LabelledClause>;

  LCNF() = default;

  /// Inserts a labelled clause; returns false if an identical one exists.
  /// Labels without a weight entry get weight 1.
  bool add(LabelledClause c);
  bool add(Clause c, std::vector<Label> labels) { return add(LabelledClause(std::move(c), std::move(labels))); }
  bool erase(const LabelledClause& c) { return clauses_.erase(c) > 0; }
  bool contains(const LabelledClause& c) const { return clauses_.count(c) > 0; }

  const Set& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  void set_weight(Label l, Cost w);
  Cost weight(Label l) const;
  const std::map<Label, Cost>& label_weights() const { return weights_; }

  /// Lbls: union of all label-sets currently present.
  LabelSet labels() const;
  /// Every label with a weight entry, including ones no clause carries any more.
  LabelSet all_weighted_labels() const;
  /// Cls: the distinct clause parts.
  std::set<Clause> clause_set() const;

  Var num_vars() const { return num_vars_; }
  void set_num_vars(Var n) { num_vars_ = n; }
  Var max_var() const;

  /// Same clauses, same label universe, new contents.
  LCNF with_clauses(Set clauses) const;

  std::string to_string() const;

  bool operator==(const LCNF& o) const { return clauses_ == o.clauses_ && weights_ == o.weights_; }

 private:
  Set clauses_;
  std::map<Label, Cost> weights_;
  Var num_vars_ = 0;
};

/// Total assignment over variables 1..num_vars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var num_vars) : values_(static_cast<std::size_t>(num_vars) + 1, false) {}

  Var num_vars() const { return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1); }
  bool value(Var v) const { return v < values_.size() && values_[v]; }
  void set(Var v, bool b) {
    if (v >= values_.size()) values_.resize(static_cast<std::size_t>(v) + 1, false);
    values_[v] = b;
  }
  void flip(Var v) { set(v, !value(v)); }
  void resize(Var num_vars) { values_.resize(static_cast<std::size_t>(num_vars) + 1, false); }

  bool satisfies(Lit l) const { return value(l.var()) == l.positive(); }
  bool satisfies(const Clause& c) const;

  /// Assignment built from the low bits of `bits`: variable v gets bit v-1.
  static Assignment from_bits(Var num_vars, std::uint64_t bits);

  bool operator==(const Assignment& o) const = default;

 private:
  std::vector<bool> values_;
};

/// Optimal (or reported) MaxSAT answer. For a WCNF `removed` holds 1-based soft
/// clause indices, for an LCNF it holds removed labels.
struct MaxSatSolution {
  Assignment model;
  Cost cost = 0;
  std::vector<std::uint32_t> removed;
};

// Operations on the model.

LCNF induced_subformula(const LCNF& phi, const LabelSet& m);
LCNF lcnf_from_wcnf(const WCNF& f);
Cost cost_of_labels(const LCNF& phi, const LabelSet& r);

/// Sum of weights of soft clauses falsified by `tau`, plus their indices.
Cost falsified_soft_weight(const WCNF& f, const Assignment& tau, std::vector<std::uint32_t>* falsified = nullptr);
bool satisfies_hard(const WCNF& f, const Assignment& tau);

}  // namespace lmax
