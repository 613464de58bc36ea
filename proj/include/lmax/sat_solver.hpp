// Incremental CDCL SAT solver with assumptions.
//
// Two-watched-literal propagation, first-UIP learning with activity-based
// branching, geometric restarts, no clause deletion. Assumptions are
// decided first, one per decision level, and the final conflict is
// expressed in terms of them.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "lmax/core.hpp"

namespace lmax {

enum class SatStatus { Sat, Unsat, Unknown };

struct SolveOutcome {
  SatStatus status = SatStatus::Unknown;
  /// Valid when status == Sat.
  Assignment model;
  /// When status == Unsat: assumption literals whose conjunction with the
  /// clause database is unsatisfiable. Not necessarily minimal.
  std::vector<Lit> failed_assumptions;
};

struct SatStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnt_clauses = 0;
  std::uint64_t clauses_added = 0;
};

/// Interface every SAT back end used by the MaxSAT loops implements.
class SatOracle {
 public:
  virtual ~SatOracle() = default;
  virtual Var new_var() = 0;
  virtual void reserve_vars(Var n) = 0;
  virtual Var num_vars() const = 0;
  virtual void add_clause(std::span<const Lit> lits) = 0;
  void add_clause(const Clause& c) { add_clause(c.lits()); }
  void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }
  virtual SolveOutcome solve(std::span<const Lit> assumptions) = 0;
  SolveOutcome solve() { return solve(std::span<const Lit>{}); }
  virtual const SatStats& stats() const = 0;
};

struct SolverOptions {
  /// Conflicts allowed per solve call; 0 means unlimited.
  std::uint64_t conflict_budget = 0;
  /// Nonzero seeds perturb the initial variable activities.
  std::uint64_t seed = 0;
  double var_decay = 0.95;
  std::uint64_t restart_first = 100;
  double restart_inc = 1.5;
};

using OracleFactory = std::function<std::unique_ptr<SatOracle>()>;

class Solver final : public SatOracle {
 public:
  explicit Solver(SolverOptions opts = {});
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  Var new_var() override;
  void reserve_vars(Var n) override;
  Var num_vars() const override { return num_vars_; }

  using SatOracle::add_clause;
  void add_clause(std::span<const Lit> lits) override;

  using SatOracle::solve;
  SolveOutcome solve(std::span<const Lit> assumptions) override;

  /// False once the database is known unsatisfiable without assumptions.
  bool okay() const { return ok_; }
  const SatStats& stats() const override { return stats_; }

  /// Original (non-learnt) clauses in DIMACS, for debugging.
  void dump_dimacs(std::ostream& os) const;

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = UINT32_MAX;

  enum class Value : std::uint8_t { True, False, Undef };

  struct StoredClause {
    std::vector<Lit> lits;
    bool learnt = false;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  class VarOrder {
   public:
    explicit VarOrder(const std::vector<double>& activity) : act_(activity) {}
    bool empty() const { return heap_.empty(); }
    bool contains(Var v) const { return v < index_.size() && index_[v] >= 0; }
    void insert(Var v);
    void increased(Var v);
    Var pop();

   private:
    bool before(Var a, Var b) const { return act_[a] > act_[b] || (act_[a] == act_[b] && a < b); }
    void up(std::size_t i);
    void down(std::size_t i);
    const std::vector<double>& act_;
    std::vector<Var> heap_;
    std::vector<int> index_;
  };

  Value value(Lit l) const {
    Value v = assigns_[l.var()];
    if (v == Value::Undef) return v;
    return (v == Value::True) == l.positive() ? Value::True : Value::False;
  }
  int level(Var v) const { return level_[v]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  CRef store(std::vector<Lit> lits, bool learnt);
  void attach(CRef cr);
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level);
  void analyze_final(Lit p, std::vector<Lit>& out);
  void cancel_until(int lvl);
  Lit pick_branch();
  void bump(Var v);
  void decay() { var_inc_ /= opts_.var_decay; }
  SatStatus search(std::uint64_t conflicts_allowed, std::span<const Lit> assumptions, std::vector<Lit>& failed);

  SolverOptions opts_;
  SatStats stats_;
  bool ok_ = true;
  Var num_vars_ = 0;

  std::vector<StoredClause> clauses_;
  std::vector<std::vector<Watcher>> watches_;  // by literal code
  std::vector<Value> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<bool> phase_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  VarOrder order_;

  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<std::uint8_t> seen_;
  std::vector<Lit> analyze_clear_;
  std::uint64_t budget_used_ = 0;
};

OracleFactory default_oracle_factory(SolverOptions opts = {});

}  // namespace lmax
