#include "lmax/sat_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lmax {

// ---------------------------------------------------------------------------
// Variable order heap (max-activity first, lowest index on ties)

void Solver::VarOrder::insert(Var v) {
  if (index_.size() <= v) index_.resize(static_cast<std::size_t>(v) + 1, -1);
  if (index_[v] >= 0) return;
  index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  up(heap_.size() - 1);
}

void Solver::VarOrder::increased(Var v) {
  if (contains(v)) up(static_cast<std::size_t>(index_[v]));
}

Var Solver::VarOrder::pop() {
  Var top = heap_.front();
  index_[top] = -1;
  Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    index_[last] = 0;
    down(0);
  }
  return top;
}

void Solver::VarOrder::up(std::size_t i) {
  Var v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!before(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    index_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  index_[v] = static_cast<int>(i);
}

void Solver::VarOrder::down(std::size_t i) {
  Var v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], v)) break;
    heap_[i] = heap_[child];
    index_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  index_[v] = static_cast<int>(i);
}

// ---------------------------------------------------------------------------

Solver::Solver(SolverOptions opts) : opts_(opts), order_(activity_) {
  // index 0 is unused so that variables can be addressed directly
  assigns_.push_back(Value::Undef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  phase_.push_back(false);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.resize(2);
}

Var Solver::new_var() {
  Var v = ++num_vars_;
  assigns_.push_back(Value::Undef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  phase_.push_back(false);
  double init = 0.0;
  if (opts_.seed != 0) {
    std::mt19937_64 rng(opts_.seed ^ (0x9e3779b97f4a7c15ULL * v));
    init = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 1e-5;
  }
  activity_.push_back(init);
  seen_.push_back(0);
  watches_.resize(2 * (static_cast<std::size_t>(v) + 1));
  order_.insert(v);
  return v;
}

void Solver::reserve_vars(Var n) {
  while (num_vars_ < n) new_var();
}

Solver::CRef Solver::store(std::vector<Lit> lits, bool learnt) {
  CRef cr = static_cast<CRef>(clauses_.size());
  clauses_.push_back({std::move(lits), learnt});
  return cr;
}

void Solver::attach(CRef cr) {
  const auto& c = clauses_[cr].lits;
  watches_[c[0].code()].push_back({cr, c[1]});
  watches_[c[1].code()].push_back({cr, c[0]});
}

void Solver::enqueue(Lit l, CRef reason) {
  Var v = l.var();
  assigns_[v] = l.positive() ? Value::True : Value::False;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

void Solver::add_clause(std::span<const Lit> input) {
  ++stats_.clauses_added;
  if (!ok_) return;
  std::vector<Lit> lits(input.begin(), input.end());
  for (Lit l : lits) {
    if (l.var() == 0) throw std::invalid_argument("variable index must be >= 1");
    reserve_vars(l.var());
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::size_t j = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i].var() == lits[i + 1].var()) return;  // tautology
    Value val = value(lits[i]);
    if (val == Value::True) return;
    if (val == Value::False) continue;
    lits[j++] = lits[i];
  }
  lits.resize(j);
  if (lits.empty()) {
    ok_ = false;
  } else if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
  } else {
    attach(store(std::move(lits), false));
  }
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = ~p;
    auto& ws = watches_[false_lit.code()];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i++];
      if (value(w.blocker) == Value::True) {
        ws[j++] = w;
        continue;
      }
      auto& c = clauses_[w.cref].lits;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      Lit first = c[0];
      if (first != w.blocker && value(first) == Value::True) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != Value::False) {
          std::swap(c[1], c[k]);
          watches_[c[1].code()].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == Value::False) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  order_.increased(v);
}

void Solver::analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level) {
  int path = 0;
  Lit p;
  bool have_p = false;
  learnt.clear();
  learnt.emplace_back();  // room for the asserting literal
  std::size_t index = trail_.size();

  do {
    const auto& c = clauses_[confl].lits;
    for (std::size_t j = have_p ? 1 : 0; j < c.size(); ++j) {
      Lit q = c[j];
      Var v = q.var();
      if (seen_[v] || level(v) == 0) continue;
      bump(v);
      seen_[v] = 1;
      if (level(v) >= decision_level())
        ++path;
      else
        learnt.push_back(q);
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[p.var()];
    seen_[p.var()] = 0;
    --path;
  } while (path > 0);
  learnt[0] = ~p;

  // drop literals implied by the rest of the clause
  analyze_clear_ = learnt;
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    CRef r = reason_[learnt[i].var()];
    bool keep = r == kNoReason;
    if (!keep) {
      const auto& c = clauses_[r].lits;
      for (std::size_t k = 1; k < c.size(); ++k) {
        Var v = c[k].var();
        if (!seen_[v] && level(v) > 0) {
          keep = true;
          break;
        }
      }
    }
    if (keep) learnt[j++] = learnt[i];
  }
  learnt.resize(j);

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level(learnt[i].var()) > level(learnt[max_i].var())) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level(learnt[1].var());
  }
  for (Lit l : analyze_clear_) seen_[l.var()] = 0;
}

void Solver::analyze_final(Lit failed_assumption, std::vector<Lit>& out) {
  out.clear();
  out.push_back(failed_assumption);
  if (decision_level() == 0) return;
  seen_[failed_assumption.var()] = 1;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
    Var x = trail_[i].var();
    if (!seen_[x]) continue;
    if (reason_[x] == kNoReason) {
      if (level(x) > 0) out.push_back(trail_[i]);
    } else {
      const auto& c = clauses_[reason_[x]].lits;
      for (std::size_t k = 1; k < c.size(); ++k)
        if (level(c[k].var()) > 0) seen_[c[k].var()] = 1;
    }
    seen_[x] = 0;
  }
  seen_[failed_assumption.var()] = 0;
}

void Solver::cancel_until(int lvl) {
  if (decision_level() <= lvl) return;
  for (std::size_t c = trail_.size(); c-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
    Var x = trail_[c].var();
    phase_[x] = assigns_[x] == Value::True;
    assigns_[x] = Value::Undef;
    reason_[x] = kNoReason;
    order_.insert(x);
  }
  trail_.resize(static_cast<std::size_t>(trail_lim_[lvl]));
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!order_.empty()) {
    Var v = order_.pop();
    if (assigns_[v] == Value::Undef) return Lit(v, phase_[v]);
  }
  return Lit();
}

SatStatus Solver::search(std::uint64_t conflicts_allowed, std::span<const Lit> assumptions,
                         std::vector<Lit>& failed) {
  std::uint64_t conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      ++budget_used_;
      if (decision_level() == 0) {
        ok_ = false;
        failed.clear();
        return SatStatus::Unsat;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        CRef cr = store(learnt, true);
        attach(cr);
        enqueue(learnt[0], cr);
      }
      ++stats_.learnt_clauses;
      decay();
      continue;
    }

    if (opts_.conflict_budget != 0 && budget_used_ >= opts_.conflict_budget) {
      cancel_until(0);
      return SatStatus::Unknown;
    }
    if (conflicts >= conflicts_allowed) {
      cancel_until(0);
      ++stats_.restarts;
      // Unknown with budget left means "restart"
      return SatStatus::Unknown;
    }

    Lit next;
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      Value val = value(a);
      if (val == Value::True) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (val == Value::False) {
        analyze_final(a, failed);
        return SatStatus::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next.var() == 0) {
      ++stats_.decisions;
      next = pick_branch();
      if (next.var() == 0) return SatStatus::Sat;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

SolveOutcome Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  SolveOutcome out;
  for (Lit a : assumptions) {
    if (a.var() == 0) throw std::invalid_argument("variable index must be >= 1");
    reserve_vars(a.var());
  }
  if (!ok_) {
    out.status = SatStatus::Unsat;
    return out;
  }
  budget_used_ = 0;
  double limit = static_cast<double>(opts_.restart_first);
  SatStatus st;
  for (;;) {
    st = search(static_cast<std::uint64_t>(limit), assumptions, out.failed_assumptions);
    if (st != SatStatus::Unknown) break;
    if (opts_.conflict_budget != 0 && budget_used_ >= opts_.conflict_budget) break;
    limit *= opts_.restart_inc;
  }
  out.status = st;
  if (st == SatStatus::Sat) {
    out.model = Assignment(num_vars_);
    for (Var v = 1; v <= num_vars_; ++v) out.model.set(v, assigns_[v] == Value::True);
  }
  if (st != SatStatus::Unsat) out.failed_assumptions.clear();
  cancel_until(0);
  return out;
}

void Solver::dump_dimacs(std::ostream& os) const {
  std::size_t n = 0;
  for (const auto& c : clauses_) n += !c.learnt;
  std::vector<Lit> units;
  for (Lit l : trail_)
    if (level(l.var()) == 0) units.push_back(l);
  os << "p cnf " << num_vars_ << ' ' << (ok_ ? n + units.size() : 1) << '\n';
  if (!ok_) {
    os << "0\n";
    return;
  }
  for (Lit l : units) os << l.to_dimacs() << " 0\n";
  for (const auto& c : clauses_) {
    if (c.learnt) continue;
    for (Lit l : c.lits) os << l.to_dimacs() << ' ';
    os << "0\n";
  }
}

OracleFactory default_oracle_factory(SolverOptions opts) {
  return [opts] { return std::make_unique<Solver>(opts); };
}

}  // namespace lmax
