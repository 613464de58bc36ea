#include "lmax/maxsat.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lmax/cardinality.hpp"

namespace lmax {

LabelSet extract_core_labels(const SolveOutcome& outcome, const std::map<Var, Label>& selector_map) {
  if (outcome.status != SatStatus::Unsat) throw std::logic_error("core extraction needs an UNSAT outcome");
  LabelSet out;
  for (Lit a : outcome.failed_assumptions) {
    auto it = selector_map.find(a.var());
    if (it != selector_map.end()) out.push_back(it->second);
  }
  out = make_label_set(std::move(out));
  if (out.empty()) throw std::logic_error("empty core although the hard part is satisfiable");
  return out;
}

void relax_label(WorkingFormula& phi, Label l, Var r) {
  for (auto& wc : phi)
    if (std::binary_search(wc.labels.begin(), wc.labels.end(), l)) wc.clause = wc.clause.with(Lit::pos(r));
}

LabelSet min_cost_hitting_set(const std::vector<LabelSet>& input, const LCNF& phi) {
  // sets that contain another set are hit automatically
  std::vector<LabelSet> sets = input;
  std::sort(sets.begin(), sets.end(), [](const LabelSet& a, const LabelSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<LabelSet> minimal;
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("cannot hit an empty label-set");
    bool dominated = false;
    for (const auto& m : minimal)
      if (label_subset(m, s)) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(s);
  }

  LabelSet best;
  Cost best_cost = std::numeric_limits<Cost>::max();
  LabelSet chosen;
  std::function<void(Cost)> search = [&](Cost cost) {
    if (cost >= best_cost) return;
    const LabelSet* open = nullptr;
    for (const auto& s : minimal) {
      bool hit = false;
      for (Label l : s)
        if (std::find(chosen.begin(), chosen.end(), l) != chosen.end()) {
          hit = true;
          break;
        }
      if (!hit) {
        open = &s;
        break;
      }
    }
    if (!open) {
      best = make_label_set(chosen);
      best_cost = cost;
      return;
    }
    LabelSet options = *open;
    std::stable_sort(options.begin(), options.end(),
                     [&](Label a, Label b) { return phi.weight(a) < phi.weight(b); });
    for (Label l : options) {
      chosen.push_back(l);
      search(checked_add(cost, phi.weight(l)));
      chosen.pop_back();
    }
  };
  search(0);
  return best;
}

namespace {

class CoreGuided {
 public:
  CoreGuided(const LCNF& phi, const MaxSatOptions& opts) : phi_(phi), opts_(opts) {
    if (!opts_.factory) opts_.factory = default_oracle_factory(SolverOptions{});
    next_var_ = std::max(phi.num_vars(), phi.max_var());
    for (const auto& c : phi) work_.push_back({c.clause, c.labels});
    for (Label l : phi.labels()) {
      weight_[l] = phi.weight(l);
      next_label_ = std::max(next_label_, l);
    }
    for (const auto& [l, w] : phi.label_weights()) next_label_ = std::max(next_label_, l);
    for (const auto& [l, w] : weight_) new_selector(l);
  }

  MaxSatResult run() {
    if (opts_.algorithm == Algorithm::FuMalik)
      for (const auto& [l, w] : weight_)
        if (w != 1) throw std::invalid_argument("Fu-Malik needs unit label weights");

    MaxSatResult res;
    SatStatus hard = check_hard();
    if (hard != SatStatus::Sat) {
      res.status = hard == SatStatus::Unsat ? MaxSatStatus::HardUnsat : MaxSatStatus::Unknown;
      res.stats = stats_;
      return res;
    }

    for (;;) {
      SolveOutcome out = solve_iteration();
      if (out.status == SatStatus::Unknown) {
        res.status = MaxSatStatus::Unknown;
        break;
      }
      if (out.status == SatStatus::Sat) {
        res.status = MaxSatStatus::Optimum;
        res.solution = finish(out.model);
        break;
      }
      relax(extract_core_labels(out, selector_label_));
    }
    res.stats = stats_;
    return res;
  }

 private:
  Var fresh() {
    if (next_var_ == std::numeric_limits<Var>::max() / 2 - 1) throw std::overflow_error("out of variables");
    return ++next_var_;
  }

  void new_selector(Label l) {
    Var a = fresh();
    selector_[l] = a;
    selector_label_[a] = l;
    ++stats_.selector_versions;
  }

  std::vector<Lit> encode(const WorkingClause& wc) const {
    std::vector<Lit> lits(wc.clause.begin(), wc.clause.end());
    for (Label l : wc.labels) lits.push_back(Lit::neg(selector_.at(l)));
    return lits;
  }

  std::vector<Lit> assumptions() const {
    std::vector<Lit> out;
    for (const auto& [l, a] : selector_) out.push_back(Lit::pos(a));
    return out;
  }

  std::unique_ptr<SatOracle> load_all() {
    auto s = opts_.factory();
    ++stats_.database_loads;
    s->reserve_vars(next_var_);
    for (const auto& wc : work_) s->add_clause(encode(wc));
    return s;
  }

  SatStatus check_hard() {
    ++stats_.sat_calls;
    if (opts_.mode == SolveMode::Incremental) {
      // selectors are left free, so only the empty-labelled part constrains
      inc_ = load_all();
      return inc_->solve().status;
    }
    auto s = opts_.factory();
    ++stats_.database_loads;
    for (const auto& wc : work_)
      if (wc.labels.empty()) s->add_clause(wc.clause);
    return s->solve().status;
  }

  SolveOutcome solve_iteration() {
    ++stats_.sat_calls;
    std::vector<Lit> assume = assumptions();
    if (opts_.mode == SolveMode::Incremental) return inc_->solve(assume);
    auto s = load_all();
    return s->solve(assume);
  }

  void relax(const LabelSet& core) {
    ++stats_.iterations;
    Cost w_min = std::numeric_limits<Cost>::max();
    for (Label l : core) w_min = std::min(w_min, weight_.at(l));
    lb_ = checked_add(lb_, w_min);

    std::vector<Var> rs;
    std::vector<Label> in_place, split;
    for (Label l : core) (weight_.at(l) == w_min ? in_place : split).push_back(l);

    for (Label l : in_place) {
      Var r = fresh();
      rs.push_back(r);
      relax_label(work_, l, r);
    }

    std::size_t first_new = work_.size();
    for (Label l : split) {
      Label copy_label = ++next_label_;
      weight_[copy_label] = w_min;
      weight_[l] -= w_min;
      ++stats_.split_labels;
      Var r = fresh();
      rs.push_back(r);
      for (std::size_t i = 0; i < first_new; ++i) {
        const WorkingClause& wc = work_[i];
        if (!std::binary_search(wc.labels.begin(), wc.labels.end(), l)) continue;
        LabelSet labels;
        for (Label k : wc.labels)
          if (k != l) labels.push_back(k);
        labels.push_back(copy_label);
        work_.push_back({wc.clause.with(Lit::pos(r)), make_label_set(std::move(labels))});
      }
      new_selector(copy_label);
    }
    stats_.relaxation_vars += rs.size();

    Equals1Encoding card = encode_equals1(rs, [this] { return fresh(); });
    for (Clause& c : card.clauses) work_.push_back({std::move(c), {}});

    if (opts_.mode == SolveMode::Incremental) {
      for (Label l : in_place) {
        inc_->add_clause({Lit::neg(selector_.at(l))});
        new_selector(l);
      }
      for (std::size_t i = 0; i < first_new; ++i) {
        const WorkingClause& wc = work_[i];
        bool touched = std::any_of(in_place.begin(), in_place.end(), [&](Label l) {
          return std::binary_search(wc.labels.begin(), wc.labels.end(), l);
        });
        if (touched) inc_->add_clause(encode(wc));
      }
      for (std::size_t i = first_new; i < work_.size(); ++i) inc_->add_clause(encode(work_[i]));
    }

    stats_.lower_bounds.push_back(lb_);
    if (opts_.trace)
      *opts_.trace << "c iter " << stats_.iterations << " core " << core.size() << " wmin " << w_min << " lb " << lb_
                   << '\n';
  }

  MaxSatSolution finish(const Assignment& full) {
    MaxSatSolution sol;
    Var n = std::max(phi_.num_vars(), phi_.max_var());
    sol.model = Assignment(n);
    for (Var v = 1; v <= n; ++v) sol.model.set(v, full.value(v));
    std::vector<LabelSet> falsified;
    for (const auto& c : phi_) {
      if (sol.model.satisfies(c.clause)) continue;
      if (c.labels.empty()) throw std::logic_error("model falsifies a clause with empty label-set");
      falsified.push_back(c.labels);
    }
    LabelSet removed = min_cost_hitting_set(falsified, phi_);
    sol.cost = lb_;
    if (cost_of_labels(phi_, removed) != lb_)
      throw std::logic_error("removed labels cost " + std::to_string(cost_of_labels(phi_, removed)) +
                             " but the lower bound is " + std::to_string(lb_));
    sol.removed.assign(removed.begin(), removed.end());
    return sol;
  }

  const LCNF& phi_;
  MaxSatOptions opts_;
  MaxSatStats stats_;
  WorkingFormula work_;
  std::map<Label, Cost> weight_;
  std::map<Label, Var> selector_;
  std::map<Var, Label> selector_label_;
  Var next_var_ = 0;
  Label next_label_ = 0;
  Cost lb_ = 0;
  std::unique_ptr<SatOracle> inc_;
};

}  // namespace

MaxSatResult solve_lcnf(const LCNF& phi, const MaxSatOptions& opts) { return CoreGuided(phi, opts).run(); }

MaxSatResult solve_fu_malik_lcnf(const LCNF& phi, SolveMode mode, const MaxSatOptions& opts) {
  MaxSatOptions o = opts;
  o.algorithm = Algorithm::FuMalik;
  o.mode = mode;
  return solve_lcnf(phi, o);
}

MaxSatResult solve_wmsu1_lcnf(const LCNF& phi, SolveMode mode, const MaxSatOptions& opts) {
  MaxSatOptions o = opts;
  o.algorithm = Algorithm::Wmsu1;
  o.mode = mode;
  return solve_lcnf(phi, o);
}

MaxSatResult solve_wcnf(const WCNF& f, const MaxSatOptions& opts) { return solve_lcnf(lcnf_from_wcnf(f), opts); }

}  // namespace lmax
