#include "lmax/pipeline.hpp"

#include <algorithm>

namespace lmax {

Preprocessed preprocess(const WCNF& f, const PipelineConfig& config) {
  Preprocessed out;
  const WCNF* base = &f;
  if (config.bce) {
    out.bce = bce_fixpoint(f, BceOptions{config.bce_soft_only});
    base = &out.bce->formula;
  }

  LCNF phi;
  phi.set_num_vars(std::max(f.num_vars, f.max_var()));
  for (std::size_t i = 0; i < f.soft.size(); ++i) phi.set_weight(static_cast<Label>(i + 1), f.soft[i].weight);
  for (const auto& c : base->hard) phi.add(c, {});
  for (std::size_t i = 0; i < base->soft.size(); ++i) {
    std::size_t orig = out.bce ? out.bce->kept_soft[i] : i;
    phi.add(base->soft[i].clause, {static_cast<Label>(orig + 1)});
  }
  out.lcnf = phi;

  if (config.rs)
    out.prep = preprocess_lcnf(phi, config.prep);
  else
    out.prep.formula = phi;
  return out;
}

Assignment reconstruct(const Preprocessed& pre, const Assignment& tau, const LabelSet& removed) {
  LabelSet retained;
  for (Label l : pre.lcnf.all_weighted_labels())
    if (!std::binary_search(removed.begin(), removed.end(), l)) retained.push_back(l);
  Assignment out = bve_reconstruct(pre.prep.record, tau, retained);
  out.resize(pre.lcnf.num_vars());
  if (pre.bce) out = bce_reconstruct(pre.bce->record, out);
  return out;
}

PipelineResult solve_pipeline(const WCNF& f, const PipelineConfig& config) {
  PipelineResult res;
  Preprocessed pre = preprocess(f, config);
  res.prep_stats = pre.prep.stats;
  if (pre.bce) res.bce_eliminated = pre.bce->record.size();

  MaxSatOptions opts;
  opts.algorithm = config.algorithm;
  opts.mode = config.mode;
  opts.trace = config.trace;
  opts.factory = config.factory ? config.factory
                                : default_oracle_factory(SolverOptions{config.conflict_budget, config.seed});
  MaxSatResult mr = solve_lcnf(pre.prep.formula, opts);
  res.status = mr.status;
  res.stats = mr.stats;
  if (mr.status != MaxSatStatus::Optimum) return res;

  LabelSet removed(mr.solution.removed.begin(), mr.solution.removed.end());
  Assignment model = reconstruct(pre, mr.solution.model, removed);
  Var n = std::max(f.num_vars, f.max_var());
  res.solution.model = Assignment(n);
  for (Var v = 1; v <= n; ++v) res.solution.model.set(v, model.value(v));
  res.solution.cost = mr.solution.cost;
  Cost falsified = falsified_soft_weight(f, res.solution.model, &res.solution.removed);

  if (config.verify) {
    if (!satisfies_hard(f, res.solution.model)) throw VerificationError("reconstructed model falsifies a hard clause");
    if (falsified != res.solution.cost)
      throw VerificationError("reconstructed model falsifies weight " + std::to_string(falsified) +
                              " but the optimum is " + std::to_string(res.solution.cost));
  }
  return res;
}

}  // namespace lmax
