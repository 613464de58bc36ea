#include "lmax/core.hpp"

#include <algorithm>
#include <sstream>

namespace lmax {

Lit Lit::from_dimacs(long long d) {
  if (d == 0) throw std::invalid_argument("literal 0 is not a literal");
  long long v = d < 0 ? -d : d;
  if (v > static_cast<long long>(INT32_MAX)) throw std::out_of_range("variable index too large");
  return Lit(static_cast<Var>(v), d > 0);
}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  for (Lit l : lits_)
    if (l.var() == 0) throw std::invalid_argument("variable index must be >= 1");
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause Clause::from_dimacs(std::initializer_list<long long> lits) {
  std::vector<Lit> v;
  v.reserve(lits.size());
  for (long long d : lits) v.push_back(Lit::from_dimacs(d));
  return Clause(std::move(v));
}

bool Clause::contains(Lit l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::contains_var(Var v) const { return contains(Lit(v, true)) || contains(Lit(v, false)); }

bool Clause::is_tautology() const {
  // complementary literals are adjacent in the sorted order
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var()) return true;
  return false;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

Clause Clause::without(Lit l) const {
  Clause out;
  out.lits_.reserve(lits_.size());
  for (Lit x : lits_)
    if (x != l) out.lits_.push_back(x);
  return out;
}

Clause Clause::with(Lit l) const {
  Clause out = *this;
  auto it = std::lower_bound(out.lits_.begin(), out.lits_.end(), l);
  if (it == out.lits_.end() || *it != l) out.lits_.insert(it, l);
  return out;
}

Clause Clause::merge(const Clause& a, const Clause& b) {
  Clause out;
  out.lits_.reserve(a.size() + b.size());
  std::set_union(a.lits_.begin(), a.lits_.end(), b.lits_.begin(), b.lits_.end(), std::back_inserter(out.lits_));
  return out;
}

std::string Clause::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) os << ' ';
    os << lits_[i].to_dimacs();
  }
  os << ')';
  return os.str();
}

void WCNF::add_hard(Clause c) {
  num_vars = std::max(num_vars, c.max_var());
  hard.push_back(std::move(c));
}

void WCNF::add_soft(Clause c, Cost weight) {
  if (weight == 0) throw std::invalid_argument("soft weight must be >= 1");
  num_vars = std::max(num_vars, c.max_var());
  soft.push_back({std::move(c), weight});
}

Cost WCNF::total_soft_weight() const {
  Cost sum = 0;
  for (const auto& s : soft) sum = checked_add(sum, s.weight);
  return sum;
}

Var WCNF::max_var() const {
  Var m = 0;
  for (const auto& c : hard) m = std::max(m, c.max_var());
  for (const auto& s : soft) m = std::max(m, s.clause.max_var());
  return m;
}

LabelSet make_label_set(std::vector<Label> labels) {
  for (Label l : labels)
    if (l == 0) throw std::invalid_argument("label ids must be >= 1");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

bool label_subset(const LabelSet& a, const LabelSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

LabelSet label_union(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LabelledClause::LabelledClause(Clause c, std::vector<Label> ls)
    : clause(std::move(c)), labels(make_label_set(std::move(ls))) {}

std::string LabelledClause::to_string() const {
  std::ostringstream os;
  os << clause.to_string() << "^{";
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << '}';
  return os.str();
}

bool LCNF::add(LabelledClause c) {
  num_vars_ = std::max(num_vars_, c.clause.max_var());
  for (Label l : c.labels) weights_.try_emplace(l, 1);
  return clauses_.insert(std::move(c)).second;
}

void LCNF::set_weight(Label l, Cost w) {
  if (l == 0) throw std::invalid_argument("label ids must be >= 1");
  if (w == 0) throw std::invalid_argument("label weight must be >= 1");
  weights_[l] = w;
}

Cost LCNF::weight(Label l) const {
  auto it = weights_.find(l);
  if (it == weights_.end()) throw std::out_of_range("label " + std::to_string(l) + " has no weight");
  return it->second;
}

LabelSet LCNF::labels() const {
  std::set<Label> ls;
  for (const auto& c : clauses_) ls.insert(c.labels.begin(), c.labels.end());
  return LabelSet(ls.begin(), ls.end());
}

LabelSet LCNF::all_weighted_labels() const {
  LabelSet out;
  out.reserve(weights_.size());
  for (const auto& [l, w] : weights_) out.push_back(l);
  return out;
}

std::set<Clause> LCNF::clause_set() const {
  std::set<Clause> out;
  for (const auto& c : clauses_) out.insert(c.clause);
  return out;
}

Var LCNF::max_var() const {
  Var m = 0;
  for (const auto& c : clauses_) m = std::max(m, c.clause.max_var());
  return m;
}

LCNF LCNF::with_clauses(Set clauses) const {
  LCNF out;
  out.weights_ = weights_;
  out.num_vars_ = num_vars_;
  for (const auto& c : clauses) out.num_vars_ = std::max(out.num_vars_, c.clause.max_var());
  out.clauses_ = std::move(clauses);
  return out;
}

std::string LCNF::to_string() const {
  std::ostringstream os;
  for (const auto& c : clauses_) {
    for (Lit l : c.clause) os << l.to_dimacs() << ' ';
    os << '|';
    for (Label l : c.labels) os << ' ' << l;
    os << '\n';
  }
  return os.str();
}

bool Assignment::satisfies(const Clause& c) const {
  for (Lit l : c)
    if (satisfies(l)) return true;
  return false;
}

Assignment Assignment::from_bits(Var num_vars, std::uint64_t bits) {
  Assignment a(num_vars);
  for (Var v = 1; v <= num_vars; ++v) a.values_[v] = (bits >> (v - 1)) & 1u;
  return a;
}

LCNF induced_subformula(const LCNF& phi, const LabelSet& m) {
  LCNF::Set kept;
  for (const auto& c : phi)
    if (label_subset(c.labels, m)) kept.insert(c);
  return phi.with_clauses(std::move(kept));
}

LCNF lcnf_from_wcnf(const WCNF& f) {
  LCNF phi;
  phi.set_num_vars(f.num_vars);
  for (const auto& c : f.hard) phi.add(c, {});
  for (std::size_t i = 0; i < f.soft.size(); ++i) {
    Label l = static_cast<Label>(i + 1);
    phi.add(f.soft[i].clause, {l});
    phi.set_weight(l, f.soft[i].weight);
  }
  return phi;
}

Cost cost_of_labels(const LCNF& phi, const LabelSet& r) {
  Cost sum = 0;
  for (Label l : r) sum = checked_add(sum, phi.weight(l));
  return sum;
}

Cost falsified_soft_weight(const WCNF& f, const Assignment& tau, std::vector<std::uint32_t>* falsified) {
  Cost sum = 0;
  for (std::size_t i = 0; i < f.soft.size(); ++i) {
    if (tau.satisfies(f.soft[i].clause)) continue;
    sum = checked_add(sum, f.soft[i].weight);
    if (falsified) falsified->push_back(static_cast<std::uint32_t>(i + 1));
  }
  return sum;
}

bool satisfies_hard(const WCNF& f, const Assignment& tau) {
  return std::all_of(f.hard.begin(), f.hard.end(), [&](const Clause& c) { return tau.satisfies(c); });
}

}  // namespace lmax
