#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lmax/lcnf_prep.hpp"
#include "lmax/oracle.hpp"
#include "support/fixtures.hpp"

using namespace lmax;
using namespace lmax::test;

namespace {

LabelledClause LC(std::initializer_list<long long> lits, std::vector<Label> labels) {
  return LabelledClause(Clause::from_dimacs(lits), std::move(labels));
}

LCNF make(std::initializer_list<LabelledClause> cls) {
  LCNF phi;
  for (const auto& c : cls) phi.add(c);
  return phi;
}

bool models(const Assignment& tau, const LCNF& phi, const LabelSet& s) {
  for (const auto& c : induced_subformula(phi, s))
    if (!tau.satisfies(c.clause)) return false;
  return true;
}

}  // namespace

// x = 1, a = 2, b = 3, c = 4, d = 5
TEST_CASE("labelled resolution") {
  CHECK(l_resolve(LC({1, 2}, {1}), LC({-1, 3}, {2}), 1) == LC({2, 3}, {1, 2}));
  CHECK(l_resolve(LC({1, 2}, {}), LC({-1, 2}, {}), 1) == LC({2}, {}));
  LabelledClause taut = l_resolve(LC({1, 2}, {1}), LC({-1, -2}, {2}), 1);
  CHECK(taut.clause.is_tautology());
  CHECK(taut.labels == LabelSet{1, 2});
  CHECK(l_ve(make({LC({1, 2}, {1}), LC({-1, -2}, {2})}), 1).empty());
  CHECK_THROWS_AS(l_resolve(LC({-1, 2}, {1}), LC({-1, 3}, {2}), 1), std::invalid_argument);
}

TEST_CASE("labelled variable elimination") {
  CHECK(l_ve(make({LC({1, 2}, {1}), LC({-1, 3}, {2})}), 1).clauses() == make({LC({2, 3}, {1, 2})}).clauses());
  // an empty labelled clause is produced and kept
  LCNF phi = make({LC({1}, {}), LC({-1}, {1}), LC({4}, {2})});
  CHECK(l_ve(phi, 1).clauses() == make({LC({}, {1}), LC({4}, {2})}).clauses());
}

TEST_CASE("elimination commutes with induced subformulas") {
  LCNF phi = example2();
  CHECK(l_ve(induced_subformula(phi, {1}), p).clauses() == induced_subformula(l_ve(phi, p), {1}).clauses());
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    LCNF rnd = random_lcnf(seed, 5, 10, 4, 2, 2, 0.2);
    for (Var x = 1; x <= 5; ++x)
      for (std::uint32_t m = 0; m < 16; ++m) {
        LabelSet s;
        for (Label l = 1; l <= 4; ++l)
          if ((m >> (l - 1)) & 1) s.push_back(l);
        CHECK(l_ve(induced_subformula(rnd, s), x).clauses() == induced_subformula(l_ve(rnd, x), s).clauses());
      }
  }
}

TEST_CASE("bounded elimination guard") {
  LCNF shrinks = make({LC({1, 2}, {1}), LC({-1, 3}, {2})});
  CHECK(l_bve(shrinks, 1).clauses() == make({LC({2, 3}, {1, 2})}).clauses());
  LCNF same = make({LC({1, 2}, {1}), LC({1, 3}, {2}), LC({-1, 4}, {3}), LC({-1, 5}, {4})});
  CHECK(l_bve(same, 1) == same);
  CHECK(l_bve(same, 9) == same);
}

TEST_CASE("labelled subsumption") {
  LCNF phi = example2();
  LabelledClause c1 = LC({1}, {2}), c2 = LC({1, -2}, {1, 2});
  LCNF out = l_sub(phi, c1, c2);
  CHECK(out.size() == phi.size() - 1);
  CHECK(!out.contains(c2));
  CHECK(l_sub(phi, LC({1, 2}, {1}), c2) == phi);
  LCNF other = make({LC({1}, {2}), LC({1, 2}, {1})});
  CHECK(l_sub(other, LC({1}, {2}), LC({1, 2}, {1})) == other);
  // equal clause parts are never subsumption
  CHECK(!l_subsumes(LC({1}, {}), LC({1}, {1})));
}

TEST_CASE("self-subsuming resolution") {
  // l = 1, a = 2, b = 3, c = 4
  LCNF phi = make({LC({1, 2}, {1}), LC({-1, 2, 3}, {1, 2})});
  LCNF out = l_ssr(phi, LC({1, 2}, {1}), LC({-1, 2, 3}, {1, 2}));
  CHECK(out.clauses() == make({LC({1, 2}, {1}), LC({2, 3}, {1, 2})}).clauses());
  LCNF guard = make({LC({1, 2}, {2}), LC({-1, 2, 3}, {1})});
  CHECK(l_ssr(guard, LC({1, 2}, {2}), LC({-1, 2, 3}, {1})) == guard);
  LCNF notsub = make({LC({1, 2, 4}, {1}), LC({-1, 2, 3}, {1})});
  CHECK(l_ssr(notsub, LC({1, 2, 4}, {1}), LC({-1, 2, 3}, {1})) == notsub);
}

TEST_CASE("plain MaxSAT labelling blocks subsumption") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    LCNF phi = lcnf_from_wcnf(random_wcnf(seed, 5, 12, 3, 0.0));
    for (const auto& a : phi)
      for (const auto& b : phi) CHECK(!l_subsumes(a, b));
  }
}

TEST_CASE("schedule on the running labelled example") {
  LCNF phi = example2();
  PrepConfig only_sub;
  only_sub.self_subsumption = false;
  only_sub.variable_elimination = false;
  PrepResult r = preprocess_lcnf(phi, only_sub);
  CHECK(!r.formula.contains(LC({1, -2}, {1, 2})));
  CHECK(r.stats.subsumed == 1);
  CHECK(enumerate_mcs(r.formula) == SetFamily{{2, 3}});
  CHECK(enumerate_mcs(phi) == SetFamily{{2, 3}});

  PrepResult full = preprocess_lcnf(phi);
  auto best = brute_force_lcnf(full.formula);
  REQUIRE(best);
  CHECK(best->cost == 2);
  CHECK(best->removed == std::vector<std::uint32_t>{2, 3});
}

TEST_CASE("empty-labelled satisfiable formulas vanish") {
  LCNF phi = make({LC({1, 2}, {}), LC({-1, 3}, {}), LC({-2, -3}, {})});
  PrepResult r = preprocess_lcnf(phi);
  CHECK(r.formula.empty());
  auto best = brute_force_lcnf(r.formula);
  REQUIRE(best);
  CHECK(best->cost == 0);
  Assignment tau = bve_reconstruct(r.record, Assignment(3), {});
  CHECK(models(tau, phi, {}));
}

TEST_CASE("empty schedule is the identity") {
  LCNF phi = example2();
  PrepResult r = preprocess_lcnf(phi, PrepConfig::none());
  CHECK(r.formula == phi);
  CHECK(r.record.empty());
}

TEST_CASE("frozen variables and label cap") {
  LCNF phi = make({LC({1, 2}, {1}), LC({-1, 3}, {2})});
  PrepConfig frozen;
  frozen.frozen = {1, 2, 3};
  CHECK(preprocess_lcnf(phi, frozen).formula == phi);
  PrepConfig capped;
  capped.max_label_set = 1;
  capped.frozen = {2, 3};
  CHECK(preprocess_lcnf(phi, capped).formula == phi);
}

TEST_CASE("reconstruction of eliminated variables") {
  BveRecord rec{{1, {LC({1, 2}, {}), LC({-1, 3}, {})}}};
  Assignment a(3);
  a.set(2, true);
  CHECK(!bve_reconstruct(rec, a, {}).value(1));
  Assignment b = a;
  b.set(3, true);
  CHECK(!bve_reconstruct(rec, b, {}).value(1));
  Assignment forced(3);  // a = 0 forces x = 1
  forced.set(3, true);
  CHECK(bve_reconstruct(rec, forced, {}).value(1));

  // x = 1, c = 4: label 1 not retained, so (x)^{1} is ignored
  BveRecord ignore{{1, {LC({1}, {1}), LC({-1, 4}, {})}}};
  Assignment c0(4);
  Assignment out = bve_reconstruct(ignore, c0, {});
  CHECK(!out.value(1));
  CHECK(out.satisfies(C({-1, 4})));
}

TEST_CASE("record text") {
  BveRecord rec{{1, {LC({1, 2}, {1, 3}), LC({-1}, {})}}};
  std::ostringstream os;
  write_bve_record(os, rec);
  CHECK(os.str() == "x 1\n1 2 | 1 3\n-1 |\n");
}

TEST_CASE("labels under elimination") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    LCNF phi = random_lcnf(seed, 6, 10, 6, 3, 2, 0.2);
    LabelSet before = phi.labels();
    for (Var x = 1; x <= 6; ++x) {
      LCNF out = l_bve(phi, x);
      LabelSet after = out.labels();
      CHECK(label_subset(after, before));
      // labels only disappear with clauses whose resolvents are all tautological
      bool every_clause_resolves = true;
      for (const auto& c : phi) {
        bool pos = c.clause.contains(Lit(x, true)), neg = c.clause.contains(Lit(x, false));
        if (!pos && !neg) continue;
        bool some = false;
        for (const auto& d : phi) {
          if (pos && d.clause.contains(Lit(x, false)) && !l_resolve(c, d, x).clause.is_tautology()) some = true;
          if (neg && d.clause.contains(Lit(x, true)) && !l_resolve(d, c, x).clause.is_tautology()) some = true;
        }
        every_clause_resolves = every_clause_resolves && some;
      }
      if (every_clause_resolves || out == phi) CHECK(after == before);
    }
    for (const auto& a : phi)
      for (const auto& b : phi) {
        CHECK(l_ssr(phi, a, b).labels() == before);
        CHECK(label_subset(l_sub(phi, a, b).labels(), before));
      }
  }
}

TEST_CASE("MCSes are preserved by every single step") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    LCNF phi = random_lcnf(seed, 2 + seed % 6, 4 + seed % 9, 1 + seed % 6, 3, 3, 0.25);
    SetFamily mcs = enumerate_mcs(phi);
    for (Var x = 1; x <= phi.max_var(); ++x) CHECK(enumerate_mcs(l_bve(phi, x)) == mcs);
    for (const auto& a : phi)
      for (const auto& b : phi) {
        if (l_subsumes(a, b)) CHECK(enumerate_mcs(l_sub(phi, a, b)) == mcs);
        if (l_ssr_result(a, b)) CHECK(enumerate_mcs(l_ssr(phi, a, b)) == mcs);
      }
  }
}

TEST_CASE("full schedule keeps the optimum and reconstructs models") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    LCNF phi = random_lcnf(seed, 3 + seed % 7, 5 + seed % 12, 1 + seed % 7, 3, 4, 0.3);
    PrepResult r = preprocess_lcnf(phi);
    auto before = brute_force_lcnf(phi);
    auto after = brute_force_lcnf(r.formula);
    REQUIRE(bool(before) == bool(after));
    if (!before) continue;
    CHECK(before->cost == after->cost);
    LabelSet retained;
    for (Label l : phi.all_weighted_labels())
      if (!std::binary_search(after->removed.begin(), after->removed.end(), l)) retained.push_back(l);
    Assignment tau = bve_reconstruct(r.record, after->model, retained);
    CHECK(models(tau, phi, retained));
  }
}
