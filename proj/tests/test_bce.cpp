#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "lmax/bce.hpp"
#include "lmax/oracle.hpp"
#include "support/fixtures.hpp"

using namespace lmax;
using namespace lmax::test;

namespace {

WCNF soft_cnf(const std::vector<Clause>& cls) {
  WCNF f;
  for (const auto& c : cls) f.add_soft(c, 1);
  return f;
}

// Input indices of the surviving clauses, hard and soft alike (soft shifted by |hard|).
std::vector<std::size_t> survivors(const WCNF& f, const BceResult& r) {
  std::vector<std::size_t> out = r.kept_hard;
  for (auto i : r.kept_soft) out.push_back(f.hard.size() + i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("blocked literal examples") {
  std::vector<Clause> f1{C({1, 2}), C({-2, 3})};
  CHECK(is_blocked(f1, C({1, 2}), L(1)));
  std::vector<Clause> f2{C({1, 2}), C({-1, 2})};
  CHECK(!is_blocked(f2, C({1, 2}), L(1)));
  std::vector<Clause> f3{C({1, 2}), C({-1, -2, 3})};
  CHECK(is_blocked(f3, C({1, 2}), L(1)));
}

TEST_CASE("nothing is blocked in the subsumption example") {
  WCNF f = example1();
  auto cls = all_clauses(f);
  // exhaustive: no clause is blocked on any of its literals
  for (const auto& c : cls)
    for (Lit l : c) CHECK(!is_blocked(cls, c, l));
  BceResult r = bce_fixpoint(f);
  CHECK(r.record.empty());
  CHECK(r.formula == f);
}

TEST_CASE("pure literals cascade") {
  WCNF f = soft_cnf({C({1, 2}), C({-2})});
  BceResult r = bce_fixpoint(f);
  // (-2) only becomes blocked once (1 2) is gone
  CHECK(r.formula.soft.empty());
  REQUIRE(r.record.size() == 2);
  CHECK(r.record[0].clause == C({1, 2}));
  CHECK(r.record[0].blocking == L(1));
  CHECK(r.record[1].clause == C({-2}));
  CHECK(r.record[1].blocking == L(-2));
  CHECK(r.kept_soft.empty());
}

TEST_CASE("clauses without blocking literals stay") {
  WCNF f = soft_cnf({C({1, 2}), C({-1, 3}), C({-3}), C({-2})});
  BceResult r = bce_fixpoint(f);
  CHECK(r.record.empty());
  CHECK(r.kept_soft == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("empty formula") {
  BceResult r = bce_fixpoint(WCNF{});
  CHECK(r.record.empty());
  CHECK(r.formula.hard.empty());
  CHECK(r.formula.soft.empty());
}

TEST_CASE("tautologies go first") {
  WCNF f = soft_cnf({C({1, -1, 2}), C({3}), C({-3})});
  BceResult r = bce_fixpoint(f);
  REQUIRE(!r.record.empty());
  CHECK(r.record[0].clause == C({1, -1, 2}));
  CHECK(r.kept_soft == std::vector<std::size_t>{1, 2});
}

TEST_CASE("soft-only mode keeps hard clauses") {
  WCNF f;
  f.add_hard(C({1, 2}));
  f.add_soft(C({-2}), 1);
  CHECK(bce_fixpoint(f).formula.hard.empty());
  BceResult r = bce_fixpoint(f, BceOptions{true});
  CHECK(r.formula.hard == std::vector<Clause>{C({1, 2})});
}

TEST_CASE("reconstruction flips blocking literals") {
  BceRecord rec{{C({1, 2}), L(1), {}}};
  Assignment tau(2);
  Assignment out = bce_reconstruct(rec, tau);
  CHECK(out.value(1));
  CHECK(!out.value(2));

  Assignment sat(2);
  sat.set(2, true);
  CHECK(bce_reconstruct(rec, sat) == sat);

  // a = 1, b = 2, c = 3; last entry is processed first
  BceRecord two{{C({1, 2}), L(1), {}}, {C({-1, 3}), L(3), {}}};
  Assignment zero(3);
  Assignment lifted = bce_reconstruct(two, zero);
  CHECK(lifted.value(1));
  CHECK(!lifted.value(2));
  CHECK(!lifted.value(3));
  CHECK(lifted.satisfies(C({1, 2})));
  // (~a v c) is now false: this record is not a legal elimination order,
  // since (a v b) was not blocked while (~a v c) was still present
  CHECK(!lifted.satisfies(C({-1, 3})));
}

TEST_CASE("record text") {
  BceRecord rec{{C({1, -2}), L(-2), {}}};
  std::ostringstream os;
  write_bce_record(os, rec);
  CHECK(os.str() == "1 -2 0 -2\n");
}

TEST_CASE("every recorded clause was blocked when removed") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    WCNF f = random_wcnf(seed, 6, 14, 3, 0.3);
    BceResult r = bce_fixpoint(f);
    // replay: entry i must be blocked in (result + entries i..end)
    for (std::size_t i = 0; i < r.record.size(); ++i) {
      std::vector<Clause> at_time = all_clauses(r.formula);
      for (std::size_t j = i; j < r.record.size(); ++j) at_time.push_back(r.record[j].clause);
      CHECK(is_blocked(at_time, r.record[i].clause, r.record[i].blocking));
    }
    // and the result is a fixpoint
    auto rest = all_clauses(r.formula);
    for (const auto& c : rest)
      for (Lit l : c) CHECK(!is_blocked(rest, c, l));
  }
}

TEST_CASE("elimination order does not matter") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    WCNF f = random_wcnf(seed, 5, 12, 1, 0.0);
    WCNF rev;
    rev.num_vars = f.num_vars;
    for (auto it = f.soft.rbegin(); it != f.soft.rend(); ++it) rev.add_soft(it->clause, it->weight);
    auto a = bce_fixpoint(f), b = bce_fixpoint(rev);
    std::multiset<Clause> sa, sb;
    for (const auto& s : a.formula.soft) sa.insert(s.clause);
    for (const auto& s : b.formula.soft) sb.insert(s.clause);
    CHECK(sa == sb);
  }
}

TEST_CASE("monotone on random subsets") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    WCNF f = random_wcnf(seed, 6, 14, 1, 0.0);
    auto full = survivors(f, bce_fixpoint(f));
    for (int rep = 0; rep < 5; ++rep) {
      WCNF sub;
      sub.num_vars = f.num_vars;
      std::vector<std::size_t> picked;
      for (std::size_t i = 0; i < f.soft.size(); ++i)
        if (rng() & 1) {
          picked.push_back(i);
          sub.add_soft(f.soft[i].clause, 1);
        }
      for (auto k : survivors(sub, bce_fixpoint(sub)))
        CHECK(std::binary_search(full.begin(), full.end(), picked[k]));
    }
  }
}

TEST_CASE("MUSes survive elimination") {
  int unsat = 0;
  for (std::uint64_t seed = 1; seed <= 300 && unsat < 60; ++seed) {
    auto cls = random_cnf(seed, 4, 10, 3);
    if (brute_force_sat(cls, 4)) continue;
    ++unsat;
    WCNF f = soft_cnf(cls);
    BceResult r = bce_fixpoint(f);
    std::vector<Clause> kept;
    for (const auto& s : r.formula.soft) kept.push_back(s.clause);
    SetFamily after;
    for (const auto& m : enumerate_mus(kept)) {
      std::vector<std::uint32_t> mapped;
      for (auto i : m) mapped.push_back(static_cast<std::uint32_t>(r.kept_soft[i - 1] + 1));
      std::sort(mapped.begin(), mapped.end());
      after.insert(mapped);
    }
    CHECK(after == enumerate_mus(cls));
  }
  CHECK(unsat > 10);
}

TEST_CASE("reconstruction keeps the optimum") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    WCNF f = random_wcnf(seed, 6, 12, 4, 0.3);
    BceResult r = bce_fixpoint(f);
    auto before = brute_force_maxsat(f);
    auto after = brute_force_maxsat(r.formula, 20);
    REQUIRE(before.hard_satisfiable == after.hard_satisfiable);
    if (!before.hard_satisfiable) continue;
    CHECK(before.solution.cost == after.solution.cost);
    Assignment lifted = bce_reconstruct(r.record, after.solution.model);
    CHECK(satisfies_hard(f, lifted));
    CHECK(falsified_soft_weight(f, lifted) == after.solution.cost);
  }
}
