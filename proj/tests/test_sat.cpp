#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lmax/oracle.hpp"
#include "lmax/sat_solver.hpp"
#include "support/fixtures.hpp"

using namespace lmax;
using namespace lmax::test;

namespace {

bool model_ok(const std::vector<Clause>& f, const Assignment& m) {
  for (const auto& c : f)
    if (!m.satisfies(c)) return false;
  return true;
}

// Solve f under assumptions; check the answer against truth tables.
void check_instance(const std::vector<Clause>& f, Var n, const std::vector<Lit>& assume) {
  Solver s;
  s.reserve_vars(n);
  for (const auto& c : f) s.add_clause(c);
  SolveOutcome out = s.solve(assume);
  std::vector<Clause> with_units = f;
  for (Lit a : assume) with_units.push_back(Clause{a});
  bool expected = brute_force_sat(with_units, n);
  REQUIRE(out.status != SatStatus::Unknown);
  CHECK((out.status == SatStatus::Sat) == expected);
  if (out.status == SatStatus::Sat) {
    CHECK(model_ok(with_units, out.model));
  } else {
    std::vector<Clause> core = f;
    for (Lit a : out.failed_assumptions) {
      CHECK(std::find(assume.begin(), assume.end(), a) != assume.end());
      core.push_back(Clause{a});
    }
    CHECK(!brute_force_sat(core, n));
  }
}

}  // namespace

TEST_CASE("basic add and solve") {
  Solver s;
  s.add_clause({L(1), L(2)});
  CHECK(s.solve().status == SatStatus::Sat);

  Solver t;
  t.add_clause({L(1)});
  t.add_clause({L(-1)});
  auto out = t.solve();
  CHECK(out.status == SatStatus::Unsat);
  CHECK(out.failed_assumptions.empty());

  Solver e;
  e.add_clause(Clause{});
  CHECK(e.solve().status == SatStatus::Unsat);
  CHECK(e.solve(std::vector<Lit>{L(1)}).status == SatStatus::Unsat);
}

TEST_CASE("assumptions and failed assumptions") {
  // a1 = 1, a2 = 2, x = 3
  Solver s;
  s.add_clause({L(-1), L(3)});
  s.add_clause({L(-2), L(-3)});
  auto out = s.solve(std::vector<Lit>{L(1), L(2)});
  CHECK(out.status == SatStatus::Unsat);
  std::vector<Lit> failed = out.failed_assumptions;
  std::sort(failed.begin(), failed.end());
  CHECK(failed == std::vector<Lit>{L(1), L(2)});
  // the solver stays usable
  CHECK(s.solve(std::vector<Lit>{L(1)}).status == SatStatus::Sat);

  Solver t;
  t.add_clause({L(-1), L(3)});
  auto sat = t.solve(std::vector<Lit>{L(1)});
  CHECK(sat.status == SatStatus::Sat);
  CHECK(sat.model.value(3));

  Solver u;
  for (auto c : {C({1, 2}), C({-1, 2}), C({1, -2}), C({-1, -2})}) u.add_clause(c);
  auto un = u.solve();
  CHECK(un.status == SatStatus::Unsat);
  CHECK(un.failed_assumptions.empty());
}

TEST_CASE("conflict budget gives unknown, never a wrong answer") {
  // pigeonhole 7 into 6 needs many conflicts
  Solver s(SolverOptions{10});
  auto var = [](int i, int j) { return static_cast<Var>(i * 6 + j + 1); };
  for (int i = 0; i < 7; ++i) {
    std::vector<Lit> c;
    for (int j = 0; j < 6; ++j) c.push_back(Lit::pos(var(i, j)));
    s.add_clause(c);
  }
  for (int j = 0; j < 6; ++j)
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b) s.add_clause({Lit::neg(var(a, j)), Lit::neg(var(b, j))});
  CHECK(s.solve().status == SatStatus::Unknown);
}

TEST_CASE("re-solving with the same assumptions gives the same status") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto f = random_cnf(seed, 8, 30, 3);
    Solver s;
    s.reserve_vars(8);
    for (const auto& c : f) s.add_clause(c);
    std::vector<Lit> assume{Lit(1, seed & 1), Lit(2, seed & 2)};
    auto a = s.solve(assume).status;
    auto b = s.solve(assume).status;
    CHECK(a == b);
  }
}

TEST_CASE("exhaustive agreement on small formulas") {
  // all CNFs over two variables with up to 3 clauses from the 8 non-tautological non-empty clauses
  std::vector<Clause> pool;
  for (int a = -2; a <= 2; ++a)
    for (int b = a; b <= 2; ++b) {
      if (a == 0 || b == 0) continue;
      if (a == b) {
        pool.push_back(C({a}));
      } else if (a != -b) {
        pool.push_back(C({a, b}));
      }
    }
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j)
      for (std::size_t k = j; k < pool.size(); ++k) check_instance({pool[i], pool[j], pool[k]}, 2, {});
}

TEST_CASE("random instances with assumptions against truth tables") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Var n = static_cast<Var>(3 + seed % 10);
    auto f = random_cnf(seed, n, 2 + seed % 40, 3);
    std::vector<Lit> assume;
    for (Var v = 1; v <= n; ++v)
      if (rng() % 4 == 0) assume.emplace_back(v, rng() & 1);
    check_instance(f, n, assume);
  }
}

TEST_CASE("incremental use keeps answers correct") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto f = random_cnf(seed, 10, 45, 3);
    Solver s;
    s.reserve_vars(10);
    std::vector<Clause> added;
    for (const auto& c : f) {
      s.add_clause(c);
      added.push_back(c);
      auto out = s.solve();
      CHECK((out.status == SatStatus::Sat) == brute_force_sat(added, 10));
      if (out.status == SatStatus::Unsat) break;
    }
  }
}

TEST_CASE("deterministic for a fixed seed") {
  auto f = random_cnf(99, 12, 40, 3);
  auto run = [&](std::uint64_t seed) {
    Solver s(SolverOptions{0, seed});
    s.reserve_vars(12);
    for (const auto& c : f) s.add_clause(c);
    return s.solve();
  };
  auto a = run(5), b = run(5);
  CHECK(a.status == b.status);
  CHECK(a.model == b.model);
}
