#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lmax/cardinality.hpp"
#include "support/fixtures.hpp"

using namespace lmax;
using namespace lmax::test;

namespace {

std::set<Clause> as_set(const Equals1Encoding& e) { return {e.clauses.begin(), e.clauses.end()}; }

// Satisfying assignments of the encoding, projected onto vars 1..n.
std::set<std::uint64_t> projected_models(const Equals1Encoding& e, Var n) {
  Var total = n;
  for (const auto& c : e.clauses) total = std::max(total, c.max_var());
  std::set<std::uint64_t> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total); ++bits) {
    Assignment tau = Assignment::from_bits(total, bits);
    bool ok = true;
    for (const auto& c : e.clauses) ok = ok && tau.satisfies(c);
    if (ok) out.insert(bits & ((std::uint64_t{1} << n) - 1));
  }
  return out;
}

}  // namespace

TEST_CASE("small encodings") {
  CHECK(as_set(encode_equals1({1})) == std::set<Clause>{C({1})});
  CHECK(as_set(encode_equals1({1, 2})) == std::set<Clause>{C({1, 2}), C({-1, -2})});
  auto three = encode_equals1({1, 2, 3});
  CHECK(as_set(three) == std::set<Clause>{C({1, 2, 3}), C({-1, -2}), C({-1, -3}), C({-2, -3})});
  CHECK(three.aux_vars.empty());
  CHECK(projected_models(three, 3).size() == 3);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(encode_equals1({}), std::invalid_argument);
  CHECK_THROWS_AS(encode_equals1({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("models are exactly the one-hot vectors") {
  for (Var n = 1; n <= 6; ++n) {
    std::vector<Var> vars;
    std::set<std::uint64_t> one_hot;
    for (Var v = 1; v <= n; ++v) {
      vars.push_back(v);
      one_hot.insert(std::uint64_t{1} << (v - 1));
    }
    CHECK(projected_models(encode_equals1(vars), n) == one_hot);
  }
}
