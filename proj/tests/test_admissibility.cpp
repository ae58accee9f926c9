#include <numeric>

#include "doctest.h"
#include "eqp/admissibility.hpp"

using namespace eqp;

namespace {

bool power_of_two_oracle(long v) {
  while (v > 1 && v % 2 == 0) v /= 2;
  return v == 1;
}

}  // namespace

TEST_CASE("conditions a, b, c") {
  for (auto m : {QuotientMatrix{3, 9, 7, 5}, QuotientMatrix{1, 11, 5, 7}}) {
    for (const auto& v : check_conditions_abc(m)) CHECK(v.passed);
  }
  const auto bad = check_conditions_abc({1, 5, 2, 4});
  CHECK(bad[0].passed);
  CHECK_FALSE(bad[1].passed);
  CHECK_FALSE(check_conditions_abc({-1, 13, 4, 8})[0].passed);
  CHECK_FALSE(check_conditions_abc({0, 12, 5, 7})[2].passed);
}

TEST_CASE("condition b against an arithmetic oracle") {
  for (int b = 1; b <= 30; ++b) {
    for (int c = 1; c <= 30; ++c) {
      const int n = std::max(b, c);
      const QuotientMatrix m{n - b, b, c, n - c};
      CHECK(check_conditions_abc(m)[1].passed == power_of_two_oracle((b + c) / std::gcd(b, c)));
    }
  }
}

TEST_CASE("correlation-immunity bound") {
  CHECK(attains_ci_bound({0, 12, 4, 8}));
  CHECK(attains_ci_bound({3, 9, 7, 5}));
  CHECK_FALSE(attains_ci_bound({3, 8, 8, 3}));
  CHECK_FALSE(attains_ci_bound({0, 13, 3, 10}));
}

TEST_CASE("3-divisibility") {
  CHECK_FALSE(divisibility_condition({1, 11, 5, 7}));
  CHECK_FALSE(divisibility_condition({5, 19, 13, 11}));
  CHECK(divisibility_condition({3, 9, 7, 5}));
  CHECK_THROWS_AS(divisibility_condition({3, 8, 8, 3}), std::invalid_argument);
  for (int t = 1; t <= 6; ++t) {
    for (auto m : {QuotientMatrix{1, 11, 5, 7}, QuotientMatrix{3, 9, 7, 5}, QuotientMatrix{0, 3, 1, 2}}) {
      const auto scaled = screen(m.scaled(t)).find(Rule::DIV3);
      CHECK(scaled->passed == screen(m).find(Rule::DIV3)->passed);
    }
  }
}

TEST_CASE("orthogonal-array bound") {
  CHECK(bierbrauer_min_N(12, 2, 7) == 1024);
  CHECK(bierbrauer_min_N(13, 2, 7) == 1536);
  CHECK(bierbrauer_min_N(6, 2, 3) == 16);
  CHECK(bierbrauer_min_N(5, 3, 2) == -27);
  CHECK(bierbrauer_min_N(7, 2, 4) == Rational(128) * Rational(3, 10));
  CHECK_THROWS_AS(bierbrauer_min_N(5, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(bierbrauer_min_N(5, 2, 5), std::invalid_argument);
}

TEST_CASE("screen") {
  for (auto m : {QuotientMatrix{1, 11, 5, 7}, QuotientMatrix{2, 22, 10, 14}, QuotientMatrix{5, 19, 13, 11}}) {
    const auto v = screen(m);
    CHECK_FALSE(v.passed);
    CHECK_FALSE(v.find(Rule::DIV3)->passed);
    CHECK(v.find(Rule::A)->passed);
    CHECK(v.find(Rule::B)->passed);
    CHECK(v.find(Rule::C)->passed);
  }
  for (auto m : {QuotientMatrix{3, 9, 7, 5}, QuotientMatrix{0, 12, 4, 8}, QuotientMatrix{0, 3, 1, 2},
                 QuotientMatrix{1, 5, 3, 3}, QuotientMatrix{0, 6, 2, 4}, QuotientMatrix{1, 23, 9, 15},
                 QuotientMatrix{3, 21, 11, 13}, QuotientMatrix{7, 17, 15, 9}}) {
    const auto v = screen(m);
    CHECK_MESSAGE(v.passed, m.str());
  }
  const auto swapped = screen(QuotientMatrix{5, 7, 11, 1});
  CHECK(swapped.matrix == QuotientMatrix{1, 11, 7, 5});
  CHECK(swapped.matrix.b >= swapped.matrix.c);
  const auto off_bound = screen({3, 8, 8, 3});
  CHECK_FALSE(off_bound.find(Rule::DIV3)->evaluated);
}
