#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "eqp/spectral.hpp"

namespace eqp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Rule { A, B, C, DIV3, BF };

std::string rule_name(Rule r);

struct RuleVerdict {
  Rule rule;
  bool passed = false;
  bool evaluated = true;  // DIV3 is skipped off the correlation-immunity bound
  std::string detail;
};

struct ScreenVerdict {
  QuotientMatrix matrix;  // reported with b >= c
  bool passed = false;
  std::vector<RuleVerdict> reasons;

  const RuleVerdict* find(Rule r) const;
};

std::vector<RuleVerdict> check_conditions_abc(const QuotientMatrix& m);
bool attains_ci_bound(const QuotientMatrix& m);
// Throws std::invalid_argument when m does not attain the bound.
bool divisibility_condition(const QuotientMatrix& m);
// q^n (1 - (q-1) n / (q (t+1))), exactly.
Rational bierbrauer_min_N(int n, int q, int t);
ScreenVerdict screen(const QuotientMatrix& m);

}  // namespace eqp
