#include "eqp/admissibility.hpp"

#include <numeric>
#include <stdexcept>

namespace eqp {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::A: return "A";
    case Rule::B: return "B";
    case Rule::C: return "C";
    case Rule::DIV3: return "DIV3";
    case Rule::BF: return "BF";
  }
  return "?";
}

const RuleVerdict* ScreenVerdict::find(Rule r) const {
  for (const auto& v : reasons) {
    if (v.rule == r) return &v;
  }
  return nullptr;
}

namespace {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

QuotientMatrix normalised(const QuotientMatrix& m) { return m.b >= m.c ? m : m.swapped(); }

}  // namespace

std::vector<RuleVerdict> check_conditions_abc(const QuotientMatrix& m) {
  std::vector<RuleVerdict> out;
  const bool nonneg = m.a >= 0 && m.b >= 0 && m.c >= 0 && m.d >= 0;
  const bool rule_a = nonneg && m.row_sums_agree() && m.b > 0 && m.c > 0;
  out.push_back({Rule::A, rule_a, true, rule_a ? "row sums " + std::to_string(m.n()) : "need a+b=c+d, b>0, c>0"});

  RuleVerdict rb{Rule::B, false, true, ""};
  if (m.b > 0 && m.c > 0) {
    const long g = std::gcd(m.b, m.c);
    const long q = (m.b + m.c) / g;
    rb.passed = is_power_of_two(q);
    rb.detail = "(b+c)/gcd(b,c) = " + std::to_string(q);
  } else {
    rb.detail = "b and c must be positive";
  }
  out.push_back(rb);

  RuleVerdict rc{Rule::C, true, true, "b = c, not applicable"};
  if (m.b != m.c) {
    // a - c >= -n/3
    rc.passed = 3 * (m.a - m.c) >= -m.n();
    rc.detail = "a-c = " + std::to_string(m.a - m.c) + ", -n/3 = " + std::to_string(-m.n()) + "/3";
  }
  out.push_back(rc);
  return out;
}

bool attains_ci_bound(const QuotientMatrix& m) {
  return m.b != m.c && m.n() % 3 == 0 && 3 * (m.a - m.c) == -m.n();
}

bool divisibility_condition(const QuotientMatrix& m) {
  if (!attains_ci_bound(m)) throw std::invalid_argument("matrix " + m.str() + " does not attain the correlation-immunity bound");
  const int g = std::gcd(m.b, m.c);
  return (m.b / g) % 3 == 0 || (m.c / g) % 3 == 0;
}

Rational bierbrauer_min_N(int n, int q, int t) {
  if (q < 2 || t < 0 || t >= n) throw std::invalid_argument("need q >= 2 and 0 <= t < n");
  BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
  Rational ratio(BigInt((q - 1) * n), BigInt(q * (t + 1)));
  return Rational(qn) * (Rational(1) - ratio);
}

ScreenVerdict screen(const QuotientMatrix& input) {
  ScreenVerdict v;
  v.matrix = normalised(input);
  const auto& m = v.matrix;
  v.reasons = check_conditions_abc(m);

  RuleVerdict div3{Rule::DIV3, true, false, "not on the correlation-immunity bound"};
  if (v.reasons[0].passed && attains_ci_bound(m)) {
    div3.evaluated = true;
    const int g = std::gcd(m.b, m.c);
    div3.passed = divisibility_condition(m);
    div3.detail = "b/g = " + std::to_string(m.b / g) + ", c/g = " + std::to_string(m.c / g);
  }
  v.reasons.push_back(div3);

  // Each cell, read as an orthogonal array of strength (b+c)/2 - 1, against the bound.
  RuleVerdict bf{Rule::BF, false, true, ""};
  if (v.reasons[0].passed && (m.b + m.c) % 2 == 0 && (m.b + m.c) / 2 - 1 < m.n() && m.n() <= kMaxDim * 4) {
    const int n = m.n();
    const int t = (m.b + m.c) / 2 - 1;
    const Rational bound = bierbrauer_min_N(n, 2, t);
    const BigInt total = BigInt(1) << n;
    const Rational n0 = Rational(total * m.c, BigInt(m.b + m.c));
    const Rational n1 = Rational(total * m.b, BigInt(m.b + m.c));
    bf.passed = n0 >= bound && n1 >= bound;
    bf.detail = "t = " + std::to_string(t) + ", bound " + bound.str();
  } else if (v.reasons[0].passed) {
    bf.passed = true;
    bf.evaluated = false;
    bf.detail = "odd b+c, no strength to test";
  } else {
    bf.detail = "condition A fails";
  }
  v.reasons.push_back(bf);

  v.passed = true;
  for (const auto& r : v.reasons) {
    if (r.evaluated && !r.passed) v.passed = false;
  }
  return v;
}

}  // namespace eqp
