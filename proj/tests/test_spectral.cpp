#include <random>

#include "doctest.h"
#include "eqp/spectral.hpp"
#include "test_support.hpp"

using namespace eqp;

namespace {

std::vector<std::int64_t> naive_transform(const IntegerFunction& f) {
  std::vector<std::int64_t> out(f.values.size(), 0);
  for (Vertex y = 0; y < out.size(); ++y) {
    for (Vertex z = 0; z < out.size(); ++z) out[y] += inner_parity(z, y) ? -f(z) : f(z);
  }
  return out;
}

IntegerFunction random_function(int n, std::mt19937_64& rng, int bound) {
  std::vector<std::int64_t> vals(std::size_t{1} << n);
  for (auto& v : vals) v = static_cast<std::int64_t>(rng() % (2 * bound + 1)) - bound;
  return IntegerFunction(n, std::move(vals));
}

// Direct neighbour counting, independent of VertexSet::neighbours_inside.
std::optional<QuotientMatrix> brute_quotient(int n, std::uint64_t mask) {
  const Vertex size = Vertex{1} << n;
  int a = -1, c = -1;
  for (Vertex x = 0; x < size; ++x) {
    int inside = 0;
    for (Vertex y = 0; y < size; ++y) {
      if (distance(x, y) == 1 && ((mask >> y) & 1)) ++inside;
    }
    int& slot = ((mask >> x) & 1) ? a : c;
    if (slot >= 0 && slot != inside) return std::nullopt;
    slot = inside;
  }
  if (a < 0 || c < 0) return std::nullopt;
  return QuotientMatrix{a, n - a, c, n - c};
}

}  // namespace

TEST_CASE("transform of constants and characters") {
  for (int n : {1, 4, 12}) {
    const auto s = wht(IntegerFunction::constant(n, 1));
    CHECK(s(0) == (std::int64_t{1} << n));
    CHECK(s.support().size() == 1);
  }
  const auto s = wht(IntegerFunction::character(10, 0x2b3));
  CHECK(s(0x2b3) == 1024);
  CHECK(s.support() == std::vector<Vertex>{0x2b3});
}

TEST_CASE("fast transform agrees with the defining sum") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 8; ++n) {
    const auto f = random_function(n, rng, 12);
    CHECK(wht(f).coeffs == naive_transform(f));
  }
}

TEST_CASE("Parseval and involution on random functions") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_function(n, rng, 12);
      const auto s = wht(f);
      std::int64_t lhs = 0, rhs = 0;
      for (auto v : s.coeffs) lhs += v * v;
      for (auto v : f.values) rhs += v * v;
      CHECK(lhs == (rhs << n));
      auto twice = wht(IntegerFunction(n, s.coeffs));
      for (std::size_t i = 0; i < twice.coeffs.size(); ++i) REQUIRE(twice.coeffs[i] == (f.values[i] << n));
      CHECK(inverse_wht(s).values == f.values);
    }
  }
  CHECK_THROWS_AS(inverse_wht(IntegerSpectrum{3, {1, 0, 0, 0, 0, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("translation covariance and character products") {
  std::mt19937_64 rng(9);
  const int n = 7;
  const auto f = random_function(n, rng, 5);
  const auto s = wht(f);
  const Vertex t = 0x35;
  std::vector<std::int64_t> shifted(f.values.size());
  for (Vertex x = 0; x < shifted.size(); ++x) shifted[x] = f(x ^ t);
  const auto st = wht(IntegerFunction(n, shifted));
  for (Vertex y = 0; y < shifted.size(); ++y) CHECK(st(y) == (inner_parity(t, y) ? -s(y) : s(y)));

  const auto cx = IntegerFunction::character(n, 0x11);
  const auto cy = IntegerFunction::character(n, 0x48);
  std::vector<std::int64_t> prod(cx.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = cx.values[i] * cy.values[i];
  CHECK(wht(IntegerFunction(n, prod)).support() == std::vector<Vertex>{0x11 ^ 0x48});
}

TEST_CASE("quotient matrix on Q3") {
  const VertexSet antipodal(3, std::vector<Vertex>{0, 7});
  CHECK(quotient_matrix(antipodal).matrix == QuotientMatrix{0, 3, 1, 2});
  // Every equitable 2-partition of Q3 with matrix [[0,3],[1,2]] is an antipodal pair.
  int found = 0;
  for (std::uint64_t mask = 1; mask < 255; ++mask) {
    const auto q = brute_quotient(3, mask);
    if (q && *q == QuotientMatrix{0, 3, 1, 2}) {
      ++found;
      CHECK(std::popcount(mask) == 2);
      const int x = std::countr_zero(mask);
      CHECK(((mask >> (x ^ 7)) & 1) == 1);
    }
  }
  CHECK(found == 4);
  const VertexSet random(3, std::vector<Vertex>{0, 1, 3});
  const auto check = quotient_matrix(random);
  CHECK_FALSE(check.equitable());
  CHECK_FALSE(check.reason.empty());
  CHECK_FALSE(quotient_matrix(VertexSet(3)).equitable());
}

TEST_CASE("quotient matrix matches brute force up to n = 4 exhaustively") {
  for (int n = 2; n <= 4; ++n) {
    const std::uint64_t limit = std::uint64_t{1} << (1u << n);
    for (std::uint64_t mask = 1; mask + 1 < limit; ++mask) {
      VertexSet s(n);
      for (Vertex x = 0; x < (Vertex{1} << n); ++x) {
        if ((mask >> x) & 1) s.insert(x);
      }
      const auto got = quotient_matrix(s).matrix;
      const auto want = brute_quotient(n, mask);
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("quotient matrix matches brute force on random sets at n = 5, 6") {
  std::mt19937_64 rng(13);
  for (int n = 5; n <= 6; ++n) {
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t mask = rng() & ((n == 6) ? ~std::uint64_t{0} : 0xffffffffu);
      if (mask == 0 || std::popcount(mask) == (1 << n)) continue;
      VertexSet s(n);
      for (Vertex x = 0; x < (Vertex{1} << n); ++x) {
        if ((mask >> x) & 1) s.insert(x);
      }
      REQUIRE(quotient_matrix(s).matrix == brute_quotient(n, mask));
    }
  }
  // Structured equitable sets at n = 6: faces and perfect codes of their unions.
  VertexSet half(6);
  for (Vertex x = 0; x < 64; ++x) {
    if (!(x & coord_bit(6, 0))) half.insert(x);
  }
  CHECK(quotient_matrix(half).matrix == QuotientMatrix{5, 1, 1, 5});
}

TEST_CASE("multi-cell quotient matrix") {
  std::vector<int> cells(8);
  for (Vertex x = 0; x < 8; ++x) cells[x] = weight(x);
  const auto m = quotient_matrix_cells(3, cells, 4);
  REQUIRE(m.has_value());
  CHECK((*m)[0] == std::vector<int>{0, 3, 0, 0});
  CHECK((*m)[1] == std::vector<int>{1, 0, 2, 0});
  CHECK((*m)[2] == std::vector<int>{0, 2, 0, 1});
  cells[1] = 0;
  CHECK_FALSE(quotient_matrix_cells(3, cells, 4).has_value());
}

TEST_CASE("Fourier system on appendix entry 1") {
  const auto p0 = eqp::testing::appendix_entry_one();
  const QuotientMatrix m{0, 12, 4, 8};
  REQUIRE(quotient_matrix(p0).matrix == m);
  const auto report = verify_fourier_system(p0, m);
  CHECK(report.ok());
  CHECK(report.support_weight == 8);
  CHECK(report.norm == 48LL << 24);
  CHECK(correlation_immunity_order(p0) == 7);
  CHECK(kernel_size(p0) == 1024);
  const auto ker = kernel(p0);
  CHECK(ker.size() == 10);
  const auto expected = eqp::testing::coset_union(12, ker, {0});
  CHECK(expected == p0);
  const auto edges = composite_edge_counts(p0);
  for (auto e : edges) CHECK(e == 1024);
  const auto norms = directional_norms(wht(IntegerFunction::associated(p0, 12, 4)));
  for (auto v : norms) CHECK(v == norms[0]);

  // Eigenfunction property: (n-b-c) f(x) = sum of f over neighbours.
  const auto f = IntegerFunction::associated(p0, 12, 4);
  for (Vertex x = 0; x < 4096; ++x) {
    std::int64_t around = 0;
    for (int c = 0; c < 12; ++c) around += f(x ^ coord_bit(12, c));
    REQUIRE(around == -4 * f(x));
  }
  CHECK_THROWS_AS(verify_fourier_system(p0, QuotientMatrix{1, 11, 5, 7}), std::invalid_argument);
}

TEST_CASE("correlation immunity and kernels on small sets") {
  const VertexSet antipodal(3, std::vector<Vertex>{0, 7});
  CHECK(correlation_immunity_order(antipodal) == 1);
  CHECK(kernel(antipodal) == std::vector<Vertex>{7});
  // Brute-force periods.
  for (Vertex y = 1; y < 8; ++y) CHECK((antipodal.translate(y) == antipodal) == (y == 7));
  VertexSet half(5);
  for (Vertex x = 0; x < 32; ++x) {
    if (!(x & coord_bit(5, 0))) half.insert(x);
  }
  CHECK(correlation_immunity_order(half) == 0);
  CHECK(kernel_size(half) == 16);
  const auto edges = composite_edge_counts(half);
  CHECK(edges[0] == 16);
  for (int c = 1; c < 5; ++c) CHECK(edges[static_cast<std::size_t>(c)] == 0);
  const auto norms = directional_norms(wht(IntegerFunction::constant(5, 3)));
  for (auto v : norms) CHECK(v == 96 * 96);
}

TEST_CASE("face sums and the low-weight identity") {
  std::mt19937_64 rng(21);
  const int n = 6;
  const auto f = random_function(n, rng, 7);
  CHECK(face_sum(f, {0, 0x2c}) == f(0x2c));
  for (Vertex x = 0; x < 64; ++x) {
    const auto sides = low_weight_fourier_identity(f, x);
    CHECK(sides.lhs == sides.rhs);
  }
  const auto one = IntegerFunction::constant(n, 1);
  for (Vertex x : {Vertex{0}, Vertex{0x13}, all_ones(n)}) {
    const auto sides = low_weight_fourier_identity(one, x);
    CHECK(sides.lhs == (std::int64_t{1} << (2 * n - weight(x))));
    CHECK(sides.rhs == sides.lhs);
  }
  // Zero sums over large faces of the entry-1 associated function.
  const auto g = IntegerFunction::associated(eqp::testing::appendix_entry_one(), 12, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Vertex mask = 0;
    while (weight(mask) < 5) mask |= coord_bit(12, static_cast<int>(rng() % 12));
    CHECK(face_sum(g, {mask, static_cast<Vertex>(rng() & 0xfff)}) == 0);
  }
}

TEST_CASE("spectrum dump") {
  const auto s = wht(IntegerFunction::character(5, 0x13));
  CHECK(spectrum_dump(s) == "13\t32\n");
}
