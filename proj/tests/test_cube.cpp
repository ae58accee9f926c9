#include <random>

#include "doctest.h"
#include "eqp/cube.hpp"
#include "eqp/gf2.hpp"
#include "test_support.hpp"

using namespace eqp;

TEST_CASE("weight and hex rendering") {
  CHECK(weight(0) == 0);
  CHECK(weight(parse_hex("0a1", 12)) == 3);
  CHECK(weight(all_ones(12)) == 12);
  CHECK(to_hex(0x0a1, 12) == "0a1");
  CHECK(to_binary(0x0a1, 12) == "000010100001");
  CHECK(parse_binary("000010100001") == 0x0a1);
  CHECK(to_hex(0x1f, 5) == "1f");
  CHECK_THROWS_AS(parse_hex("0g1", 12), std::invalid_argument);
  CHECK_THROWS_AS(parse_hex("1000", 12), std::invalid_argument);
  CHECK_THROWS_AS(check_dimension(17), std::invalid_argument);
}

TEST_CASE("coordinate one is the most significant bit") {
  CHECK(coord_bit(12, 0) == 0x800);
  CHECK(coord_bit(12, 11) == 0x001);
  CHECK(to_binary(coord_bit(5, 0), 5) == "10000");
}

TEST_CASE("partial order") {
  for (Vertex y = 0; y < 16; ++y) {
    CHECK(dominated_by(0, y));
    CHECK(dominated_by(y, y));
  }
  CHECK_FALSE(dominated_by(coord_bit(6, 0), coord_bit(6, 1)));
  // Oracle: coordinate-wise comparison.
  for (Vertex x = 0; x < 64; ++x) {
    for (Vertex y = 0; y < 64; ++y) {
      bool le = true;
      for (int c = 0; c < 6; ++c) le = le && (!(x & coord_bit(6, c)) || (y & coord_bit(6, c)));
      CHECK(dominated_by(x, y) == le);
    }
  }
}

TEST_CASE("weight of a sum equals distance") {
  for (Vertex x = 0; x < 256; ++x) {
    for (Vertex y = 0; y < 256; ++y) {
      int diff = 0;
      for (int c = 0; c < 8; ++c) diff += ((x >> c) & 1) != ((y >> c) & 1);
      REQUIRE(weight(x ^ y) == diff);
      REQUIRE(distance(x, y) == diff);
    }
  }
}

TEST_CASE("face vertices") {
  CHECK(face_vertices({0, 0x2a}) == std::vector<Vertex>{0x2a});
  CHECK(face_vertices({0x5, 0}) == std::vector<Vertex>{0, 1, 4, 5});
  CHECK(face_vertices({all_ones(6), 0}).size() == 64);
  // Splitting by a coordinate in the mask yields two faces of one dimension less.
  const Face f{0b101101, 0b010010};
  for (int j = 0; j < 6; ++j) {
    const Vertex bit = Vertex{1} << j;
    if (!(f.mask & bit)) continue;
    auto lo = face_vertices({f.mask ^ bit, f.base & ~bit});
    auto hi = face_vertices({f.mask ^ bit, f.base | bit});
    std::vector<Vertex> merged(lo);
    merged.insert(merged.end(), hi.begin(), hi.end());
    std::sort(merged.begin(), merged.end());
    CHECK(merged == face_vertices(f));
    CHECK(lo.size() == 8);
  }
}

TEST_CASE("vertex set algebra") {
  VertexSet s(5, std::vector<Vertex>{1, 3, 7});
  CHECK(s.size() == 3);
  CHECK(s.complement().size() == 29);
  CHECK(s.translate(1).members() == std::vector<Vertex>{0, 2, 6});
  CHECK(s.neighbours_inside(3) == 2);
  VertexSet big(12);
  big.insert(0x0ff);
  CHECK(big.translate(0x100).members() == std::vector<Vertex>{0x1ff});
  CHECK(big.translate(0x0c0).members() == std::vector<Vertex>{0x03f});
  CHECK_THROWS_AS(VertexSet(5, std::vector<Vertex>{32}), std::invalid_argument);
}

TEST_CASE("automorphisms") {
  std::mt19937_64 rng(7);
  const int n = 6;
  const VertexSet single(n, std::vector<Vertex>{0});
  CHECK(apply_automorphism(CubeAutomorphism::translation(n, 0x15), single).members() == std::vector<Vertex>{0x15});
  const auto s = eqp::testing::random_set(n, 20, rng);
  CHECK(apply_automorphism(CubeAutomorphism::identity(n), s) == s);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = eqp::testing::random_automorphism(n, rng);
    const auto h = eqp::testing::random_automorphism(n, rng);
    CHECK(g.compose(g.inverse()).is_identity());
    for (Vertex x = 0; x < 64; ++x) {
      REQUIRE(g.compose(h)(x) == g(h(x)));
      for (int c = 0; c < n; ++c) REQUIRE(distance(g(x), g(x ^ coord_bit(n, c))) == 1);
    }
    const auto image = apply_automorphism(g, s);
    CHECK(image.size() == s.size());
    CHECK(affine_rank(image) == affine_rank(s));
  }
  // Coordinate c moves to perm[c].
  const CubeAutomorphism swap({1, 0, 2}, 0);
  CHECK(swap(0b100) == 0b010);
}

TEST_CASE("affine rank") {
  CHECK(affine_rank(VertexSet(4, std::vector<Vertex>{9})) == 0);
  CHECK(affine_rank(VertexSet(4, std::vector<Vertex>{0, 8, 4, 12})) == 2);
  CHECK(affine_rank(VertexSet(4, std::vector<Vertex>{1, 9, 5, 13})) == 2);
  CHECK(affine_rank(eqp::testing::appendix_entry_one()) == 10);
  CHECK_THROWS_AS(affine_rank(VertexSet(4)), std::invalid_argument);
}

TEST_CASE("gf2 solve") {
  Gf2Matrix id(5);
  for (int i = 0; i < 5; ++i) {
    BitVector r(5);
    r.set(static_cast<std::size_t>(i));
    id.add_row(r);
  }
  BitVector rhs(5);
  rhs.set(1);
  rhs.set(3);
  auto sol = gf2_solve(id, rhs);
  CHECK(sol.rank == 5);
  CHECK(sol.consistent);
  CHECK(sol.particular == rhs);
  CHECK(sol.kernel.empty());

  Gf2Matrix zero(4);
  for (int i = 0; i < 3; ++i) zero.add_row(BitVector(4));
  auto z = gf2_solve(zero, BitVector(3));
  CHECK(z.rank == 0);
  CHECK(z.kernel.size() == 4);
  BitVector bad(3);
  bad.set(0);
  CHECK_FALSE(gf2_solve(zero, bad).consistent);
  CHECK_THROWS_AS(gf2_solve(zero, BitVector(2)), std::invalid_argument);
  CHECK_THROWS_AS(zero.add_row(BitVector(3)), std::invalid_argument);
}

TEST_CASE("gf2 solve agrees with brute force on random systems") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 7;
    const std::size_t cols = 1 + rng() % 7;
    Gf2Matrix a(cols);
    std::vector<std::uint32_t> masks;
    for (std::size_t i = 0; i < rows; ++i) {
      BitVector r(cols);
      std::uint32_t m = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        if (rng() & 1) {
          r.set(j);
          m |= 1u << j;
        }
      }
      masks.push_back(m);
      a.add_row(r);
    }
    BitVector rhs(rows);
    std::uint32_t rmask = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (rng() & 1) {
        rhs.set(i);
        rmask |= 1u << i;
      }
    }
    std::size_t solutions = 0;
    for (std::uint32_t x = 0; x < (1u << cols); ++x) {
      std::uint32_t img = 0;
      for (std::size_t i = 0; i < rows; ++i) img |= static_cast<std::uint32_t>(std::popcount(masks[i] & x) & 1) << i;
      solutions += img == rmask;
    }
    const auto sol = gf2_solve(a, rhs);
    CHECK(sol.consistent == (solutions > 0));
    CHECK(static_cast<int>(sol.rank) == linear_rank(masks));
    if (sol.consistent) {
      CHECK(solutions == (std::size_t{1} << sol.kernel.size()));
      CHECK(sol.rank + sol.kernel.size() == cols);
    }
  }
}
