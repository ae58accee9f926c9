#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eqp/constructions.hpp"
#include "eqp/oa_bridge.hpp"
#include "test_support.hpp"

using namespace eqp;

namespace {

// Strength by the character criterion: sum over rows of (-1)^{x.y} vanishes
// for every nonzero y of weight at most t.
bool oracle_strength(int n, const std::vector<Vertex>& rows, int t) {
  for (Vertex y = 1; y < (Vertex{1} << n); ++y) {
    if (std::popcount(y) > t) continue;
    long sum = 0;
    for (Vertex x : rows) sum += (std::popcount(x & y) % 2) ? -1 : 1;
    if (sum != 0) return false;
  }
  return true;
}

// Neighbour counts between cells, or empty if some row is not constant.
std::vector<std::vector<int>> oracle_matrix(int n, const std::vector<int>& cell, int k) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), -1));
  for (Vertex x = 0; x < cell.size(); ++x) {
    std::vector<int> row(static_cast<std::size_t>(k), 0);
    for (int b = 0; b < n; ++b) ++row[static_cast<std::size_t>(cell[x ^ (Vertex{1} << b)])];
    auto& target = m[static_cast<std::size_t>(cell[x])];
    if (target[0] < 0) target = row;
    if (target != row) return {};
  }
  return m;
}

// Distance of every vertex to the code by scanning codewords.
std::vector<int> oracle_distances(const VertexSet& code) {
  std::vector<int> d(code.universe(), 99);
  for (Vertex x = 0; x < d.size(); ++x) {
    code.for_each([&](Vertex w) { d[x] = std::min(d[x], std::popcount(x ^ w)); });
  }
  return d;
}

VertexSet hamming_7() {
  VertexSet s(7);
  for (Vertex x = 0; x < 128; ++x) {
    // Syndrome with column j equal to j + 1.
    Vertex syn = 0;
    for (int j = 0; j < 7; ++j) {
      if (x & coord_bit(7, j)) syn ^= static_cast<Vertex>(j + 1);
    }
    if (!syn) s.insert(x);
  }
  return s;
}

}  // namespace

TEST_CASE("orthogonal array strength against the character criterion") {
  const auto p0 = eqp::testing::appendix_entry_one();
  CHECK(verify_oa(12, p0.members(), 7).ok);
  CHECK(oracle_strength(12, p0.members(), 7));
  const auto eight = verify_oa(12, p0.members(), 8);
  CHECK_FALSE(eight.ok);
  CHECK(std::popcount(eight.columns) == 8);

  std::vector<Vertex> cube(16);
  for (Vertex x = 0; x < 16; ++x) cube[x] = x;
  CHECK(verify_oa(4, cube, 4).ok);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = eqp::testing::random_set(6, 16, rng);
    for (int t = 1; t <= 3; ++t) REQUIRE(verify_oa(6, s.members(), t).ok == oracle_strength(6, s.members(), t));
  }
  CHECK_FALSE(verify_oa(5, {0, 1, 2}, 1).ok);
  CHECK_THROWS_AS(verify_oa(5, {0}, 6), std::invalid_argument);
}

TEST_CASE("shortening lowers size, length and strength") {
  const auto a = OrthogonalArray::from_set(eqp::testing::appendix_entry_one(), 7);
  for (int coord : {0, 5, 11}) {
    for (int value : {0, 1}) {
      const auto s = shorten(a, coord, value);
      CHECK(s.rows.size() == 512);
      CHECK(s.n == 11);
      CHECK(s.strength == 6);
      CHECK(verify_oa(s).ok);
      const auto s2 = shorten(s, 3, value);
      CHECK(s2.rows.size() == 256);
      CHECK(verify_oa(s2).ok);
      CHECK(s2.strength == 5);
    }
  }
  CHECK(drop_coordinate(0b10110, 5, 0) == 0b0110);
  CHECK(drop_coordinate(0b10110, 5, 2) == 0b1010);
  CHECK(drop_coordinate(0b10110, 5, 4) == 0b1011);
  CHECK_THROWS_AS(shorten(a, 12, 0), std::invalid_argument);
}

TEST_CASE("OA file round trip") {
  const auto a = shorten(OrthogonalArray::from_set(eqp::testing::appendix_entry_one(), 7), 0, 1);
  std::istringstream in(format_oa(a));
  const auto b = read_oa(in);
  CHECK(b.rows == a.rows);
  CHECK(b.n == 11);
  CHECK(b.strength == 6);
  std::istringstream bad1("OA 2 3 3 1\n000\n111\n");
  CHECK_THROWS_AS(read_oa(bad1), std::invalid_argument);
  std::istringstream bad2("OA 2 3 2 1\n000\n11\n");
  CHECK_THROWS_AS(read_oa(bad2), std::invalid_argument);
  std::istringstream bad3("OA 2 3 2 1\n000\n000\n");
  CHECK_THROWS_AS(read_oa(bad3), std::invalid_argument);
}

TEST_CASE("resilient functions") {
  // F(x) = (x0+x1+x2, x3+x4+x5): kernel dual has minimum weight 3.
  std::vector<Vertex> f(64);
  for (Vertex x = 0; x < 64; ++x) {
    f[x] = static_cast<Vertex>(((std::popcount(x >> 3) % 2) << 1) | (std::popcount(x & 7) % 2));
  }
  CHECK(is_resilient(6, 2, f, 2));
  CHECK_FALSE(is_resilient(6, 2, f, 3));
  f[0] ^= 1;
  CHECK_FALSE(is_resilient(6, 2, f, 0));
  CHECK_THROWS_AS(is_resilient(6, 1, f, 1), std::invalid_argument);
}

TEST_CASE("derived structures of small perfect codes and a [[0,6],[2,4]] cell") {
  const auto seed = find_seed_partition(6, {0, 6, 2, 4});
  REQUIRE(seed.representative);
  const std::vector<VertexSet> cells{VertexSet(3, std::vector<Vertex>{0, 7}), hamming_7(), *seed.representative};
  for (const auto& c0 : cells) {
    const int n = c0.dim();
    for (int coord = 0; coord < n; ++coord) {
      const auto d = derive_structures(c0, coord);
      CHECK(oracle_strength(n, d.oa.rows, d.oa.strength));
      CHECK(d.oa.strength == (n + d.c) / 2 - 1);
      CHECK(oracle_matrix(n - 1, d.split.cell, 3) == split_matrix(n, d.c));
      CHECK(oracle_matrix(n - 1, d.switched.cell, 3) == switched_matrix(n, d.c));
      // The code's distance partition has the stated array.
      const auto dist = oracle_distances(d.code);
      CHECK(*std::max_element(dist.begin(), dist.end()) == 2);
      CHECK(dist == d.switched.cell);
      CHECK(oracle_matrix(n - 1, dist, 3) == switched_matrix(n, d.c));
      CHECK(d.array == IntersectionArray{{n - d.c, d.c}, {d.c, n - d.c}});
      const auto merged = merge_first_two_cells(d.split);
      CHECK(merged == project_partition(c0, coord));
    }
  }
  CHECK_THROWS_AS(derive_structures(VertexSet(3, std::vector<Vertex>{0, 1}), 0), std::invalid_argument);
}

TEST_CASE("appendix entry 1 bridge") {
  const auto p0 = eqp::testing::appendix_entry_one();
  const auto d = derive_structures(p0, 0);
  CHECK(d.c == 4);
  CHECK(d.self_complementary);
  CHECK(d.split.matrix == std::vector<std::vector<int>>{{0, 3, 8}, {3, 0, 8}, {4, 4, 3}});
  CHECK(d.switched.matrix == std::vector<std::vector<int>>{{3, 8, 0}, {4, 3, 4}, {0, 8, 3}});
  CHECK(d.array.str() == "(8,4;4,8)");
  CHECK(d.code.size() == 512);
  const auto merged = merge_first_two_cells(d.split);
  CHECK(merged.size() == 1024);
  CHECK(quotient_matrix(merged).matrix == QuotientMatrix{3, 8, 8, 3});

  // Cell swaps that keep the matrix do not change the form.
  auto swapped = d.split;
  for (int& k : swapped.cell) k = k == 2 ? 2 : 1 - k;
  CHECK(three_partition_form(swapped) == three_partition_form(d.split));
  auto reversed = d.switched;
  for (int& k : reversed.cell) k = 2 - k;
  CHECK(three_partition_form(reversed) == three_partition_form(d.switched));
  CHECK(three_partition_form(d.split) != three_partition_form(d.switched));

  // Moving the cell by a cube automorphism moves the split partition with it.
  std::mt19937_64 rng(9);
  const auto g = eqp::testing::random_automorphism(12, rng);
  const auto moved = apply_automorphism(g, p0);
  const auto dm = derive_structures(moved, g.perm()[0]);
  CHECK(three_partition_form(dm.split) == three_partition_form(d.split));
  CHECK(three_partition_form(dm.switched) == three_partition_form(d.switched));

  const auto census = bridge_census({p0});
  CHECK(census.arrays == 1);
  CHECK(census.shortened == 1);
  CHECK(census.split == 1);
  CHECK(census.codes == 1);
  CHECK(census.merges_ok);
}

TEST_CASE("projection from Q13 checks its input") {
  CHECK_THROWS_AS(project_13_to_12(eqp::testing::appendix_entry_one()), std::invalid_argument);
  CHECK_THROWS_AS(project_13_to_12(VertexSet(13, std::vector<Vertex>{0})), std::invalid_argument);
  CHECK(project_partition(VertexSet(3, std::vector<Vertex>{0, 7}), 0) == VertexSet(2, std::vector<Vertex>{0, 3}));
}
