#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "eqp/classify_01248.hpp"
#include "eqp/spectral.hpp"
#include "test_support.hpp"

using namespace eqp;
using namespace eqp::q01248;

namespace {

// Labelled cubic graphs by brute force over edge subsets (small orders only).
std::uint64_t brute_labelled_cubic(int v) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
  }
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    if (std::popcount(mask) != 3 * v / 2) continue;
    std::vector<int> deg(static_cast<std::size_t>(v), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((mask >> i) & 1) {
        ++deg[static_cast<std::size_t>(pairs[i].first)];
        ++deg[static_cast<std::size_t>(pairs[i].second)];
      }
    }
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; })) ++count;
  }
  return count;
}

const ChainReport& p0_chain() {
  static const ChainReport r = run_chain(true);
  return r;
}

}  // namespace

TEST_CASE("cubic graph catalogue") {
  const std::map<int, std::pair<std::size_t, std::size_t>> expected{{4, {1, 1}}, {6, {2, 2}}, {8, {6, 5}}, {12, {94, 85}}};
  for (auto [v, counts] : expected) {
    const auto graphs = enumerate_cubic_graphs(v);
    CHECK(graphs.size() == counts.first);
    CHECK(static_cast<std::size_t>(std::count_if(graphs.begin(), graphs.end(), [](const auto& g) { return g.connected; })) ==
          counts.second);
    BigInt implied = 0;
    for (const auto& g : graphs) {
      CHECK(g.edges.size() == static_cast<std::size_t>(3 * v / 2));
      implied += factorial(v) / g.aut_order;
    }
    CHECK(implied == labelled_cubic_graphs(v));
  }
  CHECK(labelled_cubic_graphs(6) == brute_labelled_cubic(6));
  CHECK(labelled_cubic_graphs(4) == brute_labelled_cubic(4));
  CHECK_THROWS_AS(enumerate_cubic_graphs(7), std::invalid_argument);
}

TEST_CASE("two-local partitions") {
  const auto a = two_local_partitions(true);
  CHECK(a.classes.size() == 94);
  CHECK(a.double_count_ok());
  const auto b = two_local_partitions(false);
  CHECK(b.classes.size() == 6);
  CHECK(b.double_count_ok());
  for (const auto* s : {&a, &b}) {
    for (const auto& c : s->classes) {
      CHECK(c.rep.valid());
      CHECK(c.rep.radius == 2);
    }
  }
  CHECK(a.classes.front().rep.zero_in_p0());
  CHECK_FALSE(b.classes.front().rep.zero_in_p0());
}

TEST_CASE("local partition validity is checked directly") {
  LocalPartition l{1, VertexSet(kDim)};
  l.p0.insert(0);
  CHECK(l.valid());
  l.p0.insert(coord_bit(kDim, 0));
  CHECK_FALSE(l.valid());
}

TEST_CASE("chain from zero in P0") {
  const auto& r = p0_chain();
  REQUIRE(r.stages.size() == 3);
  CHECK(r.stages[1].classes.size() == 34);
  CHECK(r.stages[2].classes.size() == 37);
  CHECK(r.double_counts_ok());
  for (const auto& s : r.stages) {
    for (const auto& c : s.classes) REQUIRE(c.rep.valid());
  }
  REQUIRE(r.final.has_value());
  CHECK(r.final->failures == 0);
  CHECK(r.final->classes.size() == 16);
  std::map<int, int> ranks;
  for (const auto& c : r.final->classes) {
    ++ranks[c.rank];
    CHECK(quotient_matrix(c.p0).matrix == QuotientMatrix{0, 12, 4, 8});
    CHECK(correlation_immunity_order(c.p0) == 7);
    const auto report = verify_fourier_system(c.p0, {0, 12, 4, 8});
    CHECK(report.ok());
    const auto edges = composite_edge_counts(c.p0);
    for (auto e : edges) CHECK(e == edges.front());
  }
  CHECK(ranks == std::map<int, int>{{10, 1}, {11, 13}, {12, 2}});
  // Entry 1 of the appendix is the linear class.
  const auto entry = canonical_form(eqp::testing::appendix_entry_one());
  CHECK(std::count_if(r.final->classes.begin(), r.final->classes.end(), [&](const auto& c) { return c.form == entry; }) == 1);
}

TEST_CASE("local cover instances") {
  const auto& seeds = p0_chain().stages[1].classes;
  const auto cover = local_cover(seeds.front().rep);
  CHECK(cover.feasible);
  for (std::size_t j = 0; j < cover.instance.sets.size(); ++j) {
    CHECK(weight(cover.set_words[j]) == 4);
    CHECK(cover.instance.sets[j].size() == 4);
  }
  for (int m : cover.instance.multiplicity) CHECK((m >= 1 && m <= 4));
  // Every extension is a valid 4-local partition containing the seed.
  std::size_t count = 0;
  for_each_extension(seeds.front().rep, [&](const LocalPartition& next) {
    ++count;
    CHECK(next.valid());
    auto common = next.p0;
    common &= seeds.front().rep.p0;
    CHECK(common == seeds.front().rep.p0);
  });
  CHECK(count == count_solutions(cover.instance));
}

TEST_CASE("reconstruction reports failures") {
  auto l = p0_chain().stages[2].classes.front().rep;
  const auto ok = reconstruct_full(l);
  REQUIRE(ok.p0.has_value());
  CHECK(ok.failure.empty());
  // Moving one weight-4 word between the cells breaks the completion.
  Vertex moved = 0;
  for (Vertex x = 0; x < 4096; ++x) {
    if (weight(x) == 4 && l.p0.contains(x)) {
      moved = x;
      break;
    }
  }
  l.p0.erase(moved);
  const auto bad = reconstruct_full(l);
  CHECK_FALSE(bad.p0.has_value());
  CHECK_FALSE(bad.failure.empty());
  l.radius = 3;
  CHECK_THROWS_AS(reconstruct_full(l), std::invalid_argument);
}

TEST_CASE("chain from zero in P1 stops at the requested radius") {
  const auto r = run_chain(false, 2);
  REQUIRE(r.stages.size() == 1);
  CHECK(r.stages[0].classes.size() == 6);
  CHECK_FALSE(r.final.has_value());
}
