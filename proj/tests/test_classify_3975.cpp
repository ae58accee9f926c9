#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "eqp/classify_3975.hpp"
#include "eqp/constructions.hpp"
#include "eqp/spectral.hpp"

using namespace eqp;
using namespace eqp::q3975;

namespace {

const BitripleCensus& census() {
  static const BitripleCensus c = enumerate_bitriple_systems();
  return c;
}

std::size_t class_of(const BitripleSystem& s) {
  const auto form = canonicalize_words(kDim, s.triples).form;
  for (std::size_t i = 0; i < census().classes.size(); ++i) {
    if (census().classes[i].form == form) return i;
  }
  return census().classes.size();
}

BitripleSystem named(int times, const std::vector<std::vector<int>>& one_based) {
  BitripleSystem s;
  for (const auto& t : one_based) {
    Subset w = 0;
    for (int c : t) w |= coord_bit(kDim, c - 1);
    for (int i = 0; i < times; ++i) s.triples.push_back(w);
  }
  std::sort(s.triples.begin(), s.triples.end());
  return s;
}

// Naive parity condition: for every x, count unordered pairs by a double loop over all words.
bool naive_parity(const std::vector<Vertex>& f) {
  const std::set<Vertex> in(f.begin(), f.end());
  for (Vertex x = 1; x < 4096; ++x) {
    int p = 0;
    for (Vertex y : f) {
      if (in.count(x ^ y) && y < (x ^ y)) ++p;
    }
    if ((p % 2 == 1) != (in.count(x) == 1)) return false;
  }
  return true;
}

std::vector<Vertex> fdf_support(std::uint32_t choice) {
  return wht(IntegerFunction::associated(fdf_q12(choice), 9, 7)).support();
}

BitVector true_signs(std::uint32_t choice, const std::vector<Vertex>& support) {
  const auto s = wht(IntegerFunction::associated(fdf_q12(choice), 9, 7));
  BitVector phi(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) phi.set(j, s(support[j]) < 0);
  return phi;
}

bool satisfies(const SignSystem& sys, const BitVector& phi) {
  for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
    bool dot = false;
    for (std::size_t j = 0; j < phi.size(); ++j) dot ^= sys.matrix.row(r).get(j) && phi.get(j);
    if (dot != sys.rhs.get(r)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bitriple census") {
  const auto& c = census();
  CHECK(c.classes.size() == 36);
  CHECK(c.family_count(BitripleFamily::SingleMultiplicity) == 4);
  CHECK(c.family_count(BitripleFamily::Design12) == 23);
  CHECK(c.family_count(BitripleFamily::Design9) == 6);
  CHECK(c.family_count(BitripleFamily::Design6) == 2);
  CHECK(c.family_count(BitripleFamily::FourDoubled) == 1);
  CHECK(c.double_counts_ok());
  CHECK(c.even_labelled > 0);
  for (const auto& k : c.classes) CHECK(k.system.valid());
  std::set<std::size_t> refs;
  for (int i = 1; i <= 4; ++i) {
    const auto s = reference_system(i);
    CHECK(s.valid());
    const auto k = class_of(s);
    REQUIRE(k < c.classes.size());
    CHECK(c.classes[k].family == BitripleFamily::SingleMultiplicity);
    refs.insert(k);
  }
  CHECK(refs.size() == 4);
  CHECK_THROWS_AS(reference_system(5), std::invalid_argument);
}

TEST_CASE("bitriple invariants reject bad systems") {
  auto s = reference_system(1);
  s.triples.pop_back();
  CHECK_FALSE(s.valid());
  // Moving one triple breaks the point degrees.
  auto t = reference_system(2);
  t.triples[0] = subset_of({0, 1, 11});
  std::sort(t.triples.begin(), t.triples.end());
  CHECK_FALSE(t.valid());
}

TEST_CASE("coverings of the small bitriple classes") {
  struct Case {
    BitripleSystem system;
    std::size_t classes;
  };
  const std::vector<Case> cases{
      {reference_system(2), 1},
      {reference_system(3), 0},
      {named(4, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}}), 1},
      {named(2, {{1, 2, 3}, {1, 5, 6}, {2, 4, 6}, {3, 4, 5}, {7, 8, 9}, {7, 11, 12}, {8, 10, 12}, {9, 10, 11}}), 15},
  };
  for (const auto& cs : cases) {
    const auto k = class_of(cs.system);
    REQUIRE(k < census().classes.size());
    const auto cov = coverings_for(census().classes[k], k);
    CHECK(cov.classes.size() == cs.classes);
    CHECK(cov.labelled_implied == cov.labelled_solutions);
    CHECK(cov.parity_labelled == 0);
    const auto inst = covering_instance(census().classes[k].system);
    for (const auto& c : cov.classes) {
      CHECK(c.blocks.size() == 63);
      // Every triple covered an odd number of times; coverage identity 4*63 = 220 + 2*16.
      const auto b = bitriples_of(c.blocks);
      CHECK(b.triples.size() == 16);
      CHECK(canonicalize_words(kDim, b.triples).form == census().classes[k].form);
      for (int x = 0; x < kDim; ++x) {
        for (int y = x + 1; y < kDim; ++y) {
          const Subset pair = coord_bit(kDim, x) | coord_bit(kDim, y);
          const auto hits = std::count_if(c.blocks.begin(), c.blocks.end(), [&](Subset blk) { return (blk & pair) == pair; });
          CHECK(hits % 2 == 1);
          CHECK(hits >= 5);
        }
      }
      // The derived covering at any point is a (2,3,11)-covering of size at least 19.
      std::vector<PointSet> pts;
      for (Subset blk : c.blocks) {
        PointSet p = 0;
        for (int x : coords_of(blk)) p |= PointSet{1} << x;
        pts.push_back(p);
      }
      const auto derived = derived_covering(pts, 0, 3, 4, 12);
      CHECK(derived.size() == 21);
      CHECK(derived.size() >= covering_lower_bound(2, 3, 11));
    }
  }
}

TEST_CASE("covering instance shape") {
  const auto inst = covering_instance(reference_system(1));
  CHECK(inst.elements == 220);
  CHECK(inst.sets.size() == 495);
  int total = 0;
  for (int m : inst.multiplicity) total += m;
  CHECK(total == 4 * 63);
}

TEST_CASE("parity filter against the naive count") {
  for (std::uint32_t choice : {kFdfTableChoice, kFdfTableChoice ^ 0x800u}) {
    const auto f = fdf_support(choice);
    CHECK(parity_filter(f));
    CHECK(naive_parity(f));
    auto broken = f;
    broken.pop_back();
    CHECK(parity_filter(broken) == naive_parity(broken));
    CHECK_FALSE(parity_filter(broken));
  }
  // The support of a construction spectrum is a covering whose bitriples are of the first reference type.
  const auto f = fdf_support(kFdfTableChoice);
  std::vector<Subset> blocks;
  for (Vertex y : f) blocks.push_back(all_ones(kDim) & ~y);
  CHECK(class_of(bitriples_of(blocks)) == class_of(reference_system(1)));
}

TEST_CASE("sign systems of the two construction supports") {
  std::set<std::size_t> psi_dims;
  std::set<std::uint64_t> accepted;
  for (std::uint32_t choice : {kFdfTableChoice, kFdfTableChoice ^ 0x800u}) {
    const auto support = fdf_support(choice);
    const auto sys = build_sign_system(support);
    REQUIRE(sys.solution.consistent);
    CHECK(sys.solution.rank == 44);
    CHECK(sys.solution.kernel.size() == 19);
    CHECK(sys.matrix.rows() < 800);
    const auto phi = true_signs(choice, sys.support);
    CHECK(satisfies(sys, phi));
    for (const auto& psi : coordinate_sign_vectors(sys.support)) CHECK(satisfies(sys, phi ^ psi));

    const auto report = coset_reduce_and_verify(sys);
    psi_dims.insert(report.psi_dimension);
    accepted.insert(report.accepted);
    CHECK(report.cosets == (std::uint64_t{1} << (19 - report.psi_dimension)));
    CHECK(report.forms.size() == 1);
    CHECK(report.forms.front() == partition_form(fdf_q12(choice)));
    for (const auto& p : report.partitions) {
      CHECK(quotient_matrix(p).matrix == QuotientMatrix{3, 9, 7, 5});
      const auto s = wht(IntegerFunction::associated(p, 9, 7));
      for (auto v : s.coeffs) REQUIRE((v == 0 || v == 4096 || v == -4096));
    }
    // Translating the true function by a unit vector matches adding a coordinate vector.
    const auto f = function_from_signs(sys.support, phi ^ coordinate_sign_vectors(sys.support)[3]);
    const auto g = IntegerFunction::associated(fdf_q12(choice), 9, 7);
    for (Vertex x = 0; x < 4096; ++x) REQUIRE(f[x] == g(x ^ coord_bit(kDim, 3)));
  }
  CHECK(psi_dims == std::set<std::size_t>{10, 11});
  CHECK(accepted == std::set<std::uint64_t>{6, 12});
}

TEST_CASE("sign system preconditions") {
  auto f = fdf_support(kFdfTableChoice);
  f.erase(f.begin());
  CHECK_THROWS_AS(build_sign_system(f), std::invalid_argument);
}
