#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqp/canonical.hpp"
#include "eqp/cube.hpp"
#include "eqp/spectral.hpp"

namespace eqp {

enum class Shade { Black, White, Gray };

struct GrayFace {
  std::string pattern;  // e.g. "0**100"
  Face face;
  int star_i = 0;  // 0-based coordinates of the two stars
  int star_j = 0;
};

// The three-colouring of Q_6 that seeds the 12-cube construction.
struct Q6Colouring {
  std::vector<Shade> shade;  // indexed by word of Q_6
  std::vector<GrayFace> gray_faces;
  std::vector<int> face_of;  // gray face index per word, -1 elsewhere
};

const Q6Colouring& q6_colouring();

// Bit (11 - k) of `choices` selects the parity coloured black on gray face k.
// Returns the black cell; throws std::logic_error if it fails to be
// equitable with matrix [[3,9],[7,5]].
VertexSet fdf_q12(std::uint32_t choices);

inline constexpr std::uint32_t kFdfTableChoice = 0xccc;  // reproduces the printed sign table

struct SignedWord {
  Vertex word = 0;
  int sign = 1;

  friend auto operator<=>(const SignedWord&, const SignedWord&) = default;
};

// 63 signed weight-8 words in 8 groups (6, 9, then six groups of 8).
const std::vector<std::vector<SignedWord>>& fdf_spectrum_table();

// The table with the sign of group 2+k flipped when bit k of `flips` is set and
// the coordinate permutation (4 10)(5 11)(6 12) applied to group 2+k when bit k
// of `swaps` is set. Sorted by word.
std::vector<SignedWord> fdf_table_variant(std::uint32_t flips, std::uint32_t swaps);
CubeAutomorphism fdf_group_swap();

// Nonzero coefficients of a spectrum divided by `scale`, sorted by word.
std::vector<SignedWord> signed_support(const IntegerSpectrum& s, std::int64_t scale);

struct SeedSearch {
  std::optional<VertexSet> representative;
  std::size_t classes = 0;
  std::uint64_t solutions_through_zero = 0;  // labelled partitions with 0 in the first cell
  std::vector<BigInt> stabiliser_orders;
};

// Exhaustive search for equitable partitions of Q_n (n <= 8) with matrix m.
SeedSearch find_seed_partition(int n, const QuotientMatrix& m);

// pairs[k] selects Z4 addition (through the Gray map) on coordinates 2k, 2k+1.
struct DoublingMode {
  std::vector<bool> z4_pairs;

  static DoublingMode standard(int m) { return {std::vector<bool>(static_cast<std::size_t>(m / 2), false)}; }
  static DoublingMode first_pairs(int m, int i);
};

Vertex gray_map(int z4);     // 0->00, 1->01, 2->11, 3->10
int gray_unmap(Vertex two_bits);
Vertex mixed_sum(Vertex x, Vertex y, int m, const DoublingMode& mode);

// D0 = { (x, y) : x (+) y in P0 } on Q_{2m}; x occupies the first m coordinates.
// Throws std::logic_error unless the result is equitable with matrix 2M.
VertexSet double_partition(const VertexSet& p0, const DoublingMode& mode);

// Lengths of the cycles of the 2-regular subgraph induced by c0, with counts.
// Throws std::invalid_argument when the induced subgraph is not 2-regular.
std::map<std::size_t, std::size_t> cycle_structure(const VertexSet& c0);

}  // namespace eqp
