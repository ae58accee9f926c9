#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eqp/canonical.hpp"
#include "eqp/cube.hpp"
#include "eqp/exact_cover.hpp"
#include "eqp/gf2.hpp"

namespace eqp::q3975 {

// Subsets of the 12 coordinates are 12-bit words with coordinate c at coord_bit(12, c).
using Subset = Vertex;
inline constexpr int kDim = 12;

Subset subset_of(std::initializer_list<int> coords);  // 0-based coordinates
std::vector<int> coords_of(Subset s);

// Multiset of 3-subsets, kept sorted.
struct BitripleSystem {
  std::vector<Subset> triples;

  int multiplicity(Subset t) const;
  int point_degree(int c) const;
  int pair_degree(int c, int d) const;
  // 16 triples, every coordinate in 4, every pair in 0, 2 or 4.
  bool valid() const;
};

enum class BitripleFamily { SingleMultiplicity, Design12, Design9, Design6, FourDoubled };
std::string family_name(BitripleFamily f);

struct BitripleClass {
  BitripleSystem system;
  BitripleFamily family = BitripleFamily::SingleMultiplicity;
  CanonicalForm form;
  BigInt aut_order = 1;  // coordinate permutations fixing the multiset
};

struct BitripleCensus {
  std::vector<BitripleClass> classes;  // single-multiplicity classes first
  std::size_t family_count(BitripleFamily f) const;
  // Labelled completions of the fixed cube, found vs implied by the classes.
  std::uint64_t completions_found = 0;
  BigInt completions_implied = 0;
  // Labelled even systems, by dynamic programming vs implied by the classes.
  BigInt even_labelled = 0;
  BigInt even_implied = 0;

  bool double_counts_ok() const { return completions_implied == completions_found && even_implied == even_labelled; }
};

BitripleCensus enumerate_bitriple_systems();

// The cube {a, a+6} x {b, b+6} x {c, c+6} on coordinate pairs (0,6), (1,7), (2,8).
std::vector<Subset> reference_cube();
// The four single-multiplicity systems as printed, index 1..4.
BitripleSystem reference_system(int index);

struct CoveringClass {
  std::vector<Subset> blocks;  // 63 zero-coordinate quadruples, sorted
  CanonicalForm form;
  BigInt aut_order = 1;
  std::size_t bitriple_class = 0;
};

struct CoveringCensus {
  std::vector<CoveringClass> classes;
  std::uint64_t labelled_solutions = 0;
  BigInt labelled_implied = 0;
  std::uint64_t parity_labelled = 0;  // labelled solutions passing the parity filter
  std::uint64_t nodes = 0;
};

// Element i of the instance is the i-th 3-subset in increasing word order;
// set j is the j-th 4-subset.
CoverInstance covering_instance(const BitripleSystem& b);
std::vector<Subset> subsets_of_size(int k);
CoveringCensus coverings_for(const BitripleClass& b, std::size_t class_index);

// Bitriples recovered from a block system: (cover count - 1) / 2 per triple.
BitripleSystem bitriples_of(const std::vector<Subset>& blocks);
std::vector<Vertex> support_of(const std::vector<Subset>& blocks);  // complements, sorted

// p(x): unordered pairs {y, z} of F with y + z = x, for every x.
std::vector<int> pair_sums(const std::vector<Vertex>& support);
bool parity_filter(const std::vector<Vertex>& support);

struct SignSystem {
  std::vector<Vertex> support;  // variable j is the sign bit of support[j]
  Gf2Matrix matrix;
  BitVector rhs;
  Gf2Solution solution;
};

// Throws std::invalid_argument when the support fails the parity filter.
SignSystem build_sign_system(const std::vector<Vertex>& support);
// Sign bits of the coordinate characters restricted to the support.
std::vector<BitVector> coordinate_sign_vectors(const std::vector<Vertex>& support);

struct CosetReport {
  std::size_t psi_dimension = 0;
  std::uint64_t cosets = 0;
  std::uint64_t accepted = 0;
  std::vector<VertexSet> partitions;  // cell of value 9, one per accepted coset
  std::vector<CanonicalForm> forms;   // distinct partition forms among them
};

// Every coset of the span of the coordinate vectors inside the solution space
// is tested once through the inverse transform.
CosetReport coset_reduce_and_verify(const SignSystem& system);

// f with f-hat = (-1)^phi on the support, for a sign vector phi.
std::vector<std::int64_t> function_from_signs(const std::vector<Vertex>& support, const BitVector& phi);

struct FinalClass {
  VertexSet c0;
  CanonicalForm form;
  AutInfo aut;
  std::size_t kernel = 0;
  std::vector<Vertex> support;
  BigInt support_stabiliser = 1;
  std::uint64_t labelled_with_support = 0;  // accepted sign vectors
};

struct PipelineReport {
  BitripleCensus bitriples;
  std::vector<CoveringCensus> coverings;  // per bitriple class
  std::size_t covering_classes = 0;
  std::vector<CoveringClass> survivors;
  std::vector<SignSystem> consistent;
  std::vector<std::size_t> consistent_survivor;  // survivor index per consistent system
  std::vector<CosetReport> cosets;
  std::vector<FinalClass> finals;
  bool double_counts_ok = false;
};

enum class Stage { Bitriples, Coverings, Parity, Signs, Final };
using Progress = std::function<void(const std::string&)>;

PipelineReport run_pipeline(Stage until = Stage::Final, const Progress& progress = {});

}  // namespace eqp::q3975
