#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "eqp/cube.hpp"
#include "eqp/graph_canon.hpp"

namespace eqp {

using BigInt = boost::multiprecision::cpp_int;

// Versioned, platform-independent certificate bytes.
struct CanonicalForm {
  static constexpr std::uint8_t kVersion = 1;
  enum Kind : std::uint8_t { CubeColouring = 1, WordMultiset = 2, PlainGraph = 3, CubePartition = 4 };

  std::vector<std::uint8_t> bytes;

  std::string hex() const;
  std::uint64_t digest() const;  // FNV-1a of the bytes, for short labels

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes <=> b.bytes; }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const { return static_cast<std::size_t>(f.digest()); }
};

BigInt cube_group_order(int n);  // 2^n n!
BigInt factorial(int n);

struct AutInfo {
  BigInt order = 1;
  std::vector<CubeAutomorphism> generators;
  std::vector<std::vector<int>> coordinate_orbits;  // 0-based coordinates, each sorted
  std::vector<std::size_t> orbit_sizes_in;           // on the set (cell 0), sorted descending
  std::vector<std::size_t> orbit_sizes_out;          // on the complement
};

// Canonical labelling of a colouring of V(Q_n) (colour values 0..k-1, fixed
// order) under Aut(Q_n). `to_canonical` maps the input onto the form.
struct CubeCanon {
  CanonicalForm form;
  CubeAutomorphism to_canonical;
  std::vector<int> canonical_colours;
  AutInfo aut;
  std::size_t nodes = 0;
};

CubeCanon canonicalize_colouring(int n, const std::vector<int>& colours, int k);
CubeCanon canonicalize(const VertexSet& s);

CanonicalForm canonical_form(const VertexSet& s);
AutInfo automorphism_info(const VertexSet& s);

// Form of the unordered partition {c0, complement}: the smaller cell is put
// first; for equal sizes the smaller of the two orderings is taken.
CanonicalForm partition_form(const VertexSet& c0);

// Form of an unordered colouring: the minimum over the given colour
// relabellings (each maps old colour -> new colour).
CanonicalForm colouring_form(int n, const std::vector<int>& colours, int k,
                             const std::vector<std::vector<int>>& relabellings);

// Orbit sizes of the group generated by gens on the members of s.
std::vector<std::size_t> orbit_sizes(const VertexSet& s, const std::vector<CubeAutomorphism>& gens);
std::vector<std::vector<int>> coordinate_orbits(int n, const std::vector<CubeAutomorphism>& gens);

// sum_i 2^n n! / order_i == expected_total, in exact arithmetic.
bool double_count(int n, const std::vector<BigInt>& orders, const BigInt& expected_total);
BigInt labelled_total(const BigInt& group_order, const std::vector<BigInt>& stabiliser_orders);

// Multisets of words of length n under coordinate permutations only.
struct WordsCanon {
  CanonicalForm form;
  std::vector<int> perm;  // coordinate c of the input goes to perm[c]
  std::vector<Vertex> canonical_words;  // sorted, with repetitions
  BigInt order = 1;  // number of coordinate permutations fixing the multiset
  std::vector<std::vector<int>> generators;  // as coordinate permutations
};

WordsCanon canonicalize_words(int n, const std::vector<Vertex>& words);
Vertex permute_word(Vertex w, int n, const std::vector<int>& perm);

// Small simple graphs under vertex relabelling.
struct GraphCanon {
  CanonicalForm form;
  std::vector<int> labeling;  // canonical position -> vertex
  BigInt order = 1;
};

GraphCanon canonicalize_graph(const Graph& g, const std::vector<int>& colours = {});
CanonicalForm graph_canonical_form(const Graph& g);

}  // namespace eqp
