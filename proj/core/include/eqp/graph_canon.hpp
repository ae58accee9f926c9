#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace eqp {

// Undirected simple graph in compressed adjacency form.
class Graph {
 public:
  Graph() = default;
  Graph(int order, const std::vector<std::pair<int, int>>& edges);
  static Graph from_adjacency(std::vector<std::vector<int>> adj);

  int order() const { return static_cast<int>(offsets_.size()) - 1; }
  std::span<const int> neighbours(int v) const {
    return {targets_.data() + offsets_[static_cast<std::size_t>(v)],
            static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)])};
  }
  int degree(int v) const { return static_cast<int>(neighbours(v).size()); }
  bool adjacent(int u, int v) const;
  std::size_t edge_count() const { return targets_.size() / 2; }

 private:
  std::vector<int> offsets_{0};
  std::vector<int> targets_;
};

using Certificate = std::vector<std::uint32_t>;
using Permutation = std::vector<int>;

// Turns a discrete labeling into a certificate. lab[i] is the vertex placed
// at position i. Equal certificates of two leaves must imply an automorphism,
// which automorphism() returns as the vertex map taking leaf a onto leaf b.
class LeafDomain {
 public:
  virtual ~LeafDomain() = default;
  virtual Certificate certificate(std::span<const int> lab) = 0;
  virtual Permutation automorphism(std::span<const int> lab_a, std::span<const int> lab_b);
};

// Certificate = colours and adjacency of the relabelled graph.
class PlainGraphDomain : public LeafDomain {
 public:
  PlainGraphDomain(const Graph& g, std::vector<int> colours) : graph_(g), colours_(std::move(colours)) {}
  Certificate certificate(std::span<const int> lab) override;

 private:
  const Graph& graph_;
  std::vector<int> colours_;
};

struct SearchResult {
  Certificate certificate;
  std::vector<int> labeling;  // best leaf, lab[position] = vertex
  std::vector<Permutation> generators;
  boost::multiprecision::cpp_int group_order = 1;
  std::vector<int> orbits;  // orbit representative (least vertex) per vertex
  std::size_t nodes = 0;
};

// Colours give the initial ordered partition (ascending colour value) and
// must be isomorphism invariant.
SearchResult canonical_search(const Graph& g, const std::vector<int>& colours, LeafDomain& domain);

// Orbit representatives (least vertex) of the group generated by gens.
std::vector<int> orbits_of(int order, const std::vector<Permutation>& gens);

}  // namespace eqp
