#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eqp/canonical.hpp"
#include "eqp/cube.hpp"
#include "eqp/exact_cover.hpp"
#include "eqp/graph_canon.hpp"

namespace eqp::q01248 {

inline constexpr int kDim = 12;

// Cells P0, P1 of all words of weight <= radius; p0 lists the P0 words.
struct LocalPartition {
  int radius = 0;
  VertexSet p0{kDim};

  bool zero_in_p0() const { return p0.contains(0); }
  // Every vertex of weight < radius sees 0 (P0) or 4 (P1) neighbours in P0.
  bool valid() const;
};

struct LocalClass {
  LocalPartition rep;
  CanonicalForm form;  // under coordinate permutations
  BigInt aut_order = 1;
};

CanonicalForm local_form(const LocalPartition& l, BigInt* order = nullptr);

struct CubicGraph {
  std::vector<std::pair<int, int>> edges;
  BigInt aut_order = 1;
  bool connected = false;
};

// All cubic simple graphs on v vertices up to isomorphism.
std::vector<CubicGraph> enumerate_cubic_graphs(int v);
// Labelled count, by a recursion independent of the enumeration.
BigInt labelled_cubic_graphs(int v);

struct StageCensus {
  int radius = 0;
  std::vector<LocalClass> classes;
  std::uint64_t labelled_solutions = 0;
  BigInt seeds_weighted = 0;    // sum over seeds of 12! * extensions / |Aut seed|
  BigInt classes_weighted = 0;  // sum over classes of 12! / |Aut class|

  bool double_count_ok() const { return seeds_weighted == classes_weighted; }
};

// Radius-2 classes; the labelled total is counted independently.
StageCensus two_local_partitions(bool zero_in_p0);

struct LocalCover {
  CoverInstance instance;
  std::vector<Vertex> points;      // weight-r words of P1 with positive demand
  std::vector<Vertex> set_words;   // weight-(r+1) word behind each set
  bool feasible = true;            // false when some demand is negative
};

LocalCover local_cover(const LocalPartition& l);
void for_each_extension(const LocalPartition& l, const std::function<void(const LocalPartition&)>& visit);
StageCensus extend_all(const std::vector<LocalClass>& seeds);

struct Reconstruction {
  std::optional<VertexSet> p0;
  std::string failure;
  Vertex witness = 0;
};

// Completes a radius-4 local partition through zero sums over 5-faces.
Reconstruction reconstruct_full(const LocalPartition& l);

struct FinalClass {
  VertexSet p0{kDim};
  CanonicalForm form;
  BigInt aut_order = 1;
  int rank = 0;  // affine rank of P0
};

struct FinalCensus {
  std::vector<FinalClass> classes;
  std::size_t failures = 0;
  BigInt seeds_weighted = 0;    // sum over 4-local classes of 12! / |Aut|
  BigInt classes_weighted = 0;  // sum over classes of 12! * |cell of 0| / |Aut|

  bool double_count_ok() const { return failures == 0 && seeds_weighted == classes_weighted; }
};

FinalCensus classify_final(const std::vector<LocalClass>& four_local);

struct ChainReport {
  bool zero_in_p0 = true;
  std::vector<StageCensus> stages;  // radius 2, 3, 4 as far as requested
  std::optional<FinalCensus> final;

  bool double_counts_ok() const;
};

using Progress = std::function<void(const std::string&)>;

// until_radius 2..4 stops after that local stage; 5 also completes.
ChainReport run_chain(bool zero_in_p0, int until_radius = 5, const Progress& progress = {});

struct Classification {
  ChainReport from_p0;
  ChainReport from_p1;
  bool chains_agree = false;
};

Classification classify(const Progress& progress = {});

}  // namespace eqp::q01248
