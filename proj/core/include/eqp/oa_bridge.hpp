#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eqp/canonical.hpp"
#include "eqp/cube.hpp"
#include "eqp/spectral.hpp"

namespace eqp {

// A simple binary orthogonal array: distinct rows, declared strength.
struct OrthogonalArray {
  int n = 0;
  std::vector<Vertex> rows;  // sorted
  int strength = 0;

  VertexSet as_set() const;
  static OrthogonalArray from_set(const VertexSet& s, int strength);
};

struct OaCheck {
  bool ok = false;
  Vertex columns = 0;  // first unbalanced t-set of coordinates
  Vertex pattern = 0;  // and a pattern seen the wrong number of times
};

// Every t columns show each pattern |rows| / 2^t times.
OaCheck verify_oa(int n, const std::vector<Vertex>& rows, int t);
inline OaCheck verify_oa(const OrthogonalArray& a) { return verify_oa(a.n, a.rows, a.strength); }

// F maps Q_n to Q_m; t-resilient when every level set has 2^{n-m} points and
// correlation-immunity order at least t.
bool is_resilient(int n, int m, const std::vector<Vertex>& values, int t);

// Rows with the given value at coord, with that coordinate removed.
OrthogonalArray shorten(const OrthogonalArray& a, int coord, int value);

// Removes coordinate c from a word of Q_n.
Vertex drop_coordinate(Vertex x, int n, int c);

// "OA N n 2 t" header, then one row of n binary digits per line.
OrthogonalArray read_oa(std::istream& in);
std::string format_oa(const OrthogonalArray& a);

struct ThreePartition {
  int n = 0;
  std::vector<int> cell;  // cell index 0..2 per vertex
  std::vector<std::vector<int>> matrix;

  VertexSet cell_set(int k) const;
};

// Cells {x : (x,0) in C0}, {x : (x,1) in C0} and the rest, splitting at coord.
ThreePartition split_partition(const VertexSet& c0, int coord);
// Moves odd vertices of the first two cells across: (A even + B odd, rest, A odd + B even).
ThreePartition parity_switch(const ThreePartition& t);

// Intersection array (b_0..b_{r-1}; c_1..c_r) when the distance partition of
// the code is equitable and tridiagonal.
struct IntersectionArray {
  std::vector<int> b;
  std::vector<int> c;

  friend bool operator==(const IntersectionArray&, const IntersectionArray&) = default;
  std::string str() const;
};
std::optional<IntersectionArray> completely_regular_array(const VertexSet& code);

struct DerivedStructures {
  int n = 0, c = 0;
  OrthogonalArray oa;            // the cell C0 with strength (n+c)/2 - 1
  bool self_complementary = false;
  OrthogonalArray shortened;     // at the split coordinate, value 0
  ThreePartition split;          // matrix [[0,c-1,n-c],[c-1,0,n-c],[c,c,n-2c-1]]
  ThreePartition switched;       // matrix [[c-1,n-c,0],[c,n-2c-1,c],[0,n-c,c-1]]
  VertexSet code;                // first cell of the switched partition
  IntersectionArray array;       // (n-c, c; c, n-c)
};

std::vector<std::vector<int>> split_matrix(int n, int c);
std::vector<std::vector<int>> switched_matrix(int n, int c);

// Throws std::invalid_argument unless c0 has matrix [[0,n],[c,n-c]], c < n;
// throws std::logic_error if a derived object fails its own verification.
DerivedStructures derive_structures(const VertexSet& c0, int coord);

// Union of the first two cells of a split partition; throws std::logic_error
// if it is not equitable with matrix [[c-1, n-c], [2c, n-2c-1]].
VertexSet merge_first_two_cells(const ThreePartition& t);

// {x : (x,0) in c0 or (x,1) in c0}, splitting at coord.
VertexSet project_partition(const VertexSet& c0, int coord);
// Throws std::invalid_argument unless c0 is a [[0,13],[3,10]] cell of Q_13 and
// std::logic_error unless the projection has matrix [[2,10],[6,6]].
VertexSet project_13_to_12(const VertexSet& c0, int coord = 12);

// Equivalence forms: arrays and codes as sets, three-partitions up to the
// cell swaps that keep their matrix.
CanonicalForm three_partition_form(const ThreePartition& t);

struct BridgeCensus {
  std::size_t arrays = 0;           // OA(N, n, 2, t) classes
  std::size_t shortened = 0;        // OA(N/2, n-1, 2, t-1) classes
  std::size_t split = 0;            // first 3-partition family
  std::size_t switched = 0;         // second 3-partition family
  std::size_t codes = 0;            // completely regular codes
  bool merges_ok = false;           // every split merges to [[c-1,n-c],[2c,n-2c-1]]
};

// Classes of every derived family over all coordinates and values.
BridgeCensus bridge_census(const std::vector<VertexSet>& classes);

}  // namespace eqp
