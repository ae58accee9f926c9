#include "eqp/oa_bridge.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eqp/admissibility.hpp"

namespace eqp {

namespace {

// Packs the bits of x selected by mask into the low bits, in order.
Vertex compress(Vertex x, Vertex mask) {
  Vertex out = 0;
  int k = 0;
  for (Vertex m = mask; m; m &= m - 1) {
    const Vertex bit = m & (~m + 1);
    if (x & bit) out |= Vertex{1} << k;
    ++k;
  }
  return out;
}

std::vector<std::array<int, 3>> matrix_symmetries(const std::vector<std::vector<int>>& m) {
  std::vector<std::array<int, 3>> out;
  std::array<int, 3> p{0, 1, 2};
  do {
    bool keeps = true;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        keeps = keeps && m[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])][static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] ==
                             m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    if (keeps) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

ThreePartition with_matrix(int n, std::vector<int> cell) {
  ThreePartition t;
  t.n = n;
  t.cell = std::move(cell);
  const auto m = quotient_matrix_cells(n, t.cell, 3);
  if (m) t.matrix = *m;
  return t;
}

}  // namespace

VertexSet OrthogonalArray::as_set() const { return VertexSet(n, rows); }

OrthogonalArray OrthogonalArray::from_set(const VertexSet& s, int strength) { return {s.dim(), s.members(), strength}; }

OaCheck verify_oa(int n, const std::vector<Vertex>& rows, int t) {
  check_dimension(n);
  if (t < 0 || t > n) throw std::invalid_argument("strength out of range");
  OaCheck out;
  if (rows.size() % (std::size_t{1} << t)) {
    out.columns = all_ones(n);
    return out;
  }
  const std::size_t expected = rows.size() >> t;
  std::vector<std::size_t> counts(std::size_t{1} << t);
  for (Vertex mask = 0; mask < (Vertex{1} << n); ++mask) {
    if (weight(mask) != t) continue;
    std::fill(counts.begin(), counts.end(), 0);
    for (Vertex r : rows) ++counts[compress(r, mask)];
    for (Vertex p = 0; p < counts.size(); ++p) {
      if (counts[p] != expected) {
        out.columns = mask;
        out.pattern = p;
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

bool is_resilient(int n, int m, const std::vector<Vertex>& values, int t) {
  check_dimension(n);
  if (m < 1 || m > n) throw std::invalid_argument("output dimension out of range");
  if (values.size() != (std::size_t{1} << n)) throw std::invalid_argument("one value per vertex of Q_n expected");
  std::vector<VertexSet> level(std::size_t{1} << m, VertexSet(n));
  for (Vertex x = 0; x < values.size(); ++x) {
    if (values[x] >> m) throw std::invalid_argument("value outside Q_m");
    level[values[x]].insert(x);
  }
  for (const auto& s : level) {
    if (s.size() != (std::size_t{1} << (n - m))) return false;
    if (correlation_immunity_order(s) < t) return false;
  }
  return true;
}

Vertex drop_coordinate(Vertex x, int n, int c) {
  const int shift = n - 1 - c;  // bit position of coordinate c
  const Vertex low = (Vertex{1} << shift) - 1;
  return (x & low) | ((x >> 1) & ~low);
}

OrthogonalArray shorten(const OrthogonalArray& a, int coord, int value) {
  if (a.strength < 1) throw std::invalid_argument("shortening needs strength at least 1");
  if (coord < 0 || coord >= a.n || (value != 0 && value != 1)) throw std::invalid_argument("bad coordinate or value");
  OrthogonalArray out;
  out.n = a.n - 1;
  out.strength = a.strength - 1;
  for (Vertex r : a.rows) {
    if (((r & coord_bit(a.n, coord)) != 0) == (value == 1)) out.rows.push_back(drop_coordinate(r, a.n, coord));
  }
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

OrthogonalArray read_oa(std::istream& in) {
  std::string tag;
  std::size_t count = 0;
  int n = 0, q = 0, t = 0;
  if (!(in >> tag >> count >> n >> q >> t) || tag != "OA") throw std::invalid_argument("OA file: bad header");
  if (q != 2) throw std::invalid_argument("OA file: only binary arrays are supported");
  check_dimension(n);
  OrthogonalArray a;
  a.n = n;
  a.strength = t;
  std::string row;
  while (a.rows.size() < count && in >> row) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("OA file: row " + row + " has the wrong length");
    a.rows.push_back(parse_binary(row));
  }
  if (a.rows.size() != count) throw std::invalid_argument("OA file: expected " + std::to_string(count) + " rows");
  std::sort(a.rows.begin(), a.rows.end());
  if (std::adjacent_find(a.rows.begin(), a.rows.end()) != a.rows.end()) throw std::invalid_argument("OA file: repeated row");
  return a;
}

std::string format_oa(const OrthogonalArray& a) {
  std::ostringstream os;
  os << "OA " << a.rows.size() << ' ' << a.n << " 2 " << a.strength << '\n';
  for (Vertex r : a.rows) os << to_binary(r, a.n) << '\n';
  return os.str();
}

VertexSet ThreePartition::cell_set(int k) const {
  VertexSet s(n);
  for (Vertex x = 0; x < cell.size(); ++x) {
    if (cell[x] == k) s.insert(x);
  }
  return s;
}

ThreePartition split_partition(const VertexSet& c0, int coord) {
  const int n = c0.dim();
  if (coord < 0 || coord >= n || n < 2) throw std::invalid_argument("bad split coordinate");
  std::vector<int> cell(std::size_t{1} << (n - 1), 2);
  c0.for_each([&](Vertex x) {
    const Vertex y = drop_coordinate(x, n, coord);
    const int side = (x & coord_bit(n, coord)) ? 1 : 0;
    if (cell[y] != 2) throw std::invalid_argument("cell contains both ends of an edge");
    cell[y] = side;
  });
  return with_matrix(n - 1, std::move(cell));
}

ThreePartition parity_switch(const ThreePartition& t) {
  std::vector<int> cell(t.cell.size());
  for (Vertex x = 0; x < cell.size(); ++x) {
    const bool odd = weight(x) % 2;
    const int k = t.cell[x];
    if (k == 2) {
      cell[x] = 1;
    } else {
      cell[x] = ((k == 0) != odd) ? 0 : 2;
    }
  }
  return with_matrix(t.n, std::move(cell));
}

std::string IntersectionArray::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  s += ";";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

std::optional<IntersectionArray> completely_regular_array(const VertexSet& code) {
  const int n = code.dim();
  if (code.empty()) return std::nullopt;
  std::vector<int> dist(code.universe(), -1);
  std::vector<Vertex> frontier = code.members();
  for (Vertex x : frontier) dist[x] = 0;
  int radius = 0;
  while (!frontier.empty()) {
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      for (int c = 0; c < n; ++c) {
        const Vertex y = x ^ coord_bit(n, c);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          next.push_back(y);
        }
      }
    }
    if (!next.empty()) ++radius;
    frontier = std::move(next);
  }
  const auto m = quotient_matrix_cells(n, dist, radius + 1);
  if (!m) return std::nullopt;
  IntersectionArray a;
  for (int i = 0; i <= radius; ++i) {
    for (int j = 0; j <= radius; ++j) {
      if (std::abs(i - j) > 1 && (*m)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) return std::nullopt;
    }
    if (i < radius) a.b.push_back((*m)[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)]);
    if (i > 0) a.c.push_back((*m)[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)]);
  }
  return a;
}

std::vector<std::vector<int>> split_matrix(int n, int c) {
  return {{0, c - 1, n - c}, {c - 1, 0, n - c}, {c, c, n - 2 * c - 1}};
}

std::vector<std::vector<int>> switched_matrix(int n, int c) {
  return {{c - 1, n - c, 0}, {c, n - 2 * c - 1, c}, {0, n - c, c - 1}};
}

DerivedStructures derive_structures(const VertexSet& c0, int coord) {
  const int n = c0.dim();
  const auto q = quotient_matrix(c0);
  if (!q.matrix || q.matrix->a != 0 || q.matrix->c >= n) {
    throw std::invalid_argument("cell is not equitable with a matrix [[0,n],[c,n-c]], c < n");
  }
  DerivedStructures d;
  d.n = n;
  d.c = q.matrix->c;
  if ((n + d.c) % 2) throw std::invalid_argument("n + c must be even");
  d.oa = OrthogonalArray::from_set(c0, (n + d.c) / 2 - 1);
  if (!verify_oa(d.oa).ok) throw std::logic_error("cell is not an orthogonal array of the expected strength");
  if (Rational(static_cast<long>(d.oa.rows.size())) != bierbrauer_min_N(n, 2, d.oa.strength)) {
    throw std::logic_error("array size is off the bound");
  }
  d.self_complementary = c0.translate(all_ones(n)) == c0;
  d.shortened = shorten(d.oa, coord, 0);
  if (!verify_oa(d.shortened).ok) throw std::logic_error("shortened array fails its strength");
  d.split = split_partition(c0, coord);
  if (d.split.matrix != split_matrix(n, d.c)) throw std::logic_error("split partition has an unexpected matrix");
  d.switched = parity_switch(d.split);
  if (d.switched.matrix != switched_matrix(n, d.c)) throw std::logic_error("switched partition has an unexpected matrix");
  d.code = d.switched.cell_set(0);
  const auto array = completely_regular_array(d.code);
  const IntersectionArray expected{{n - d.c, d.c}, {d.c, n - d.c}};
  if (!array || *array != expected) throw std::logic_error("code is not completely regular with array " + expected.str());
  d.array = *array;
  return d;
}

VertexSet merge_first_two_cells(const ThreePartition& t) {
  VertexSet s = t.cell_set(0);
  s |= t.cell_set(1);
  const auto q = quotient_matrix(s);
  const int n = t.n + 1;
  const int c = t.matrix.size() == 3 ? t.matrix[2][0] : -1;
  if (!q.matrix || *q.matrix != QuotientMatrix{c - 1, n - c, 2 * c, n - 2 * c - 1}) {
    throw std::logic_error("merged cells are not equitable with the expected matrix");
  }
  return s;
}

VertexSet project_partition(const VertexSet& c0, int coord) {
  const int n = c0.dim();
  if (coord < 0 || coord >= n || n < 2) throw std::invalid_argument("bad projection coordinate");
  VertexSet out(n - 1);
  c0.for_each([&](Vertex x) { out.insert(drop_coordinate(x, n, coord)); });
  return out;
}

VertexSet project_13_to_12(const VertexSet& c0, int coord) {
  const auto q = quotient_matrix(c0);
  if (c0.dim() != 13 || !q.matrix || *q.matrix != QuotientMatrix{0, 13, 3, 10}) {
    throw std::invalid_argument("input is not a [[0,13],[3,10]] cell of Q_13");
  }
  auto out = project_partition(c0, coord);
  const auto r = quotient_matrix(out);
  if (!r.matrix || *r.matrix != QuotientMatrix{2, 10, 6, 6}) throw std::logic_error("projection is not [[2,10],[6,6]]");
  return out;
}

CanonicalForm three_partition_form(const ThreePartition& t) {
  std::vector<std::vector<int>> relabellings;
  for (const auto& p : matrix_symmetries(t.matrix)) {
    // p maps new index i to old index p[i]; relabel old colour p[i] as i.
    std::vector<int> r(3);
    for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
    relabellings.push_back(r);
  }
  return colouring_form(t.n, t.cell, 3, relabellings);
}

BridgeCensus bridge_census(const std::vector<VertexSet>& classes) {
  BridgeCensus census;
  std::set<CanonicalForm> arrays, shortened, split, switched, codes;
  census.merges_ok = true;
  for (const auto& c0 : classes) {
    arrays.insert(canonical_form(c0));
    const auto aut = automorphism_info(c0);
    // One coordinate per orbit: the automorphisms carry the derived objects
    // at one coordinate onto those at any other in the same orbit.
    for (const auto& orbit : aut.coordinate_orbits) {
      const int coord = orbit.front();
      const auto d = derive_structures(c0, coord);
      shortened.insert(canonical_form(d.shortened.as_set()));
      shortened.insert(canonical_form(shorten(d.oa, coord, 1).as_set()));
      split.insert(three_partition_form(d.split));
      switched.insert(three_partition_form(d.switched));
      codes.insert(canonical_form(d.code));
      codes.insert(canonical_form(d.switched.cell_set(2)));
      try {
        merge_first_two_cells(d.split);
      } catch (const std::logic_error&) {
        census.merges_ok = false;
      }
    }
  }
  census.arrays = arrays.size();
  census.shortened = shortened.size();
  census.split = split.size();
  census.switched = switched.size();
  census.codes = codes.size();
  return census;
}

}  // namespace eqp
