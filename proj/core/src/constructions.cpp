#include "eqp/constructions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace eqp {

namespace {

Vertex pattern_word(const std::string& p, char star_as) {
  Vertex w = 0;
  for (char ch : p) w = (w << 1) | static_cast<Vertex>((ch == '*' ? star_as : ch) == '1');
  return w;
}

Q6Colouring build_q6() {
  static const char* kBlack[] = {"000000", "111111", "000111", "111000"};
  static const char* kWhite[] = {"100000", "011111", "000011", "111100", "010000", "101111",
                                 "000101", "111010", "001000", "110111", "000110", "111001"};
  static const char* kGray[] = {"0**100", "1**011", "1001**", "0110**", "*0*010", "*1*101",
                                "010*1*", "101*0*", "**0001", "**1110", "001**1", "110**0"};
  Q6Colouring q;
  q.shade.assign(64, Shade::Gray);
  q.face_of.assign(64, -1);
  std::vector<int> seen(64, 0);
  for (auto* w : kBlack) {
    q.shade[pattern_word(w, '0')] = Shade::Black;
    ++seen[pattern_word(w, '0')];
  }
  for (auto* w : kWhite) {
    q.shade[pattern_word(w, '0')] = Shade::White;
    ++seen[pattern_word(w, '0')];
  }
  for (auto* p : kGray) {
    GrayFace f;
    f.pattern = p;
    f.face.base = pattern_word(p, '0');
    f.face.mask = pattern_word(p, '1') ^ f.face.base;
    std::vector<int> stars;
    for (int c = 0; c < 6; ++c) {
      if (p[c] == '*') stars.push_back(c);
    }
    f.star_i = stars.at(0);
    f.star_j = stars.at(1);
    for (Vertex v : face_vertices(f.face)) {
      q.face_of[v] = static_cast<int>(q.gray_faces.size());
      ++seen[v];
    }
    q.gray_faces.push_back(f);
  }
  for (int count : seen) {
    if (count != 1) throw std::logic_error("Q6 colouring table does not partition the 6-cube");
  }
  return q;
}

}  // namespace

const Q6Colouring& q6_colouring() {
  static const Q6Colouring q = build_q6();
  return q;
}

VertexSet fdf_q12(std::uint32_t choices) {
  if (choices >> 12) throw std::invalid_argument("choices must fit in 12 bits");
  const auto& q = q6_colouring();
  VertexSet black(12);
  for (Vertex x = 0; x < 4096; ++x) {
    const Vertex u = x >> 6;
    const Vertex v = x & 63;
    const Vertex z = u ^ v;
    switch (q.shade[z]) {
      case Shade::Black: black.insert(x); break;
      case Shade::White: break;
      case Shade::Gray: {
        const int k = q.face_of[z];
        const auto& f = q.gray_faces[static_cast<std::size_t>(k)];
        const int parity = (weight(u) + static_cast<int>((v >> (5 - f.star_i)) & 1) +
                            static_cast<int>((v >> (5 - f.star_j)) & 1)) & 1;
        const int pick = static_cast<int>((choices >> (11 - k)) & 1);
        if (parity == pick) black.insert(x);
        break;
      }
    }
  }
  const auto check = quotient_matrix(black);
  if (!check.matrix || *check.matrix != QuotientMatrix{3, 9, 7, 5}) {
    throw std::logic_error("12-cube construction is not equitable: " + check.reason);
  }
  return black;
}

const std::vector<std::vector<SignedWord>>& fdf_spectrum_table() {
  static const std::vector<std::vector<SignedWord>> table = [] {
    // u v sign, grouped as printed
    static const char* kRows[] = {
        "001111 001111 -", "010111 010111 -", "100111 100111 -", "111001 111001 +", "111010 111010 +",
        "111100 111100 +",
        "011011 011011 +", "011101 011101 +", "011110 011110 +", "101011 101011 +", "101101 101101 +",
        "101110 101110 +", "110011 110011 +", "110101 110101 +", "110110 110110 +",
        "000110 111111 +", "001111 110110 +", "010111 101110 -", "011110 100111 -", "100111 011110 -",
        "101110 010111 -", "110110 001111 +", "111111 000110 +",
        "000101 111111 +", "001111 110101 -", "010111 101101 +", "011101 100111 -", "100111 011101 -",
        "101101 010111 +", "110101 001111 -", "111111 000101 +",
        "000011 111111 +", "001111 110011 -", "010111 101011 -", "011011 100111 +", "100111 011011 +",
        "101011 010111 -", "110011 001111 -", "111111 000011 +",
        "110000 111111 +", "111001 110110 -", "111010 110101 +", "110011 111100 -", "111100 110011 +",
        "110101 111010 -", "110110 111001 +", "111111 110000 -",
        "101000 111111 +", "111001 101110 +", "111010 101101 -", "101011 111100 -", "111100 101011 +",
        "101101 111010 +", "101110 111001 -", "111111 101000 -",
        "011000 111111 +", "111001 011110 +", "111010 011101 +", "011011 111100 +", "111100 011011 -",
        "011101 111010 -", "011110 111001 -", "111111 011000 -"};
    static const int kSizes[] = {6, 9, 8, 8, 8, 8, 8, 8};
    std::vector<std::vector<SignedWord>> out;
    std::size_t row = 0;
    for (int size : kSizes) {
      std::vector<SignedWord> group;
      for (int i = 0; i < size; ++i, ++row) {
        const std::string line = kRows[row];
        const Vertex w = (parse_binary(line.substr(0, 6)) << 6) | parse_binary(line.substr(7, 6));
        group.push_back({w, line[14] == '+' ? 1 : -1});
      }
      out.push_back(std::move(group));
    }
    return out;
  }();
  return table;
}

CubeAutomorphism fdf_group_swap() {
  std::vector<int> perm(12);
  for (int c = 0; c < 12; ++c) perm[static_cast<std::size_t>(c)] = c;
  for (int c = 3; c < 6; ++c) std::swap(perm[static_cast<std::size_t>(c)], perm[static_cast<std::size_t>(c + 6)]);
  return CubeAutomorphism(perm, 0);
}

std::vector<SignedWord> fdf_table_variant(std::uint32_t flips, std::uint32_t swaps) {
  const auto& table = fdf_spectrum_table();
  const auto swap = fdf_group_swap();
  std::vector<SignedWord> out;
  for (std::size_t g = 0; g < table.size(); ++g) {
    for (auto sw : table[g]) {
      if (g >= 2) {
        const auto k = static_cast<std::uint32_t>(g - 2);
        if ((flips >> k) & 1) sw.sign = -sw.sign;
        if ((swaps >> k) & 1) sw.word = swap(sw.word);
      }
      out.push_back(sw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedWord> signed_support(const IntegerSpectrum& s, std::int64_t scale) {
  std::vector<SignedWord> out;
  for (Vertex y = 0; y < s.coeffs.size(); ++y) {
    if (s.coeffs[y] == 0) continue;
    if (s.coeffs[y] % scale != 0) throw std::invalid_argument("coefficient not a multiple of the scale");
    out.push_back({y, static_cast<int>(s.coeffs[y] / scale)});
  }
  return out;
}

SeedSearch find_seed_partition(int n, const QuotientMatrix& m) {
  check_dimension(n);
  if (n > 8) throw std::invalid_argument("seed search supports n <= 8");
  if (!m.row_sums_agree() || m.n() != n || m.a < 0 || m.b < 0 || m.c < 0 || m.d < 0) {
    throw std::invalid_argument("matrix " + m.str() + " is not a quotient matrix of Q_" + std::to_string(n));
  }
  const std::size_t size = std::size_t{1} << n;
  // state: -1 unassigned, 0 in C0, 1 in C1
  std::vector<int> state(size, -1);
  std::vector<int> in0(size, 0), in1(size, 0);
  std::vector<Vertex> trail;
  SeedSearch out;
  std::set<CanonicalForm> forms;

  auto need0 = [&](Vertex x) { return state[x] == 0 ? m.a : m.c; };
  std::function<bool(Vertex, int)> assign = [&](Vertex x, int cell) -> bool {
    if (state[x] >= 0) return state[x] == cell;
    state[x] = cell;
    trail.push_back(x);
    for (int c = 0; c < n; ++c) ++(cell == 0 ? in0 : in1)[x ^ (Vertex{1} << c)];
    // Check x and its neighbours, forcing where counts are saturated.
    std::vector<Vertex> check{x};
    for (int c = 0; c < n; ++c) check.push_back(x ^ (Vertex{1} << c));
    for (Vertex y : check) {
      if (state[y] < 0) continue;
      const int r = need0(y);
      if (in0[y] > r || in1[y] > n - r) return false;
      const int force = in0[y] == r ? 1 : (in1[y] == n - r ? 0 : -1);
      if (force < 0 || in0[y] + in1[y] == n) continue;
      for (int c = 0; c < n; ++c) {
        const Vertex z = y ^ (Vertex{1} << c);
        if (state[z] < 0 && !assign(z, force)) return false;
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      const Vertex x = trail.back();
      trail.pop_back();
      for (int c = 0; c < n; ++c) --(state[x] == 0 ? in0 : in1)[x ^ (Vertex{1} << c)];
      state[x] = -1;
    }
  };
  std::function<void()> search = [&]() {
    Vertex pick = static_cast<Vertex>(size);
    for (Vertex x = 0; x < size; ++x) {
      if (state[x] < 0) {
        pick = x;
        break;
      }
    }
    if (pick == size) {
      VertexSet c0(n);
      for (Vertex x = 0; x < size; ++x) {
        if (state[x] == 0) c0.insert(x);
      }
      if (!quotient_matrix(c0).matrix || *quotient_matrix(c0).matrix != m) return;
      ++out.solutions_through_zero;
      auto canon = canonicalize(c0);
      if (forms.insert(canon.form).second) {
        out.stabiliser_orders.push_back(canon.aut.order);
        if (!out.representative) out.representative = c0;
      }
      return;
    }
    for (int cell : {0, 1}) {
      const std::size_t mark = trail.size();
      if (assign(pick, cell)) search();
      undo(mark);
    }
  };
  const std::size_t mark = trail.size();
  if (assign(0, 0)) search();
  undo(mark);
  out.classes = forms.size();
  return out;
}

DoublingMode DoublingMode::first_pairs(int m, int i) {
  if (i < 0 || 2 * i > m) throw std::invalid_argument("too many Z4 pairs");
  DoublingMode mode = standard(m);
  for (int k = 0; k < i; ++k) mode.z4_pairs[static_cast<std::size_t>(k)] = true;
  return mode;
}

Vertex gray_map(int z4) {
  static constexpr Vertex kMap[] = {0b00, 0b01, 0b11, 0b10};
  return kMap[z4 & 3];
}

int gray_unmap(Vertex two_bits) {
  static constexpr int kInverse[] = {0, 1, 3, 2};
  return kInverse[two_bits & 3];
}

Vertex mixed_sum(Vertex x, Vertex y, int m, const DoublingMode& mode) {
  Vertex out = x ^ y;
  for (std::size_t k = 0; k < mode.z4_pairs.size(); ++k) {
    if (!mode.z4_pairs[k]) continue;
    const int shift = m - 2 - 2 * static_cast<int>(k);
    const int s = gray_unmap((x >> shift) & 3) + gray_unmap((y >> shift) & 3);
    out = (out & ~(Vertex{3} << shift)) | (gray_map(s) << shift);
  }
  return out;
}

VertexSet double_partition(const VertexSet& p0, const DoublingMode& mode) {
  const int m = p0.dim();
  if (2 * m > kMaxDim) throw std::invalid_argument("doubled dimension exceeds 16");
  if (mode.z4_pairs.size() * 2 > static_cast<std::size_t>(m)) throw std::invalid_argument("mode has too many pairs");
  const auto base = quotient_matrix(p0);
  if (!base.matrix) throw std::invalid_argument("input partition is not equitable: " + base.reason);
  VertexSet out(2 * m);
  for (Vertex x = 0; x < p0.universe(); ++x) {
    for (Vertex y = 0; y < p0.universe(); ++y) {
      if (p0.contains(mixed_sum(x, y, m, mode))) out.insert((x << m) | y);
    }
  }
  const auto check = quotient_matrix(out);
  if (!check.matrix || *check.matrix != base.matrix->scaled(2)) {
    throw std::logic_error("doubled partition is not equitable with matrix " + base.matrix->scaled(2).str());
  }
  return out;
}

std::map<std::size_t, std::size_t> cycle_structure(const VertexSet& c0) {
  const int n = c0.dim();
  bool regular = true;
  c0.for_each([&](Vertex x) { regular = regular && c0.neighbours_inside(x) == 2; });
  if (!regular) throw std::invalid_argument("induced subgraph is not 2-regular");
  VertexSet seen(n);
  std::map<std::size_t, std::size_t> out;
  c0.for_each([&](Vertex start) {
    if (seen.contains(start)) return;
    std::size_t length = 0;
    Vertex prev = start;
    Vertex cur = start;
    do {
      seen.insert(cur);
      ++length;
      Vertex next = cur;
      for (int c = 0; c < n; ++c) {
        const Vertex y = cur ^ (Vertex{1} << c);
        if (c0.contains(y) && y != prev) {
          next = y;
          break;
        }
      }
      prev = cur;
      cur = next;
    } while (cur != start);
    ++out[length];
  });
  return out;
}

}  // namespace eqp
