#include "eqp/cube.hpp"

#include <algorithm>
#include <numeric>

#include "eqp/gf2.hpp"

namespace eqp {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("cube dimension must lie in [1, 16], got " + std::to_string(n));
  }
}

std::string to_hex(Vertex v, int n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = (n + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

Vertex parse_hex(std::string_view text, int n) {
  if (text.empty()) throw std::invalid_argument("empty hex word");
  Vertex v = 0;
  for (char ch : text) {
    int d;
    if (ch >= '0' && ch <= '9') {
      d = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      d = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      d = ch - 'A' + 10;
    } else {
      throw std::invalid_argument("invalid hex digit in '" + std::string(text) + "'");
    }
    v = (v << 4) | static_cast<Vertex>(d);
    if (v >> n) throw std::invalid_argument("hex word '" + std::string(text) + "' exceeds n bits");
  }
  return v;
}

std::string to_binary(Vertex v, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int c = 0; c < n; ++c) {
    if (v & coord_bit(n, c)) out[static_cast<std::size_t>(c)] = '1';
  }
  return out;
}

Vertex parse_binary(std::string_view text) {
  if (text.empty() || text.size() > kMaxDim) throw std::invalid_argument("bad binary word length");
  Vertex v = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("invalid binary digit in '" + std::string(text) + "'");
    v = (v << 1) | static_cast<Vertex>(ch - '0');
  }
  return v;
}

std::vector<Vertex> face_vertices(const Face& face) {
  std::vector<Vertex> out;
  out.reserve(std::size_t{1} << face.dimension());
  for_each_submask(face.mask, [&](Vertex z) { out.push_back(z ^ face.base); });
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet::VertexSet(int n) : n_(n) {
  check_dimension(n);
  bits_.assign((universe() + 63) / 64, 0);
}

VertexSet::VertexSet(int n, std::span<const Vertex> members) : VertexSet(n) {
  for (Vertex v : members) {
    if (v >> n) throw std::invalid_argument("vertex outside Q_n");
    insert(v);
  }
}

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void VertexSet::trim() {
  if (universe() < 64 && !bits_.empty()) bits_[0] &= (std::uint64_t{1} << universe()) - 1;
}

VertexSet VertexSet::complement() const {
  VertexSet out = *this;
  for (auto& w : out.bits_) w = ~w;
  out.trim();
  return out;
}

VertexSet VertexSet::translate(Vertex t) const {
  VertexSet out(n_);
  if (universe() >= 64 && (t & 63) == 0) {
    // whole 64-bit words move
    const std::size_t shift = t >> 6;
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w ^ shift] = bits_[w];
    return out;
  }
  for_each([&](Vertex v) { out.insert(v ^ t); });
  return out;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

int VertexSet::neighbours_inside(Vertex v) const {
  int count = 0;
  for (int c = 0; c < n_; ++c) count += contains(v ^ (Vertex{1} << c));
  return count;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= other.bits_[w];
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] |= other.bits_[w];
  return *this;
}

VertexSet& VertexSet::operator^=(const VertexSet& other) {
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= other.bits_[w];
  return *this;
}

CubeAutomorphism::CubeAutomorphism(int n) : perm_(static_cast<std::size_t>(n)) {
  check_dimension(n);
  std::iota(perm_.begin(), perm_.end(), 0);
}

CubeAutomorphism::CubeAutomorphism(std::vector<int> perm, Vertex shift) : perm_(std::move(perm)), shift_(shift) {
  const int n = dim();
  check_dimension(n);
  std::vector<bool> seen(perm_.size(), false);
  for (int p : perm_) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) throw std::invalid_argument("not a coordinate permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  if (shift_ >> n) throw std::invalid_argument("shift outside Q_n");
}

CubeAutomorphism CubeAutomorphism::translation(int n, Vertex t) {
  CubeAutomorphism g(n);
  if (t >> n) throw std::invalid_argument("shift outside Q_n");
  g.shift_ = t;
  return g;
}

Vertex CubeAutomorphism::permute(Vertex x) const {
  const int n = dim();
  Vertex out = 0;
  while (x) {
    const int bit = std::countr_zero(x);
    const int coord = n - 1 - bit;
    out |= coord_bit(n, perm_[static_cast<std::size_t>(coord)]);
    x &= x - 1;
  }
  return out;
}

CubeAutomorphism CubeAutomorphism::compose(const CubeAutomorphism& other) const {
  // this(other(x)) = s1 + p1(s2 + p2 x) = (s1 + p1 s2) + (p1 p2) x
  const int n = dim();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) perm[static_cast<std::size_t>(c)] = perm_[static_cast<std::size_t>(other.perm_[static_cast<std::size_t>(c)])];
  return CubeAutomorphism(std::move(perm), shift_ ^ permute(other.shift_));
}

CubeAutomorphism CubeAutomorphism::inverse() const {
  // x = p^-1 (y + s)
  const int n = dim();
  std::vector<int> inv(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) inv[static_cast<std::size_t>(perm_[static_cast<std::size_t>(c)])] = c;
  CubeAutomorphism g(std::move(inv), 0);
  g.shift_ = g.permute(shift_);
  return g;
}

bool CubeAutomorphism::is_identity() const {
  if (shift_ != 0) return false;
  for (int c = 0; c < dim(); ++c) {
    if (perm_[static_cast<std::size_t>(c)] != c) return false;
  }
  return true;
}

VertexSet apply_automorphism(const CubeAutomorphism& g, const VertexSet& s) {
  if (g.dim() != s.dim()) throw std::invalid_argument("automorphism and set live in different cubes");
  VertexSet out(s.dim());
  s.for_each([&](Vertex v) { out.insert(g(v)); });
  return out;
}

int affine_rank(const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("affine rank of an empty set");
  Vertex anchor = 0;
  bool first = true;
  std::vector<Vertex> rows;
  s.for_each([&](Vertex v) {
    if (first) {
      anchor = v;
      first = false;
    } else {
      rows.push_back(v ^ anchor);
    }
  });
  return linear_rank(rows);
}

}  // namespace eqp
