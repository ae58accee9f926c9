#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqp {

inline constexpr int kMaxDim = 16;

// A word of Q_n. Coordinate 1 is the most significant of the n bits, so the
// hex rendering of a word reads left to right like the coordinate list.
using Vertex = std::uint32_t;

void check_dimension(int n);

constexpr Vertex coord_bit(int n, int coord) {  // coord is 0-based
  return Vertex{1} << (n - 1 - coord);
}

constexpr Vertex all_ones(int n) { return (Vertex{1} << n) - 1; }

inline int weight(Vertex v) { return std::popcount(v); }

inline int distance(Vertex x, Vertex y) { return std::popcount(x ^ y); }

inline bool dominated_by(Vertex x, Vertex y) { return (x & ~y) == 0; }

inline int inner_parity(Vertex x, Vertex y) { return std::popcount(x & y) & 1; }

std::string to_hex(Vertex v, int n);
Vertex parse_hex(std::string_view text, int n);

std::string to_binary(Vertex v, int n);
Vertex parse_binary(std::string_view text);

// Gamma = { z + base : z <= mask }.
struct Face {
  Vertex mask = 0;
  Vertex base = 0;

  int dimension() const { return weight(mask); }
};

std::vector<Vertex> face_vertices(const Face& face);

// Enumerates the submasks of `mask` in increasing order.
template <typename Fn>
void for_each_submask(Vertex mask, Fn&& fn) {
  Vertex sub = 0;
  while (true) {
    fn(sub);
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

// Dense subset of V(Q_n) stored as a 2^n-bit set.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n);
  VertexSet(int n, std::span<const Vertex> members);

  int dim() const { return n_; }
  std::size_t universe() const { return std::size_t{1} << n_; }

  bool contains(Vertex v) const { return (bits_[v >> 6] >> (v & 63)) & 1u; }
  void insert(Vertex v) { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void assign(Vertex v, bool on) { on ? insert(v) : erase(v); }

  std::size_t size() const;
  bool empty() const { return size() == 0; }

  VertexSet complement() const;
  VertexSet translate(Vertex t) const;
  std::vector<Vertex> members() const;

  // Number of members among the n neighbours of v.
  int neighbours_inside(Vertex v) const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const int b = std::countr_zero(word);
        fn(static_cast<Vertex>(w * 64 + b));
        word &= word - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return bits_; }

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator^=(const VertexSet& other);

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    return a.bits_ <=> b.bits_;
  }

 private:
  void trim();

  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// x -> shift + pi(x); coordinate c of x moves to coordinate perm[c] (0-based).
class CubeAutomorphism {
 public:
  CubeAutomorphism() = default;
  explicit CubeAutomorphism(int n);
  CubeAutomorphism(std::vector<int> perm, Vertex shift);

  static CubeAutomorphism identity(int n) { return CubeAutomorphism(n); }
  static CubeAutomorphism translation(int n, Vertex t);

  int dim() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  Vertex shift() const { return shift_; }

  Vertex permute(Vertex x) const;
  Vertex operator()(Vertex x) const { return shift_ ^ permute(x); }

  // (this * other)(x) = this(other(x))
  CubeAutomorphism compose(const CubeAutomorphism& other) const;
  CubeAutomorphism inverse() const;

  bool is_identity() const;

  friend bool operator==(const CubeAutomorphism&, const CubeAutomorphism&) = default;

 private:
  std::vector<int> perm_;
  Vertex shift_ = 0;
};

VertexSet apply_automorphism(const CubeAutomorphism& g, const VertexSet& s);

// Dimension of the affine span over GF(2). Throws on an empty set.
int affine_rank(const VertexSet& s);

}  // namespace eqp
