#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eqp {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool on = true) {
    if (on) {
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    } else {
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  // Index of the lowest set bit, or size() when none.
  std::size_t first_set() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Matrix over GF(2) with a fixed column count.
class Gf2Matrix {
 public:
  explicit Gf2Matrix(std::size_t cols = 0) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_.size(); }

  void add_row(BitVector row);
  const BitVector& row(std::size_t i) const { return rows_[i]; }

  std::size_t rank() const;

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;
};

struct Gf2Solution {
  std::size_t rank = 0;
  bool consistent = false;
  BitVector particular;            // valid when consistent
  std::vector<BitVector> kernel;   // basis of the null space of A
};

// Solves A x = rhs. Throws std::invalid_argument on a dimension mismatch.
Gf2Solution gf2_solve(const Gf2Matrix& a, const BitVector& rhs);

// Rank of a list of words viewed as vectors over GF(2).
int linear_rank(std::span<const std::uint32_t> rows);

// Reduced basis of the span (pivot = highest set bit, all pivots distinct).
std::vector<std::uint32_t> span_basis(std::span<const std::uint32_t> rows);

}  // namespace eqp
