#include "eqp/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqp {

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return size_;
}

void Gf2Matrix::add_row(BitVector row) {
  if (row.size() != cols_) throw std::invalid_argument("row length does not match column count");
  rows_.push_back(std::move(row));
}

std::size_t Gf2Matrix::rank() const {
  return gf2_solve(*this, BitVector(rows())).rank;
}

Gf2Solution gf2_solve(const Gf2Matrix& a, const BitVector& rhs) {
  if (rhs.size() != a.rows()) throw std::invalid_argument("right-hand side length does not match row count");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  // Augmented rows; the rhs bit is kept separately.
  std::vector<BitVector> rows;
  std::vector<bool> rhs_bits;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows.push_back(a.row(i));
    rhs_bits.push_back(rhs.get(i));
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t sel = rank;
    while (sel < m && !rows[sel].get(col)) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[rank]);
    std::swap(rhs_bits[sel], rhs_bits[rank]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != rank && rows[i].get(col)) {
        rows[i] ^= rows[rank];
        rhs_bits[i] = rhs_bits[i] != rhs_bits[rank];
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }

  Gf2Solution out;
  out.rank = rank;
  out.consistent = true;
  for (std::size_t i = rank; i < m; ++i) {
    if (rhs_bits[i]) {
      out.consistent = false;
      break;
    }
  }

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;

  if (out.consistent) {
    out.particular = BitVector(n);
    for (std::size_t i = 0; i < rank; ++i) {
      if (rhs_bits[i]) out.particular.set(pivot_col[i]);
    }
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitVector k(n);
    k.set(free);
    for (std::size_t i = 0; i < rank; ++i) {
      if (rows[i].get(free)) k.set(pivot_col[i]);
    }
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::vector<std::uint32_t> span_basis(std::span<const std::uint32_t> rows) {
  std::vector<std::uint32_t> basis;
  for (std::uint32_t r : rows) {
    for (std::uint32_t b : basis) r = std::min(r, r ^ b);
    if (r) {
      for (auto& b : basis) b = std::min(b, b ^ r);
      basis.push_back(r);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  return basis;
}

int linear_rank(std::span<const std::uint32_t> rows) {
  return static_cast<int>(span_basis(rows).size());
}

}  // namespace eqp
