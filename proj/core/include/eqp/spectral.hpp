#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqp/cube.hpp"

namespace eqp {

// f(x) for every vertex of Q_n, indexed by the word.
struct IntegerFunction {
  int n = 0;
  std::vector<std::int64_t> values;

  IntegerFunction() = default;
  IntegerFunction(int dim, std::vector<std::int64_t> vals);
  static IntegerFunction constant(int dim, std::int64_t c);
  static IntegerFunction character(int dim, Vertex y);
  // b on c0, -c off c0
  static IntegerFunction associated(const VertexSet& c0, std::int64_t b, std::int64_t c);
  static IntegerFunction indicator(const VertexSet& s);

  std::int64_t operator()(Vertex x) const { return values[x]; }
};

// coeffs(y) = sum_z f(z) (-1)^{(z,y)}, i.e. 2^n times the normalised Fourier
// coefficient. Every identity in this module is stated in that scaling.
struct IntegerSpectrum {
  int n = 0;
  std::vector<std::int64_t> coeffs;

  std::int64_t operator()(Vertex y) const { return coeffs[y]; }
  std::vector<Vertex> support() const;
};

void fwht_in_place(std::vector<std::int64_t>& data);

IntegerSpectrum wht(const IntegerFunction& f);
// Inverse up to the 2^n scale: returns f with wht(f) = s, throwing when some
// value is not divisible by 2^n.
IntegerFunction inverse_wht(const IntegerSpectrum& s);

struct QuotientMatrix {
  int a = 0, b = 0, c = 0, d = 0;

  int n() const { return a + b; }
  bool row_sums_agree() const { return a + b == c + d; }
  QuotientMatrix swapped() const { return {d, c, b, a}; }
  QuotientMatrix scaled(int t) const { return {a * t, b * t, c * t, d * t}; }
  std::string str() const;

  friend bool operator==(const QuotientMatrix&, const QuotientMatrix&) = default;
};

struct EquitableCheck {
  std::optional<QuotientMatrix> matrix;
  Vertex witness = 0;  // a vertex whose neighbour count breaks the pattern
  std::string reason;

  bool equitable() const { return matrix.has_value(); }
};

EquitableCheck quotient_matrix(const VertexSet& c0);

// Generic k-cell version: cell[x] in [0, k). Returns the k x k matrix or nullopt.
std::optional<std::vector<std::vector<int>>> quotient_matrix_cells(int n, const std::vector<int>& cell, int k);

struct FourierReport {
  bool weights_ok = false;      // nonzeros only at weight (b+c)/2
  bool convolution_ok = false;  // (b-c) 2^n F(x) = sum_{y+z=x} F(y) F(z), x != 0
  bool norm_ok = false;         // sum F^2 = bc 2^{2n}
  std::int64_t norm = 0;
  int support_weight = -1;  // weight of the nonzeros when uniform
  std::string first_failure;

  bool ok() const { return weights_ok && convolution_ok && norm_ok; }
};

// Throws std::invalid_argument if c0 is not equitable with matrix m.
FourierReport verify_fourier_system(const VertexSet& c0, const QuotientMatrix& m);

int correlation_immunity_order(const VertexSet& c0);

// Basis (reduced, pivots distinct) of { y : c0 + y = c0 }.
std::vector<Vertex> kernel(const VertexSet& c0);
std::size_t kernel_size(const VertexSet& c0);

std::vector<std::int64_t> composite_edge_counts(const VertexSet& c0);
std::vector<std::int64_t> directional_norms(const IntegerSpectrum& s);

std::int64_t face_sum(const IntegerFunction& f, const Face& face);

struct IdentitySides {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

// (2^{n-wt x} sum_{z <= x} coeffs(z), 2^n sum_{z <= x + 1} f(z))
IdentitySides low_weight_fourier_identity(const IntegerFunction& f, Vertex x);

// Lines "hex<TAB>coefficient" for the nonzeros, by increasing word.
std::string spectrum_dump(const IntegerSpectrum& s);

}  // namespace eqp
