#include "eqp/spectral.hpp"

#include <sstream>
#include <stdexcept>

#include "eqp/gf2.hpp"

namespace eqp {

IntegerFunction::IntegerFunction(int dim, std::vector<std::int64_t> vals) : n(dim), values(std::move(vals)) {
  check_dimension(n);
  if (values.size() != (std::size_t{1} << n)) throw std::invalid_argument("function table must have 2^n entries");
}

IntegerFunction IntegerFunction::constant(int dim, std::int64_t c) {
  check_dimension(dim);
  return IntegerFunction(dim, std::vector<std::int64_t>(std::size_t{1} << dim, c));
}

IntegerFunction IntegerFunction::character(int dim, Vertex y) {
  check_dimension(dim);
  std::vector<std::int64_t> vals(std::size_t{1} << dim);
  for (Vertex x = 0; x < vals.size(); ++x) vals[x] = inner_parity(x, y) ? -1 : 1;
  return IntegerFunction(dim, std::move(vals));
}

IntegerFunction IntegerFunction::associated(const VertexSet& c0, std::int64_t b, std::int64_t c) {
  std::vector<std::int64_t> vals(c0.universe());
  for (Vertex x = 0; x < vals.size(); ++x) vals[x] = c0.contains(x) ? b : -c;
  return IntegerFunction(c0.dim(), std::move(vals));
}

IntegerFunction IntegerFunction::indicator(const VertexSet& s) { return associated(s, 1, 0); }

std::vector<Vertex> IntegerSpectrum::support() const {
  std::vector<Vertex> out;
  for (Vertex y = 0; y < coeffs.size(); ++y) {
    if (coeffs[y] != 0) out.push_back(y);
  }
  return out;
}

void fwht_in_place(std::vector<std::int64_t>& data) {
  const std::size_t size = data.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int64_t u = data[i];
        const std::int64_t v = data[i + half];
        data[i] = u + v;
        data[i + half] = u - v;
      }
    }
  }
}

IntegerSpectrum wht(const IntegerFunction& f) {
  IntegerSpectrum s{f.n, f.values};
  fwht_in_place(s.coeffs);
  return s;
}

IntegerFunction inverse_wht(const IntegerSpectrum& s) {
  std::vector<std::int64_t> vals = s.coeffs;
  fwht_in_place(vals);
  const std::int64_t scale = std::int64_t{1} << s.n;
  for (auto& v : vals) {
    if (v % scale != 0) throw std::invalid_argument("spectrum is not the transform of an integer function");
    v /= scale;
  }
  return IntegerFunction(s.n, std::move(vals));
}

std::string QuotientMatrix::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

EquitableCheck quotient_matrix(const VertexSet& c0) {
  EquitableCheck out;
  const int n = c0.dim();
  const std::size_t size = c0.size();
  if (size == 0 || size == c0.universe()) {
    out.reason = "cell must be a proper nonempty subset";
    return out;
  }
  int a = -1;
  int c = -1;
  for (Vertex x = 0; x < c0.universe(); ++x) {
    const int inside = c0.neighbours_inside(x);
    int& expected = c0.contains(x) ? a : c;
    if (expected < 0) {
      expected = inside;
    } else if (expected != inside) {
      out.witness = x;
      out.reason = "vertex " + to_hex(x, n) + " has " + std::to_string(inside) + " neighbours in C0, expected " +
                   std::to_string(expected);
      return out;
    }
  }
  out.matrix = QuotientMatrix{a, n - a, c, n - c};
  return out;
}

std::optional<std::vector<std::vector<int>>> quotient_matrix_cells(int n, const std::vector<int>& cell, int k) {
  check_dimension(n);
  if (cell.size() != (std::size_t{1} << n)) throw std::invalid_argument("cell table must have 2^n entries");
  std::vector<std::vector<int>> m(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), -1));
  std::vector<int> counts(static_cast<std::size_t>(k));
  for (Vertex x = 0; x < cell.size(); ++x) {
    const int cx = cell[x];
    if (cx < 0 || cx >= k) throw std::invalid_argument("cell index out of range");
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(cell[x ^ (Vertex{1} << i)])];
    auto& row = m[static_cast<std::size_t>(cx)];
    for (int j = 0; j < k; ++j) {
      if (row[static_cast<std::size_t>(j)] < 0) {
        row[static_cast<std::size_t>(j)] = counts[static_cast<std::size_t>(j)];
      } else if (row[static_cast<std::size_t>(j)] != counts[static_cast<std::size_t>(j)]) {
        return std::nullopt;
      }
    }
  }
  for (const auto& row : m) {
    for (int v : row) {
      if (v < 0) return std::nullopt;  // empty cell
    }
  }
  return m;
}

FourierReport verify_fourier_system(const VertexSet& c0, const QuotientMatrix& m) {
  const auto check = quotient_matrix(c0);
  if (!check.matrix || *check.matrix != m) {
    throw std::invalid_argument("precondition violated: cell is not equitable with matrix " + m.str());
  }
  const int n = c0.dim();
  const auto f = IntegerFunction::associated(c0, m.b, m.c);
  const auto s = wht(f);

  FourierReport report;
  report.weights_ok = true;
  if ((m.b + m.c) % 2 != 0) report.weights_ok = false;
  const int target = (m.b + m.c) / 2;
  for (Vertex y = 0; y < s.coeffs.size(); ++y) {
    if (s.coeffs[y] != 0 && (weight(y) != target || (m.b + m.c) % 2 != 0)) {
      report.weights_ok = false;
      if (report.first_failure.empty()) report.first_failure = "nonzero coefficient at " + to_hex(y, n);
    }
  }
  if (report.weights_ok) report.support_weight = target;

  // sum_{y+z=x} F(y)F(z) = 2^n wht(f^2)(x)
  IntegerFunction squared = f;
  for (auto& v : squared.values) v *= v;
  const auto conv = wht(squared);
  report.convolution_ok = true;
  for (Vertex x = 1; x < s.coeffs.size(); ++x) {
    if (static_cast<std::int64_t>(m.b - m.c) * s.coeffs[x] != conv.coeffs[x]) {
      report.convolution_ok = false;
      if (report.first_failure.empty()) report.first_failure = "convolution identity fails at " + to_hex(x, n);
      break;
    }
  }

  std::int64_t norm = 0;
  for (auto v : s.coeffs) norm += v * v;
  report.norm = norm;
  report.norm_ok = norm == static_cast<std::int64_t>(m.b) * m.c * (std::int64_t{1} << (2 * n));
  if (!report.norm_ok && report.first_failure.empty()) report.first_failure = "norm identity fails";
  return report;
}

int correlation_immunity_order(const VertexSet& c0) {
  const int n = c0.dim();
  const auto s = wht(IntegerFunction::indicator(c0));
  int lowest = n + 1;
  for (Vertex y = 1; y < s.coeffs.size(); ++y) {
    if (s.coeffs[y] != 0) lowest = std::min(lowest, weight(y));
  }
  return lowest - 1;
}

namespace {

std::vector<std::int64_t> autocorrelation(const VertexSet& c0) {
  auto s = wht(IntegerFunction::indicator(c0));
  for (auto& v : s.coeffs) v *= v;
  fwht_in_place(s.coeffs);
  for (auto& v : s.coeffs) v >>= c0.dim();
  return s.coeffs;
}

}  // namespace

std::vector<Vertex> kernel(const VertexSet& c0) {
  const auto corr = autocorrelation(c0);
  const auto size = static_cast<std::int64_t>(c0.size());
  std::vector<Vertex> periods;
  for (Vertex y = 1; y < corr.size(); ++y) {
    if (corr[y] == size) periods.push_back(y);
  }
  return span_basis(periods);
}

std::size_t kernel_size(const VertexSet& c0) { return std::size_t{1} << kernel(c0).size(); }

std::vector<std::int64_t> composite_edge_counts(const VertexSet& c0) {
  const int n = c0.dim();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  c0.for_each([&](Vertex x) {
    for (int c = 0; c < n; ++c) {
      if (!c0.contains(x ^ coord_bit(n, c))) ++counts[static_cast<std::size_t>(c)];
    }
  });
  return counts;
}

std::vector<std::int64_t> directional_norms(const IntegerSpectrum& s) {
  std::vector<std::int64_t> norms(static_cast<std::size_t>(s.n), 0);
  for (Vertex y = 0; y < s.coeffs.size(); ++y) {
    const std::int64_t sq = s.coeffs[y] * s.coeffs[y];
    if (sq == 0) continue;
    for (int c = 0; c < s.n; ++c) {
      if (!(y & coord_bit(s.n, c))) norms[static_cast<std::size_t>(c)] += sq;
    }
  }
  return norms;
}

std::int64_t face_sum(const IntegerFunction& f, const Face& face) {
  std::int64_t total = 0;
  for_each_submask(face.mask, [&](Vertex z) { total += f(z ^ face.base); });
  return total;
}

IdentitySides low_weight_fourier_identity(const IntegerFunction& f, Vertex x) {
  const int n = f.n;
  const auto s = wht(f);
  IdentitySides out;
  std::int64_t low = 0;
  for_each_submask(x, [&](Vertex z) { low += s(z); });
  out.lhs = low << (n - weight(x));
  std::int64_t high = 0;
  for_each_submask(x ^ all_ones(n), [&](Vertex z) { high += f(z); });
  out.rhs = high << n;
  return out;
}

std::string spectrum_dump(const IntegerSpectrum& s) {
  std::ostringstream os;
  for (Vertex y = 0; y < s.coeffs.size(); ++y) {
    if (s.coeffs[y] != 0) os << to_hex(y, s.n) << '\t' << s.coeffs[y] << '\n';
  }
  return os.str();
}

}  // namespace eqp
