#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/canonical.hpp"
#include "eqp/cube.hpp"
#include "eqp/spectral.hpp"

namespace eqp {

// Input error carrying a 1-based line number.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One [[0,12],[4,8]] partition of the dataset: P0 = span(ker) + repr.
struct AppendixEntry {
  int index = 0;
  int rank = 0;
  BigInt aut_order = 0;
  std::vector<std::size_t> orbits0;  // ascending
  std::vector<std::size_t> orbits1;
  std::vector<Vertex> ker;
  std::vector<Vertex> repr;

  // Throws std::invalid_argument if two cosets meet.
  VertexSet p0() const;
};

inline constexpr int kAppendixDim = 12;
inline const QuotientMatrix kAppendixMatrix{0, 12, 4, 8};

// Blank lines and '#' comments are skipped. Throws ParseError.
std::vector<AppendixEntry> parse_appendix(const std::string& text);
std::vector<AppendixEntry> read_appendix_file(const std::string& path);

// Orbit lists like "2x128 768" <-> {128, 128, 768}.
std::vector<std::size_t> parse_orbits(const std::string& text);
std::string format_orbits(std::vector<std::size_t> sizes);

struct FieldCheck {
  std::string field;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct EntryReport {
  int index = 0;
  std::vector<FieldCheck> checks;
  CanonicalForm form;  // canonical form of P0 when it could be built

  bool ok() const;
  std::vector<std::string> failures() const;
};

// Rebuilds P0 and checks the matrix, rank, kernel, automorphism data,
// correlation-immunity order 7 and the OA(1024,12,2,7) property.
EntryReport verify_entry(const AppendixEntry& e);

// Builds the dataset record of a cell: maximal kernel basis, least coset
// representatives, rank and automorphism data.
AppendixEntry make_entry(int index, const VertexSet& p0);
std::string format_entry(const AppendixEntry& e);

// Partition file: "EQP n=<n> matrix=a,b,c,d", then the sorted hex words of C0.
struct PartitionFile {
  VertexSet c0{1};
  QuotientMatrix matrix;
};

// Throws std::invalid_argument if c0 is not equitable.
std::string format_partition(const VertexSet& c0);
// Throws ParseError on malformed input or a matrix the cell does not have.
PartitionFile read_partition(std::istream& in);

}  // namespace eqp
