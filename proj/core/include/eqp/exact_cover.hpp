#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eqp {

// Elements 0..k-1, element i must be covered exactly multiplicity[i] times by
// the chosen sets; each set may be used at most once.
struct CoverInstance {
  int elements = 0;
  std::vector<int> multiplicity;
  std::vector<std::vector<int>> sets;

  void validate() const;  // throws std::invalid_argument
};

// Text form: "k m", the k multiplicities, then m lines of element indices.
CoverInstance parse_cover(std::istream& in);
std::string format_cover(const CoverInstance& inst);

// Receives the chosen set indices in increasing order; return false to stop.
using CoverVisitor = std::function<bool(const std::vector<int>&)>;

struct CoverStats {
  std::uint64_t solutions = 0;
  std::uint64_t nodes = 0;
  bool stopped = false;
};

// Enumerates every solution exactly once, in a deterministic order.
CoverStats solve_all(const CoverInstance& inst, const CoverVisitor& visit);
std::uint64_t count_solutions(const CoverInstance& inst);

bool is_solution(const CoverInstance& inst, const std::vector<int>& chosen);

// Sets over points 0..v-1 encoded as bit masks (bit i = point i).
using PointSet = std::uint32_t;

std::uint64_t binomial(int n, int k);
// ceil(C(v,t) / C(k,t)); throws unless 0 <= t <= k <= v.
std::uint64_t covering_lower_bound(int t, int k, int v);
// A t-subset covered by no block, if any.
std::optional<PointSet> uncovered_subset(const std::vector<PointSet>& blocks, int t, int v);
// { K \ {a} : a in K in S } relabelled onto v-1 points. Throws
// std::invalid_argument with an uncovered t-set when S is not a covering.
std::vector<PointSet> derived_covering(const std::vector<PointSet>& blocks, int a, int t, int k, int v);

}  // namespace eqp
