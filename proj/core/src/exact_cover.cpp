#include "eqp/exact_cover.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eqp {

void CoverInstance::validate() const {
  if (elements < 0 || static_cast<int>(multiplicity.size()) != elements) {
    throw std::invalid_argument("multiplicity list must have one entry per element");
  }
  for (int m : multiplicity) {
    if (m < 1) throw std::invalid_argument("multiplicities must be positive");
  }
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("sets must be nonempty");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= elements) throw std::invalid_argument("set element out of range");
      if (std::find(s.begin(), s.begin() + static_cast<long>(i), s[i]) != s.begin() + static_cast<long>(i)) {
        throw std::invalid_argument("set lists an element twice");
      }
    }
  }
}

CoverInstance parse_cover(std::istream& in) {
  CoverInstance inst;
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return;
    }
    throw std::invalid_argument(std::string("cover file: missing ") + what);
  };
  next_line("header");
  std::istringstream header(line);
  int m = 0;
  if (!(header >> inst.elements >> m) || inst.elements < 0 || m < 0) throw std::invalid_argument("cover file: bad header");
  next_line("multiplicities");
  std::istringstream mult(line);
  for (int i = 0; i < inst.elements; ++i) {
    int a = 0;
    if (!(mult >> a)) throw std::invalid_argument("cover file: too few multiplicities");
    inst.multiplicity.push_back(a);
  }
  for (int j = 0; j < m; ++j) {
    next_line("set line");
    std::istringstream row(line);
    std::vector<int> s;
    int e = 0;
    while (row >> e) s.push_back(e);
    if (!row.eof()) throw std::invalid_argument("cover file: bad set line " + std::to_string(j + 1));
    inst.sets.push_back(std::move(s));
  }
  inst.validate();
  return inst;
}

std::string format_cover(const CoverInstance& inst) {
  std::ostringstream os;
  os << inst.elements << ' ' << inst.sets.size() << '\n';
  for (int i = 0; i < inst.elements; ++i) os << (i ? " " : "") << inst.multiplicity[static_cast<std::size_t>(i)];
  os << '\n';
  for (const auto& s : inst.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  return os.str();
}

namespace {

class Solver {
 public:
  Solver(const CoverInstance& inst, const CoverVisitor& visit) : inst_(inst), visit_(visit) {
    const auto k = static_cast<std::size_t>(inst.elements);
    demand_ = inst.multiplicity;
    avail_.assign(k, 0);
    incident_.assign(k, {});
    state_.assign(inst.sets.size(), Open);
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
      for (int e : inst.sets[j]) {
        incident_[static_cast<std::size_t>(e)].push_back(static_cast<int>(j));
        ++avail_[static_cast<std::size_t>(e)];
      }
    }
  }

  CoverStats run() {
    search();
    return stats_;
  }

 private:
  enum State : char { Open, In, Out };

  void close(int j, State to) {
    state_[static_cast<std::size_t>(j)] = to;
    trail_.push_back(j);
    for (int e : inst_.sets[static_cast<std::size_t>(j)]) {
      --avail_[static_cast<std::size_t>(e)];
      if (to == In) --demand_[static_cast<std::size_t>(e)];
    }
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int j = trail_.back();
      trail_.pop_back();
      const State was = state_[static_cast<std::size_t>(j)];
      state_[static_cast<std::size_t>(j)] = Open;
      for (int e : inst_.sets[static_cast<std::size_t>(j)]) {
        ++avail_[static_cast<std::size_t>(e)];
        if (was == In) ++demand_[static_cast<std::size_t>(e)];
      }
    }
  }

  // Takes set j; sets through saturated elements are excluded. Returns false
  // when some element can no longer reach its demand.
  bool include(int j) {
    for (int e : inst_.sets[static_cast<std::size_t>(j)]) {
      if (demand_[static_cast<std::size_t>(e)] == 0) return false;
    }
    close(j, In);
    for (int e : inst_.sets[static_cast<std::size_t>(j)]) {
      if (demand_[static_cast<std::size_t>(e)] != 0) continue;
      for (int other : incident_[static_cast<std::size_t>(e)]) {
        if (state_[static_cast<std::size_t>(other)] == Open) close(other, Out);
      }
    }
    return true;
  }

  void search() {
    if (stats_.stopped) return;
    ++stats_.nodes;
    int pick = -1;
    int slack = std::numeric_limits<int>::max();
    for (int e = 0; e < inst_.elements; ++e) {
      const int d = demand_[static_cast<std::size_t>(e)];
      if (d == 0) continue;
      const int s = avail_[static_cast<std::size_t>(e)] - d;
      if (s < 0) return;
      if (s < slack) {
        slack = s;
        pick = e;
      }
    }
    if (pick < 0) {
      chosen_.clear();
      for (std::size_t j = 0; j < state_.size(); ++j) {
        if (state_[j] == In) chosen_.push_back(static_cast<int>(j));
      }
      ++stats_.solutions;
      if (!visit_(chosen_)) stats_.stopped = true;
      return;
    }
    int branch = -1;
    for (int j : incident_[static_cast<std::size_t>(pick)]) {
      if (state_[static_cast<std::size_t>(j)] == Open) {
        branch = j;
        break;
      }
    }
    const std::size_t mark = trail_.size();
    if (include(branch)) search();
    undo(mark);
    if (slack > 0) {
      close(branch, Out);
      search();
      undo(mark);
    }
  }

  const CoverInstance& inst_;
  const CoverVisitor& visit_;
  std::vector<int> demand_;
  std::vector<int> avail_;
  std::vector<std::vector<int>> incident_;
  std::vector<State> state_;
  std::vector<int> trail_;
  std::vector<int> chosen_;
  CoverStats stats_;
};

}  // namespace

CoverStats solve_all(const CoverInstance& inst, const CoverVisitor& visit) {
  inst.validate();
  return Solver(inst, visit).run();
}

std::uint64_t count_solutions(const CoverInstance& inst) {
  return solve_all(inst, [](const std::vector<int>&) { return true; }).solutions;
}

bool is_solution(const CoverInstance& inst, const std::vector<int>& chosen) {
  std::vector<int> hits(static_cast<std::size_t>(inst.elements), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i] < 0 || chosen[i] >= static_cast<int>(inst.sets.size())) return false;
    if (i > 0 && chosen[i] <= chosen[i - 1]) return false;
    for (int e : inst.sets[static_cast<std::size_t>(chosen[i])]) ++hits[static_cast<std::size_t>(e)];
  }
  return hits == inst.multiplicity;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t covering_lower_bound(int t, int k, int v) {
  if (t < 0 || t > k || k > v) throw std::invalid_argument("need 0 <= t <= k <= v");
  const std::uint64_t num = binomial(v, t);
  const std::uint64_t den = binomial(k, t);
  return (num + den - 1) / den;
}

std::optional<PointSet> uncovered_subset(const std::vector<PointSet>& blocks, int t, int v) {
  if (v > 31 || t < 0 || t > v) throw std::invalid_argument("need 0 <= t <= v <= 31");
  for (PointSet s = 0; s < (PointSet{1} << v); ++s) {
    if (std::popcount(s) != t) continue;
    const bool covered = std::any_of(blocks.begin(), blocks.end(), [&](PointSet b) { return (s & ~b) == 0; });
    if (!covered) return s;
  }
  return std::nullopt;
}

std::vector<PointSet> derived_covering(const std::vector<PointSet>& blocks, int a, int t, int k, int v) {
  if (t < 1 || t > k || k > v || a < 0 || a >= v) throw std::invalid_argument("need 1 <= t <= k <= v and a < v");
  for (PointSet b : blocks) {
    if (std::popcount(b) != k || (b >> v)) throw std::invalid_argument("block of the wrong size");
  }
  if (const auto hole = uncovered_subset(blocks, t, v)) {
    throw std::invalid_argument("not a covering: t-set " + std::to_string(*hole) + " is uncovered");
  }
  const PointSet low = (PointSet{1} << a) - 1;
  std::vector<PointSet> out;
  for (PointSet b : blocks) {
    if (!((b >> a) & 1)) continue;
    const PointSet rest = b & ~(PointSet{1} << a);
    out.push_back((rest & low) | ((rest >> 1) & ~low));
  }
  if (uncovered_subset(out, t - 1, v - 1)) throw std::logic_error("derived family is not a covering");
  return out;
}

}  // namespace eqp
