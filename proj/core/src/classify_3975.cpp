#include "eqp/classify_3975.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "eqp/spectral.hpp"

namespace eqp::q3975 {

namespace {

constexpr int kPoints = kDim;

BigInt sym_order() { return factorial(kPoints); }

// Echelon form over GF(2) with one pivot per stored vector.
class Echelon {
 public:
  // Returns true when v was independent of the stored vectors.
  bool add(BitVector v) {
    reduce(v);
    const std::size_t p = v.first_set();
    if (p == v.size()) return false;
    rows_.push_back({p, std::move(v)});
    return true;
  }
  std::size_t dimension() const { return rows_.size(); }

 private:
  void reduce(BitVector& v) const {
    for (const auto& [p, row] : rows_) {
      if (v.get(p)) v ^= row;
    }
  }
  std::vector<std::pair<std::size_t, BitVector>> rows_;
};

BitripleSystem from_list(std::vector<Subset> t) {
  std::sort(t.begin(), t.end());
  return {std::move(t)};
}

// Number of cubes {a,a'} x {b,b'} x {c,c'} all of whose triples lie in s.
std::size_t cube_count(const BitripleSystem& s) {
  std::size_t count = 0;
  for (Subset six : subsets_of_size(6)) {
    const auto pts = coords_of(six);
    // Perfect matchings of six points: pair pts[0] with pts[i], and so on.
    for (std::size_t i = 1; i < 6; ++i) {
      std::vector<int> rest;
      for (std::size_t j = 1; j < 6; ++j) {
        if (j != i) rest.push_back(pts[j]);
      }
      for (std::size_t k = 1; k < 4; ++k) {
        std::vector<int> last;
        for (std::size_t j = 1; j < 4; ++j) {
          if (j != k) last.push_back(rest[j]);
        }
        const std::array<std::array<int, 2>, 3> pairs{{{pts[0], pts[i]}, {rest[0], rest[k]}, {last[0], last[1]}}};
        bool all = true;
        for (int m = 0; m < 8 && all; ++m) {
          const Subset t = subset_of({pairs[0][m & 1], pairs[1][(m >> 1) & 1], pairs[2][(m >> 2) & 1]});
          all = s.multiplicity(t) > 0;
        }
        if (all) ++count;
      }
    }
  }
  return count;
}

// Labelled multisets of triples with every point of degree exactly 2.
BigInt count_two_regular_labelled() {
  const auto triples = subsets_of_size(3);
  std::array<int, kPoints> pow3{};
  pow3[0] = 1;
  for (int i = 1; i < kPoints; ++i) pow3[static_cast<std::size_t>(i)] = pow3[static_cast<std::size_t>(i - 1)] * 3;
  const std::size_t states = static_cast<std::size_t>(pow3[kPoints - 1]) * 3;
  std::vector<std::uint64_t> dp(states, 0), next(states, 0);
  dp[0] = 1;
  auto digit = [&](std::size_t s, int c) { return static_cast<int>(s / static_cast<std::size_t>(pow3[static_cast<std::size_t>(c)])) % 3; };
  for (Subset t : triples) {
    const auto cs = coords_of(t);
    std::size_t step = 0;
    for (int c : cs) step += static_cast<std::size_t>(pow3[static_cast<std::size_t>(c)]);
    next = dp;
    for (std::size_t s = 0; s < states; ++s) {
      if (!dp[s]) continue;
      std::size_t cur = s;
      for (int m = 1; m <= 2; ++m) {
        bool room = true;
        for (int c : cs) room = room && digit(cur, c) < 2;
        if (!room) break;
        cur += step;
        next[cur] += dp[s];
      }
    }
    dp.swap(next);
  }
  return BigInt(dp[states - 1]);
}

void add_class(std::map<CanonicalForm, std::size_t>& seen, std::vector<BitripleClass>& out, const BitripleSystem& s,
               BitripleFamily family) {
  const auto canon = canonicalize_words(kDim, s.triples);
  if (seen.emplace(canon.form, out.size()).second) out.push_back({s, family, canon.form, canon.order});
}

}  // namespace

Subset subset_of(std::initializer_list<int> coords) {
  Subset s = 0;
  for (int c : coords) s |= coord_bit(kDim, c);
  return s;
}

std::vector<int> coords_of(Subset s) {
  std::vector<int> out;
  for (int c = 0; c < kDim; ++c) {
    if (s & coord_bit(kDim, c)) out.push_back(c);
  }
  return out;
}

std::vector<Subset> subsets_of_size(int k) {
  std::vector<Subset> out;
  for (Subset s = 0; s < (Subset{1} << kDim); ++s) {
    if (weight(s) == k) out.push_back(s);
  }
  return out;
}

int BitripleSystem::multiplicity(Subset t) const {
  const auto range = std::equal_range(triples.begin(), triples.end(), t);
  return static_cast<int>(range.second - range.first);
}

int BitripleSystem::point_degree(int c) const {
  return static_cast<int>(std::count_if(triples.begin(), triples.end(), [&](Subset t) { return (t & coord_bit(kDim, c)) != 0; }));
}

int BitripleSystem::pair_degree(int c, int d) const {
  const Subset pair = coord_bit(kDim, c) | coord_bit(kDim, d);
  return static_cast<int>(std::count_if(triples.begin(), triples.end(), [&](Subset t) { return (t & pair) == pair; }));
}

bool BitripleSystem::valid() const {
  if (triples.size() != 16 || !std::is_sorted(triples.begin(), triples.end())) return false;
  for (Subset t : triples) {
    if (weight(t) != 3 || (t >> kDim)) return false;
  }
  for (int c = 0; c < kDim; ++c) {
    if (point_degree(c) != 4) return false;
    for (int d = c + 1; d < kDim; ++d) {
      if (pair_degree(c, d) % 2) return false;
    }
  }
  return true;
}

std::string family_name(BitripleFamily f) {
  switch (f) {
    case BitripleFamily::SingleMultiplicity: return "single";
    case BitripleFamily::Design12: return "design-12";
    case BitripleFamily::Design9: return "design-9";
    case BitripleFamily::Design6: return "design-6";
    case BitripleFamily::FourDoubled: return "four-doubled";
  }
  return "?";
}

std::size_t BitripleCensus::family_count(BitripleFamily f) const {
  return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), [&](const auto& c) { return c.family == f; }));
}

std::vector<Subset> reference_cube() {
  std::vector<Subset> out;
  for (int m = 0; m < 8; ++m) out.push_back(subset_of({(m & 1) * 6, 1 + ((m >> 1) & 1) * 6, 2 + ((m >> 2) & 1) * 6}));
  std::sort(out.begin(), out.end());
  return out;
}

BitripleSystem reference_system(int index) {
  auto t = reference_cube();
  auto add = [&](int times, std::initializer_list<int> one_based) {
    Subset s = 0;
    for (int c : one_based) s |= coord_bit(kDim, c - 1);
    for (int i = 0; i < times; ++i) t.push_back(s);
  };
  switch (index) {
    case 1:
      for (int m = 0; m < 8; ++m) add(1, {4 + (m & 1) * 6, 5 + ((m >> 1) & 1) * 6, 6 + ((m >> 2) & 1) * 6});
      break;
    case 2:
      add(4, {4, 5, 6});
      add(4, {10, 11, 12});
      break;
    case 3:
      add(2, {4, 5, 6});
      add(2, {4, 5, 12});
      add(2, {10, 11, 6});
      add(2, {10, 11, 12});
      break;
    case 4:
      add(2, {4, 5, 6});
      add(2, {4, 11, 12});
      add(2, {10, 5, 12});
      add(2, {10, 11, 6});
      break;
    default: throw std::invalid_argument("reference systems are numbered 1 to 4");
  }
  return from_list(std::move(t));
}

BitripleCensus enumerate_bitriple_systems() {
  BitripleCensus census;
  std::map<CanonicalForm, std::size_t> seen;

  // Systems with a triple of multiplicity one contain a cube on six points;
  // the other eight triples then live on the remaining six points.
  const auto cube = reference_cube();
  const std::vector<int> rest{3, 4, 5, 9, 10, 11};
  std::vector<Subset> local;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      for (std::size_t k = j + 1; k < rest.size(); ++k) local.push_back(subset_of({rest[i], rest[j], rest[k]}));
    }
  }
  std::array<int, kDim> degree{};
  std::vector<Subset> chosen;
  auto complete = [&](auto&& self, std::size_t index) -> void {
    if (chosen.size() == 8) {
      auto s = from_list([&] {
        auto t = cube;
        t.insert(t.end(), chosen.begin(), chosen.end());
        return t;
      }());
      if (!s.valid()) return;
      ++census.completions_found;
      add_class(seen, census.classes, s, BitripleFamily::SingleMultiplicity);
      return;
    }
    if (index == local.size()) return;
    const auto cs = coords_of(local[index]);
    int added = 0;
    while (chosen.size() < 8 && std::all_of(cs.begin(), cs.end(), [&](int c) { return degree[static_cast<std::size_t>(c)] < 4; })) {
      for (int c : cs) ++degree[static_cast<std::size_t>(c)];
      chosen.push_back(local[index]);
      ++added;
    }
    for (; added >= 0; --added) {
      self(self, index + 1);
      if (added == 0) break;
      chosen.pop_back();
      for (int c : cs) --degree[static_cast<std::size_t>(c)];
    }
  };
  complete(complete, 0);
  const BigInt cube_stabiliser = BigInt(48) * factorial(6);
  for (const auto& c : census.classes) {
    census.completions_implied += cube_stabiliser * cube_count(c.system) / c.aut_order;
  }

  // Systems with even multiplicities are doubled 2-regular triple multisets,
  // grown one triple at a time with isomorph rejection at every level.
  const auto triples = subsets_of_size(3);
  std::vector<std::vector<Subset>> level{{}};
  for (int size = 0; size < 8; ++size) {
    std::map<CanonicalForm, std::vector<Subset>> next;
    for (const auto& partial : level) {
      std::array<int, kDim> deg{};
      for (Subset t : partial) {
        for (int c : coords_of(t)) ++deg[static_cast<std::size_t>(c)];
      }
      int low = 0;
      while (deg[static_cast<std::size_t>(low)] == 2) ++low;
      for (Subset t : triples) {
        if (!(t & coord_bit(kDim, low))) continue;
        const auto cs = coords_of(t);
        if (!std::all_of(cs.begin(), cs.end(), [&](int c) { return deg[static_cast<std::size_t>(c)] < 2; })) continue;
        auto grown = partial;
        grown.push_back(t);
        std::sort(grown.begin(), grown.end());
        next.emplace(canonicalize_words(kDim, grown).form, std::move(grown));
      }
    }
    level.clear();
    for (auto& [form, rep] : next) level.push_back(std::move(rep));
  }
  for (const auto& bib : level) {
    std::map<Subset, int> mult;
    for (Subset t : bib) ++mult[t];
    int doubled = 0;
    for (auto [t, m] : mult) doubled += m == 2;
    BitripleFamily family = BitripleFamily::Design12;
    switch (doubled) {
      case 0: family = BitripleFamily::Design12; break;
      case 1: family = BitripleFamily::Design9; break;
      case 2: family = BitripleFamily::Design6; break;
      case 4: family = BitripleFamily::FourDoubled; break;
      default: throw std::logic_error("unexpected number of doubled triples");
    }
    std::vector<Subset> doubled_list;
    for (Subset t : bib) doubled_list.insert(doubled_list.end(), {t, t});
    const auto s = from_list(std::move(doubled_list));
    if (!s.valid()) throw std::logic_error("even system fails the bitriple invariants");
    add_class(seen, census.classes, s, family);
    census.even_implied += sym_order() / census.classes.back().aut_order;
  }
  census.even_labelled = count_two_regular_labelled();
  return census;
}

CoverInstance covering_instance(const BitripleSystem& b) {
  const auto triples = subsets_of_size(3);
  std::vector<int> index(std::size_t{1} << kDim, -1);
  for (std::size_t i = 0; i < triples.size(); ++i) index[triples[i]] = static_cast<int>(i);
  CoverInstance inst;
  inst.elements = static_cast<int>(triples.size());
  for (Subset t : triples) inst.multiplicity.push_back(1 + 2 * b.multiplicity(t));
  for (Subset block : subsets_of_size(4)) {
    std::vector<int> set;
    for (int c : coords_of(block)) set.push_back(index[block ^ coord_bit(kDim, c)]);
    std::sort(set.begin(), set.end());
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

BitripleSystem bitriples_of(const std::vector<Subset>& blocks) {
  std::map<Subset, int> cover;
  for (Subset b : blocks) {
    for (int c : coords_of(b)) ++cover[b ^ coord_bit(kDim, c)];
  }
  std::vector<Subset> out;
  for (Subset t : subsets_of_size(3)) {
    const int k = cover.count(t) ? cover[t] : 0;
    if (k % 2 == 0) throw std::invalid_argument("a triple is covered an even number of times");
    for (int i = 0; i < (k - 1) / 2; ++i) out.push_back(t);
  }
  return from_list(std::move(out));
}

std::vector<Vertex> support_of(const std::vector<Subset>& blocks) {
  std::vector<Vertex> out;
  for (Subset b : blocks) out.push_back(all_ones(kDim) & ~b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> pair_sums(const std::vector<Vertex>& support) {
  std::vector<int> p(std::size_t{1} << kDim, 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) ++p[support[i] ^ support[j]];
  }
  return p;
}

bool parity_filter(const std::vector<Vertex>& support) {
  const auto p = pair_sums(support);
  std::vector<bool> in(p.size(), false);
  for (Vertex y : support) in[y] = true;
  for (Vertex x = 1; x < p.size(); ++x) {
    if ((p[x] % 2 == 1) != in[x]) return false;
  }
  return true;
}

CoveringCensus coverings_for(const BitripleClass& b, std::size_t class_index) {
  CoveringCensus census;
  const auto inst = covering_instance(b.system);
  const auto blocks = subsets_of_size(4);
  std::map<CanonicalForm, std::size_t> seen;
  std::vector<Subset> chosen;
  const auto stats = solve_all(inst, [&](const std::vector<int>& sol) {
    chosen.clear();
    for (int j : sol) chosen.push_back(blocks[static_cast<std::size_t>(j)]);
    if (parity_filter(support_of(chosen))) ++census.parity_labelled;
    auto canon = canonicalize_words(kDim, chosen);
    if (seen.emplace(canon.form, census.classes.size()).second) {
      census.classes.push_back({chosen, canon.form, canon.order, class_index});
    }
    return true;
  });
  census.labelled_solutions = stats.solutions;
  census.nodes = stats.nodes;
  for (const auto& c : census.classes) census.labelled_implied += b.aut_order / c.aut_order;
  return census;
}

std::vector<BitVector> coordinate_sign_vectors(const std::vector<Vertex>& support) {
  std::vector<BitVector> out;
  for (int c = 0; c < kDim; ++c) {
    BitVector v(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) v.set(j, (support[j] & coord_bit(kDim, c)) != 0);
    out.push_back(std::move(v));
  }
  return out;
}

SignSystem build_sign_system(const std::vector<Vertex>& support) {
  if (!parity_filter(support)) throw std::invalid_argument("support fails the parity filter");
  SignSystem sys;
  sys.support = support;
  std::sort(sys.support.begin(), sys.support.end());
  const std::size_t m = sys.support.size();
  std::vector<int> index(std::size_t{1} << kDim, -1);
  for (std::size_t j = 0; j < m; ++j) index[sys.support[j]] = static_cast<int>(j);
  std::vector<BitVector> rows(std::size_t{1} << kDim, BitVector(m));
  const auto p = pair_sums(sys.support);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto& row = rows[sys.support[i] ^ sys.support[j]];
      row.flip(i);
      row.flip(j);
    }
  }
  sys.matrix = Gf2Matrix(m);
  std::vector<bool> rhs;
  for (Vertex x = 1; x < rows.size(); ++x) {
    if (p[x] == 0) continue;
    const bool in_support = index[x] >= 0;
    if (in_support) rows[x].flip(static_cast<std::size_t>(index[x]));
    sys.matrix.add_row(rows[x]);
    rhs.push_back(((p[x] - (in_support ? 1 : 0)) / 2) % 2 == 1);
  }
  sys.rhs = BitVector(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) sys.rhs.set(i, rhs[i]);
  sys.solution = gf2_solve(sys.matrix, sys.rhs);
  return sys;
}

std::vector<std::int64_t> function_from_signs(const std::vector<Vertex>& support, const BitVector& phi) {
  std::vector<std::int64_t> values(std::size_t{1} << kDim, 0);
  for (std::size_t j = 0; j < support.size(); ++j) values[support[j]] = phi.get(j) ? -1 : 1;
  fwht_in_place(values);
  return values;
}

CosetReport coset_reduce_and_verify(const SignSystem& system) {
  if (!system.solution.consistent) throw std::invalid_argument("sign system is inconsistent");
  const auto psi = coordinate_sign_vectors(system.support);
  for (const auto& v : psi) {
    for (std::size_t r = 0; r < system.matrix.rows(); ++r) {
      const auto& row = system.matrix.row(r);
      std::size_t dot = 0;
      for (std::size_t w = 0; w < row.words().size(); ++w) dot += static_cast<std::size_t>(std::popcount(row.words()[w] & v.words()[w]));
      if (dot % 2) throw std::logic_error("a coordinate sign vector does not solve the homogeneous system");
    }
  }
  CosetReport report;
  Echelon span;
  for (const auto& v : psi) span.add(v);
  report.psi_dimension = span.dimension();
  std::vector<BitVector> complement;
  for (const auto& k : system.solution.kernel) {
    if (span.add(k)) complement.push_back(k);
  }
  if (span.dimension() != system.solution.kernel.size()) throw std::logic_error("coordinate vectors leave the solution space");
  report.cosets = std::uint64_t{1} << complement.size();
  std::map<CanonicalForm, bool> forms;
  BitVector phi = system.solution.particular;
  for (std::uint64_t code = 0; code < report.cosets; ++code) {
    if (code > 0) phi ^= complement[static_cast<std::size_t>(std::countr_zero(code))];
    const auto f = function_from_signs(system.support, phi);
    if (!std::all_of(f.begin(), f.end(), [](std::int64_t v) { return v == 9 || v == -7; })) continue;
    VertexSet c0(kDim);
    for (Vertex x = 0; x < f.size(); ++x) {
      if (f[x] == 9) c0.insert(x);
    }
    const auto q = quotient_matrix(c0);
    if (!q.matrix || *q.matrix != QuotientMatrix{3, 9, 7, 5}) continue;
    ++report.accepted;
    const auto form = partition_form(c0);
    if (forms.emplace(form, true).second) report.forms.push_back(form);
    report.partitions.push_back(std::move(c0));
  }
  return report;
}

PipelineReport run_pipeline(Stage until, const Progress& progress) {
  auto say = [&](const std::string& s) {
    if (progress) progress(s);
  };
  PipelineReport r;
  r.bitriples = enumerate_bitriple_systems();
  bool ok = r.bitriples.double_counts_ok();
  say("bitriple classes: " + std::to_string(r.bitriples.classes.size()));
  if (until == Stage::Bitriples) {
    r.double_counts_ok = ok;
    return r;
  }

  BigInt parity_labelled = 0, parity_implied = 0;
  for (std::size_t i = 0; i < r.bitriples.classes.size(); ++i) {
    auto census = coverings_for(r.bitriples.classes[i], i);
    ok = ok && census.labelled_implied == census.labelled_solutions;
    parity_labelled += census.parity_labelled;
    r.covering_classes += census.classes.size();
    for (const auto& c : census.classes) {
      if (parity_filter(support_of(c.blocks))) {
        r.survivors.push_back(c);
        parity_implied += r.bitriples.classes[i].aut_order / c.aut_order;
      }
    }
    say("bitriple class " + std::to_string(i) + " (" + family_name(r.bitriples.classes[i].family) +
        "): " + std::to_string(census.classes.size()) + " covering classes");
    r.coverings.push_back(std::move(census));
  }
  ok = ok && parity_labelled == parity_implied;
  if (until == Stage::Coverings || until == Stage::Parity) {
    r.double_counts_ok = ok;
    return r;
  }

  for (std::size_t i = 0; i < r.survivors.size(); ++i) {
    auto sys = build_sign_system(support_of(r.survivors[i].blocks));
    say("survivor " + std::to_string(i) + ": " + std::to_string(sys.matrix.rows()) + " equations, rank " +
        std::to_string(sys.solution.rank) + (sys.solution.consistent ? ", consistent" : ", inconsistent"));
    if (sys.solution.consistent) {
      r.consistent.push_back(std::move(sys));
      r.consistent_survivor.push_back(i);
    }
  }
  if (until == Stage::Signs) {
    r.double_counts_ok = ok;
    return r;
  }

  std::map<CanonicalForm, std::size_t> final_index;
  for (std::size_t k = 0; k < r.consistent.size(); ++k) {
    auto report = coset_reduce_and_verify(r.consistent[k]);
    say("case " + std::to_string(k) + ": " + std::to_string(report.cosets) + " cosets, " + std::to_string(report.accepted) +
        " accepted");
    const BigInt stab = canonicalize_words(kDim, r.consistent[k].support).order;
    const std::uint64_t labelled = report.accepted << report.psi_dimension;
    BigInt implied = 0;
    for (const auto& form : report.forms) {
      const auto it = std::find_if(report.partitions.begin(), report.partitions.end(),
                                   [&](const VertexSet& p) { return partition_form(p) == form; });
      FinalClass fc;
      fc.c0 = *it;
      fc.form = form;
      fc.aut = automorphism_info(fc.c0);
      fc.kernel = kernel_size(fc.c0);
      fc.support = r.consistent[k].support;
      fc.support_stabiliser = stab;
      fc.labelled_with_support = labelled;
      implied += BigInt(1 << kDim) * stab / fc.aut.order;
      if (final_index.emplace(form, r.finals.size()).second) r.finals.push_back(std::move(fc));
    }
    ok = ok && implied == labelled;
    r.cosets.push_back(std::move(report));
  }
  r.double_counts_ok = ok;
  return r;
}

}  // namespace eqp::q3975
