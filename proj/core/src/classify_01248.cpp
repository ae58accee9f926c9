#include "eqp/classify_01248.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "eqp/spectral.hpp"

namespace eqp::q01248 {

namespace {

BigInt sym_order() { return factorial(kDim); }

std::vector<Vertex> words_of_weight(int w) {
  std::vector<Vertex> out;
  for (Vertex x = 0; x < (Vertex{1} << kDim); ++x) {
    if (weight(x) == w) out.push_back(x);
  }
  return out;
}

Vertex unit(int c) { return coord_bit(kDim, c); }

bool is_connected(int v, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> comp(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) comp[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [a, b] : edges) comp[static_cast<std::size_t>(find(a))] = find(b);
  for (int i = 1; i < v; ++i) {
    if (find(i) != find(0)) return false;
  }
  return true;
}

LocalClass make_class(LocalPartition l) {
  LocalClass c;
  c.form = local_form(l, &c.aut_order);
  c.rep = std::move(l);
  return c;
}

}  // namespace

bool LocalPartition::valid() const {
  if (p0.dim() != kDim || radius < 0 || radius > kDim) return false;
  bool ok = true;
  p0.for_each([&](Vertex x) { ok = ok && weight(x) <= radius; });
  for (Vertex x = 0; x < (Vertex{1} << kDim) && ok; ++x) {
    if (weight(x) >= radius) continue;
    const int inside = p0.neighbours_inside(x);
    ok = inside == (p0.contains(x) ? 0 : 4);
  }
  return ok;
}

CanonicalForm local_form(const LocalPartition& l, BigInt* order) {
  auto canon = canonicalize_words(kDim, l.p0.members());
  // Prefix the radius so that classes of different radii never collide.
  canon.form.bytes.insert(canon.form.bytes.begin(), static_cast<std::uint8_t>(l.radius));
  if (order) *order = canon.order;
  return canon.form;
}

std::vector<CubicGraph> enumerate_cubic_graphs(int v) {
  if (v < 0 || v % 2 || v > 16) throw std::invalid_argument("cubic graphs need an even order up to 16");
  using Edges = std::vector<std::pair<int, int>>;
  std::vector<Edges> level{{}};
  for (int size = 0; size < 3 * v / 2; ++size) {
    std::map<CanonicalForm, Edges> next;
    for (const auto& partial : level) {
      std::vector<int> deg(static_cast<std::size_t>(v), 0);
      std::vector<std::vector<bool>> adj(static_cast<std::size_t>(v), std::vector<bool>(static_cast<std::size_t>(v), false));
      for (auto [a, b] : partial) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
        adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
      }
      int low = 0;
      while (deg[static_cast<std::size_t>(low)] == 3) ++low;
      for (int w = 0; w < v; ++w) {
        if (w == low || deg[static_cast<std::size_t>(w)] == 3 || adj[static_cast<std::size_t>(low)][static_cast<std::size_t>(w)]) continue;
        auto grown = partial;
        grown.emplace_back(std::min(low, w), std::max(low, w));
        std::sort(grown.begin(), grown.end());
        next.emplace(graph_canonical_form(Graph(v, grown)), std::move(grown));
      }
    }
    level.clear();
    for (auto& [form, rep] : next) level.push_back(std::move(rep));
  }
  std::vector<CubicGraph> out;
  for (auto& edges : level) {
    CubicGraph g;
    g.aut_order = canonicalize_graph(Graph(v, edges)).order;
    g.connected = is_connected(v, edges);
    g.edges = std::move(edges);
    out.push_back(std::move(g));
  }
  return out;
}

BigInt labelled_cubic_graphs(int v) {
  if (v < 0 || v % 2 || v > 16) throw std::invalid_argument("cubic graphs need an even order up to 16");
  // Vertex i chooses its missing neighbours among higher vertices; the state
  // is the degree vector of vertices >= i.
  std::map<std::pair<int, std::vector<int>>, BigInt> memo;
  std::function<BigInt(int, std::vector<int>&)> count = [&](int i, std::vector<int>& deg) -> BigInt {
    if (i == v) return 1;
    const int need = 3 - deg[static_cast<std::size_t>(i)];
    auto key = std::make_pair(i, std::vector<int>(deg.begin() + i, deg.end()));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    BigInt total = 0;
    std::vector<int> picks;
    std::function<void(int)> choose = [&](int from) {
      if (static_cast<int>(picks.size()) == need) {
        total += count(i + 1, deg);
        return;
      }
      for (int j = from; j < v; ++j) {
        if (deg[static_cast<std::size_t>(j)] == 3) continue;
        ++deg[static_cast<std::size_t>(j)];
        picks.push_back(j);
        choose(j + 1);
        picks.pop_back();
        --deg[static_cast<std::size_t>(j)];
      }
    };
    if (need >= 0) {
      const int saved = deg[static_cast<std::size_t>(i)];
      deg[static_cast<std::size_t>(i)] = 3;
      choose(i + 1);
      deg[static_cast<std::size_t>(i)] = saved;
    }
    memo.emplace(std::move(key), total);
    return total;
  };
  std::vector<int> deg(static_cast<std::size_t>(v), 0);
  return count(0, deg);
}

StageCensus two_local_partitions(bool zero_in_p0) {
  StageCensus census;
  census.radius = 2;
  std::map<CanonicalForm, bool> seen;
  auto add = [&](LocalPartition l) {
    if (!l.valid()) throw std::logic_error("graph does not give a 2-local partition");
    auto c = make_class(std::move(l));
    if (seen.emplace(c.form, true).second) {
      census.classes_weighted += sym_order() / c.aut_order;
      census.classes.push_back(std::move(c));
    }
  };
  if (zero_in_p0) {
    // Weight-2 words of P0 are the edges of a cubic graph on the 12 unit words.
    for (const auto& g : enumerate_cubic_graphs(kDim)) {
      LocalPartition l{2, VertexSet(kDim)};
      l.p0.insert(0);
      for (auto [a, b] : g.edges) l.p0.insert(unit(a) | unit(b));
      add(std::move(l));
    }
    census.seeds_weighted = labelled_cubic_graphs(kDim);
  } else {
    // Four unit words in P0; the complement of a cubic graph on the other eight.
    for (const auto& g : enumerate_cubic_graphs(8)) {
      LocalPartition l{2, VertexSet(kDim)};
      for (int c = 8; c < kDim; ++c) l.p0.insert(unit(c));
      std::vector<std::vector<bool>> adj(8, std::vector<bool>(8, false));
      for (auto [a, b] : g.edges) adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
      for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
          if (!adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) l.p0.insert(unit(a) | unit(b));
        }
      }
      add(std::move(l));
    }
    census.seeds_weighted = BigInt(binomial(kDim, 4)) * labelled_cubic_graphs(8);
  }
  census.labelled_solutions = static_cast<std::uint64_t>(census.seeds_weighted);
  return census;
}

LocalCover local_cover(const LocalPartition& l) {
  LocalCover cover;
  const int r = l.radius;
  std::map<Vertex, int> index;
  std::vector<int> demand;
  for (Vertex x : words_of_weight(r)) {
    if (l.p0.contains(x)) continue;
    int lambda = 0;
    for (int c = 0; c < kDim; ++c) {
      if ((x & unit(c)) && l.p0.contains(x ^ unit(c))) ++lambda;
    }
    if (lambda > 4) cover.feasible = false;
    if (lambda >= 4) continue;
    index[x] = static_cast<int>(cover.points.size());
    cover.points.push_back(x);
    demand.push_back(4 - lambda);
  }
  cover.instance.elements = static_cast<int>(cover.points.size());
  cover.instance.multiplicity = demand;
  for (Vertex y : words_of_weight(r + 1)) {
    std::vector<int> set;
    bool allowed = true;
    for (int c = 0; c < kDim && allowed; ++c) {
      if (!(y & unit(c))) continue;
      const Vertex below = y ^ unit(c);
      if (l.p0.contains(below)) {
        allowed = false;
      } else if (auto it = index.find(below); it != index.end()) {
        set.push_back(it->second);
      } else {
        allowed = false;  // a saturated P1 neighbour
      }
    }
    if (!allowed) continue;
    std::sort(set.begin(), set.end());
    cover.instance.sets.push_back(std::move(set));
    cover.set_words.push_back(y);
  }
  return cover;
}

void for_each_extension(const LocalPartition& l, const std::function<void(const LocalPartition&)>& visit) {
  const auto cover = local_cover(l);
  if (!cover.feasible) return;
  LocalPartition next{l.radius + 1, l.p0};
  solve_all(cover.instance, [&](const std::vector<int>& chosen) {
    for (int j : chosen) next.p0.insert(cover.set_words[static_cast<std::size_t>(j)]);
    visit(next);
    for (int j : chosen) next.p0.erase(cover.set_words[static_cast<std::size_t>(j)]);
    return true;
  });
}

StageCensus extend_all(const std::vector<LocalClass>& seeds) {
  StageCensus census;
  if (!seeds.empty()) census.radius = seeds.front().rep.radius + 1;
  std::map<CanonicalForm, bool> seen;
  for (const auto& seed : seeds) {
    std::uint64_t found = 0;
    for_each_extension(seed.rep, [&](const LocalPartition& next) {
      ++found;
      BigInt order;
      auto form = local_form(next, &order);
      if (seen.emplace(form, true).second) {
        census.classes_weighted += sym_order() / order;
        census.classes.push_back({next, std::move(form), order});
      }
    });
    census.labelled_solutions += found;
    census.seeds_weighted += sym_order() * found / seed.aut_order;
  }
  return census;
}

Reconstruction reconstruct_full(const LocalPartition& l) {
  if (l.radius != 4) throw std::invalid_argument("reconstruction starts from a 4-local partition");
  Reconstruction out;
  const std::size_t size = std::size_t{1} << kDim;
  std::vector<std::int64_t> f(size, 0);
  std::vector<std::vector<Vertex>> by_weight(kDim + 1);
  for (Vertex x = 0; x < size; ++x) by_weight[static_cast<std::size_t>(weight(x))].push_back(x);
  for (int w = 0; w <= 4; ++w) {
    for (Vertex x : by_weight[static_cast<std::size_t>(w)]) f[x] = l.p0.contains(x) ? 12 : -4;
  }
  // Sum of f over the face x + {t <= s} without x itself.
  auto rest_of_face = [&](Vertex x, Vertex s) {
    std::int64_t sum = 0;
    for_each_submask(s, [&](Vertex t) {
      if (t) sum += f[x ^ t];
    });
    return sum;
  };
  for (int w = 5; w <= kDim; ++w) {
    for (Vertex x : by_weight[static_cast<std::size_t>(w)]) {
      // The five lowest-index coordinates of x, and the five highest as a check.
      std::vector<int> ones;
      for (int c = 0; c < kDim; ++c) {
        if (x & unit(c)) ones.push_back(c);
      }
      Vertex s = 0, alt = 0;
      for (int i = 0; i < 5; ++i) {
        s |= unit(ones[static_cast<std::size_t>(i)]);
        alt |= unit(ones[ones.size() - 1 - static_cast<std::size_t>(i)]);
      }
      f[x] = -rest_of_face(x, s);
      if (f[x] != 12 && f[x] != -4) {
        out.failure = "value " + std::to_string(f[x]) + " outside {12, -4}";
        out.witness = x;
        return out;
      }
      if (alt != s && f[x] + rest_of_face(x, alt) != 0) {
        out.failure = "value depends on the chosen face";
        out.witness = x;
        return out;
      }
    }
  }
  VertexSet p0(kDim);
  for (Vertex x = 0; x < size; ++x) {
    if (f[x] == 12) p0.insert(x);
  }
  const auto q = quotient_matrix(p0);
  if (!q.matrix || *q.matrix != QuotientMatrix{0, 12, 4, 8}) {
    out.failure = "completion is not equitable with matrix [[0,12],[4,8]]";
    out.witness = q.witness;
    return out;
  }
  out.p0 = std::move(p0);
  return out;
}

FinalCensus classify_final(const std::vector<LocalClass>& four_local) {
  FinalCensus census;
  std::map<CanonicalForm, bool> seen;
  for (const auto& seed : four_local) {
    census.seeds_weighted += sym_order() / seed.aut_order;
    auto rec = reconstruct_full(seed.rep);
    if (!rec.p0) {
      ++census.failures;
      continue;
    }
    auto canon = canonicalize(*rec.p0);
    if (!seen.emplace(canon.form, true).second) continue;
    FinalClass fc;
    fc.p0 = std::move(*rec.p0);
    fc.form = canon.form;
    fc.aut_order = canon.aut.order;
    fc.rank = affine_rank(fc.p0);
    const BigInt cell = seed.rep.zero_in_p0() ? 1024 : 3072;
    census.classes_weighted += sym_order() * cell / fc.aut_order;
    census.classes.push_back(std::move(fc));
  }
  return census;
}

bool ChainReport::double_counts_ok() const {
  for (const auto& s : stages) {
    if (!s.double_count_ok()) return false;
  }
  return !final || final->double_count_ok();
}

ChainReport run_chain(bool zero_in_p0, int until_radius, const Progress& progress) {
  auto say = [&](const std::string& s) {
    if (progress) progress(s);
  };
  const std::string label = zero_in_p0 ? "0 in P0" : "0 in P1";
  ChainReport report;
  report.zero_in_p0 = zero_in_p0;
  report.stages.push_back(two_local_partitions(zero_in_p0));
  say(label + ": 2-local classes " + std::to_string(report.stages.back().classes.size()));
  while (report.stages.back().radius < std::min(until_radius, 4)) {
    report.stages.push_back(extend_all(report.stages.back().classes));
    say(label + ": " + std::to_string(report.stages.back().radius) + "-local classes " +
        std::to_string(report.stages.back().classes.size()));
  }
  if (until_radius >= 5) {
    report.final = classify_final(report.stages.back().classes);
    say(label + ": complete classes " + std::to_string(report.final->classes.size()));
  }
  return report;
}

Classification classify(const Progress& progress) {
  Classification c;
  c.from_p0 = run_chain(true, 5, progress);
  c.from_p1 = run_chain(false, 5, progress);
  std::vector<CanonicalForm> a, b;
  for (const auto& k : c.from_p0.final->classes) a.push_back(k.form);
  for (const auto& k : c.from_p1.final->classes) b.push_back(k.form);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  c.chains_agree = a == b;
  return c;
}

}  // namespace eqp::q01248
