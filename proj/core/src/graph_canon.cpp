#include "eqp/graph_canon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eqp {

Graph::Graph(int order, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(order));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= order || v >= order || u == v) throw std::invalid_argument("bad edge");
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  *this = from_adjacency(std::move(adj));
}

Graph Graph::from_adjacency(std::vector<std::vector<int>> adj) {
  Graph g;
  g.offsets_.assign(1, 0);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) throw std::invalid_argument("repeated edge");
    g.targets_.insert(g.targets_.end(), row.begin(), row.end());
    g.offsets_.push_back(static_cast<int>(g.targets_.size()));
  }
  return g;
}

bool Graph::adjacent(int u, int v) const {
  const auto row = neighbours(u);
  return std::binary_search(row.begin(), row.end(), v);
}

Permutation LeafDomain::automorphism(std::span<const int> lab_a, std::span<const int> lab_b) {
  Permutation p(lab_a.size());
  for (std::size_t i = 0; i < lab_a.size(); ++i) p[static_cast<std::size_t>(lab_a[i])] = lab_b[i];
  return p;
}

Certificate PlainGraphDomain::certificate(std::span<const int> lab) {
  const int n = graph_.order();
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(lab[static_cast<std::size_t>(i)])] = i;
  Certificate cert;
  cert.push_back(static_cast<std::uint32_t>(n));
  for (int i = 0; i < n; ++i) cert.push_back(static_cast<std::uint32_t>(colours_[static_cast<std::size_t>(lab[static_cast<std::size_t>(i)])]));
  std::vector<int> row;
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int u : graph_.neighbours(lab[static_cast<std::size_t>(i)])) row.push_back(pos[static_cast<std::size_t>(u)]);
    std::sort(row.begin(), row.end());
    cert.push_back(static_cast<std::uint32_t>(row.size()));
    for (int u : row) cert.push_back(static_cast<std::uint32_t>(u));
  }
  return cert;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 29);
}

// Ordered partition of the vertex set. Cells are maximal runs of positions;
// start_of[v] is the first position of v's cell.
struct Partition {
  std::vector<int> lab;
  std::vector<int> pos;
  std::vector<int> start_of;
  std::vector<int> end_at;  // indexed by cell start
  int cells = 0;

  int size() const { return static_cast<int>(lab.size()); }
  bool discrete() const { return cells == size(); }
};

class Search {
 public:
  Search(const Graph& g, LeafDomain& domain) : g_(g), domain_(domain), count_(static_cast<std::size_t>(g.order()), 0) {}

  SearchResult run(const std::vector<int>& colours);

 private:
  enum class Cmp { Less, Equal, Greater };

  std::uint64_t refine(Partition& p, std::vector<int> queue);
  void individualise(Partition& p, int v, std::vector<int>& queue) const;
  int target_cell(const Partition& p) const;
  int explore(Partition& p, int depth);
  int leaf(const Partition& p, int depth);
  void add_generator(Permutation gen);
  std::vector<int>& orbits_fixing(int depth);
  int fixed_prefix(const Permutation& gen) const;

  const Graph& g_;
  LeafDomain& domain_;
  std::vector<int> count_;

  std::vector<int> path_;                // individualised vertices on the current path
  std::vector<std::uint64_t> trace_;     // trace_[d]: hash of the node at depth d
  std::vector<Cmp> cmp_best_;            // per depth, current path vs best path
  std::vector<char> eq_first_;           // per depth, traces equal to the first path

  bool have_first_ = false;
  std::vector<int> first_path_;
  std::vector<std::uint64_t> first_trace_;
  std::vector<int> first_lab_;
  Certificate first_cert_;

  std::vector<int> best_path_;
  std::vector<std::uint64_t> best_trace_;
  std::vector<int> best_lab_;
  Certificate best_cert_;

  std::vector<Permutation> gens_;
  std::vector<int> gen_fix_;  // number of leading first-path vertices each generator fixes
  std::vector<std::vector<int>> orbit_cache_;
  std::vector<std::size_t> orbit_cache_gens_;

  boost::multiprecision::cpp_int order_ = 1;
  std::size_t nodes_ = 0;
};

void Search::individualise(Partition& p, int v, std::vector<int>& queue) const {
  const int s = p.start_of[static_cast<std::size_t>(v)];
  const int e = p.end_at[static_cast<std::size_t>(s)];
  const int at = p.pos[static_cast<std::size_t>(v)];
  std::swap(p.lab[static_cast<std::size_t>(at)], p.lab[static_cast<std::size_t>(s)]);
  p.pos[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(at)])] = at;
  p.pos[static_cast<std::size_t>(v)] = s;
  p.end_at[static_cast<std::size_t>(s)] = s + 1;
  p.end_at[static_cast<std::size_t>(s + 1)] = e;
  for (int i = s + 1; i < e; ++i) p.start_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] = s + 1;
  ++p.cells;
  queue.push_back(s);
}

std::uint64_t Search::refine(Partition& p, std::vector<int> queue) {
  std::uint64_t h = 0x1234567ULL;
  const std::size_t n = static_cast<std::size_t>(p.size());
  std::vector<char> in_queue(n, 0);
  for (int s : queue) in_queue[static_cast<std::size_t>(s)] = 1;
  std::vector<int> touched;
  std::vector<int> touched_cells;
  std::vector<int> hits(n, 0);
  std::vector<int> placed(n, 0);
  std::size_t head = 0;
  while (head < queue.size() && !p.discrete()) {
    const int w = queue[head++];
    in_queue[static_cast<std::size_t>(w)] = 0;
    const int we = p.end_at[static_cast<std::size_t>(w)];
    touched.clear();
    for (int i = w; i < we; ++i) {
      for (int u : g_.neighbours(p.lab[static_cast<std::size_t>(i)])) {
        if (count_[static_cast<std::size_t>(u)]++ == 0) touched.push_back(u);
      }
    }
    touched_cells.clear();
    for (int u : touched) {
      const int s = p.start_of[static_cast<std::size_t>(u)];
      if (hits[static_cast<std::size_t>(s)]++ == 0) touched_cells.push_back(s);
    }
    // Move touched members to the back of their cells.
    for (int u : touched) {
      const int s = p.start_of[static_cast<std::size_t>(u)];
      const int slot = p.end_at[static_cast<std::size_t>(s)] - 1 - placed[static_cast<std::size_t>(s)]++;
      const int at = p.pos[static_cast<std::size_t>(u)];
      const int other = p.lab[static_cast<std::size_t>(slot)];
      p.lab[static_cast<std::size_t>(at)] = other;
      p.pos[static_cast<std::size_t>(other)] = at;
      p.lab[static_cast<std::size_t>(slot)] = u;
      p.pos[static_cast<std::size_t>(u)] = slot;
    }
    std::sort(touched_cells.begin(), touched_cells.end());
    h = mix(h, static_cast<std::uint64_t>(w));
    for (int s : touched_cells) {
      const int e = p.end_at[static_cast<std::size_t>(s)];
      const int k = hits[static_cast<std::size_t>(s)];
      hits[static_cast<std::size_t>(s)] = 0;
      placed[static_cast<std::size_t>(s)] = 0;
      if (e - s == 1) continue;
      const int back = e - k;
      auto first = p.lab.begin() + back;
      auto last = p.lab.begin() + e;
      std::sort(first, last, [&](int a, int b) {
        const int ca = count_[static_cast<std::size_t>(a)], cb = count_[static_cast<std::size_t>(b)];
        return ca != cb ? ca < cb : a < b;
      });
      for (int i = back; i < e; ++i) p.pos[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] = i;
      // Fragment boundaries.
      std::vector<int> starts;
      if (back > s) starts.push_back(s);
      for (int i = back; i < e; ++i) {
        if (i == back || count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] !=
                             count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i - 1)])]) {
          starts.push_back(i);
        }
      }
      if (starts.size() == 1) {
        h = mix(h, (static_cast<std::uint64_t>(s) << 32) ^ static_cast<std::uint64_t>(count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(s)])]));
        continue;
      }
      const bool was_queued = in_queue[static_cast<std::size_t>(s)] != 0;
      int largest = -1;
      int largest_size = -1;
      for (std::size_t f = 0; f < starts.size(); ++f) {
        const int fs = starts[f];
        const int fe = f + 1 < starts.size() ? starts[f + 1] : e;
        p.end_at[static_cast<std::size_t>(fs)] = fe;
        for (int i = fs; i < fe; ++i) p.start_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] = fs;
        const std::uint64_t c = static_cast<std::uint64_t>(count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(fs)])]);
        h = mix(h, (static_cast<std::uint64_t>(fs) << 40) ^ (c << 20) ^ static_cast<std::uint64_t>(fe - fs));
        if (fe - fs > largest_size) {
          largest_size = fe - fs;
          largest = fs;
        }
      }
      p.cells += static_cast<int>(starts.size()) - 1;
      for (int fs : starts) {
        if (in_queue[static_cast<std::size_t>(fs)]) continue;
        if (!was_queued && fs == largest) continue;
        in_queue[static_cast<std::size_t>(fs)] = 1;
        queue.push_back(fs);
      }
    }
    for (int u : touched) count_[static_cast<std::size_t>(u)] = 0;
  }
  return mix(h, static_cast<std::uint64_t>(p.cells));
}

int Search::target_cell(const Partition& p) const {
  int best = -1;
  int best_size = p.size() + 1;
  for (int s = 0; s < p.size(); s = p.end_at[static_cast<std::size_t>(s)]) {
    const int size = p.end_at[static_cast<std::size_t>(s)] - s;
    if (size > 1 && size < best_size) {
      best = s;
      best_size = size;
    }
  }
  return best;
}

int Search::fixed_prefix(const Permutation& gen) const {
  int k = 0;
  while (k < static_cast<int>(first_path_.size()) &&
         gen[static_cast<std::size_t>(first_path_[static_cast<std::size_t>(k)])] == first_path_[static_cast<std::size_t>(k)]) {
    ++k;
  }
  return k;
}

void Search::add_generator(Permutation gen) {
  gen_fix_.push_back(fixed_prefix(gen));
  gens_.push_back(std::move(gen));
}

std::vector<int>& Search::orbits_fixing(int depth) {
  if (orbit_cache_.size() <= static_cast<std::size_t>(depth)) {
    orbit_cache_.resize(static_cast<std::size_t>(depth) + 1);
    orbit_cache_gens_.resize(static_cast<std::size_t>(depth) + 1, static_cast<std::size_t>(-1));
  }
  auto& cache = orbit_cache_[static_cast<std::size_t>(depth)];
  if (orbit_cache_gens_[static_cast<std::size_t>(depth)] != gens_.size()) {
    std::vector<Permutation> chosen;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gen_fix_[i] >= depth) chosen.push_back(gens_[i]);
    }
    cache = orbits_of(g_.order(), chosen);
    orbit_cache_gens_[static_cast<std::size_t>(depth)] = gens_.size();
  }
  return cache;
}

int Search::leaf(const Partition& p, int depth) {
  Certificate cert = domain_.certificate(p.lab);
  if (!have_first_) {
    have_first_ = true;
    first_path_ = path_;
    first_trace_.assign(trace_.begin(), trace_.begin() + depth + 1);
    first_lab_ = p.lab;
    first_cert_ = cert;
    best_path_ = path_;
    best_trace_ = first_trace_;
    best_lab_ = p.lab;
    best_cert_ = std::move(cert);
    std::fill(cmp_best_.begin(), cmp_best_.end(), Cmp::Equal);
    return depth - 1;
  }
  auto common = [&](const std::vector<int>& other) {
    int k = 0;
    while (k < depth && path_[static_cast<std::size_t>(k)] == other[static_cast<std::size_t>(k)]) ++k;
    return k;
  };
  if (eq_first_[static_cast<std::size_t>(depth)] && cert == first_cert_) {
    add_generator(domain_.automorphism(p.lab, first_lab_));
    return common(first_path_);
  }
  const Cmp c = cmp_best_[static_cast<std::size_t>(depth)];
  if (c == Cmp::Equal && cert == best_cert_) {
    add_generator(domain_.automorphism(p.lab, best_lab_));
    return common(best_path_);
  }
  if (c == Cmp::Less || (c == Cmp::Equal && cert < best_cert_)) {
    best_path_ = path_;
    best_trace_.assign(trace_.begin(), trace_.begin() + depth + 1);
    best_lab_ = p.lab;
    best_cert_ = std::move(cert);
    for (int d = 0; d <= depth; ++d) cmp_best_[static_cast<std::size_t>(d)] = Cmp::Equal;
  }
  return depth - 1;
}

int Search::explore(Partition& p, int depth) {
  ++nodes_;
  if (p.discrete()) return leaf(p, depth);
  const int s = target_cell(p);
  const int e = p.end_at[static_cast<std::size_t>(s)];
  std::vector<int> children(p.lab.begin() + s, p.lab.begin() + e);
  std::sort(children.begin(), children.end());
  const bool on_first = !have_first_ || (static_cast<int>(first_path_.size()) > depth &&
                                         std::equal(path_.begin(), path_.begin() + depth, first_path_.begin()));
  std::vector<int> explored;
  if (cmp_best_.size() <= static_cast<std::size_t>(depth) + 1) {
    cmp_best_.resize(static_cast<std::size_t>(depth) + 2, Cmp::Equal);
    eq_first_.resize(static_cast<std::size_t>(depth) + 2, 1);
    trace_.resize(static_cast<std::size_t>(depth) + 2, 0);
  }
  for (int w : children) {
    if (on_first && have_first_) {
      auto& orb = orbits_fixing(depth);
      bool seen = false;
      for (int u : explored) {
        if (orb[static_cast<std::size_t>(u)] == orb[static_cast<std::size_t>(w)]) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
    }
    explored.push_back(w);
    Partition child = p;
    std::vector<int> queue;
    individualise(child, w, queue);
    const std::uint64_t h = refine(child, std::move(queue));
    const std::size_t d1 = static_cast<std::size_t>(depth) + 1;
    path_.resize(d1);
    path_[d1 - 1] = w;
    trace_[d1] = h;
    if (have_first_) {
      eq_first_[d1] = eq_first_[d1 - 1] && d1 < first_trace_.size() && first_trace_[d1] == h;
      const Cmp parent = cmp_best_[d1 - 1];
      if (parent == Cmp::Equal) {
        const std::uint64_t b = d1 < best_trace_.size() ? best_trace_[d1] : 0;
        cmp_best_[d1] = d1 >= best_trace_.size() ? Cmp::Greater : (h < b ? Cmp::Less : (h == b ? Cmp::Equal : Cmp::Greater));
      } else {
        cmp_best_[d1] = parent;
      }
      if (cmp_best_[d1] == Cmp::Greater && !eq_first_[d1]) continue;
    }
    const int r = explore(child, depth + 1);
    path_.resize(static_cast<std::size_t>(depth));
    if (r < depth) return r;
  }
  if (on_first) {
    auto& orb = orbits_fixing(depth);
    const int v = first_path_[static_cast<std::size_t>(depth)];
    const int root = orb[static_cast<std::size_t>(v)];
    long size = 0;
    for (int x : children) size += orb[static_cast<std::size_t>(x)] == root;
    order_ *= size;
  }
  return depth - 1;
}

SearchResult Search::run(const std::vector<int>& colours) {
  const int n = g_.order();
  if (static_cast<int>(colours.size()) != n) throw std::invalid_argument("colour vector size mismatch");
  Partition p;
  p.lab.resize(static_cast<std::size_t>(n));
  std::iota(p.lab.begin(), p.lab.end(), 0);
  std::stable_sort(p.lab.begin(), p.lab.end(), [&](int a, int b) {
    return colours[static_cast<std::size_t>(a)] < colours[static_cast<std::size_t>(b)];
  });
  p.pos.resize(static_cast<std::size_t>(n));
  p.start_of.resize(static_cast<std::size_t>(n));
  p.end_at.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> queue;
  for (int i = 0; i < n; ++i) {
    p.pos[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] = i;
    const bool fresh = i == 0 || colours[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] !=
                                     colours[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i - 1)])];
    if (fresh) {
      queue.push_back(i);
      ++p.cells;
    }
    p.start_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(i)])] = queue.back();
  }
  for (std::size_t c = 0; c < queue.size(); ++c) {
    p.end_at[static_cast<std::size_t>(queue[c])] = c + 1 < queue.size() ? queue[c + 1] : n;
  }
  SearchResult out;
  if (n == 0) {
    out.certificate = domain_.certificate(p.lab);
    return out;
  }
  trace_.assign(1, refine(p, queue));
  cmp_best_.assign(1, Cmp::Equal);
  eq_first_.assign(1, 1);
  explore(p, 0);
  out.certificate = best_cert_;
  out.labeling = best_lab_;
  out.generators = gens_;
  out.group_order = order_;
  out.orbits = orbits_of(n, gens_);
  out.nodes = nodes_;
  return out;
}

}  // namespace

std::vector<int> orbits_of(int order, const std::vector<Permutation>& gens) {
  std::vector<int> parent(static_cast<std::size_t>(order));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& gen : gens) {
    for (int v = 0; v < order; ++v) {
      int a = find_root(parent, v);
      int b = find_root(parent, gen[static_cast<std::size_t>(v)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  for (int v = 0; v < order; ++v) parent[static_cast<std::size_t>(v)] = find_root(parent, v);
  return parent;
}

SearchResult canonical_search(const Graph& g, const std::vector<int>& colours, LeafDomain& domain) {
  Search s(g, domain);
  return s.run(colours);
}

}  // namespace eqp
