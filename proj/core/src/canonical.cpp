#include "eqp/canonical.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace eqp {

std::string CanonicalForm::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::uint64_t CanonicalForm::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt cube_group_order(int n) { return (BigInt(1) << n) * factorial(n); }

namespace {

const Graph& cube_graph(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Graph>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    std::vector<std::vector<int>> adj(std::size_t{1} << n);
    for (Vertex x = 0; x < adj.size(); ++x) {
      for (int c = 0; c < n; ++c) adj[x].push_back(static_cast<int>(x ^ (Vertex{1} << c)));
    }
    slot = std::make_unique<Graph>(Graph::from_adjacency(std::move(adj)));
  }
  return *slot;
}

void push_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

CubeAutomorphism cube_map_from_permutation(int n, const Permutation& gamma) {
  const Vertex shift = static_cast<Vertex>(gamma[0]);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const Vertex img = static_cast<Vertex>(gamma[coord_bit(n, c)]) ^ shift;
    if (weight(img) != 1) throw std::logic_error("graph automorphism is not a cube automorphism");
    perm[static_cast<std::size_t>(c)] = n - 1 - std::countr_zero(img);
  }
  return CubeAutomorphism(perm, shift);
}

// Leaf g: the vertex at position 0 goes to 0, its neighbours in position order
// become coordinates 1..n.
class CubeDomain : public LeafDomain {
 public:
  CubeDomain(int n, const std::vector<int>& colours, int k) : n_(n), colours_(colours), k_(k) {}

  CubeAutomorphism leaf_map(std::span<const int> lab) const {
    const std::size_t size = lab.size();
    std::vector<int> pos(size);
    for (std::size_t i = 0; i < size; ++i) pos[static_cast<std::size_t>(lab[i])] = static_cast<int>(i);
    const Vertex t = static_cast<Vertex>(lab[0]);
    std::vector<std::pair<int, int>> order;  // (position, coordinate)
    for (int c = 0; c < n_; ++c) order.emplace_back(pos[t ^ coord_bit(n_, c)], c);
    std::sort(order.begin(), order.end());
    std::vector<int> perm(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) perm[static_cast<std::size_t>(order[static_cast<std::size_t>(i)].second)] = i;
    CubeAutomorphism pi(perm, 0);
    return CubeAutomorphism(perm, pi.permute(t));
  }

  std::vector<int> image_colours(const CubeAutomorphism& g) const {
    std::vector<int> out(colours_.size());
    for (Vertex x = 0; x < out.size(); ++x) out[g(x)] = colours_[x];
    return out;
  }

  Certificate certificate(std::span<const int> lab) override {
    const auto img = image_colours(leaf_map(lab));
    Certificate cert;
    const int bits = k_ <= 2 ? 1 : 4;
    const int per_word = 32 / bits;
    cert.reserve(img.size() / static_cast<std::size_t>(per_word) + 1);
    std::uint32_t word = 0;
    int filled = 0;
    for (int c : img) {
      word = (word << bits) | static_cast<std::uint32_t>(c);
      if (++filled == per_word) {
        cert.push_back(word);
        word = 0;
        filled = 0;
      }
    }
    if (filled) cert.push_back(word << (bits * (per_word - filled)));
    return cert;
  }

  Permutation automorphism(std::span<const int> lab_a, std::span<const int> lab_b) override {
    const auto ga = leaf_map(lab_a);
    const auto gb = leaf_map(lab_b);
    const auto gamma = gb.inverse().compose(ga);
    Permutation p(colours_.size());
    for (Vertex x = 0; x < p.size(); ++x) p[x] = static_cast<int>(gamma(x));
    return p;
  }

 private:
  int n_;
  const std::vector<int>& colours_;
  int k_;
};

}  // namespace

std::vector<std::size_t> orbit_sizes(const VertexSet& s, const std::vector<CubeAutomorphism>& gens) {
  std::vector<Permutation> perms;
  for (const auto& g : gens) {
    Permutation p(s.universe());
    for (Vertex x = 0; x < p.size(); ++x) p[x] = static_cast<int>(g(x));
    perms.push_back(std::move(p));
  }
  const auto orb = orbits_of(static_cast<int>(s.universe()), perms);
  std::map<int, std::size_t> sizes;
  s.for_each([&](Vertex x) { ++sizes[orb[x]]; });
  std::vector<std::size_t> out;
  for (auto& [root, size] : sizes) out.push_back(size);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<std::vector<int>> coordinate_orbits(int n, const std::vector<CubeAutomorphism>& gens) {
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(g.perm());
  const auto orb = orbits_of(n, perms);
  std::map<int, std::vector<int>> groups;
  for (int c = 0; c < n; ++c) groups[orb[static_cast<std::size_t>(c)]].push_back(c);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  return out;
}

CubeCanon canonicalize_colouring(int n, const std::vector<int>& colours, int k) {
  check_dimension(n);
  if (colours.size() != (std::size_t{1} << n)) throw std::invalid_argument("colouring must have 2^n entries");
  if (k < 1 || k > 16) throw std::invalid_argument("between 1 and 16 colours supported");
  for (int c : colours) {
    if (c < 0 || c >= k) throw std::invalid_argument("colour out of range");
  }
  CubeDomain domain(n, colours, k);
  const auto result = canonical_search(cube_graph(n), colours, domain);

  CubeCanon out;
  out.to_canonical = domain.leaf_map(result.labeling);
  out.canonical_colours = domain.image_colours(out.to_canonical);
  auto& bytes = out.form.bytes;
  bytes = {CanonicalForm::kVersion, CanonicalForm::CubeColouring, static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(k)};
  for (auto w : result.certificate) push_u32(bytes, w);
  out.aut.order = result.group_order;
  for (const auto& p : result.generators) out.aut.generators.push_back(cube_map_from_permutation(n, p));
  out.aut.coordinate_orbits = coordinate_orbits(n, out.aut.generators);
  VertexSet in(n);
  for (Vertex x = 0; x < colours.size(); ++x) {
    if (colours[x] == 0) in.insert(x);
  }
  out.aut.orbit_sizes_in = orbit_sizes(in, out.aut.generators);
  out.aut.orbit_sizes_out = orbit_sizes(in.complement(), out.aut.generators);
  out.nodes = result.nodes;
  return out;
}

CubeCanon canonicalize(const VertexSet& s) {
  std::vector<int> colours(s.universe(), 1);
  s.for_each([&](Vertex x) { colours[x] = 0; });
  return canonicalize_colouring(s.dim(), colours, 2);
}

CanonicalForm canonical_form(const VertexSet& s) { return canonicalize(s).form; }

AutInfo automorphism_info(const VertexSet& s) { return canonicalize(s).aut; }

CanonicalForm colouring_form(int n, const std::vector<int>& colours, int k,
                             const std::vector<std::vector<int>>& relabellings) {
  std::optional<CanonicalForm> best;
  std::vector<int> relabelled(colours.size());
  for (const auto& map : relabellings) {
    for (std::size_t i = 0; i < colours.size(); ++i) relabelled[i] = map[static_cast<std::size_t>(colours[i])];
    auto form = canonicalize_colouring(n, relabelled, k).form;
    if (!best || form < *best) best = std::move(form);
  }
  if (!best) throw std::invalid_argument("no relabellings given");
  return *best;
}

CanonicalForm partition_form(const VertexSet& c0) {
  const std::size_t a = c0.size();
  const std::size_t b = c0.universe() - a;
  std::vector<int> colours(c0.universe(), 1);
  c0.for_each([&](Vertex x) { colours[x] = 0; });
  std::vector<std::vector<int>> maps;
  if (a <= b) maps.push_back({0, 1});
  if (b <= a) maps.push_back({1, 0});
  auto form = colouring_form(c0.dim(), colours, 2, maps);
  form.bytes[1] = CanonicalForm::CubePartition;
  return form;
}

BigInt labelled_total(const BigInt& group_order, const std::vector<BigInt>& stabiliser_orders) {
  BigInt total = 0;
  for (const auto& o : stabiliser_orders) {
    if (o == 0 || group_order % o != 0) throw std::invalid_argument("stabiliser order does not divide the group order");
    total += group_order / o;
  }
  return total;
}

bool double_count(int n, const std::vector<BigInt>& orders, const BigInt& expected_total) {
  return labelled_total(cube_group_order(n), orders) == expected_total;
}

Vertex permute_word(Vertex w, int n, const std::vector<int>& perm) {
  Vertex out = 0;
  for (int c = 0; c < n; ++c) {
    if (w & coord_bit(n, c)) out |= coord_bit(n, perm[static_cast<std::size_t>(c)]);
  }
  return out;
}

namespace {

class WordsDomain : public LeafDomain {
 public:
  WordsDomain(int n, const std::vector<std::pair<Vertex, int>>& items) : n_(n), items_(items) {}

  std::vector<int> leaf_perm(std::span<const int> lab) const {
    std::vector<int> perm(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) perm[static_cast<std::size_t>(lab[static_cast<std::size_t>(i)])] = i;
    return perm;
  }

  std::vector<std::pair<Vertex, int>> image(const std::vector<int>& perm) const {
    std::vector<std::pair<Vertex, int>> out;
    out.reserve(items_.size());
    for (auto [w, m] : items_) out.emplace_back(permute_word(w, n_, perm), m);
    std::sort(out.begin(), out.end());
    return out;
  }

  Certificate certificate(std::span<const int> lab) override {
    Certificate cert;
    for (auto [w, m] : image(leaf_perm(lab))) {
      cert.push_back(w);
      cert.push_back(static_cast<std::uint32_t>(m));
    }
    return cert;
  }

  Permutation automorphism(std::span<const int> lab_a, std::span<const int> lab_b) override {
    const auto pa = leaf_perm(lab_a);
    const auto pb = leaf_perm(lab_b);
    std::vector<int> pb_inv(pb.size());
    for (std::size_t c = 0; c < pb.size(); ++c) pb_inv[static_cast<std::size_t>(pb[c])] = static_cast<int>(c);
    std::vector<int> gamma(pa.size());
    for (std::size_t c = 0; c < pa.size(); ++c) gamma[c] = pb_inv[static_cast<std::size_t>(pa[c])];
    Permutation p(static_cast<std::size_t>(n_) + items_.size());
    for (int c = 0; c < n_; ++c) p[static_cast<std::size_t>(c)] = gamma[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < items_.size(); ++i) {
      const Vertex img = permute_word(items_[i].first, n_, gamma);
      const auto it = std::lower_bound(items_.begin(), items_.end(), std::make_pair(img, 0));
      p[static_cast<std::size_t>(n_) + i] = n_ + static_cast<int>(it - items_.begin());
    }
    return p;
  }

 private:
  int n_;
  const std::vector<std::pair<Vertex, int>>& items_;
};

}  // namespace

WordsCanon canonicalize_words(int n, const std::vector<Vertex>& words) {
  check_dimension(n);
  std::map<Vertex, int> counts;
  for (Vertex w : words) {
    if (w >> n) throw std::invalid_argument("word outside Q_n");
    ++counts[w];
  }
  std::vector<std::pair<Vertex, int>> items(counts.begin(), counts.end());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + items.size());
  std::vector<int> colours(adj.size(), 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int v = n + static_cast<int>(i);
    colours[static_cast<std::size_t>(v)] = items[i].second;
    for (int c = 0; c < n; ++c) {
      if (items[i].first & coord_bit(n, c)) {
        adj[static_cast<std::size_t>(v)].push_back(c);
        adj[static_cast<std::size_t>(c)].push_back(v);
      }
    }
  }
  const Graph g = Graph::from_adjacency(std::move(adj));
  WordsDomain domain(n, items);
  const auto result = canonical_search(g, colours, domain);

  WordsCanon out;
  out.perm = domain.leaf_perm(result.labeling);
  for (auto [w, m] : domain.image(out.perm)) {
    for (int r = 0; r < m; ++r) out.canonical_words.push_back(w);
  }
  auto& bytes = out.form.bytes;
  bytes = {CanonicalForm::kVersion, CanonicalForm::WordMultiset, static_cast<std::uint8_t>(n)};
  for (auto w : result.certificate) push_u32(bytes, w);
  out.order = result.group_order;
  for (const auto& p : result.generators) out.generators.emplace_back(p.begin(), p.begin() + n);
  return out;
}

GraphCanon canonicalize_graph(const Graph& g, const std::vector<int>& colours) {
  std::vector<int> cols = colours.empty() ? std::vector<int>(static_cast<std::size_t>(g.order()), 0) : colours;
  PlainGraphDomain domain(g, cols);
  const auto result = canonical_search(g, cols, domain);
  GraphCanon out;
  out.form.bytes = {CanonicalForm::kVersion, CanonicalForm::PlainGraph};
  for (auto w : result.certificate) push_u32(out.form.bytes, w);
  out.labeling = result.labeling;
  out.order = result.group_order;
  return out;
}

CanonicalForm graph_canonical_form(const Graph& g) { return canonicalize_graph(g).form; }

}  // namespace eqp
