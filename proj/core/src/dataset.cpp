#include "eqp/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "eqp/oa_bridge.hpp"

namespace eqp {

namespace {

std::vector<Vertex> span_of(const std::vector<Vertex>& basis) {
  std::vector<Vertex> span{0};
  for (Vertex k : basis) {
    const std::size_t size = span.size();
    for (std::size_t i = 0; i < size; ++i) span.push_back(span[i] ^ k);
  }
  return span;
}

Vertex parse_word(const std::string& token, std::size_t line) {
  if (token.size() != 3) throw ParseError(line, "expected a 3-digit hex word, got '" + token + "'");
  try {
    return parse_hex(token, kAppendixDim);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

std::string str(const BigInt& v) { return v.str(); }

std::string words_str(const std::vector<Vertex>& words) {
  std::string s;
  for (Vertex w : words) s += (s.empty() ? "" : " ") + to_hex(w, kAppendixDim);
  return s;
}

}  // namespace

VertexSet AppendixEntry::p0() const {
  VertexSet s(kAppendixDim);
  const auto span = span_of(ker);
  for (Vertex r : repr) {
    for (Vertex k : span) {
      if (s.contains(k ^ r)) throw std::invalid_argument("cosets of entry " + std::to_string(index) + " overlap");
      s.insert(k ^ r);
    }
  }
  return s;
}

std::vector<std::size_t> parse_orbits(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::size_t times = 1;
    std::string size = token;
    if (const auto x = token.find('x'); x != std::string::npos) {
      times = std::stoul(token.substr(0, x));
      size = token.substr(x + 1);
    }
    std::size_t used = 0;
    const auto value = std::stoul(size, &used);
    if (used != size.size() || times == 0 || value == 0) throw std::invalid_argument("bad orbit token '" + token + "'");
    out.insert(out.end(), times, value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_orbits(std::vector<std::size_t> sizes) {
  std::sort(sizes.begin(), sizes.end());
  std::string s;
  for (std::size_t i = 0; i < sizes.size();) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    s += (s.empty() ? "" : " ") + (j - i > 1 ? std::to_string(j - i) + "x" : "") + std::to_string(sizes[i]);
    i = j;
  }
  return s;
}

std::vector<AppendixEntry> parse_appendix(const std::string& text) {
  std::vector<AppendixEntry> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  auto need_entry = [&](const std::string& key) -> AppendixEntry& {
    if (out.empty()) throw ParseError(line, "'" + key + "' before the first entry");
    return out.back();
  };
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string key;
    if (!(fields >> key)) continue;
    std::string rest;
    std::getline(fields, rest);
    try {
      if (key == "entry") {
        AppendixEntry e;
        e.index = std::stoi(rest);
        const bool repeated = std::any_of(out.begin(), out.end(), [&](const AppendixEntry& o) { return o.index == e.index; });
        if (e.index < 1 || repeated) throw ParseError(line, "entry numbers must be positive and distinct");
        out.push_back(std::move(e));
      } else if (key == "rank") {
        need_entry(key).rank = std::stoi(rest);
      } else if (key == "aut") {
        std::istringstream v(rest);
        std::string digits;
        v >> digits;
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) throw ParseError(line, "bad order");
        need_entry(key).aut_order = BigInt(digits);
      } else if (key == "orbits0") {
        need_entry(key).orbits0 = parse_orbits(rest);
      } else if (key == "orbits1") {
        need_entry(key).orbits1 = parse_orbits(rest);
      } else if (key == "ker" || key == "repr") {
        auto& e = need_entry(key);
        auto& target = key == "ker" ? e.ker : e.repr;
        std::istringstream words(rest);
        std::string token;
        while (words >> token) target.push_back(parse_word(token, line));
      } else {
        throw ParseError(line, "unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line, std::string("bad value for '") + key + "': " + e.what());
    }
  }
  for (const auto& e : out) {
    if (e.rank == 0 || e.aut_order == 0 || e.orbits0.empty() || e.orbits1.empty() || e.repr.empty()) {
      throw ParseError(line, "entry " + std::to_string(e.index) + " is missing a field");
    }
  }
  return out;
}

std::vector<AppendixEntry> read_appendix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_appendix(ss.str());
}

bool EntryReport::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const FieldCheck& c) { return c.ok; });
}

std::vector<std::string> EntryReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.ok) out.push_back(c.field + ": expected " + c.expected + ", found " + c.actual);
  }
  return out;
}

EntryReport verify_entry(const AppendixEntry& e) {
  EntryReport r;
  r.index = e.index;
  auto add = [&](const std::string& field, const std::string& expected, const std::string& actual) {
    r.checks.push_back({field, expected, actual, expected == actual});
  };
  VertexSet p0(kAppendixDim);
  try {
    p0 = e.p0();
    add("cosets", "disjoint", "disjoint");
  } catch (const std::invalid_argument&) {
    add("cosets", "disjoint", "overlapping");
    return r;
  }
  add("size", "1024", std::to_string(p0.size()));
  const auto q = quotient_matrix(p0);
  add("matrix", kAppendixMatrix.str(), q.matrix ? q.matrix->str() : "not equitable");
  if (!q.matrix) return r;
  add("rank", std::to_string(e.rank), std::to_string(affine_rank(p0)));
  // The declared kernel basis must span the full kernel {y : P0 + y = P0}.
  const auto declared = span_of(e.ker);
  const bool inside = std::all_of(declared.begin(), declared.end(), [&](Vertex y) { return p0.translate(y) == p0; });
  std::vector<Vertex> sorted_span = declared;
  std::sort(sorted_span.begin(), sorted_span.end());
  const bool independent = std::adjacent_find(sorted_span.begin(), sorted_span.end()) == sorted_span.end();
  const auto actual_kernel = kernel_size(p0);
  const std::string want = "maximal of dimension " + std::to_string(e.ker.size());
  std::string got = want;
  if (!inside || !independent) {
    got = "not an independent set of periods";
  } else if (declared.size() != actual_kernel) {
    got = "full kernel has size " + std::to_string(actual_kernel);
  }
  add("kernel", want, got);
  const auto canon = canonicalize(p0);
  r.form = canon.form;
  add("aut", str(e.aut_order), str(canon.aut.order));
  add("orbits0", format_orbits(e.orbits0), format_orbits(canon.aut.orbit_sizes_in));
  add("orbits1", format_orbits(e.orbits1), format_orbits(canon.aut.orbit_sizes_out));
  add("correlation immunity", "7", std::to_string(correlation_immunity_order(p0)));
  add("orthogonal array", "OA(1024,12,2,7)", verify_oa(kAppendixDim, p0.members(), 7).ok ? "OA(1024,12,2,7)" : "fails strength 7");
  return r;
}

AppendixEntry make_entry(int index, const VertexSet& p0) {
  if (p0.dim() != kAppendixDim) throw std::invalid_argument("dataset entries live in Q_12");
  AppendixEntry e;
  e.index = index;
  e.rank = affine_rank(p0);
  const auto info = automorphism_info(p0);
  e.aut_order = info.order;
  e.orbits0 = info.orbit_sizes_in;
  e.orbits1 = info.orbit_sizes_out;
  std::sort(e.orbits0.begin(), e.orbits0.end());
  std::sort(e.orbits1.begin(), e.orbits1.end());
  e.ker = kernel(p0);
  const auto span = span_of(e.ker);
  VertexSet covered(kAppendixDim);
  p0.for_each([&](Vertex x) {
    if (covered.contains(x)) return;
    e.repr.push_back(x);  // members come in increasing order, so x is the least of its coset
    for (Vertex k : span) covered.insert(x ^ k);
  });
  return e;
}

std::string format_entry(const AppendixEntry& e) {
  std::ostringstream os;
  os << "entry " << e.index << "\nrank " << e.rank << "\naut " << e.aut_order << "\norbits0 " << format_orbits(e.orbits0)
     << "\norbits1 " << format_orbits(e.orbits1) << "\nker " << words_str(e.ker) << '\n';
  for (std::size_t i = 0; i < e.repr.size(); i += 16) {
    const auto end = std::min(e.repr.size(), i + 16);
    os << "repr " << words_str({e.repr.begin() + static_cast<long>(i), e.repr.begin() + static_cast<long>(end)}) << '\n';
  }
  return os.str();
}

std::string format_partition(const VertexSet& c0) {
  const auto q = quotient_matrix(c0);
  if (!q.matrix) throw std::invalid_argument("partition is not equitable: " + q.reason);
  const auto& m = *q.matrix;
  std::ostringstream os;
  os << "EQP n=" << c0.dim() << " matrix=" << m.a << ',' << m.b << ',' << m.c << ',' << m.d << '\n';
  c0.for_each([&](Vertex x) { os << to_hex(x, c0.dim()) << '\n'; });
  return os.str();
}

PartitionFile read_partition(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  PartitionFile f;
  int n = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  {
    std::istringstream header(raw);
    std::string tag, dim, mat;
    if (!(header >> tag >> dim >> mat) || tag != "EQP" || dim.rfind("n=", 0) != 0 || mat.rfind("matrix=", 0) != 0) {
      throw ParseError(std::max<std::size_t>(line, 1), "expected header 'EQP n=<n> matrix=a,b,c,d'");
    }
    try {
      n = std::stoi(dim.substr(2));
      check_dimension(n);
      auto& m = f.matrix;
      std::replace(mat.begin(), mat.end(), ',', ' ');
      std::istringstream values(mat.substr(7));
      if (!(values >> m.a >> m.b >> m.c >> m.d)) throw std::invalid_argument("matrix needs four entries");
    } catch (const std::exception& e) {
      throw ParseError(line, e.what());
    }
  }
  f.c0 = VertexSet(n);
  Vertex previous = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream words(raw);
    std::string token;
    while (words >> token) {
      Vertex x = 0;
      try {
        x = parse_hex(token, n);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
      if (!first && x <= previous) throw ParseError(line, "words must be sorted and distinct");
      f.c0.insert(x);
      previous = x;
      first = false;
    }
  }
  const auto q = quotient_matrix(f.c0);
  if (!q.matrix || *q.matrix != f.matrix) {
    throw ParseError(1, "cell does not have matrix " + f.matrix.str() + (q.matrix ? " (found " + q.matrix->str() + ")" : ""));
  }
  return f;
}

}  // namespace eqp
