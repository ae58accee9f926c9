#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "eqp/admissibility.hpp"
#include "eqp/canonical.hpp"
#include "eqp/classify_01248.hpp"
#include "eqp/classify_3975.hpp"
#include "eqp/constructions.hpp"
#include "eqp/dataset.hpp"
#include "eqp/oa_bridge.hpp"
#include "eqp/spectral.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace eqp;

constexpr const char* kSchema = "v1";

// Exit statuses: 0 success, 1 a verification or screening verdict failed,
// 2 usage or input error.
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  bool json = false;
  bool verbose = false;
  int threads = 1;
};

Json matrix_json(const QuotientMatrix& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

Json words_json(const std::vector<Vertex>& words, int n) {
  Json out = Json::array();
  for (Vertex w : words) out.push_back(to_hex(w, n));
  return out;
}

Json sizes_json(std::vector<std::size_t> sizes) {
  std::sort(sizes.begin(), sizes.end());
  return Json(sizes);
}

Json report(const std::string& command) { return Json{{"schema", kSchema}, {"command", command}}; }

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

using Progress = std::function<void(const std::string&)>;

Progress progress_for(const Options& o) {
  if (!o.verbose) return {};
  return [](const std::string& s) { std::cerr << s << '\n'; };
}

PartitionFile load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_partition(in);
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

QuotientMatrix parse_matrix_arg(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  QuotientMatrix m;
  if (!(in >> m.a >> m.b >> m.c >> m.d) || !in.eof()) throw CLI::ValidationError("matrix", "expected a,b,c,d");
  return m;
}

// screen a b c d

int run_screen(const Options& o, const std::vector<int>& entries) {
  if (entries.size() != 4) throw CLI::ValidationError("screen", "expected four matrix entries a b c d");
  const QuotientMatrix m{entries[0], entries[1], entries[2], entries[3]};
  if (!m.row_sums_agree() || m.b <= 0 || m.c <= 0 || m.a < 0 || m.d < 0) {
    throw CLI::ValidationError("screen", "entries must be nonnegative with b, c > 0 and a + b = c + d");
  }
  const auto v = screen(m);
  Json j = report("screen");
  j["matrix"] = matrix_json(v.matrix);
  j["passed"] = v.passed;
  Json rules = Json::array();
  std::ostringstream text;
  std::string first_failure;
  for (const auto& r : v.reasons) {
    rules.push_back({{"rule", rule_name(r.rule)}, {"evaluated", r.evaluated}, {"passed", r.passed}, {"detail", r.detail}});
    if (r.evaluated && !r.passed && first_failure.empty()) first_failure = rule_name(r.rule);
  }
  j["rules"] = rules;
  text << v.matrix.str() << ": " << (v.passed ? "PASS" : "FAIL(" + first_failure + ")") << '\n';
  for (const auto& r : v.reasons) {
    text << "  " << rule_name(r.rule) << ": " << (!r.evaluated ? "skipped" : r.passed ? "ok" : "fails") << " - "
         << r.detail << '\n';
  }
  emit(o, j, text.str());
  return v.passed ? 0 : kFailed;
}

// verify FILE

int run_verify(const Options& o, const std::string& path, bool with_aut) {
  const auto f = load_partition(path);
  const int n = f.c0.dim();
  const auto fourier = verify_fourier_system(f.c0, f.matrix);
  const int ci = correlation_immunity_order(f.c0);
  Json j = report("verify");
  j["n"] = n;
  j["matrix"] = matrix_json(f.matrix);
  j["size"] = f.c0.size();
  j["equitable"] = true;
  j["correlation_immunity"] = ci;
  j["on_bound"] = attains_ci_bound(f.matrix);
  j["fourier_ok"] = fourier.ok();
  j["kernel_size"] = kernel_size(f.c0);
  j["affine_rank"] = affine_rank(f.c0);
  std::ostringstream text;
  text << "matrix " << f.matrix.str() << ", |C0| = " << f.c0.size() << '\n'
       << "correlation immunity " << ci << (attains_ci_bound(f.matrix) ? " (on the bound)" : "") << '\n'
       << "Fourier system " << (fourier.ok() ? "ok" : "fails: " + fourier.first_failure) << '\n'
       << "kernel size " << kernel_size(f.c0) << ", affine rank " << affine_rank(f.c0) << '\n';
  if (with_aut) {
    const auto canon = canonicalize(f.c0);
    j["aut_order"] = canon.aut.order.str();
    j["orbits_in"] = sizes_json(canon.aut.orbit_sizes_in);
    j["orbits_out"] = sizes_json(canon.aut.orbit_sizes_out);
    j["coordinate_orbits"] = canon.aut.coordinate_orbits;
    j["certificate"] = canon.form.hex();
    text << "|Aut| = " << canon.aut.order << ", orbits " << format_orbits(canon.aut.orbit_sizes_in) << "; "
         << format_orbits(canon.aut.orbit_sizes_out) << '\n';
  }
  emit(o, j, text.str());
  return fourier.ok() ? 0 : kFailed;
}

// spectrum FILE

int run_spectrum(const Options& o, const std::string& path) {
  const auto f = load_partition(path);
  const auto s = wht(IntegerFunction::associated(f.c0, f.matrix.b, f.matrix.c));
  Json j = report("spectrum");
  j["n"] = f.c0.dim();
  j["matrix"] = matrix_json(f.matrix);
  Json nonzeros = Json::array();
  std::int64_t norm = 0;
  for (Vertex y : s.support()) {
    nonzeros.push_back({to_hex(y, f.c0.dim()), s(y)});
    norm += s(y) * s(y);
  }
  j["nonzeros"] = nonzeros;
  j["sum_of_squares"] = norm;
  j["directional_norms"] = directional_norms(s);
  std::ostringstream text;
  text << spectrum_dump(s);
  emit(o, j, text.str());
  return 0;
}

// classify 3975

q3975::Stage parse_stage(const std::string& s) {
  using q3975::Stage;
  if (s == "bitriples") return Stage::Bitriples;
  if (s == "coverings") return Stage::Coverings;
  if (s == "parity") return Stage::Parity;
  if (s == "signs") return Stage::Signs;
  if (s == "final") return Stage::Final;
  throw CLI::ValidationError("--stage", "unknown stage " + s);
}

int run_classify_3975(const Options& o, const std::string& stage_name, const std::string& out_dir) {
  using namespace q3975;
  const Stage stage = parse_stage(stage_name);
  const auto r = run_pipeline(stage, progress_for(o));
  Json j = report("classify 3975");
  j["stage"] = stage_name;
  std::ostringstream text;

  Json bitriples = Json::array();
  Json families = Json::object();
  for (auto f : {BitripleFamily::SingleMultiplicity, BitripleFamily::Design12, BitripleFamily::Design9,
                 BitripleFamily::Design6, BitripleFamily::FourDoubled}) {
    families[family_name(f)] = r.bitriples.family_count(f);
  }
  for (const auto& c : r.bitriples.classes) {
    bitriples.push_back({{"family", family_name(c.family)},
                         {"triples", words_json(c.system.triples, kDim)},
                         {"aut_order", c.aut_order.str()},
                         {"certificate", c.form.hex()}});
  }
  j["bitriples"] = {{"classes", r.bitriples.classes.size()},
                    {"families", families},
                    {"completions", r.bitriples.completions_found},
                    {"even_labelled", r.bitriples.even_labelled.str()},
                    {"double_counts_ok", r.bitriples.double_counts_ok()},
                    {"items", bitriples}};
  text << "bitriples: " << r.bitriples.classes.size() << " classes (";
  bool first = true;
  for (const auto& [name, count] : families.items()) {
    text << (first ? "" : " + ") << count.get<std::size_t>();
    first = false;
  }
  text << ")\n";

  if (stage != Stage::Bitriples) {
    Json per_class = Json::array();
    Json items = Json::array();
    std::vector<std::size_t> distribution;
    for (std::size_t i = 0; i < r.coverings.size(); ++i) {
      const auto& c = r.coverings[i];
      per_class.push_back({{"bitriple", i},
                           {"classes", c.classes.size()},
                           {"labelled_solutions", c.labelled_solutions},
                           {"labelled_implied", c.labelled_implied.str()},
                           {"parity_labelled", c.parity_labelled}});
      if (!c.classes.empty()) distribution.push_back(c.classes.size());
      for (const auto& k : c.classes) {
        items.push_back({{"bitriple", k.bitriple_class},
                         {"aut_order", k.aut_order.str()},
                         {"blocks", words_json(k.blocks, kDim)},
                         {"certificate", k.form.hex()}});
      }
    }
    j["coverings"] = {{"classes", r.covering_classes}, {"distribution", distribution}, {"per_bitriple", per_class},
                      {"items", items}};
    text << "coverings: " << r.covering_classes << " classes (";
    for (std::size_t i = 0; i < distribution.size(); ++i) text << (i ? "/" : "") << distribution[i];
    text << ")\n";
    Json survivors = Json::array();
    for (const auto& s : r.survivors) survivors.push_back({{"bitriple", s.bitriple_class}, {"certificate", s.form.hex()}});
    j["parity"] = {{"survivors", r.survivors.size()}, {"items", survivors}};
    text << "parity: " << r.survivors.size() << " survivors\n";
  }

  if (stage == Stage::Signs || stage == Stage::Final) {
    Json systems = Json::array();
    for (std::size_t k = 0; k < r.consistent.size(); ++k) {
      const auto& s = r.consistent[k];
      systems.push_back({{"survivor", r.consistent_survivor[k]},
                         {"variables", s.support.size()},
                         {"equations", s.matrix.rows()},
                         {"rank", s.solution.rank},
                         {"solutions_log2", s.solution.kernel.size()}});
      text << "signs: survivor " << r.consistent_survivor[k] << " consistent, rank " << s.solution.rank << ", 2^"
           << s.solution.kernel.size() << " solutions\n";
    }
    j["signs"] = {{"consistent", r.consistent.size()}, {"systems", systems}};
    text << "signs: " << r.consistent.size() << " consistent systems\n";
  }

  if (stage == Stage::Final) {
    Json cosets = Json::array();
    for (const auto& c : r.cosets) {
      cosets.push_back({{"psi_dimension", c.psi_dimension}, {"cosets", c.cosets}, {"accepted", c.accepted}});
      text << "cosets: " << c.cosets << ", accepted " << c.accepted << '\n';
    }
    Json finals = Json::array();
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    for (std::size_t k = 0; k < r.finals.size(); ++k) {
      const auto& f = r.finals[k];
      finals.push_back({{"aut_order", f.aut.order.str()},
                        {"kernel_size", f.kernel},
                        {"coordinate_orbits", f.aut.coordinate_orbits},
                        {"orbits_in", sizes_json(f.aut.orbit_sizes_in)},
                        {"orbits_out", sizes_json(f.aut.orbit_sizes_out)},
                        {"certificate", f.form.hex()},
                        {"c0", words_json(f.c0.members(), kDim)}});
      text << "class " << k + 1 << ": |Aut| = " << f.aut.order << ", kernel " << f.kernel << ", coordinate orbits";
      for (const auto& orbit : f.aut.coordinate_orbits) text << ' ' << orbit.size();
      text << ", orbits " << format_orbits(f.aut.orbit_sizes_in) << "; " << format_orbits(f.aut.orbit_sizes_out) << '\n';
      if (!out_dir.empty()) save_text(out_dir + "/class-" + std::to_string(k + 1) + ".eqp", format_partition(f.c0));
    }
    j["final"] = {{"classes", r.finals.size()}, {"cosets", cosets}, {"items", finals}};
    text << "final: " << r.finals.size() << " classes\n";
  }
  j["double_counts_ok"] = r.double_counts_ok;
  text << "double counts " << (r.double_counts_ok ? "ok" : "FAIL") << '\n';
  emit(o, j, text.str());
  return r.double_counts_ok ? 0 : kFailed;
}

// classify 01248

Json chain_json(const q01248::ChainReport& c, std::ostringstream& text) {
  Json stages = Json::array();
  const std::string side = c.zero_in_p0 ? "P0" : "P1";
  for (const auto& s : c.stages) {
    Json items = Json::array();
    for (const auto& k : s.classes) {
      items.push_back({{"aut_order", k.aut_order.str()}, {"p0", words_json(k.rep.p0.members(), q01248::kDim)},
                       {"certificate", k.form.hex()}});
    }
    stages.push_back({{"radius", s.radius},
                      {"classes", s.classes.size()},
                      {"labelled_solutions", s.labelled_solutions},
                      {"double_count_ok", s.double_count_ok()},
                      {"items", items}});
    text << "0 in " << side << ", radius " << s.radius << ": " << s.classes.size() << " classes"
         << (s.double_count_ok() ? "" : " (double count FAILS)") << '\n';
  }
  Json j{{"zero_in", side}, {"stages", stages}};
  if (c.final) {
    std::map<int, std::size_t> ranks;
    for (const auto& f : c.final->classes) ++ranks[f.rank];
    Json census = Json::object();
    for (const auto& [rank, count] : ranks) census[std::to_string(rank)] = count;
    j["final"] = {{"classes", c.final->classes.size()},
                  {"failures", c.final->failures},
                  {"rank_census", census},
                  {"double_count_ok", c.final->double_count_ok()}};
    text << "0 in " << side << ", complete: " << c.final->classes.size() << " classes, ranks";
    for (const auto& [rank, count] : ranks) text << ' ' << rank << ':' << count;
    text << '\n';
  }
  j["double_counts_ok"] = c.double_counts_ok();
  return j;
}

std::vector<q01248::FinalClass> ordered_finals(std::vector<q01248::FinalClass> classes) {
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.aut_order != b.aut_order) return a.aut_order > b.aut_order;
    return a.form < b.form;
  });
  return classes;
}

int run_classify_01248(const Options& o, const std::string& from, int radius, const std::string& out_path) {
  if (from != "p0" && from != "p1" && from != "both") throw CLI::ValidationError("--from", "expected p0, p1 or both");
  Json j = report("classify 01248");
  j["from"] = from;
  j["radius"] = radius;
  std::ostringstream text;
  bool ok = true;
  std::optional<q01248::FinalCensus> finals;
  Json chains = Json::array();
  if (from == "both" && radius == 5) {
    const auto c = q01248::classify(progress_for(o));
    chains.push_back(chain_json(c.from_p0, text));
    chains.push_back(chain_json(c.from_p1, text));
    j["chains_agree"] = c.chains_agree;
    text << "chains " << (c.chains_agree ? "agree" : "DISAGREE") << '\n';
    ok = c.chains_agree && c.from_p0.double_counts_ok() && c.from_p1.double_counts_ok();
    finals = c.from_p0.final;
  } else {
    for (bool zero_in_p0 : {true, false}) {
      if ((zero_in_p0 && from == "p1") || (!zero_in_p0 && from == "p0")) continue;
      const auto c = q01248::run_chain(zero_in_p0, radius, progress_for(o));
      chains.push_back(chain_json(c, text));
      ok = ok && c.double_counts_ok();
      if (c.final && !finals) finals = c.final;
    }
  }
  j["chains"] = chains;
  if (finals && !out_path.empty()) {
    std::string dataset = "# Equitable partitions (P0, P1) of Q_12 with quotient matrix [[0,12],[4,8]].\n";
    int index = 0;
    for (const auto& f : ordered_finals(finals->classes)) dataset += "\n" + format_entry(make_entry(++index, f.p0));
    save_text(out_path, dataset);
    j["exported"] = out_path;
  }
  j["double_counts_ok"] = ok;
  emit(o, j, text.str());
  return ok ? 0 : kFailed;
}

// construct

int run_construct_fdf(const Options& o, const std::string& choices_hex, const std::string& out_path) {
  Vertex choices = 0;
  try {
    choices = parse_hex(choices_hex, 12);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--choices", e.what());
  }
  const auto c0 = fdf_q12(choices);
  const auto canon = canonicalize(c0);
  Json j = report("construct fdf");
  j["choices"] = to_hex(choices, 12);
  j["matrix"] = matrix_json(*quotient_matrix(c0).matrix);
  j["aut_order"] = canon.aut.order.str();
  j["kernel_size"] = kernel_size(c0);
  j["certificate"] = canon.form.hex();
  if (!out_path.empty()) save_text(out_path, format_partition(c0));
  std::ostringstream text;
  text << "choices " << to_hex(choices, 12) << ": " << quotient_matrix(c0).matrix->str() << ", |Aut| = " << canon.aut.order
       << ", kernel " << kernel_size(c0) << ", form " << std::hex << canon.form.digest() << std::dec << '\n';
  emit(o, j, text.str());
  return 0;
}

DoublingMode parse_mode(const std::string& mode, int m) {
  if (mode == "standard") return DoublingMode::standard(m);
  if (mode.rfind("first:", 0) == 0) {
    try {
      return DoublingMode::first_pairs(m, std::stoi(mode.substr(6)));
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--mode", e.what());
    }
  }
  throw CLI::ValidationError("--mode", "expected standard or first:I");
}

int run_construct_double(const Options& o, const std::string& input, const std::string& mode_text,
                         const std::string& out_path) {
  const auto f = load_partition(input);
  const auto d = double_partition(f.c0, parse_mode(mode_text, f.c0.dim()));
  const auto m = *quotient_matrix(d).matrix;
  Json j = report("construct double");
  j["mode"] = mode_text;
  j["n"] = d.dim();
  j["matrix"] = matrix_json(m);
  std::ostringstream text;
  text << "doubled to Q_" << d.dim() << ": " << m.str() << '\n';
  if (m.a == 2) {
    Json cycles = Json::object();
    for (const auto& [length, count] : cycle_structure(d)) {
      cycles[std::to_string(length)] = count;
      text << "  " << count << " cycles of length " << length << '\n';
    }
    j["cycles"] = cycles;
  }
  if (!out_path.empty()) save_text(out_path, format_partition(d));
  emit(o, j, text.str());
  return 0;
}

int run_construct_seed(const Options& o, int n, const std::string& matrix_text, const std::string& out_path) {
  const auto m = parse_matrix_arg(matrix_text);
  if (n < 1 || n > 8) throw CLI::ValidationError("--n", "seed search supports 1 <= n <= 8");
  const auto s = find_seed_partition(n, m);
  Json j = report("construct seed");
  j["n"] = n;
  j["matrix"] = matrix_json(m);
  j["classes"] = s.classes;
  j["solutions_through_zero"] = s.solutions_through_zero;
  std::ostringstream text;
  text << m.str() << " on Q_" << n << ": classes " << s.classes << '\n';
  if (s.representative) {
    j["representative"] = words_json(s.representative->members(), n);
    if (!out_path.empty()) save_text(out_path, format_partition(*s.representative));
  }
  emit(o, j, text.str());
  return s.representative ? 0 : kFailed;
}

// oa

int run_oa_derive(const Options& o, const std::string& input, int coord, const std::string& oa_out) {
  const auto f = load_partition(input);
  if (coord < 0 || coord >= f.c0.dim()) throw CLI::ValidationError("--coord", "coordinate out of range");
  const auto d = derive_structures(f.c0, coord);
  Json j = report("oa derive");
  const auto three = [](const ThreePartition& t) { return Json{{"matrix", t.matrix}}; };
  j["array"] = {{"N", d.oa.rows.size()}, {"n", d.oa.n}, {"strength", d.oa.strength}};
  j["self_complementary"] = d.self_complementary;
  j["shortened"] = {{"N", d.shortened.rows.size()}, {"n", d.shortened.n}, {"strength", d.shortened.strength}};
  j["split"] = three(d.split);
  j["switched"] = three(d.switched);
  j["code"] = {{"size", d.code.size()}, {"intersection_array", d.array.str()}};
  const auto merged = merge_first_two_cells(d.split);
  j["merged"] = matrix_json(*quotient_matrix(merged).matrix);
  if (!oa_out.empty()) save_text(oa_out, format_oa(d.shortened));
  std::ostringstream text;
  auto rows = [](const std::vector<std::vector<int>>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
      s += i ? ",[" : "[";
      for (std::size_t k = 0; k < m[i].size(); ++k) s += (k ? "," : "") + std::to_string(m[i][k]);
      s += "]";
    }
    return s + "]";
  };
  text << "OA(" << d.oa.rows.size() << "," << d.oa.n << ",2," << d.oa.strength << ")"
       << (d.self_complementary ? ", self-complementary" : "") << '\n'
       << "shortened at coordinate " << coord + 1 << ": OA(" << d.shortened.rows.size() << "," << d.shortened.n << ",2,"
       << d.shortened.strength << ")\n"
       << "split 3-partition " << rows(d.split.matrix) << '\n'
       << "switched 3-partition " << rows(d.switched.matrix) << '\n'
       << "completely regular code of size " << d.code.size() << ", intersection array " << d.array.str() << '\n'
       << "merged cells " << quotient_matrix(merged).matrix->str() << '\n';
  emit(o, j, text.str());
  return 0;
}

int run_oa_verify(const Options& o, const std::string& input) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  const auto a = read_oa(in);
  const auto check = verify_oa(a);
  Json j = report("oa verify");
  j["N"] = a.rows.size();
  j["n"] = a.n;
  j["strength"] = a.strength;
  j["ok"] = check.ok;
  std::ostringstream text;
  text << "OA(" << a.rows.size() << "," << a.n << ",2," << a.strength << "): ";
  if (check.ok) {
    text << "ok\n";
  } else {
    j["columns"] = to_binary(check.columns, a.n);
    j["pattern"] = check.pattern;
    text << "columns " << to_binary(check.columns, a.n) << " are unbalanced\n";
  }
  emit(o, j, text.str());
  return check.ok ? 0 : kFailed;
}

int run_oa_census(const Options& o, const std::string& appendix) {
  std::vector<VertexSet> classes;
  for (const auto& e : read_appendix_file(appendix)) classes.push_back(e.p0());
  const auto c = bridge_census(classes);
  Json j = report("oa census");
  j["arrays"] = c.arrays;
  j["shortened"] = c.shortened;
  j["split"] = c.split;
  j["switched"] = c.switched;
  j["codes"] = c.codes;
  j["merges_ok"] = c.merges_ok;
  std::ostringstream text;
  text << c.arrays << " OA(1024,12,2,7) classes\n"
       << c.shortened << " OA(512,11,2,6) classes\n"
       << c.split << " split 3-partition classes\n"
       << c.switched << " switched 3-partition classes\n"
       << c.codes << " completely regular code classes\n"
       << "merged cells " << (c.merges_ok ? "all [[3,8],[8,3]]" : "FAIL") << '\n';
  emit(o, j, text.str());
  return c.merges_ok ? 0 : kFailed;
}

// appendix-check

int run_appendix_check(const Options& o, const std::string& path, bool match) {
  const auto entries = read_appendix_file(path);
  Json j = report("appendix-check");
  Json items = Json::array();
  std::ostringstream text;
  std::size_t structural = 0, printed = 0;
  std::set<CanonicalForm> forms;
  for (const auto& e : entries) {
    const auto r = verify_entry(e);
    bool structure_ok = true;
    for (const auto& c : r.checks) {
      if (c.field != "orbits0" && c.field != "orbits1") structure_ok = structure_ok && c.ok;
    }
    structural += structure_ok;
    printed += r.ok();
    if (structure_ok) forms.insert(r.form);
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"field", c.field}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    }
    items.push_back({{"index", e.index}, {"ok", r.ok()}, {"checks", checks}});
    text << "entry " << e.index << ": " << (r.ok() ? "OK" : "MISMATCH") << '\n';
    for (const auto& f : r.failures()) text << "  " << f << '\n';
  }
  j["entries"] = items;
  j["structure_ok"] = structural;
  j["all_fields_ok"] = printed;
  j["distinct_classes"] = forms.size();
  text << "structure: " << structural << '/' << entries.size() << " OK\n"
       << "all printed fields: " << printed << '/' << entries.size() << " OK\n"
       << "pairwise inequivalent: " << forms.size() << '/' << entries.size() << '\n';
  bool ok = printed == entries.size() && forms.size() == entries.size();
  if (match) {
    const auto chain = q01248::run_chain(true, 5, progress_for(o));
    std::set<CanonicalForm> classified;
    for (const auto& c : chain.final->classes) classified.insert(c.form);
    const bool same = classified == forms;
    j["matches_classification"] = same;
    text << "classification: " << classified.size() << " classes, " << (same ? "identical to the entries" : "DIFFERENT")
         << '\n';
    ok = ok && same;
  }
  emit(o, j, text.str());
  return ok ? 0 : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equitable 2-partitions of hypercubes on the correlation-immunity bound"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON report");
  app.add_flag("-v,--verbose", o.verbose, "Progress on stderr");
  app.add_option("--threads", o.threads, "Worker threads (output never depends on it)")->check(CLI::PositiveNumber);

  std::vector<int> screen_entries;
  auto* screen_cmd = app.add_subcommand("screen", "Screen a quotient matrix a b c d");
  screen_cmd->add_option("entries", screen_entries, "a b c d")->required()->expected(4);

  std::string verify_path;
  bool verify_aut = false;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a partition file");
  verify_cmd->add_option("file", verify_path)->required()->check(CLI::ExistingFile);
  verify_cmd->add_flag("--aut", verify_aut, "Also compute the automorphism group");

  std::string spectrum_path;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Walsh spectrum of a partition's associated function");
  spectrum_cmd->add_option("file", spectrum_path)->required()->check(CLI::ExistingFile);

  auto* classify_cmd = app.add_subcommand("classify", "Run a classification pipeline");
  classify_cmd->require_subcommand(1);
  std::string stage = "final", out_dir;
  auto* c3975 = classify_cmd->add_subcommand("3975", "Partitions with matrix [[3,9],[7,5]]");
  c3975->add_option("--stage", stage, "bitriples|coverings|parity|signs|final");
  c3975->add_option("--out", out_dir, "Directory for the final partition files");
  std::string from = "both", dataset_out;
  int radius = 5;
  auto* c01248 = classify_cmd->add_subcommand("01248", "Partitions with matrix [[0,12],[4,8]]");
  c01248->add_option("--from", from, "p0|p1|both");
  c01248->add_option("--radius", radius, "Stop after the local stage of this radius (2..4); 5 completes")
      ->check(CLI::Range(2, 5));
  c01248->add_option("--out", dataset_out, "Write the final classes in the dataset text format");

  auto* construct_cmd = app.add_subcommand("construct", "Build partitions");
  construct_cmd->require_subcommand(1);
  std::string choices = "ccc", construct_out, double_input, mode = "standard", seed_matrix;
  int seed_n = 0;
  auto* fdf = construct_cmd->add_subcommand("fdf", "The [[3,9],[7,5]] construction on Q_12");
  fdf->add_option("--choices", choices, "Three hex digits, one bit per gray face");
  fdf->add_option("--out", construct_out, "Partition file to write");
  auto* dbl = construct_cmd->add_subcommand("double", "Double a partition onto Q_2m");
  dbl->add_option("input", double_input)->required()->check(CLI::ExistingFile);
  dbl->add_option("--mode", mode, "standard or first:I (Z4 sums on the first I coordinate pairs)");
  dbl->add_option("--out", construct_out, "Partition file to write");
  auto* seed = construct_cmd->add_subcommand("seed", "Exhaustive search on a small cube");
  seed->add_option("--n", seed_n)->required();
  seed->add_option("--matrix", seed_matrix, "a,b,c,d")->required();
  seed->add_option("--out", construct_out, "Partition file for the first class");

  auto* oa_cmd = app.add_subcommand("oa", "Orthogonal arrays and derived structures");
  oa_cmd->require_subcommand(1);
  std::string oa_input, oa_out, appendix_path = std::string(EQP_DATA_DIR) + "/appendix.txt";
  int coord = 1;
  auto* derive = oa_cmd->add_subcommand("derive", "Structures derived from a [[0,n],[c,n-c]] partition");
  derive->add_option("input", oa_input)->required()->check(CLI::ExistingFile);
  derive->add_option("--coord", coord, "1-based coordinate to split at");
  derive->add_option("--oa-out", oa_out, "Write the shortened array");
  auto* oa_verify = oa_cmd->add_subcommand("verify", "Check an OA file");
  oa_verify->add_option("input", oa_input)->required()->check(CLI::ExistingFile);
  auto* census = oa_cmd->add_subcommand("census", "Derived classes of every dataset entry");
  census->add_option("--appendix", appendix_path)->check(CLI::ExistingFile);

  bool match = false;
  auto* appendix_cmd = app.add_subcommand("appendix-check", "Verify the dataset of [[0,12],[4,8]] partitions");
  appendix_cmd->add_option("file", appendix_path)->check(CLI::ExistingFile);
  appendix_cmd->add_flag("--match", match, "Also compare with a fresh classification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*screen_cmd) return run_screen(o, screen_entries);
    if (*verify_cmd) return run_verify(o, verify_path, verify_aut);
    if (*spectrum_cmd) return run_spectrum(o, spectrum_path);
    if (*c3975) return run_classify_3975(o, stage, out_dir);
    if (*c01248) return run_classify_01248(o, from, radius, dataset_out);
    if (*fdf) return run_construct_fdf(o, choices, construct_out);
    if (*dbl) return run_construct_double(o, double_input, mode, construct_out);
    if (*seed) return run_construct_seed(o, seed_n, seed_matrix, construct_out);
    if (*derive) return run_oa_derive(o, oa_input, coord - 1, oa_out);
    if (*oa_verify) return run_oa_verify(o, oa_input);
    if (*census) return run_oa_census(o, appendix_path);
    if (*appendix_cmd) return run_appendix_check(o, appendix_path, match);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
