#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "eqp/classify_01248.hpp"
#include "eqp/dataset.hpp"
#include "test_support.hpp"

using namespace eqp;

namespace {

const std::vector<AppendixEntry>& entries() {
  static const auto e = read_appendix_file(eqp::testing::data_path("appendix.txt"));
  return e;
}

const std::vector<EntryReport>& reports() {
  static const auto r = [] {
    std::vector<EntryReport> out;
    for (const auto& e : entries()) out.push_back(verify_entry(e));
    return out;
  }();
  return r;
}

}  // namespace

TEST_CASE("parsing the dataset") {
  REQUIRE(entries().size() == 16);
  const auto& first = entries().front();
  CHECK(first.ker == std::vector<Vertex>{0x003, 0x005, 0x009, 0x030, 0x050, 0x090, 0x300, 0x500, 0x900, 0x111});
  CHECK(first.repr == std::vector<Vertex>{0});
  CHECK(first.p0() == eqp::testing::appendix_entry_one());
  const auto& last = entries().back();
  CHECK(last.ker == std::vector<Vertex>{0x00f, 0x0f0, 0xf00, 0x333});
  CHECK(last.repr.size() == 64);
  CHECK(entries()[1].aut_order == 1179648);
  CHECK(entries()[14].rank == 12);
  CHECK(entries()[14].aut_order == 32768);
  for (const auto& e : entries()) {
    CHECK((e.repr.size() << e.ker.size()) == 1024);
    for (Vertex w : e.ker) CHECK(w < 4096);
  }
}

TEST_CASE("malformed dataset text") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_appendix(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("entry 1\nrank 10\nker 00g\n") == 3);
  CHECK(line_of("entry 1\nrank 10\nker 1003\n") == 3);
  CHECK(line_of("rank 10\n") == 1);
  CHECK(line_of("entry 0\n") == 1);
  CHECK(line_of("entry 1\nentry 1\n") == 2);
  CHECK(line_of("entry 1\nbogus 3\n") == 2);
  CHECK(line_of("entry 1\nrank 10\naut 12x\n") == 3);
  CHECK(line_of("entry 1\nrank 10\n") != 0);
  CHECK(parse_orbits("2x128 768") == std::vector<std::size_t>{128, 128, 768});
  CHECK(format_orbits({768, 128, 128}) == "2x128 768");
  CHECK_THROWS_AS(parse_orbits("0x5"), std::invalid_argument);
}

static bool is_orbit_field(const FieldCheck& c) { return c.field == "orbits0" || c.field == "orbits1"; }

TEST_CASE("every entry verifies: cell, matrix, rank, kernel, order, immunity, array") {
  for (const auto& r : reports()) {
    INFO("entry " << r.index);
    CHECK(r.checks.size() == 10);
    for (const auto& c : r.checks) {
      if (is_orbit_field(c)) continue;
      INFO(c.field << ": expected " << c.expected << ", found " << c.actual);
      CHECK(c.ok);
    }
  }
  const auto& second = reports()[1].checks;
  const auto aut = std::find_if(second.begin(), second.end(), [](const FieldCheck& c) { return c.field == "aut"; });
  REQUIRE(aut != second.end());
  CHECK(aut->actual == "1179648");
  const auto orbits = std::find_if(second.begin(), second.end(), [](const FieldCheck& c) { return c.field == "orbits1"; });
  CHECK(orbits->actual == "1024 2048");
}

TEST_CASE("printed orbit lists match the computed orbits") {
  for (const auto& r : reports()) {
    for (const auto& c : r.checks) {
      if (!is_orbit_field(c)) continue;
      INFO("entry " << r.index << " " << c.field << ": printed " << c.expected << ", computed " << c.actual);
      CHECK(c.ok);
    }
  }
}

TEST_CASE("computed orbits are exact") {
  // Generator orbits can only be too fine; marking one vertex per orbit and
  // finding pairwise distinct canonical forms shows no two of them merge.
  for (int index : {5, 9, 12}) {
    const auto& e = entries()[static_cast<std::size_t>(index - 1)];
    const auto p0 = e.p0();
    const auto info = automorphism_info(p0);
    std::vector<Vertex> root(4096);
    for (Vertex x = 0; x < 4096; ++x) root[x] = x;
    auto find = [&](Vertex x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const auto& g : info.generators) {
      for (Vertex x = 0; x < 4096; ++x) root[find(x)] = find(g(x));
    }
    std::map<Vertex, std::size_t> orbit_size;
    for (Vertex x = 0; x < 4096; ++x) ++orbit_size[find(x)];
    std::set<CanonicalForm> marked;
    std::vector<std::size_t> in, out;
    for (const auto& [rep, size] : orbit_size) {
      std::vector<int> colours(4096, 1);
      p0.for_each([&](Vertex x) { colours[x] = 0; });
      (p0.contains(rep) ? in : out).push_back(size);
      colours[rep] = 2;
      marked.insert(canonicalize_colouring(12, colours, 3).form);
    }
    INFO("entry " << index);
    CHECK(marked.size() == orbit_size.size());
    CHECK(format_orbits(in) == format_orbits(info.orbit_sizes_in));
    CHECK(format_orbits(out) == format_orbits(info.orbit_sizes_out));
  }
}

TEST_CASE("corrupted entries are reported per field") {
  auto e = entries()[1];
  e.aut_order = 1179649;
  e.rank = 10;
  auto r = verify_entry(e);
  CHECK_FALSE(r.ok());
  CHECK(r.failures().size() == 2);

  auto small = entries()[0];
  small.ker.pop_back();  // a proper sub-span, no longer the full kernel
  small.repr = {0, 0x111};
  r = verify_entry(small);
  CHECK_FALSE(r.ok());
  CHECK(r.failures().size() == 1);
  CHECK(r.failures()[0].rfind("kernel", 0) == 0);

  auto overlap = entries()[0];
  overlap.repr = {0, 0x003};
  CHECK_FALSE(verify_entry(overlap).ok());
}

TEST_CASE("entries match the classification class for class") {
  const auto chain = q01248::run_chain(true);
  REQUIRE(chain.final);
  std::set<CanonicalForm> classified;
  std::multiset<std::string> classified_aut;
  for (const auto& c : chain.final->classes) {
    classified.insert(c.form);
    classified_aut.insert(c.aut_order.str());
  }
  std::set<CanonicalForm> listed;
  std::multiset<std::string> listed_aut;
  for (std::size_t i = 0; i < entries().size(); ++i) {
    listed.insert(reports()[i].form);
    listed_aut.insert(entries()[i].aut_order.str());
  }
  CHECK(listed.size() == 16);
  CHECK(listed == classified);
  CHECK(listed_aut == classified_aut);
}

TEST_CASE("export and re-import keep the canonical form") {
  for (int index : {1, 4, 16}) {
    const auto p0 = entries()[static_cast<std::size_t>(index - 1)].p0();
    const auto made = make_entry(index, p0);
    CHECK(made.rank == entries()[static_cast<std::size_t>(index - 1)].rank);
    const auto text = format_entry(made);
    const auto parsed = parse_appendix(text);
    REQUIRE(parsed.size() == 1);
    const auto r = verify_entry(parsed[0]);
    CHECK(r.ok());
    CHECK(r.form == reports()[static_cast<std::size_t>(index - 1)].form);
    CHECK(parsed[0].p0() == p0);

    std::istringstream in(format_partition(p0));
    const auto f = read_partition(in);
    CHECK(f.c0 == p0);
    CHECK(f.matrix == kAppendixMatrix);
  }
  std::mt19937_64 rng(1);
  const auto p0 = apply_automorphism(eqp::testing::random_automorphism(12, rng), entries()[6].p0());
  std::istringstream in(format_partition(p0));
  CHECK(canonical_form(read_partition(in).c0) == reports()[6].form);
}

TEST_CASE("partition file errors") {
  const std::string good = format_partition(VertexSet(3, std::vector<Vertex>{0, 7}));
  CHECK(good == "EQP n=3 matrix=0,3,1,2\n0\n7\n");
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_partition(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(good) == 0);
  CHECK(line_of("EQP n=3 matrix=0,3,1\n0\n7\n") == 1);
  CHECK(line_of("EQ n=3 matrix=0,3,1,2\n0\n7\n") == 1);
  CHECK(line_of("EQP n=3 matrix=0,3,1,2\n7\n0\n") == 3);
  CHECK(line_of("EQP n=3 matrix=0,3,1,2\n0\nz\n") == 3);
  CHECK(line_of("EQP n=3 matrix=0,3,1,2\n0\n6\n") == 1);
  CHECK_THROWS_AS(format_partition(VertexSet(3, std::vector<Vertex>{0, 1, 2})), std::invalid_argument);
}
