#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wskein/diagram_io.hpp"

using namespace wskein;

namespace {

const char* kHopf = "X+ 1 2 3 4\nX+ 4 3 2 1\n";
const char* kVHopf = "X+ 1 2 3 4\nV 4 3 2 1\n";
const char* kTrefoil = "X+ 1 2 3 4\nX+ 4 5 6 1\nX+ 2 3 5 6\n";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate", "[diagram]") {
  CHECK(validate(Diagram{}).empty());
  Diagram kink;
  kink.classical.push_back({Sign::Positive, "1", "2", "2", "1"});
  CHECK(validate(kink).empty());
  Diagram bad;
  bad.classical.push_back({Sign::Positive, "1", "2", "3", "2"});
  auto errs = validate(bad);
  CHECK(std::find(errs.begin(), errs.end(), "edge '2' used 2 times as an outgoing slot") != errs.end());
  // exhaustive: 1 and 3 lack an outgoing slot, 2 an incoming one
  CHECK(errs.size() == 4);
  Diagram lone;
  lone.wens.push_back({"e", "e"});
  CHECK_FALSE(validate(lone).empty());
}

TEST_CASE("statistics", "[diagram]") {
  auto hopf = parse_diagram(kHopf);
  CHECK(writhe(hopf) == 2);
  CHECK(virtual_writhe(hopf).count == 0);
  CHECK(components(hopf) == 2);
  auto vh = parse_diagram(kVHopf);
  CHECK(writhe(vh) == 1);
  CHECK(virtual_writhe(vh).count == 1);
  CHECK(virtual_writhe(vh).parity == 1);
  CHECK(components(vh) == 2);
  CHECK(components(parse_diagram(kTrefoil)) == 1);
  CHECK(components(parse_diagram("loop\nloop\n")) == 2);
  CHECK(writhe(Diagram{}) == 0);
  CHECK(components(parse_diagram("W 1 2\nW 2 3\nW 3 1\n")) == 1);
}

TEST_CASE("statistics ignore ordering and labels", "[diagram]") {
  auto d = parse_diagram("X- 1 2 3 4\nV 4 5 2 6\nW 6 3\nX+ 5 1 7 8\nW 8 7\n");
  REQUIRE(validate(d).empty());
  Diagram shuffled = d;
  std::reverse(shuffled.classical.begin(), shuffled.classical.end());
  std::reverse(shuffled.wens.begin(), shuffled.wens.end());
  shuffled = relabel(shuffled, {{"1", "q"}, {"5", "zz"}, {"8", "x1"}});
  CHECK(components(d) == components(shuffled));
  CHECK(writhe(d) == writhe(shuffled));
  CHECK(virtual_writhe(d).count == virtual_writhe(shuffled).count);
  CHECK(wen_count(d) == wen_count(shuffled));
}

TEST_CASE("parse", "[diagram]") {
  auto hopf = parse_diagram("# hopf\nX+ 1 2 3 4   # first\n\nX+ 4 3 2 1\n");
  CHECK(hopf.classical.size() == 2);
  CHECK(parse_diagram("loop").free_loops == 1);
  CHECK(parse_diagram("").vertex_count() == 0);

  auto err = [](const char* text) -> ParseError {
    try {
      parse_diagram(text);
    } catch (const ParseError& e) {
      return e;
    }
    FAIL("expected a parse error");
    return ParseError(0, 0, "");
  };
  auto e1 = err("W 1 1\n");
  CHECK(e1.line() == 1);
  CHECK(e1.column() == 5);
  auto e2 = err("X+ 1 2 3 4\nY 1 2\n");
  CHECK(e2.line() == 2);
  CHECK(e2.reason().find("unknown vertex keyword") != std::string::npos);
  auto e3 = err("X+ 1 2 3\n");
  CHECK(e3.reason().find("expects 4 arguments") != std::string::npos);
  // the naive two-line Hopf code reuses in-slots
  auto e4 = err("X+ 1 2 3 4\nX+ 3 4 1 2\n");
  CHECK(e4.line() == 2);
  CHECK(e4.column() == 4);
  auto e5 = err("X+ 1 2 3 4\n");
  CHECK(e5.reason().find("no matching") != std::string::npos);
  CHECK_THROWS_AS(parse_diagram("end A in 1\n"), ParseError);
}

TEST_CASE("serialize round trip", "[diagram]") {
  for (const char* text : {kHopf, kVHopf, kTrefoil, "W 1 2\nW 2 3\nW 3 1\nloop\n"}) {
    auto d = parse_diagram(text);
    CHECK(serialize(d) == text);
    CHECK(parse_diagram(serialize(d)) == d);
  }
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    // random valid diagram: pair 2n slot outputs with a random permutation of inputs
    std::uniform_int_distribution<int> kind(0, 2), n(0, 6);
    std::vector<int> kinds;
    for (int i = n(rng); i > 0; --i) kinds.push_back(kind(rng));
    int strands = 0;
    for (int k : kinds) strands += k == 2 ? 1 : 2;
    std::vector<int> perm(strands);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Diagram d;
    int s = 0;
    auto in = [&](int i) { return "e" + std::to_string(i); };
    auto out = [&](int i) { return "e" + std::to_string(perm[i]); };
    for (int k : kinds) {
      if (k == 2) {
        d.wens.push_back({in(s), out(s)});
        s += 1;
      } else if (k == 1) {
        d.virtual_crossings.push_back({in(s), out(s), in(s + 1), out(s + 1)});
        s += 2;
      } else {
        d.classical.push_back({trial % 2 ? Sign::Positive : Sign::Negative, in(s), out(s), in(s + 1), out(s + 1)});
        s += 2;
      }
    }
    if (!validate(d).empty()) continue;  // a wen fixed by the permutation
    d.free_loops = static_cast<std::size_t>(trial % 3);
    auto back = parse_diagram(serialize(d));
    // serialization groups vertices by kind, matching the in-memory layout
    CHECK(back == d);
  }
}

TEST_CASE("corpus files parse and round trip", "[diagram]") {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(WSKEIN_DATA) / "corpus")) {
    if (entry.path().extension() != ".wld") continue;
    ++count;
    auto text = slurp(entry.path());
    auto d = parse_diagram(text);
    INFO(entry.path().string());
    CHECK(validate(d).empty());
    CHECK(parse_diagram(serialize(d)) == d);
  }
  CHECK(count >= 10);
}

TEST_CASE("tangles", "[diagram]") {
  auto t = parse_tangle("X+ 1 2 3 4\nend 1 in 1\nend 2 in 3\nend 3 out 4\nend 4 out 2\n");
  CHECK(validate(t).empty());
  CHECK(t.boundary.size() == 4);
  CHECK(parse_tangle(serialize(t)) == t);
  auto strand = parse_tangle("end A in e\nend B out e\n");
  CHECK(validate(strand).empty());
  CHECK_THROWS_AS(parse_tangle("end A in e\nend A out e\n"), ParseError);
  CHECK_THROWS_AS(parse_tangle("end A sideways e\n"), ParseError);
}

TEST_CASE("disjoint union", "[diagram]") {
  auto u = disjoint_union(parse_diagram(kHopf), parse_diagram(kTrefoil));
  CHECK(validate(u).empty());
  CHECK(components(u) == 3);
  CHECK(writhe(u) == 5);
}
