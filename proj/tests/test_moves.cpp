#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wskein/diagram_io.hpp"
#include "wskein/moves.hpp"

using namespace wskein;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Diagram corpus(const std::string& name) { return parse_diagram(slurp(fs::path(WSKEIN_DATA) / "corpus" / (name + ".wld"))); }

/// Braid-style closure of a tangle with labels 1..k in, k+1..2k out (top,
/// right to left): position p's top joins position p's bottom.
Diagram close_up(const Tangle& t) {
  const std::size_t k = t.boundary.size() / 2;
  std::map<std::string, EdgeId> by_label;
  for (const auto& ep : t.boundary) by_label[ep.label] = ep.edge;
  std::map<EdgeId, EdgeId> rename;
  Diagram d = t.diagram;
  for (std::size_t p = 0; p < k; ++p) {
    const EdgeId& in = by_label.at(std::to_string(p + 1));
    const EdgeId& out = by_label.at(std::to_string(2 * k - p));
    if (in == out)
      ++d.free_loops;
    else
      rename[out] = in;
  }
  return relabel(d, rename);
}

CoefficientSystem system_for(const Diagram& d) {
  return d.wens.empty() ? CoefficientSystem::welded(std::nullopt) : CoefficientSystem::extended();
}

}  // namespace

TEST_CASE("move names round trip", "[moves]") {
  for (auto k : kAllMoveKinds) CHECK(parse_move_name(move_name(k)) == k);
  CHECK_FALSE(parse_move_name("r4").has_value());
  for (auto k : kAllMoveKinds) CHECK_FALSE(MoveTable::standard().rules_of(k).empty());
}

TEST_CASE("rules are well formed", "[moves]") {
  for (const auto& r : MoveTable::standard().rules()) {
    INFO(move_name(r.kind) << " " << r.variant);
    CHECK(validate(r.lhs).empty());
    CHECK(validate(r.rhs).empty());
    REQUIRE(r.lhs.boundary.size() == r.rhs.boundary.size());
    for (std::size_t i = 0; i < r.lhs.boundary.size(); ++i) {
      CHECK(r.lhs.boundary[i].label == r.rhs.boundary[i].label);
      CHECK(r.lhs.boundary[i].direction == r.rhs.boundary[i].direction);
    }
    // writhe and virtual effects of each kind
    switch (r.kind) {
      case MoveKind::R1aPlus: CHECK(r.writhe_delta() == 1); break;
      case MoveKind::R1aMinus: CHECK(r.writhe_delta() == -1); break;
      case MoveKind::R1bPlus: CHECK(r.writhe_delta() == -1); break;
      case MoveKind::R1bMinus: CHECK(r.writhe_delta() == 1); break;
      case MoveKind::V1Plus:
      case MoveKind::V1Minus:
        CHECK(std::abs(r.virtual_delta()) == 1);
        CHECK(r.writhe_delta() == 0);
        break;
      case MoveKind::T4: CHECK(std::abs(r.writhe_delta()) == 2); break;
      default:
        CHECK(r.writhe_delta() == 0);
        CHECK(r.virtual_delta() % 2 == 0);
    }
  }
}

TEST_CASE("enumerate_sites", "[moves]") {
  auto unknot = corpus("unknot");
  CHECK(enumerate_sites(unknot, MoveKind::R1aPlus).size() == 1);
  auto hopf = corpus("hopf_pos");
  CHECK(enumerate_sites(hopf, MoveKind::R2Minus).empty());
  CHECK(enumerate_sites(hopf, MoveKind::R1aPlus).size() == 4);
  CHECK(enumerate_sites(hopf, MoveKind::R2Plus).size() == 12);  // ordered pairs of 4 edges
  auto with_pair = apply_move(hopf, enumerate_sites(hopf, MoveKind::R2Plus)[0]);
  CHECK(enumerate_sites(with_pair, MoveKind::R2Minus).size() >= 1);
  CHECK(enumerate_sites(corpus("unlink2"), MoveKind::V2Plus).size() == 1);
  CHECK(enumerate_sites(Diagram{}, MoveKind::R1aPlus).empty());
}

TEST_CASE("apply_move effects", "[moves]") {
  auto cs = CoefficientSystem::welded(std::nullopt);
  auto unknot = corpus("unknot");
  auto k = apply_move(unknot, enumerate_sites(unknot, MoveKind::R1aPlus)[0]);
  CHECK(validate(k).empty());
  CHECK(writhe(k) == 1);
  CHECK(k.free_loops == 0);
  CHECK(y_invariant(k, cs) == y_invariant(unknot, cs));

  auto tref = corpus("trefoil");
  for (const auto& site : enumerate_sites(tref, MoveKind::V1Plus)) {
    auto v = apply_move(tref, site);
    CHECK(virtual_writhe(v).parity == 1);
    CHECK(y_invariant(v, cs) == y_invariant(tref, cs));
  }

  // T1+ then T1- at the same spot gives back the original exactly
  auto ext = CoefficientSystem::extended();
  for (const auto& site : enumerate_sites(tref, MoveKind::T1Plus)) {
    auto w = apply_move(tref, site);
    CHECK(y_invariant(w, ext) == y_invariant(tref, ext));
    auto back_sites = enumerate_sites(w, MoveKind::T1Minus);
    REQUIRE(back_sites.size() == 1);
    CHECK(apply_move(w, back_sites[0]) == tref);
  }
}

TEST_CASE("removals invert insertions", "[moves]") {
  const auto& table = MoveTable::standard();
  for (const char* name : {"trefoil", "vhopf", "unlink2", "wen_hopf"}) {
    auto d = corpus(name);
    for (auto kind : kAllMoveKinds) {
      if (category(kind) != MoveCategory::Insertion) continue;
      const auto inverse = static_cast<MoveKind>(static_cast<int>(kind) + 1);
      for (const auto& site : enumerate_sites(d, kind)) {
        auto grown = apply_move(d, site);
        INFO(name << " " << move_name(kind));
        REQUIRE(validate(grown).empty());
        // the inverse applied to the inserted vertices restores d
        bool restored = false;
        for (const auto& back : enumerate_sites(grown, inverse)) {
          auto shrunk = apply_move(grown, back);
          REQUIRE(validate(shrunk).empty());
          if (canonical_labels(shrunk) == canonical_labels(d)) restored = true;
        }
        CHECK(restored);
        (void)table;
      }
    }
  }
}

TEST_CASE("every rule preserves Y on a fixture", "[moves]") {
  const auto& table = MoveTable::standard();
  for (std::size_t ri = 0; ri < table.rules().size(); ++ri) {
    const auto& rule = table.rules()[ri];
    INFO(move_name(rule.kind) << " " << rule.variant);
    // the closed-up left side, plus an unrelated crossing to keep edges busy
    Diagram fixture = close_up(rule.lhs);
    if (rule.is_insertion()) fixture = disjoint_union(fixture, corpus("hopf_pos"));
    REQUIRE(validate(fixture).empty());
    auto cs = (rule.lhs.diagram.wens.empty() && rule.rhs.diagram.wens.empty()) ? CoefficientSystem::welded(std::nullopt)
                                                                             : CoefficientSystem::extended();
    const Fraction before = y_invariant(fixture, cs);
    std::size_t hits = 0;
    for (const auto& site : enumerate_sites(fixture, rule.kind)) {
      if (site.rule != ri) continue;
      ++hits;
      auto after = apply_move(fixture, site);
      REQUIRE(validate(after).empty());
      CHECK(writhe(after) - writhe(fixture) == rule.writhe_delta());
      CHECK(y_invariant(after, cs) == before);
    }
    CHECK(hits >= 1);
  }
}

TEST_CASE("stale sites are rejected", "[moves]") {
  auto hopf = corpus("hopf_pos");
  auto site = enumerate_sites(hopf, MoveKind::R2Plus)[0];
  auto grown = apply_move(hopf, site);
  auto removal = enumerate_sites(grown, MoveKind::R2Minus).at(0);
  auto shrunk = apply_move(grown, removal);
  CHECK_THROWS_AS(apply_move(shrunk, removal), StaleSite);
  MoveSite bogus = site;
  bogus.anchors = {EdgeId("nope"), EdgeId("1")};
  CHECK_THROWS_AS(apply_move(hopf, bogus), StaleSite);
}

TEST_CASE("scramble", "[moves]") {
  auto unknot = corpus("unknot");
  ScrambleOptions opt;
  opt.moves = 50;
  opt.size_cap = 12;
  auto a = scramble(unknot, 42, opt);
  auto b = scramble(unknot, 42, opt);
  CHECK(a.diagram == b.diagram);
  CHECK(a.log == b.log);
  CHECK(a.log.size() == 50);
  CHECK(validate(a.diagram).empty());
  auto cs = system_for(a.diagram);
  CHECK(y_invariant(a.diagram, cs) == Fraction::integer(-2));
  opt.moves = 0;
  CHECK(scramble(corpus("figure8"), 1, opt).diagram == corpus("figure8"));
}

TEST_CASE("check_invariance on the corpus", "[moves]") {
  InvarianceOptions opt;
  opt.trials = 15;
  opt.scramble.moves = 12;
  for (const auto& entry : fs::directory_iterator(fs::path(WSKEIN_DATA) / "corpus")) {
    auto d = parse_diagram(slurp(entry.path()));
    INFO(entry.path().filename().string());
    // welded, symbolic ν: wen moves are left out
    if (d.wens.empty()) {
      auto rep = check_invariance(d, CoefficientSystem::welded(std::nullopt), opt);
      CHECK(rep.ok);
    }
    auto rep = check_invariance(d, CoefficientSystem::extended(), opt);
    CHECK(rep.ok);
  }
}

TEST_CASE("corrupted move table is caught", "[moves]") {
  // negative control: R2+ inserts two positive crossings
  MoveTable bad = MoveTable::standard();
  for (auto& r : bad.rules())
    if (r.kind == MoveKind::R2Plus) r.rhs.diagram.classical[1].sign = Sign::Positive;
  InvarianceOptions opt;
  opt.trials = 20;
  opt.scramble.moves = 3;
  opt.scramble.kinds = {MoveKind::R2Plus};
  auto rep = check_invariance(corpus("hopf_pos"), CoefficientSystem::welded(-1), opt, bad);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.moves.empty());
}
