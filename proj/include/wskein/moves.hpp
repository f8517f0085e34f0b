#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "wskein/skein.hpp"
#include "wskein/tangles.hpp"

namespace wskein {

// Insertion kinds carry `Plus`, their inverses `Minus`; slides apply in
// either direction under one kind.
enum class MoveKind {
  R1aPlus, R1aMinus, R1bPlus, R1bMinus,
  R2Plus, R2Minus, R3,
  V1Plus, V1Minus, V2Plus, V2Minus, V3,
  M, F1,
  T1Plus, T1Minus, T2, T3, T4,
};

inline constexpr std::array<MoveKind, 19> kAllMoveKinds = {
    MoveKind::R1aPlus, MoveKind::R1aMinus, MoveKind::R1bPlus, MoveKind::R1bMinus, MoveKind::R2Plus,
    MoveKind::R2Minus, MoveKind::R3,       MoveKind::V1Plus,  MoveKind::V1Minus,  MoveKind::V2Plus,
    MoveKind::V2Minus, MoveKind::V3,       MoveKind::M,       MoveKind::F1,       MoveKind::T1Plus,
    MoveKind::T1Minus, MoveKind::T2,       MoveKind::T3,      MoveKind::T4};

inline std::string_view move_name(MoveKind k) {
  static constexpr std::array<std::string_view, 19> names = {"r1a+", "r1a-", "r1b+", "r1b-", "r2+", "r2-", "r3",
                                                             "v1+",  "v1-",  "v2+",  "v2-",  "v3",  "m",   "f1",
                                                             "t1+",  "t1-",  "t2",   "t3",   "t4"};
  return names[static_cast<std::size_t>(k)];
}

inline std::optional<MoveKind> parse_move_name(std::string_view s) {
  for (auto k : kAllMoveKinds)
    if (move_name(k) == s) return k;
  return std::nullopt;
}

enum class MoveCategory { Insertion, Removal, Slide };

inline MoveCategory category(MoveKind k) {
  switch (k) {
    case MoveKind::R1aPlus:
    case MoveKind::R1bPlus:
    case MoveKind::R2Plus:
    case MoveKind::V1Plus:
    case MoveKind::V2Plus:
    case MoveKind::T1Plus:
      return MoveCategory::Insertion;
    case MoveKind::R1aMinus:
    case MoveKind::R1bMinus:
    case MoveKind::R2Minus:
    case MoveKind::V1Minus:
    case MoveKind::V2Minus:
    case MoveKind::T1Minus:
      return MoveCategory::Removal;
    default:
      return MoveCategory::Slide;
  }
}

/// Moves that create or move wens; only meaningful in the extended theory.
inline bool involves_wens(MoveKind k) {
  return k == MoveKind::T1Plus || k == MoveKind::T1Minus || k == MoveKind::T2 || k == MoveKind::T3 || k == MoveKind::T4;
}

/// One local rewrite: occurrences of `lhs` are replaced by `rhs`. Both
/// tangles carry the same boundary labels and directions.
struct MoveRule {
  MoveKind kind;
  std::string variant;
  Tangle lhs, rhs;

  int writhe_delta() const { return writhe(rhs.diagram) - writhe(lhs.diagram); }
  int virtual_delta() const {
    return static_cast<int>(rhs.diagram.virtual_crossings.size()) - static_cast<int>(lhs.diagram.virtual_crossings.size());
  }
  bool is_insertion() const { return lhs.diagram.vertex_count() == 0; }
};

class MoveTable {
 public:
  MoveTable() = default;
  explicit MoveTable(std::vector<MoveRule> rules) : rules_(std::move(rules)) {}

  static const MoveTable& standard() {
    static const MoveTable t = build_standard();
    return t;
  }

  const std::vector<MoveRule>& rules() const { return rules_; }
  std::vector<MoveRule>& rules() { return rules_; }

  std::vector<std::size_t> rules_of(MoveKind k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (rules_[i].kind == k) out.push_back(i);
    return out;
  }

 private:
  static MoveTable build_standard() {
    std::vector<MoveRule> r;
    auto both = [&](MoveKind k, const std::string& name, const Word& l, const Word& rr, int n) {
      r.push_back({k, name, braid_tangle(l, n), braid_tangle(rr, n)});
      r.push_back({k, name + " (reverse)", braid_tangle(rr, n), braid_tangle(l, n)});
    };
    // `plus` may be omitted for forms that are only ever removed
    auto insert = [&](std::optional<MoveKind> plus, MoveKind minus, const std::string& name, const Tangle& bare,
                      const Tangle& t) {
      if (plus) r.push_back({*plus, name, bare, t});
      r.push_back({minus, name, t, bare});
    };
    const Tangle strand = braid_tangle({}, 1);
    const Tangle strands2 = braid_tangle({}, 2);

    insert(MoveKind::R1aPlus, MoveKind::R1aMinus, "positive kink, over first", strand, kink_tangle(Sign::Positive, KinkForm::OverFirst));
    insert(std::nullopt, MoveKind::R1aMinus, "positive kink, under first", strand, kink_tangle(Sign::Positive, KinkForm::UnderFirst));
    insert(MoveKind::R1bPlus, MoveKind::R1bMinus, "negative kink, over first", strand, kink_tangle(Sign::Negative, KinkForm::OverFirst));
    insert(std::nullopt, MoveKind::R1bMinus, "negative kink, under first", strand, kink_tangle(Sign::Negative, KinkForm::UnderFirst));

    insert(MoveKind::R2Plus, MoveKind::R2Minus, "left strand over", strands2, braid_tangle({pos_x(0), neg_x(0)}, 2));
    insert(std::nullopt, MoveKind::R2Minus, "right strand over", strands2, braid_tangle({neg_x(0), pos_x(0)}, 2));

    both(MoveKind::R3, "positive", {pos_x(0), pos_x(1), pos_x(0)}, {pos_x(1), pos_x(0), pos_x(1)}, 3);
    both(MoveKind::R3, "negative", {neg_x(0), neg_x(1), neg_x(0)}, {neg_x(1), neg_x(0), neg_x(1)}, 3);
    both(MoveKind::R3, "mixed", {pos_x(0), pos_x(1), neg_x(0)}, {neg_x(1), pos_x(0), pos_x(1)}, 3);
    both(MoveKind::R3, "mixed mirror", {neg_x(0), pos_x(1), pos_x(0)}, {pos_x(1), pos_x(0), neg_x(1)}, 3);

    insert(MoveKind::V1Plus, MoveKind::V1Minus, "virtual kink", strand, virtual_kink_tangle());
    insert(MoveKind::V2Plus, MoveKind::V2Minus, "virtual pair", strands2, braid_tangle({virt(0), virt(0)}, 2));
    both(MoveKind::V3, "virtual triangle", {virt(0), virt(1), virt(0)}, {virt(1), virt(0), virt(1)}, 3);

    both(MoveKind::M, "positive", {virt(0), virt(1), pos_x(0)}, {pos_x(1), virt(0), virt(1)}, 3);
    both(MoveKind::M, "negative", {virt(0), virt(1), neg_x(0)}, {neg_x(1), virt(0), virt(1)}, 3);
    both(MoveKind::M, "positive mirror", {virt(1), virt(0), pos_x(1)}, {pos_x(0), virt(1), virt(0)}, 3);
    both(MoveKind::M, "negative mirror", {virt(1), virt(0), neg_x(1)}, {neg_x(0), virt(1), virt(0)}, 3);

    // the strand that crosses both others stays on top
    both(MoveKind::F1, "negative", {virt(0), neg_x(1), neg_x(0)}, {neg_x(1), neg_x(0), virt(1)}, 3);
    both(MoveKind::F1, "positive", {virt(1), pos_x(0), pos_x(1)}, {pos_x(0), pos_x(1), virt(0)}, 3);

    insert(MoveKind::T1Plus, MoveKind::T1Minus, "wen pair", strand, braid_tangle({wen(0), wen(0)}, 1));
    both(MoveKind::T2, "left", {wen(0), virt(0)}, {virt(0), wen(1)}, 2);
    both(MoveKind::T2, "right", {wen(1), virt(0)}, {virt(0), wen(0)}, 2);
    both(MoveKind::T3, "positive", {wen(0), wen(1), pos_x(0)}, {pos_x(0), wen(0), wen(1)}, 2);
    both(MoveKind::T3, "negative", {wen(0), wen(1), neg_x(0)}, {neg_x(0), wen(0), wen(1)}, 2);

    // a wen passing through a crossing swaps over and under and flips the sign
    both(MoveKind::T4, "under strand, positive", {wen(1), pos_x(0)}, {neg_x(0), wen(0)}, 2);
    both(MoveKind::T4, "under strand, negative", {wen(0), neg_x(0)}, {pos_x(0), wen(1)}, 2);
    both(MoveKind::T4, "over strand, positive", {wen(0), pos_x(0)}, {neg_x(0), wen(1)}, 2);
    both(MoveKind::T4, "over strand, negative", {wen(1), neg_x(0)}, {pos_x(0), wen(0)}, 2);
    return MoveTable(std::move(r));
  }

  std::vector<MoveRule> rules_;
};

/// Where a rule applies. Insertion rules are anchored on edges (nullopt
/// stands for a free loop); all other rules on matched vertices.
struct MoveSite {
  MoveKind kind;
  std::size_t rule = 0;
  std::vector<VertexRef> images;  // pattern vertex i -> diagram vertex
  std::vector<bool> swapped;      // virtual crossings matched with strands a/b exchanged
  std::vector<std::optional<EdgeId>> anchors;

  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

struct StaleSite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct PatternEnd {
  bool boundary = true;
  std::size_t vertex = 0;  // index into the pattern's vertex list
  int slot = 0;
};

struct Pattern {
  std::vector<VertexRef> vertices;
  std::map<EdgeId, PatternEnd> head, tail;  // per pattern edge

  explicit Pattern(const Tangle& t) {
    for_each_vertex(t.diagram, [&](VertexRef v) { vertices.push_back(v); });
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (int s = 0; s < slot_count(vertices[i].kind); ++s)
        (is_in_slot(s) ? head : tail)[slot(t.diagram, vertices[i], s)] = {false, i, s};
  }

  // the end of edge e opposite a vertex slot; boundary when the edge leaves the tangle
  PatternEnd head_of(const EdgeId& e) const { return find(head, e); }
  PatternEnd tail_of(const EdgeId& e) const { return find(tail, e); }

 private:
  static PatternEnd find(const std::map<EdgeId, PatternEnd>& m, const EdgeId& e) {
    auto it = m.find(e);
    return it == m.end() ? PatternEnd{} : it->second;
  }
};

inline int map_slot(int s, bool swapped) { return swapped ? (s ^ 2) : s; }

inline bool compatible(const Diagram& p, VertexRef pv, const Diagram& d, VertexRef dv) {
  if (pv.kind != dv.kind) return false;
  if (pv.kind == VertexKind::Classical) return p.classical[pv.index].sign == d.classical[dv.index].sign;
  return true;
}

/// Grows a match from pattern vertex 0 -> (start, swap0). Returns images and
/// swap flags when the whole pattern embeds.
inline std::optional<std::pair<std::vector<VertexRef>, std::vector<bool>>> grow_match(const Tangle& lhs, const Pattern& pat,
                                                                                    const Diagram& d, const EdgeIndex& idx,
                                                                                    VertexRef start, bool swap0) {
  const std::size_t n = pat.vertices.size();
  std::vector<std::optional<VertexRef>> img(n);
  std::vector<bool> sw(n, false);
  std::set<VertexRef> used;
  if (!compatible(lhs.diagram, pat.vertices[0], d, start)) return std::nullopt;
  if (swap0 && start.kind != VertexKind::Virtual) return std::nullopt;
  img[0] = start;
  sw[0] = swap0;
  used.insert(start);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    const VertexRef pv = pat.vertices[p];
    for (int s = 0; s < slot_count(pv.kind); ++s) {
      const EdgeId& pe = slot(lhs.diagram, pv, s);
      const PatternEnd other = is_in_slot(s) ? pat.tail_of(pe) : pat.head_of(pe);
      if (other.boundary) continue;
      const EdgeId& de = slot(d, *img[p], map_slot(s, sw[p]));
      const EdgeEnds* ends = idx.find(de);
      if (!ends) return std::nullopt;
      const auto& dother = is_in_slot(s) ? ends->tail : ends->head;
      if (!dother) return std::nullopt;
      const VertexRef qv = pat.vertices[other.vertex];
      if (img[other.vertex]) {
        if (!(dother->vertex == *img[other.vertex]) || dother->slot != map_slot(other.slot, sw[other.vertex]))
          return std::nullopt;
        continue;
      }
      if (used.count(dother->vertex) || !compatible(lhs.diagram, qv, d, dother->vertex)) return std::nullopt;
      bool swap = false;
      if (qv.kind == VertexKind::Virtual)
        swap = (other.slot ^ dother->slot) == 2;
      else if (other.slot != dother->slot)
        return std::nullopt;
      if (!swap && other.slot != dother->slot) return std::nullopt;
      img[other.vertex] = dother->vertex;
      sw[other.vertex] = swap;
      used.insert(dother->vertex);
      queue.push_back(other.vertex);
    }
  }
  std::vector<VertexRef> out;
  for (const auto& v : img) {
    if (!v) return std::nullopt;  // pattern not connected
    out.push_back(*v);
  }
  return std::make_pair(out, sw);
}

inline std::string fresh_edge(std::unordered_set<EdgeId>& taken, std::size_t& counter) {
  for (;;) {
    std::string e = "n" + std::to_string(++counter);
    if (taken.insert(e).second) return e;
  }
}

inline std::unordered_set<EdgeId> edge_names(const Diagram& d) {
  std::unordered_set<EdgeId> out;
  for_each_vertex(d, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) out.insert(slot(d, v, s));
  });
  return out;
}

/// Strands of a vertex-free tangle: (inbound label, outbound label), in
/// boundary order of the inbound ends.
inline std::vector<std::pair<std::string, std::string>> bare_strands(const Tangle& t) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& in : t.boundary) {
    if (in.direction != EndDirection::In) continue;
    for (const auto& o : t.boundary)
      if (o.direction == EndDirection::Out && o.edge == in.edge) out.emplace_back(in.label, o.label);
  }
  return out;
}

}  // namespace detail

/// Every site of `kind` on d.
inline std::vector<MoveSite> enumerate_sites(const Diagram& d, MoveKind kind, const MoveTable& table = MoveTable::standard()) {
  std::vector<MoveSite> out;
  EdgeIndex idx(d);
  std::vector<std::optional<EdgeId>> anchors;
  {
    std::vector<EdgeId> names;
    for (const auto& [e, ends] : idx.all()) names.push_back(e);
    std::sort(names.begin(), names.end());
    for (auto& e : names) anchors.emplace_back(std::move(e));
  }
  for (std::size_t ri : table.rules_of(kind)) {
    const MoveRule& rule = table.rules()[ri];
    if (rule.is_insertion()) {
      const std::size_t k = detail::bare_strands(rule.lhs).size();
      auto loop_ok = [&](std::size_t needed) { return needed <= d.free_loops; };
      std::vector<std::optional<EdgeId>> pool = anchors;
      if (d.free_loops > 0) pool.emplace_back(std::nullopt);
      if (k == 1) {
        for (const auto& a : pool) out.push_back({kind, ri, {}, {}, {a}});
      } else if (k == 2) {
        for (const auto& a1 : pool)
          for (const auto& a2 : pool) {
            if (a1 && a2 && *a1 == *a2) continue;
            if (!a1 && !a2 && !loop_ok(2)) continue;
            out.push_back({kind, ri, {}, {}, {a1, a2}});
          }
      } else {
        throw std::logic_error("insertions on more than two strands are not supported");
      }
      continue;
    }
    detail::Pattern pat(rule.lhs);
    const VertexRef first = pat.vertices.at(0);
    std::set<std::vector<VertexRef>> seen;
    for_each_vertex(d, [&](VertexRef v) {
      if (v.kind != first.kind) return;
      for (bool swap : {false, true}) {
        if (swap && v.kind != VertexKind::Virtual) continue;
        auto m = detail::grow_match(rule.lhs, pat, d, idx, v, swap);
        if (!m) continue;
        // automorphisms of the pattern give the same vertex set; keep one
        std::vector<VertexRef> key = m->first;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;
        out.push_back({kind, ri, m->first, m->second, {}});
      }
    });
  }
  return out;
}

/// Rewrites d at `site`. Throws StaleSite if the site no longer matches.
inline Diagram apply_move(const Diagram& d, const MoveSite& site, const MoveTable& table = MoveTable::standard()) {
  if (site.rule >= table.rules().size() || table.rules()[site.rule].kind != site.kind) throw StaleSite("unknown rule");
  const MoveRule& rule = table.rules()[site.rule];
  Diagram out = d;
  std::unordered_set<EdgeId> taken = detail::edge_names(d);
  std::size_t counter = 0;
  std::map<std::string, EdgeId> boundary;  // LHS endpoint label -> diagram edge

  if (rule.is_insertion()) {
    auto strands = detail::bare_strands(rule.lhs);
    if (site.anchors.size() != strands.size()) throw StaleSite("anchor count mismatch");
    std::size_t loops_needed = 0;
    for (const auto& a : site.anchors) loops_needed += a ? 0 : 1;
    if (loops_needed > out.free_loops) throw StaleSite("not enough free loops");
    EdgeIndex idx(d);
    std::set<EdgeId> distinct;
    for (std::size_t j = 0; j < strands.size(); ++j) {
      const auto& a = site.anchors[j];
      if (!a) {
        EdgeId f = detail::fresh_edge(taken, counter);
        boundary[strands[j].first] = f;
        boundary[strands[j].second] = f;
        --out.free_loops;
        continue;
      }
      const EdgeEnds* ends = idx.find(*a);
      if (!ends || !ends->head || !distinct.insert(*a).second) throw StaleSite("anchor edge not present");
      // e keeps its tail and feeds the inbound end; a new edge takes over its head
      EdgeId e2 = detail::fresh_edge(taken, counter);
      slot(out, ends->head->vertex, ends->head->slot) = e2;
      boundary[strands[j].first] = *a;
      boundary[strands[j].second] = e2;
    }
  } else {
    detail::Pattern pat(rule.lhs);
    if (site.images.size() != pat.vertices.size() || site.swapped.size() != pat.vertices.size())
      throw StaleSite("site does not fit the rule");
    for (const auto& v : site.images) {
      const std::size_t count = v.kind == VertexKind::Classical ? d.classical.size()
                                : v.kind == VertexKind::Virtual ? d.virtual_crossings.size()
                                                                : d.wens.size();
      if (v.index >= count) throw StaleSite("site refers to a missing vertex");
    }
    EdgeIndex idx(d);
    auto m = detail::grow_match(rule.lhs, pat, d, idx, site.images[0], site.swapped[0]);
    if (!m || m->first != site.images || m->second != site.swapped) throw StaleSite("pattern no longer present");
    for (const auto& ep : rule.lhs.boundary) {
      // locate the pattern slot holding the boundary edge
      const auto& end = ep.direction == EndDirection::In ? pat.head.at(ep.edge) : pat.tail.at(ep.edge);
      boundary[ep.label] = slot(d, site.images[end.vertex], detail::map_slot(end.slot, site.swapped[end.vertex]));
    }
    // drop matched vertices, highest index first per kind
    std::vector<VertexRef> doomed = site.images;
    std::sort(doomed.begin(), doomed.end(), [](VertexRef x, VertexRef y) { return y < x; });
    for (const auto& v : doomed) {
      if (v.kind == VertexKind::Classical) out.classical.erase(out.classical.begin() + static_cast<std::ptrdiff_t>(v.index));
      if (v.kind == VertexKind::Virtual)
        out.virtual_crossings.erase(out.virtual_crossings.begin() + static_cast<std::ptrdiff_t>(v.index));
      if (v.kind == VertexKind::Wen) out.wens.erase(out.wens.begin() + static_cast<std::ptrdiff_t>(v.index));
    }
  }

  // instantiate the right-hand side
  std::map<EdgeId, EdgeId> rhs_name;  // RHS edge -> diagram edge
  std::map<EdgeId, std::vector<const Endpoint*>> rhs_ends;
  for (const auto& ep : rule.rhs.boundary) rhs_ends[ep.edge].push_back(&ep);
  std::vector<std::pair<EdgeId, EdgeId>> merges;  // (inbound edge, outbound edge) joined by a bare strand
  for (const auto& [e, eps] : rhs_ends) {
    if (eps.size() == 2) {
      const Endpoint* in = eps[0]->direction == EndDirection::In ? eps[0] : eps[1];
      const Endpoint* o = eps[0]->direction == EndDirection::In ? eps[1] : eps[0];
      merges.emplace_back(boundary.at(in->label), boundary.at(o->label));
    } else {
      rhs_name[e] = boundary.at(eps[0]->label);
    }
  }
  Diagram add = rule.rhs.diagram;
  for_each_vertex(add, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) {
      EdgeId& e = slot(add, v, s);
      auto it = rhs_name.find(e);
      if (it == rhs_name.end()) it = rhs_name.emplace(e, detail::fresh_edge(taken, counter)).first;
      e = it->second;
    }
  });
  out.classical.insert(out.classical.end(), add.classical.begin(), add.classical.end());
  out.virtual_crossings.insert(out.virtual_crossings.end(), add.virtual_crossings.begin(), add.virtual_crossings.end());
  out.wens.insert(out.wens.end(), add.wens.begin(), add.wens.end());

  if (!merges.empty()) {
    // union-find over names; the inbound edge's name survives
    std::map<EdgeId, EdgeId> parent;
    std::function<EdgeId(const EdgeId&)> find = [&](const EdgeId& e) -> EdgeId {
      auto it = parent.find(e);
      if (it == parent.end() || it->second == e) return e;
      return it->second = find(it->second);
    };
    for (const auto& [in, o] : merges) {
      EdgeId ri = find(in), ro = find(o);
      if (ri != ro) parent[ro] = ri;
    }
    std::map<EdgeId, EdgeId> rename;
    std::set<EdgeId> classes;
    for (const auto& [in, o] : merges) {
      for (const EdgeId& e : {in, o}) {
        rename[e] = find(e);
        classes.insert(find(e));
      }
    }
    out = relabel(out, rename);
    auto names = detail::edge_names(out);
    for (const auto& c : classes)
      if (!names.count(c)) ++out.free_loops;
  }

  // a lone wen closing on itself becomes three wens (T1-equivalent)
  for (std::size_t i = 0; i < out.wens.size(); ++i) {
    if (out.wens[i].in != out.wens[i].out) continue;
    EdgeId x = out.wens[i].in;
    EdgeId n1 = detail::fresh_edge(taken, counter), n2 = detail::fresh_edge(taken, counter);
    out.wens[i] = {x, n1};
    out.wens.push_back({n1, n2});
    out.wens.push_back({n2, x});
  }
  return out;
}

struct ScrambleOptions {
  std::size_t moves = 20;
  std::size_t size_cap = 12;
  std::vector<MoveKind> kinds{kAllMoveKinds.begin(), kAllMoveKinds.end()};
};

struct ScrambleResult {
  Diagram diagram;
  std::vector<std::string> log;  // applied rules, in order
};

/// Applies `moves` random applicable moves. Below the size cap 60% of steps
/// try an insertion, above it 80% try a removal.
inline ScrambleResult scramble(const Diagram& d, std::mt19937_64& rng, const ScrambleOptions& opt,
                               const MoveTable& table = MoveTable::standard()) {
  ScrambleResult res{d, {}};
  std::array<std::vector<MoveKind>, 3> by_cat;
  for (auto k : opt.kinds) by_cat[static_cast<int>(category(k))].push_back(k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t step = 0; step < opt.moves; ++step) {
    const bool big = res.diagram.vertex_count() > opt.size_cap;
    const double x = unit(rng);
    MoveCategory first;
    if (big)
      first = x < 0.8 ? MoveCategory::Removal : x < 0.9 ? MoveCategory::Slide : MoveCategory::Insertion;
    else
      first = x < 0.6 ? MoveCategory::Insertion : x < 0.8 ? MoveCategory::Slide : MoveCategory::Removal;
    std::vector<MoveCategory> order = {first};
    for (auto c : {MoveCategory::Slide, MoveCategory::Removal, MoveCategory::Insertion})
      if (c != first) order.push_back(c);
    bool applied = false;
    for (auto cat : order) {
      auto kinds = by_cat[static_cast<int>(cat)];
      std::shuffle(kinds.begin(), kinds.end(), rng);
      for (auto k : kinds) {
        auto sites = enumerate_sites(res.diagram, k, table);
        if (sites.empty()) continue;
        const auto& site = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
        res.diagram = apply_move(res.diagram, site, table);
        res.log.push_back(std::string(move_name(k)) + " [" + table.rules()[site.rule].variant + "]");
        applied = true;
        break;
      }
      if (applied) break;
    }
    if (!applied) break;  // nothing applies anywhere (e.g. the empty diagram)
  }
  return res;
}

inline ScrambleResult scramble(const Diagram& d, std::uint64_t seed, const ScrambleOptions& opt,
                               const MoveTable& table = MoveTable::standard()) {
  std::mt19937_64 rng(seed);
  return scramble(d, rng, opt, table);
}

struct InvarianceReport {
  bool ok = true;
  std::size_t trials_run = 0;
  Fraction expected;
  std::optional<std::size_t> failed_trial;
  std::optional<Fraction> got;
  std::vector<std::string> moves;  // sequence that broke invariance
  Diagram failing;
};

struct InvarianceOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  ScrambleOptions scramble;
  BracketOptions bracket;
};

/// Scrambles d `trials` times (trial i seeded from (seed, i)) and compares Y.
/// Wen moves are skipped for families that cannot evaluate wens.
inline InvarianceReport check_invariance(const Diagram& d, const CoefficientSystem& cs, const InvarianceOptions& opt,
                                         const MoveTable& table = MoveTable::standard()) {
  InvarianceReport rep;
  rep.expected = y_invariant(d, cs, opt.bracket);
  ScrambleOptions sopt = opt.scramble;
  if (!cs.supports_wens()) std::erase_if(sopt.kinds, involves_wens);
  for (std::size_t i = 0; i < opt.trials; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    auto s = scramble(d, rng, sopt, table);
    ++rep.trials_run;
    Fraction y = y_invariant(s.diagram, cs, opt.bracket);
    if (!(y == rep.expected)) {
      rep.ok = false;
      rep.failed_trial = i;
      rep.got = y;
      rep.moves = s.log;
      rep.failing = s.diagram;
      break;
    }
  }
  return rep;
}

}  // namespace wskein
