#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wskein/union_find.hpp"

namespace wskein {

enum class Sign : std::int8_t { Negative = -1, Positive = 1 };

inline Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

/// Edge identifiers are opaque; only equality matters.
using EdgeId = std::string;

struct ClassicalCrossing {
  Sign sign = Sign::Positive;
  EdgeId over_in, over_out, under_in, under_out;
  friend bool operator==(const ClassicalCrossing&, const ClassicalCrossing&) = default;
};

/// Strand A runs a_in -> a_out, strand B runs b_in -> b_out.
struct VirtualCrossing {
  EdgeId a_in, a_out, b_in, b_out;
  friend bool operator==(const VirtualCrossing&, const VirtualCrossing&) = default;
};

struct Wen {
  EdgeId in, out;
  friend bool operator==(const Wen&, const Wen&) = default;
};

/// Abstract extended welded link diagram: a 4-valent (crossings) and
/// 2-valent (wens) directed graph plus crossing-free circles. Every edge is
/// the outgoing slot of exactly one vertex and the incoming slot of exactly
/// one vertex. No planar embedding is stored.
struct Diagram {
  std::vector<ClassicalCrossing> classical;
  std::vector<VirtualCrossing> virtual_crossings;
  std::vector<Wen> wens;
  std::size_t free_loops = 0;

  std::size_t vertex_count() const { return classical.size() + virtual_crossings.size() + wens.size(); }
  friend bool operator==(const Diagram&, const Diagram&) = default;
};

enum class VertexKind : std::uint8_t { Classical, Virtual, Wen };

struct VertexRef {
  VertexKind kind;
  std::size_t index;
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Slots: classical {over_in, over_out, under_in, under_out}, virtual
/// {a_in, a_out, b_in, b_out}, wen {in, out}. Even slots are incoming.
constexpr int slot_count(VertexKind k) { return k == VertexKind::Wen ? 2 : 4; }
constexpr bool is_in_slot(int s) { return s % 2 == 0; }

inline const EdgeId& slot(const Diagram& d, VertexRef v, int s) {
  switch (v.kind) {
    case VertexKind::Classical: {
      const auto& c = d.classical[v.index];
      return s == 0 ? c.over_in : s == 1 ? c.over_out : s == 2 ? c.under_in : c.under_out;
    }
    case VertexKind::Virtual: {
      const auto& c = d.virtual_crossings[v.index];
      return s == 0 ? c.a_in : s == 1 ? c.a_out : s == 2 ? c.b_in : c.b_out;
    }
    case VertexKind::Wen:
    default: {
      const auto& w = d.wens[v.index];
      return s == 0 ? w.in : w.out;
    }
  }
}

inline EdgeId& slot(Diagram& d, VertexRef v, int s) {
  return const_cast<EdgeId&>(slot(static_cast<const Diagram&>(d), v, s));
}

template <class F>
void for_each_vertex(const Diagram& d, F&& f) {
  for (std::size_t i = 0; i < d.classical.size(); ++i) f(VertexRef{VertexKind::Classical, i});
  for (std::size_t i = 0; i < d.virtual_crossings.size(); ++i) f(VertexRef{VertexKind::Virtual, i});
  for (std::size_t i = 0; i < d.wens.size(); ++i) f(VertexRef{VertexKind::Wen, i});
}

struct SlotRef {
  VertexRef vertex;
  int slot;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// Where each edge ends: `head` is the incoming slot it feeds, `tail` the
/// outgoing slot it leaves.
struct EdgeEnds {
  std::optional<SlotRef> head;
  std::optional<SlotRef> tail;
};

class EdgeIndex {
 public:
  explicit EdgeIndex(const Diagram& d) {
    for_each_vertex(d, [&](VertexRef v) {
      for (int s = 0; s < slot_count(v.kind); ++s) {
        auto& ends = ends_[slot(d, v, s)];
        auto& target = is_in_slot(s) ? ends.head : ends.tail;
        if (!target) target = SlotRef{v, s};
      }
    });
  }

  const EdgeEnds* find(const EdgeId& e) const {
    auto it = ends_.find(e);
    return it == ends_.end() ? nullptr : &it->second;
  }
  const std::unordered_map<EdgeId, EdgeEnds>& all() const { return ends_; }

 private:
  std::unordered_map<EdgeId, EdgeEnds> ends_;
};

/// Every violation of the edge rules, in a stable order. Empty means valid.
inline std::vector<std::string> validate(const Diagram& d) {
  std::vector<std::string> out;
  std::map<EdgeId, std::pair<int, int>> uses;  // (as in-slot, as out-slot)
  for_each_vertex(d, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) {
      auto& u = uses[slot(d, v, s)];
      (is_in_slot(s) ? u.first : u.second)++;
    }
  });
  for (std::size_t i = 0; i < d.wens.size(); ++i)
    if (d.wens[i].in == d.wens[i].out) out.push_back("wen " + std::to_string(i) + " uses edge '" + d.wens[i].in + "' for both slots");
  for (const auto& [e, u] : uses) {
    if (u.first > 1) out.push_back("edge '" + e + "' used " + std::to_string(u.first) + " times as an incoming slot");
    if (u.second > 1) out.push_back("edge '" + e + "' used " + std::to_string(u.second) + " times as an outgoing slot");
    if (u.first == 0) out.push_back("edge '" + e + "' has no incoming slot");
    if (u.second == 0) out.push_back("edge '" + e + "' has no outgoing slot");
  }
  return out;
}

/// Positive minus negative classical crossings.
inline int writhe(const Diagram& d) {
  int w = 0;
  for (const auto& c : d.classical) w += static_cast<int>(c.sign);
  return w;
}

struct VirtualWrithe {
  std::size_t count;
  int parity;
};

inline VirtualWrithe virtual_writhe(const Diagram& d) {
  return {d.virtual_crossings.size(), static_cast<int>(d.virtual_crossings.size() % 2)};
}

inline std::size_t wen_count(const Diagram& d) { return d.wens.size(); }

/// Link components: strands run straight through every vertex.
inline std::size_t components(const Diagram& d) {
  std::unordered_map<EdgeId, std::size_t> id;
  auto index = [&](const EdgeId& e) {
    auto [it, inserted] = id.try_emplace(e, id.size());
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for_each_vertex(d, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); s += 2) links.emplace_back(index(slot(d, v, s)), index(slot(d, v, s + 1)));
  });
  UnionFind uf(id.size());
  for (auto [i, j] : links) uf.unite(i, j);
  return uf.sets() + d.free_loops;
}

/// Copy with every edge renamed through `rename` (unlisted edges keep their name).
inline Diagram relabel(const Diagram& d, const std::map<EdgeId, EdgeId>& rename) {
  Diagram out = d;
  for_each_vertex(out, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) {
      auto& e = slot(out, v, s);
      if (auto it = rename.find(e); it != rename.end()) e = it->second;
    }
  });
  return out;
}

/// Renames edges to "1", "2", ... in order of first appearance.
inline Diagram canonical_labels(const Diagram& d) {
  std::map<EdgeId, EdgeId> rename;
  for_each_vertex(d, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) rename.try_emplace(slot(d, v, s), std::to_string(rename.size() + 1));
  });
  return relabel(d, rename);
}

/// Side-by-side union; edges of the two inputs are prefixed to keep them apart.
inline Diagram disjoint_union(const Diagram& d1, const Diagram& d2) {
  auto prefixed = [](const Diagram& d, const std::string& p) {
    std::map<EdgeId, EdgeId> rename;
    for_each_vertex(d, [&](VertexRef v) {
      for (int s = 0; s < slot_count(v.kind); ++s) rename.try_emplace(slot(d, v, s), p + slot(d, v, s));
    });
    return relabel(d, rename);
  };
  Diagram a = prefixed(d1, "L"), b = prefixed(d2, "R");
  a.classical.insert(a.classical.end(), b.classical.begin(), b.classical.end());
  a.virtual_crossings.insert(a.virtual_crossings.end(), b.virtual_crossings.begin(), b.virtual_crossings.end());
  a.wens.insert(a.wens.end(), b.wens.begin(), b.wens.end());
  a.free_loops += b.free_loops;
  return a;
}

enum class EndDirection : std::uint8_t { In, Out };

/// A boundary point of a tangle. An `In` endpoint is the tail of its edge
/// (the strand enters the tangle there); an `Out` endpoint is the head.
struct Endpoint {
  std::string label;
  EndDirection direction;
  EdgeId edge;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// A diagram with open ends. `boundary` lists the endpoints in cyclic order
/// around the tangle's disk.
struct Tangle {
  Diagram diagram;
  std::vector<Endpoint> boundary;
  friend bool operator==(const Tangle&, const Tangle&) = default;
};

inline std::vector<std::string> validate(const Tangle& t) {
  std::vector<std::string> out;
  std::map<EdgeId, std::pair<int, int>> uses;  // (heads, tails)
  const Diagram& d = t.diagram;
  for_each_vertex(d, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) {
      auto& u = uses[slot(d, v, s)];
      (is_in_slot(s) ? u.first : u.second)++;
    }
  });
  std::map<std::string, int> labels;
  for (const auto& ep : t.boundary) {
    if (labels[ep.label]++) out.push_back("duplicate endpoint label '" + ep.label + "'");
    auto& u = uses[ep.edge];
    (ep.direction == EndDirection::Out ? u.first : u.second)++;
  }
  for (std::size_t i = 0; i < d.wens.size(); ++i)
    if (d.wens[i].in == d.wens[i].out) out.push_back("wen " + std::to_string(i) + " uses edge '" + d.wens[i].in + "' for both slots");
  for (const auto& [e, u] : uses) {
    if (u.first != 1) out.push_back("edge '" + e + "' has " + std::to_string(u.first) + " heads");
    if (u.second != 1) out.push_back("edge '" + e + "' has " + std::to_string(u.second) + " tails");
  }
  return out;
}

}  // namespace wskein
