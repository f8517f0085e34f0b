#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wskein/diagram.hpp"

namespace wskein {

// Braid words with upward strands. A crossing letter acts on positions
// pos, pos+1; the strand entering at pos leaves at pos+1 and vice versa.
// `over` says which incoming strand passes over. With upward strands the
// geometric sign is + for a left-over crossing and - for a right-over one.

enum class LetterKind { Classical, Virtual, Wen };
enum class OverSide { Left, Right };

struct Letter {
  LetterKind kind;
  int pos;
  Sign sign = Sign::Positive;
  OverSide over = OverSide::Left;
};

inline Letter pos_x(int p) { return {LetterKind::Classical, p, Sign::Positive, OverSide::Left}; }
inline Letter neg_x(int p) { return {LetterKind::Classical, p, Sign::Negative, OverSide::Right}; }
inline Letter cross(int p, Sign s, OverSide o) { return {LetterKind::Classical, p, s, o}; }
inline Letter virt(int p) { return {LetterKind::Virtual, p}; }
inline Letter wen(int p) { return {LetterKind::Wen, p}; }

using Word = std::vector<Letter>;

namespace detail {

struct BraidBuild {
  Diagram diagram;
  std::vector<EdgeId> bottom, top;
};

inline BraidBuild build_braid(const Word& word, int strands) {
  BraidBuild b;
  for (int p = 0; p < strands; ++p) b.bottom.push_back("i" + std::to_string(p));
  std::vector<EdgeId> cur = b.bottom;
  int k = 0;
  for (const auto& l : word) {
    ++k;
    const int width = l.kind == LetterKind::Wen ? 1 : 2;
    if (l.pos < 0 || l.pos + width > strands) throw std::out_of_range("braid letter outside the strands");
    const auto i = static_cast<std::size_t>(l.pos);
    if (l.kind == LetterKind::Wen) {
      EdgeId next = "e" + std::to_string(k);
      b.diagram.wens.push_back({cur[i], next});
      cur[i] = next;
      continue;
    }
    const EdgeId left = cur[i], right = cur[i + 1];
    const EdgeId nl = "e" + std::to_string(k) + "L", nr = "e" + std::to_string(k) + "R";
    if (l.kind == LetterKind::Virtual) {
      b.diagram.virtual_crossings.push_back({left, nr, right, nl});
    } else if (l.over == OverSide::Left) {
      b.diagram.classical.push_back({l.sign, left, nr, right, nl});
    } else {
      b.diagram.classical.push_back({l.sign, right, nl, left, nr});
    }
    cur[i] = nl;
    cur[i + 1] = nr;
  }
  b.top = cur;
  return b;
}

}  // namespace detail

/// Boundary labels: "1".."k" along the bottom, left to right (inbound), then
/// "k+1".."2k" along the top, right to left (outbound). This is the cyclic
/// order around the disk.
inline Tangle braid_tangle(const Word& word, int strands) {
  auto b = detail::build_braid(word, strands);
  Tangle t{std::move(b.diagram), {}};
  for (int p = 0; p < strands; ++p) t.boundary.push_back({std::to_string(p + 1), EndDirection::In, b.bottom[p]});
  for (int p = strands - 1; p >= 0; --p)
    t.boundary.push_back({std::to_string(2 * strands - p), EndDirection::Out, b.top[p]});
  return t;
}

/// Closes each top position to the same bottom position.
inline Diagram braid_closure(const Word& word, int strands) {
  auto b = detail::build_braid(word, strands);
  std::map<EdgeId, EdgeId> rename;
  for (int p = 0; p < strands; ++p) {
    if (b.top[p] == b.bottom[p])
      ++b.diagram.free_loops;
    else
      rename[b.top[p]] = b.bottom[p];
  }
  return canonical_labels(relabel(b.diagram, rename));
}

enum class KinkForm {
  OverFirst,   // the strand passes the crossing on top, loops, returns underneath
  UnderFirst,  // underneath first, then on top
};

/// A classical kink on one strand: boundary "1" inbound, "2" outbound.
inline Tangle kink_tangle(Sign sign, KinkForm form) {
  Tangle t;
  if (form == KinkForm::OverFirst)
    t.diagram.classical.push_back({sign, "p", "k", "k", "q"});
  else
    t.diagram.classical.push_back({sign, "k", "q", "p", "k"});
  t.boundary = {{"1", EndDirection::In, "p"}, {"2", EndDirection::Out, "q"}};
  return t;
}

inline Tangle virtual_kink_tangle() {
  Tangle t;
  t.diagram.virtual_crossings.push_back({"p", "k", "k", "q"});
  t.boundary = {{"1", EndDirection::In, "p"}, {"2", EndDirection::Out, "q"}};
  return t;
}

}  // namespace wskein
