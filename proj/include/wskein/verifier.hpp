#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wskein/coefficients.hpp"
#include "wskein/moves.hpp"
#include "wskein/tangles.hpp"
#include "wskein/union_find.hpp"

namespace wskein {

// Tangle brackets and closures.
//
// A state of a tangle is a set of arcs (joining boundary endpoints) and
// loops, drawn with some number of virtual crossings. Up to virtual moves it
// equals r^{p - π(P)} t^{loops} times the standard drawing of its pairing P,
// where p is the crossing parity of the state and π(P) the number of
// interleaved chord pairs of P. Closing with pairing Q outside the disk then
// adds t per cycle of P ∪ Q and r^{π(P) + π(Q)}.

/// Endpoint pairs, each (lo, hi), sorted.
using Pairing = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline bool label_less(const std::string& x, const std::string& y) {
  return x.size() != y.size() ? x.size() < y.size() : x < y;
}

inline Pairing canonical_pairing(Pairing p) {
  for (auto& [x, y] : p)
    if (label_less(y, x)) std::swap(x, y);
  std::sort(p.begin(), p.end(), [](const auto& u, const auto& v) {
    return label_less(u.first, v.first) || (u.first == v.first && label_less(u.second, v.second));
  });
  return p;
}

inline void pairings_rec(std::vector<std::string>& rest, Pairing& cur, std::vector<Pairing>& out) {
  if (rest.empty()) {
    out.push_back(canonical_pairing(cur));
    return;
  }
  const std::string first = rest.front();
  for (std::size_t i = 1; i < rest.size(); ++i) {
    std::vector<std::string> next;
    for (std::size_t j = 1; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    cur.emplace_back(first, rest[i]);
    pairings_rec(next, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// "12:35:46" for single-character labels, "1-12:3-5" otherwise.
inline std::string pairing_key(const Pairing& p) {
  const bool short_labels =
      std::all_of(p.begin(), p.end(), [](const auto& e) { return e.first.size() == 1 && e.second.size() == 1; });
  std::string out;
  for (const auto& [x, y] : p) {
    if (!out.empty()) out += ':';
    out += x + (short_labels ? "" : "-") + y;
  }
  return out;
}

/// All perfect matchings of `labels`: (2k-1)!! of them.
inline std::vector<Pairing> enumerate_pairings(std::vector<std::string> labels) {
  if (labels.size() % 2) throw std::invalid_argument("odd number of endpoints");
  std::sort(labels.begin(), labels.end(), detail::label_less);
  std::vector<Pairing> out;
  Pairing cur;
  detail::pairings_rec(labels, cur, out);
  return out;
}

/// Number of interleaved chord pairs of p with endpoints in cyclic `order`.
inline int interleavings(const Pairing& p, const std::vector<std::string>& order) {
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < order.size(); ++i) at[order[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> chords;
  for (const auto& [x, y] : p) chords.emplace_back(std::minmax(at.at(x), at.at(y)));
  int n = 0;
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      auto [p1, p2] = chords[i];
      auto [q1, q2] = chords[j];
      if ((p1 < q1 && q1 < p2 && p2 < q2) || (q1 < p1 && p1 < q2 && q2 < p2)) ++n;
    }
  return n;
}

struct TangleBracket {
  std::vector<std::string> order;  // boundary labels in cyclic order
  std::map<std::string, std::pair<Pairing, Fraction>> terms;  // by pairing key; zero terms dropped
  Fraction t, r;

  Fraction coefficient(const std::string& key) const {
    auto it = terms.find(key);
    return it == terms.end() ? Fraction::integer(0) : it->second.second;
  }
};

inline TangleBracket tangle_bracket(const Tangle& tangle, const CoefficientSystem& cs) {
  if (auto errs = validate(tangle); !errs.empty()) throw std::invalid_argument("invalid tangle: " + errs.front());
  const Diagram& d = tangle.diagram;
  if (d.free_loops) throw std::invalid_argument("tangle brackets take no free loops");

  std::unordered_map<EdgeId, std::size_t> id;
  auto edge = [&](const EdgeId& e) { return id.try_emplace(e, id.size()).first->second; };
  for_each_vertex(d, [&](VertexRef v) {
    for (int s = 0; s < slot_count(v.kind); ++s) edge(slot(d, v, s));
  });
  for (const auto& ep : tangle.boundary) edge(ep.edge);
  // edge i runs from node 2i (its tail) to node 2i+1 (its head)
  auto node = [&](VertexRef v, int s) {
    const std::size_t e = id.at(slot(d, v, s));
    return is_in_slot(s) ? 2 * e + 1 : 2 * e;
  };
  UnionFind base(2 * id.size());
  for (std::size_t e = 0; e < id.size(); ++e) base.unite(2 * e, 2 * e + 1);
  for_each_vertex(d, [&](VertexRef v) {
    if (v.kind == VertexKind::Classical) return;
    for (int s = 0; s < slot_count(v.kind); s += 2) base.unite(node(v, s), node(v, s + 1));
  });
  std::vector<std::pair<std::string, std::size_t>> ends;
  TangleBracket tb;
  for (const auto& ep : tangle.boundary) {
    const std::size_t e = id.at(ep.edge);
    ends.emplace_back(ep.label, ep.direction == EndDirection::In ? 2 * e : 2 * e + 1);
    tb.order.push_back(ep.label);
  }
  tb.t = cs.t;
  tb.r = cs.r;
  const Fraction wen_factor = d.wens.size() % 2 ? cs.s : Fraction::integer(1);

  const std::size_t n = d.classical.size();
  std::vector<int> state(n, 0);
  std::vector<Fraction> t_pow{Fraction::integer(1)};
  for (;;) {
    UnionFind uf = base;
    Fraction value = wen_factor;
    int parity = static_cast<int>(d.virtual_crossings.size());
    for (std::size_t i = 0; i < n; ++i) {
      const VertexRef v{VertexKind::Classical, i};
      const auto sm = static_cast<Smoothing>(state[i]);
      value *= cs.coefficient(d.classical[i].sign == Sign::Positive, sm);
      switch (sm) {
        case Smoothing::V:
          ++parity;
          uf.unite(node(v, 0), node(v, 1));
          uf.unite(node(v, 2), node(v, 3));
          break;
        case Smoothing::I:
          uf.unite(node(v, 0), node(v, 3));
          uf.unite(node(v, 2), node(v, 1));
          break;
        case Smoothing::C:
          uf.unite(node(v, 0), node(v, 2));
          uf.unite(node(v, 1), node(v, 3));
          break;
      }
    }
    std::map<std::size_t, std::vector<std::string>> arcs;
    for (const auto& [label, nd] : ends) arcs[uf.find(nd)].push_back(label);
    Pairing p;
    for (const auto& [root, labels] : arcs) {
      if (labels.size() != 2) throw std::logic_error("state arc with " + std::to_string(labels.size()) + " endpoints");
      p.emplace_back(labels[0], labels[1]);
    }
    p = detail::canonical_pairing(std::move(p));
    const std::size_t loops = uf.sets() - arcs.size();
    while (t_pow.size() <= loops) t_pow.push_back(t_pow.back() * cs.t);
    value *= t_pow[loops];
    if ((parity + interleavings(p, tb.order)) % 2) value *= cs.r;
    auto [it, fresh] = tb.terms.try_emplace(pairing_key(p), p, value);
    if (!fresh) it->second.second += value;

    std::size_t i = 0;
    while (i < n && state[i] == 2) state[i++] = 0;
    if (i == n) break;
    ++state[i];
  }
  std::erase_if(tb.terms, [](const auto& kv) { return kv.second.second.is_zero(); });
  return tb;
}

/// Closure of tb by the outside pairing q.
inline Fraction close(const TangleBracket& tb, const Pairing& q) {
  std::map<std::string, std::size_t> at;
  for (const auto& l : tb.order) at.emplace(l, at.size());
  std::vector<int> hit(at.size(), 0);
  for (const auto& [x, y] : q) {
    auto ix = at.find(x), iy = at.find(y);
    if (ix == at.end() || iy == at.end()) throw std::invalid_argument("closure pairs an unknown endpoint");
    ++hit[ix->second];
    ++hit[iy->second];
  }
  if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; }))
    throw std::invalid_argument("closure is not a perfect pairing of the endpoints");
  const int pq = interleavings(q, tb.order);
  Fraction out = Fraction::integer(0);
  for (const auto& [key, term] : tb.terms) {
    const auto& [p, c] = term;
    UnionFind uf(at.size());
    for (const auto& [x, y] : p) uf.unite(at.at(x), at.at(y));
    for (const auto& [x, y] : q) uf.unite(at.at(x), at.at(y));
    Fraction v = c * pow(tb.t, static_cast<unsigned>(uf.sets()));
    if ((interleavings(p, tb.order) + pq) % 2) v *= tb.r;
    out += v;
  }
  return out;
}

// Constraint sets.

/// Divides out the integer content and the common monomial (involutive
/// symbols count as units) and fixes the sign of the leading term.
inline Polynomial normalize_equation(const Polynomial& p) {
  if (p.is_zero()) return p;
  const auto& vars = p.vars();
  Exponents lo = p.terms().begin()->first;
  BigInt g = 0;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) lo[i] = std::min(lo[i], e[i]);
    g = boost::multiprecision::gcd(g, BigInt(boost::multiprecision::abs(c)));
  }
  Polynomial out(vars);
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    // x^lo divides out; for r, ν, s multiplying by the symbol is the inverse
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = i < vars->ordinary_count() ? f[i] - lo[i] : f[i] ^ lo[i];
    out.add_term(std::move(f), c / g);
  }
  if (out.terms().begin()->second < 0) out = -out;
  return out;
}

struct Constraint {
  std::string source;   // closure or pairing key
  Polynomial raw;       // lhs - rhs, δ cleared
  Polynomial reduced;   // normalize_equation(raw)
  std::vector<std::string> also;  // further sources giving the same reduced equation
};

struct ConstraintSet {
  std::string move;
  std::size_t closures = 0;  // closures (or pairings) examined
  std::vector<Constraint> equations;

  bool empty() const { return equations.empty(); }
  void add(std::string source, const Fraction& diff) {
    if (diff.is_zero()) return;
    Polynomial red = normalize_equation(diff.numerator());
    for (auto& c : equations)
      if (c.reduced == red) {
        c.also.push_back(std::move(source));
        return;
      }
    equations.push_back({std::move(source), diff.numerator(), std::move(red), {}});
  }
};

enum class ConstraintMethod {
  Closures,      // one equation per closure pairing
  Coefficients,  // one equation per pairing coefficient of the tangle brackets
};

/// Equations for [lhs] = scale·[rhs].
inline ConstraintSet move_constraints(const Tangle& lhs, const Tangle& rhs, const CoefficientSystem& cs,
                                      ConstraintMethod method = ConstraintMethod::Closures,
                                      const std::optional<Fraction>& scale = std::nullopt, std::string name = {}) {
  auto labels = [](const Tangle& t) {
    std::vector<std::string> out;
    for (const auto& ep : t.boundary) out.push_back(ep.label);
    return out;
  };
  if (labels(lhs) != labels(rhs)) throw std::invalid_argument("endpoint labels of the two tangles differ");
  const TangleBracket L = tangle_bracket(lhs, cs), R = tangle_bracket(rhs, cs);
  const Fraction k = scale.value_or(Fraction::integer(1));
  ConstraintSet out;
  out.move = std::move(name);
  if (method == ConstraintMethod::Closures) {
    for (const auto& q : enumerate_pairings(L.order)) {
      ++out.closures;
      out.add(pairing_key(q), close(L, q) - k * close(R, q));
    }
  } else {
    for (const auto& p : enumerate_pairings(L.order)) {
      ++out.closures;
      const std::string key = pairing_key(p);
      out.add(key, L.coefficient(key) - k * R.coefficient(key));
    }
  }
  return out;
}

/// The factor relating brackets across a rule under Y = r^v ω^{-w} [L]:
/// [lhs] = r^{Δv} ω^{-Δw} [rhs] with Δ = rhs - lhs.
inline Fraction normalization_scale(const MoveRule& rule, const CoefficientSystem& cs) {
  Fraction k = Fraction::integer(1);
  if (rule.virtual_delta() % 2) k *= cs.r;
  const int dw = rule.writhe_delta();
  const Fraction w = dw > 0 ? cs.omega_inverse() : cs.omega();
  for (int i = 0; i < std::abs(dw); ++i) k *= w;
  return k;
}

// Named tangles used by the derivations.

struct MovePair {
  Tangle lhs, rhs;
};

inline MovePair r2_tangles() { return {braid_tangle({pos_x(0), neg_x(0)}, 2), braid_tangle({}, 2)}; }
inline MovePair f1_tangles() {
  return {braid_tangle({virt(1), pos_x(0), pos_x(1)}, 3), braid_tangle({pos_x(0), pos_x(1), virt(0)}, 3)};
}

/// The three displayed F1 equations, as lhs - rhs.
inline std::vector<Polynomial> f1_reference_equations() {
  return {parse_polynomial("b^2+b*c+b*c*t+c^2 - (b^2*t+b*c*t^2+b*c+c^2*t)"),
          parse_polynomial("b^2+2*b*c*t+c^2*t^2 - (b^2*t+2*b*c+c^2)"),
          parse_polynomial("b^2*t^2+2*b*c*t+c^2 - (b^2+2*b*c+c^2*t)")};
}

/// (δ + ω²)ra + (ω² - δ)b for the family.
inline Fraction t4_identity(const CoefficientSystem& cs) {
  const Fraction d = Fraction(delta()), w2 = cs.omega() * cs.omega();
  return (d + w2) * cs.r * Fraction::variable("a") + (w2 - d) * Fraction::variable("b");
}

/// True when every equation vanishes after `asg`.
inline bool satisfied_by(const ConstraintSet& set, const Assignment& asg) {
  return std::all_of(set.equations.begin(), set.equations.end(),
                     [&](const Constraint& c) { return substitute(Fraction(c.raw), asg).is_zero(); });
}

// Reports.

struct MoveCheck {
  std::string move;
  std::size_t closures = 0;
  std::size_t nontrivial = 0;
  bool pass = false;
  bool required = true;  // false: reported only
  std::vector<std::string> residuals;
  std::string note;
};

struct VerificationReport {
  std::string family;
  std::vector<MoveCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const MoveCheck& c) { return c.pass || !c.required; });
  }
};

inline MoveCheck check_of(const ConstraintSet& set) {
  MoveCheck m;
  m.move = set.move;
  m.closures = set.closures;
  m.nontrivial = set.equations.size();
  m.pass = set.empty();
  for (const auto& c : set.equations) m.residuals.push_back(c.source + ": " + to_string(c.reduced) + " = 0");
  return m;
}

/// R2, F1, the R1 kink identities and T4 for a solved family. T4 is required
/// only where the family admits wens.
inline VerificationReport verify_solution(const CoefficientSystem& cs) {
  if (!cs.solved()) throw std::invalid_argument("verify_solution needs a solved family");
  VerificationReport rep;
  rep.family = cs.describe();
  {
    auto [l, r] = r2_tangles();
    rep.checks.push_back(check_of(move_constraints(l, r, cs, ConstraintMethod::Closures, std::nullopt, "r2")));
  }
  {
    auto [l, r] = f1_tangles();
    rep.checks.push_back(check_of(move_constraints(l, r, cs, ConstraintMethod::Closures, std::nullopt, "f1")));
  }
  {
    // kink expansions: [positive kink] = ω [strand], [negative kink] = ω^{-1} [strand]
    MoveCheck m;
    m.move = "r1";
    m.pass = true;
    const Fraction w = cs.omega(), wi = cs.omega_inverse();
    for (Sign sg : {Sign::Positive, Sign::Negative})
      for (KinkForm f : {KinkForm::OverFirst, KinkForm::UnderFirst}) {
        ++m.closures;
        const Fraction c = tangle_bracket(kink_tangle(sg, f), cs).coefficient("12");
        const Fraction& want = sg == Sign::Positive ? w : wi;
        if (!(c == want)) {
          m.pass = false;
          m.residuals.push_back(to_string(c - want));
        }
      }
    if (!(w * wi == Fraction::integer(1))) {
      m.pass = false;
      m.residuals.push_back("omega * omega^-1 = " + to_string(w * wi));
    }
    m.nontrivial = m.residuals.size();
    m.note = "omega = " + to_string(w) + ", omega^-1 = " + to_string(wi);
    rep.checks.push_back(std::move(m));
  }
  {
    ConstraintSet all;
    all.move = "t4";
    const auto& table = MoveTable::standard();
    for (std::size_t ri : table.rules_of(MoveKind::T4)) {
      const auto& rule = table.rules()[ri];
      auto set = move_constraints(rule.lhs, rule.rhs, cs, ConstraintMethod::Closures, normalization_scale(rule, cs));
      all.closures += set.closures;
      for (auto& c : set.equations) all.add(rule.variant + " " + c.source, Fraction(c.raw));
    }
    MoveCheck m = check_of(all);
    m.required = cs.supports_wens();
    const Fraction id = t4_identity(cs);
    m.note = id.is_zero() ? "(delta + omega^2) r a + (omega^2 - delta) b = 0 identically"
                          : "(delta + omega^2) r a + (omega^2 - delta) b = " + to_string(id);
    rep.checks.push_back(std::move(m));
  }
  return rep;
}

/// Every rule of the table, closure by closure, under the Y normalization.
/// Wen rules are required only where the family admits wens.
inline VerificationReport verify_table(const CoefficientSystem& cs, const MoveTable& table = MoveTable::standard()) {
  if (!cs.solved()) throw std::invalid_argument("verify_table needs a solved family");
  VerificationReport rep;
  rep.family = cs.describe();
  for (const auto& rule : table.rules()) {
    const std::string name = std::string(move_name(rule.kind)) + " [" + rule.variant + "]";
    MoveCheck m = check_of(
        move_constraints(rule.lhs, rule.rhs, cs, ConstraintMethod::Closures, normalization_scale(rule, cs), name));
    m.required = !involves_wens(rule.kind) || cs.supports_wens();
    rep.checks.push_back(std::move(m));
  }
  return rep;
}

/// What the generic skein template forces.
struct Derivation {
  ConstraintSet r2;          // by pairing coefficient: the R2 system
  ConstraintSet r2_closures;
  ConstraintSet f1;
  ConstraintSet m;           // generic, no constraints imposed
  ConstraintSet v3;
  ConstraintSet r3;          // with the R2/F1 solution imposed
  std::vector<std::pair<std::string, bool>> branches;  // F1 solution branches
  std::vector<bool> f1_matches_reference;  // per displayed equation
};

inline Derivation derive_constraints() {
  const auto g = CoefficientSystem::generic();
  Derivation out;
  {
    auto [l, r] = r2_tangles();
    out.r2 = move_constraints(l, r, g, ConstraintMethod::Coefficients, std::nullopt, "r2");
    out.r2_closures = move_constraints(l, r, g, ConstraintMethod::Closures, std::nullopt, "r2");
  }
  {
    auto [l, r] = f1_tangles();
    out.f1 = move_constraints(l, r, g, ConstraintMethod::Closures, std::nullopt, "f1");
  }
  const auto& table = MoveTable::standard();
  auto merged = [&](MoveKind k, const CoefficientSystem& cs) {
    ConstraintSet all;
    all.move = std::string(move_name(k));
    for (std::size_t ri : table.rules_of(k)) {
      const auto& rule = table.rules()[ri];
      auto set = move_constraints(rule.lhs, rule.rhs, cs);
      all.closures += set.closures;
      for (auto& c : set.equations) all.add(rule.variant + " " + c.source, Fraction(c.raw));
    }
    return all;
  };
  out.m = merged(MoveKind::M, g);
  out.v3 = merged(MoveKind::V3, g);
  out.r3 = merged(MoveKind::R3, CoefficientSystem::welded(std::nullopt));
  auto F = [](const char* s) { return parse_fraction(s); };
  out.branches = {
      {"b = c, t = -2", satisfied_by(out.f1, {{"c", F("b")}, {"t", F("-2")}})},
      {"b = -c, t = 2", satisfied_by(out.f1, {{"c", F("-b")}, {"t", F("2")}})},
      {"t = 1", satisfied_by(out.f1, {{"t", F("1")}})},
  };
  for (const auto& ref : f1_reference_equations()) {
    const Polynomial want = normalize_equation(ref);
    out.f1_matches_reference.push_back(
        std::any_of(out.f1.equations.begin(), out.f1.equations.end(), [&](const Constraint& c) { return c.reduced == want; }));
  }
  return out;
}

}  // namespace wskein
