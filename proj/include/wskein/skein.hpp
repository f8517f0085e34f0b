#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "wskein/coefficients.hpp"
#include "wskein/diagram.hpp"
#include "wskein/laurent.hpp"
#include "wskein/union_find.hpp"

namespace wskein {

using State = std::vector<Smoothing>;

/// Thrown when a diagram is outside the domain of the chosen family.
struct UnsupportedDiagram : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class WenPolicy {
  Strict,           // wens need ν = 1
  AllowDegenerate,  // evaluate anyway (used for the b = 0 specialization)
};

struct BracketOptions {
  unsigned threads = 1;
  WenPolicy wens = WenPolicy::Strict;
};

struct BracketStats {
  std::uint64_t leaves = 0;
  std::size_t histogram_size = 0;
};

namespace detail {

/// Edges as integers; edge e has tail node 2e and head node 2e+1.
struct CompiledDiagram {
  std::uint32_t nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fixed;  // edges, virtual crossings, wens
  struct Cross {
    bool positive;
    std::uint32_t o_in, o_out, u_in, u_out;  // edge indices
  };
  std::vector<Cross> crossings;

  explicit CompiledDiagram(const Diagram& d) {
    std::unordered_map<EdgeId, std::uint32_t> id;
    auto e = [&](const EdgeId& name) {
      auto [it, fresh] = id.try_emplace(name, static_cast<std::uint32_t>(id.size()));
      return it->second;
    };
    auto tail = [](std::uint32_t i) { return 2 * i; };
    auto head = [](std::uint32_t i) { return 2 * i + 1; };
    for (const auto& c : d.classical) crossings.push_back({c.sign == Sign::Positive, e(c.over_in), e(c.over_out), e(c.under_in), e(c.under_out)});
    for (const auto& v : d.virtual_crossings) {
      fixed.emplace_back(head(e(v.a_in)), tail(e(v.a_out)));
      fixed.emplace_back(head(e(v.b_in)), tail(e(v.b_out)));
    }
    for (const auto& w : d.wens) fixed.emplace_back(head(e(w.in)), tail(e(w.out)));
    for (std::uint32_t i = 0; i < id.size(); ++i) fixed.emplace_back(tail(i), head(i));
    nodes = static_cast<std::uint32_t>(2 * id.size());
  }

  template <class UF>
  static void smooth(UF& uf, const Cross& c, Smoothing s) {
    auto tail = [](std::uint32_t i) { return 2 * i; };
    auto head = [](std::uint32_t i) { return 2 * i + 1; };
    switch (s) {
      case Smoothing::V:
        uf.unite(head(c.o_in), tail(c.o_out));
        uf.unite(head(c.u_in), tail(c.u_out));
        break;
      case Smoothing::I:
        uf.unite(head(c.o_in), tail(c.u_out));
        uf.unite(head(c.u_in), tail(c.o_out));
        break;
      case Smoothing::C:
        uf.unite(head(c.o_in), head(c.u_in));
        uf.unite(tail(c.o_out), tail(c.u_out));
        break;
    }
  }
};

// Leaf key: smoothing counts (pV, pI, nV, nI) and loop count; pC, nC and
// the virtual parity follow from them.
inline std::uint64_t pack_key(const std::array<std::uint16_t, 4>& k, std::uint32_t loops) {
  return (static_cast<std::uint64_t>(k[0]) << 48) | (static_cast<std::uint64_t>(k[1]) << 36) |
         (static_cast<std::uint64_t>(k[2]) << 24) | (static_cast<std::uint64_t>(k[3]) << 12) | loops;
}

using Histogram = std::unordered_map<std::uint64_t, std::uint64_t>;

class StateWalker {
 public:
  StateWalker(const CompiledDiagram& cd, Histogram& hist) : cd_(cd), uf_(cd.nodes), hist_(hist) {
    for (auto [i, j] : cd.fixed) uf_.unite(i, j);
  }

  /// Applies a fixed prefix of smoothings, then enumerates the rest.
  void run(const State& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) push(i, prefix[i]);
    walk(prefix.size());
  }

  std::uint64_t leaves() const { return leaves_; }

 private:
  void push(std::size_t i, Smoothing s) {
    CompiledDiagram::smooth(uf_, cd_.crossings[i], s);
    if (s != Smoothing::C) ++counts_[(cd_.crossings[i].positive ? 0 : 2) + static_cast<int>(s)];
  }
  void pop(std::size_t i, Smoothing s, std::size_t mark) {
    uf_.rollback(mark);
    if (s != Smoothing::C) --counts_[(cd_.crossings[i].positive ? 0 : 2) + static_cast<int>(s)];
  }

  void walk(std::size_t i) {
    if (i == cd_.crossings.size()) {
      ++leaves_;
      ++hist_[pack_key(counts_, static_cast<std::uint32_t>(uf_.sets()))];
      return;
    }
    const std::size_t mark = uf_.checkpoint();
    for (Smoothing s : {Smoothing::V, Smoothing::I, Smoothing::C}) {
      push(i, s);
      walk(i + 1);
      pop(i, s, mark);
    }
  }

  const CompiledDiagram& cd_;
  RollbackUnionFind uf_;
  Histogram& hist_;
  std::array<std::uint16_t, 4> counts_{};
  std::uint64_t leaves_ = 0;
};

class PowerCache {
 public:
  explicit PowerCache(const Fraction& f) : base_(f) {}
  const Fraction& get(unsigned k) {
    while (cache_.size() <= k) cache_.push_back(cache_.empty() ? Fraction::integer(1, base_.vars()) : cache_.back() * base_);
    return cache_[k];
  }

 private:
  Fraction base_;
  std::vector<Fraction> cache_;
};

inline void check_wens(const Diagram& d, const CoefficientSystem& cs, WenPolicy policy) {
  if (!d.wens.empty() && policy == WenPolicy::Strict && !cs.supports_wens())
    throw UnsupportedDiagram("diagram has wens; the extended welded invariant is defined only for nu = 1 (use --mode extended)");
}

}  // namespace detail

/// Value of one state: product of the chosen coefficients times
/// t^{loops} r^{(virtual + #V) mod 2} s^{wens mod 2}.
inline Fraction state_value(const Diagram& d, const State& state, const CoefficientSystem& cs) {
  if (state.size() != d.classical.size()) throw std::invalid_argument("state must assign every classical crossing");
  detail::CompiledDiagram cd(d);
  UnionFind uf(cd.nodes);
  for (auto [i, j] : cd.fixed) uf.unite(i, j);
  Fraction value = Fraction::integer(1);
  std::size_t v = d.virtual_crossings.size();
  for (std::size_t i = 0; i < state.size(); ++i) {
    detail::CompiledDiagram::smooth(uf, cd.crossings[i], state[i]);
    value *= cs.coefficient(cd.crossings[i].positive, state[i]);
    if (state[i] == Smoothing::V) ++v;
  }
  const auto loops = static_cast<unsigned>(uf.sets() + d.free_loops);
  value *= pow(cs.t, loops);
  if (v % 2) value *= cs.r;
  if (d.wens.size() % 2) value *= cs.s;
  return value;
}

/// Σ over all 3^n states. The empty diagram has bracket 1.
inline Fraction bracket(const Diagram& d, const CoefficientSystem& cs, const BracketOptions& opt = {},
                        BracketStats* stats = nullptr) {
  detail::check_wens(d, cs, opt.wens);
  const std::size_t n = d.classical.size();
  detail::CompiledDiagram cd(d);
  if (cd.nodes / 2 >= 4096) throw std::invalid_argument("diagram too large for the state-sum key layout");

  // Split the state space on a prefix of crossings; each task owns a
  // histogram, and histograms merge by integer addition, so the result does
  // not depend on the schedule.
  unsigned threads = std::max(1u, opt.threads);
  std::size_t depth = 0;
  std::size_t tasks = 1;
  while (threads > 1 && depth < n && tasks < 4 * threads) {
    ++depth;
    tasks *= 3;
  }
  std::vector<State> prefixes(1);
  for (std::size_t i = 0; i < depth; ++i) {
    std::vector<State> next;
    for (const auto& p : prefixes)
      for (Smoothing s : {Smoothing::V, Smoothing::I, Smoothing::C}) {
        next.push_back(p);
        next.back().push_back(s);
      }
    prefixes = std::move(next);
  }

  detail::Histogram hist;
  std::uint64_t leaves = 0;
  if (threads == 1 || prefixes.size() == 1) {
    detail::StateWalker w(cd, hist);
    for (const auto& p : prefixes) w.run(p);
    leaves = w.leaves();
  } else {
    std::vector<detail::Histogram> parts(threads);
    std::vector<std::uint64_t> part_leaves(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back([&, k] {
        for (std::size_t i = k; i < prefixes.size(); i += threads) {
          detail::StateWalker fresh(cd, parts[k]);
          fresh.run(prefixes[i]);
          part_leaves[k] += fresh.leaves();
        }
      });
    for (auto& th : pool) th.join();
    for (unsigned k = 0; k < threads; ++k) {
      for (const auto& [key, c] : parts[k]) hist[key] += c;
      leaves += part_leaves[k];
    }
  }

  std::uint16_t npos = 0, nneg = 0;
  for (const auto& c : cd.crossings) ++(c.positive ? npos : nneg);

  std::vector<detail::PowerCache> pc, nc;
  for (int i = 0; i < 3; ++i) {
    pc.emplace_back(cs.positive[i]);
    nc.emplace_back(cs.negative[i]);
  }
  detail::PowerCache tc(cs.t);

  // Sort keys so the summation order (and therefore any intermediate
  // canonical forms) is fixed.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries(hist.begin(), hist.end());
  std::sort(entries.begin(), entries.end());

  std::map<unsigned, Polynomial> by_power;
  for (const auto& [key, count] : entries) {
    const unsigned pV = (key >> 48) & 0xfff, pI = (key >> 36) & 0xfff, nV = (key >> 24) & 0xfff, nI = (key >> 12) & 0xfff;
    const unsigned loops = static_cast<unsigned>(key & 0xfff) + static_cast<unsigned>(d.free_loops);
    const unsigned pC = npos - pV - pI, nC = nneg - nV - nI;
    Polynomial num = Polynomial::constant(BigInt(count));
    unsigned power = 0;
    for (const Fraction* f : {&pc[0].get(pV), &pc[1].get(pI), &pc[2].get(pC), &nc[0].get(nV), &nc[1].get(nI),
                              &nc[2].get(nC), &tc.get(loops)}) {
      num *= f->numerator();
      power += f->delta_power();
    }
    if ((d.virtual_crossings.size() + pV + nV) % 2) num *= cs.r.numerator();
    auto [it, fresh] = by_power.try_emplace(power, Polynomial());
    it->second += num;
  }
  if (cs.r.delta_power() != 0 || cs.s.delta_power() != 0) throw std::invalid_argument("r and s must be polynomial");

  Fraction total = Fraction::integer(0);
  for (auto& [power, num] : by_power) total += Fraction(std::move(num), power);
  if (d.wens.size() % 2) total *= cs.s;
  if (stats) {
    stats->leaves = leaves;
    stats->histogram_size = hist.size();
  }
  return total;
}

/// Y = r^{v} ω^{-w} [L].
inline Fraction y_invariant(const Diagram& d, const CoefficientSystem& cs, const BracketOptions& opt = {}) {
  if (!cs.solved()) throw std::invalid_argument("Y needs a solved coefficient family");
  Fraction y = bracket(d, cs, opt);
  if (d.virtual_crossings.size() % 2) y *= cs.r;
  const int w = writhe(d);
  if (w > 0) y *= pow(cs.omega_inverse(), static_cast<unsigned>(w));
  if (w < 0) y *= pow(cs.omega(), static_cast<unsigned>(-w));
  return y;
}

/// Y at ν = 1 with r, s fixed to ±1, as a Laurent polynomial in λ = α/β.
inline LaurentPoly y_lambda(const Diagram& d, int r, int s, const BracketOptions& opt = {}) {
  if ((r != 1 && r != -1) || (s != 1 && s != -1)) throw std::invalid_argument("r and s must be +1 or -1");
  Fraction y = y_invariant(d, CoefficientSystem::extended(), opt);
  y = substitute(y, {{"r", Fraction::integer(r)}, {"s", Fraction::integer(s)}});
  return dehomogenize(to_alpha_beta(y));
}

}  // namespace wskein
