#ifndef LATTICEROOT_LATTICE_HPP
#define LATTICEROOT_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latticeroot/error.hpp"
#include "latticeroot/plumbing.hpp"
#include "latticeroot/rational.hpp"

namespace latticeroot {

using Cycle = IntVec;

// A characteristic covector, stored by its pairings k(S_v) with the vertex
// classes; the square k^T Q^{-1} k is cached.
struct CharVector {
  IntVec pairings;
  Rational square;
  friend bool operator==(const CharVector& a, const CharVector& b) { return a.pairings == b.pairings; }
};

inline bool is_characteristic(const PlumbingGraph& g, const IntVec& k) {
  if (k.size() != g.size()) return false;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (mod_floor(k[v] - g.weight(v), 2) != 0) return false;
  return true;
}

inline CharVector make_char_vector(const PlumbingGraph& g, IntVec k) {
  if (!is_characteristic(g, k)) throw Error(Errc::InvalidInput, "covector is not characteristic");
  Rational sq = g.form().dual_square(k);
  return CharVector{std::move(k), std::move(sq)};
}

inline CharVector canonical_class(const PlumbingGraph& g) {
  IntVec k(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) k[v] = -g.weight(v) - 2;
  return make_char_vector(g, std::move(k));
}

inline CharVector wu_char_vector(const PlumbingGraph& g, const WuClass& w) {
  return make_char_vector(g, g.form().covector(w.as_cycle()));
}

// w(k) = (k^2 + |V|)/4
inline Rational weight(const PlumbingGraph& g, const CharVector& k) {
  return (k.square + Rational(static_cast<std::int64_t>(g.size()))) / 4;
}

// x^2 + k.x, so that w(k + 2Qx) = w(k) + relative_weight(x).
inline std::int64_t relative_weight(const PlumbingGraph& g, const IntVec& k, const Cycle& x) {
  std::int64_t s = g.form().square(x);
  for (std::size_t v = 0; v < x.size(); ++v) s += k[v] * x[v];
  return s;
}

// k + 2Qx
inline IntVec shifted_covector(const PlumbingGraph& g, const IntVec& k, const Cycle& x) {
  IntVec out = g.form().covector(x);
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = k[v] + 2 * out[v];
  return out;
}

// ---------------------------------------------------------------------------
// spin^c classes

struct LPrime {
  std::vector<Rational> coords;  // rational cycle in the vertex basis
  IntVec pairings;               // (l', S_v), integral for l' in the dual lattice
};

struct SpinCClass {
  CharVector representative;
  LPrime l_prime_min;
  CharVector distinguished;  // k_r = K + 2 l'_min
  bool self_conjugate = false;
  // Gradings are reported relative to this absolute weight: w(Wu) for
  // self-conjugate classes, w(k_r) otherwise. offset = w(k_r) - reference.
  Rational reference;
  std::int64_t offset = 0;
};

enum class TieBreak { SmallestId, LargestId };

namespace detail {

inline std::vector<std::size_t> id_order(const PlumbingGraph& g, TieBreak tb) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tb == TieBreak::SmallestId ? g.id_of(a) < g.id_of(b) : g.id_of(a) > g.id_of(b);
  });
  return order;
}

inline std::int64_t default_cap() {
  if (const char* env = std::getenv("LATTICEROOT_MAX_STEPS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 2'000'000;
}

inline std::string frac_key(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& r : v) s += to_string(r) + ",";
  return s;
}

inline std::vector<Rational> fractional_part(const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - Rational(floor_div(v[i]));
  return out;
}

inline IntVec integral_pairings(const PlumbingGraph& g, const std::vector<Rational>& x) {
  const auto& q = g.form().matrix();
  IntVec out(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    Rational s = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (q(v, j) != 0 && x[j] != 0) s += Rational(q(v, j)) * x[j];
    out[v] = to_int64(s);
  }
  return out;
}

}  // namespace detail

// Minimal element of (l' + L) intersected with {x : (x, S_v) <= 0 for all v}.
// Starts from the representative with coefficients in [0,1) and adds S_v while
// (x, S_v) > 0.
inline LPrime minimal_l_prime(const PlumbingGraph& g, const std::vector<Rational>& coset_rep,
                              TieBreak tb = TieBreak::SmallestId) {
  LPrime l;
  l.coords = detail::fractional_part(coset_rep);
  l.pairings = detail::integral_pairings(g, l.coords);
  const auto order = detail::id_order(g, tb);
  const auto& q = g.form().matrix();
  const std::int64_t cap = detail::default_cap();
  for (std::int64_t it = 0;; ++it) {
    if (it > cap) throw Error(Errc::IterationCap, "minimal representative search did not terminate");
    std::size_t pick = SIZE_MAX;
    for (auto v : order)
      if (l.pairings[v] > 0) {
        pick = v;
        break;
      }
    if (pick == SIZE_MAX) break;
    l.coords[pick] += 1;
    for (std::size_t u = 0; u < g.size(); ++u) l.pairings[u] += q(u, pick);
  }
  return l;
}

namespace detail {

inline SpinCClass make_class(const PlumbingGraph& g, const std::vector<Rational>& frac, const CharVector& K,
                             const std::optional<CharVector>& wu) {
  SpinCClass c;
  IntVec frac_pairings = integral_pairings(g, frac);
  IntVec rep(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) rep[v] = K.pairings[v] + 2 * frac_pairings[v];
  c.representative = make_char_vector(g, rep);
  c.l_prime_min = minimal_l_prime(g, frac);
  IntVec kr(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) kr[v] = K.pairings[v] + 2 * c.l_prime_min.pairings[v];
  c.distinguished = make_char_vector(g, kr);
  // self-conjugate iff k_r lies in Q(Z^V), i.e. Q^{-1} k_r is integral
  auto h = g.form().dual_coords(kr);
  c.self_conjugate = std::all_of(h.begin(), h.end(), [](const Rational& r) { return is_integer(r); });
  Rational wr = weight(g, c.distinguished);
  bool wu_class_match = false;
  if (c.self_conjugate && wu) {
    IntVec d(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) d[v] = (kr[v] - wu->pairings[v]) / 2;
    auto dz = g.form().dual_coords(d);
    wu_class_match = std::all_of(dz.begin(), dz.end(), [](const Rational& r) { return is_integer(r); });
  }
  if (wu_class_match) {
    c.reference = weight(g, *wu);
    c.offset = to_int64(wr - c.reference);
  } else {
    c.reference = wr;
    c.offset = 0;
  }
  return c;
}

}  // namespace detail

// The spin^c class of the spherical Wu class (the unique self-conjugate class
// when det Q is odd).
inline SpinCClass spin_class(const PlumbingGraph& g) {
  require_negative_definite(g);
  const CharVector K = canonical_class(g);
  const CharVector kw = wu_char_vector(g, wu_class(g));
  IntVec half(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) half[v] = (kw.pairings[v] - K.pairings[v]) / 2;
  return detail::make_class(g, detail::fractional_part(g.form().dual_coords(half)), K, kw);
}

// One class per element of the discriminant group L'/L, the trivial coset first
// and the rest in breadth-first order over the dual generators.
inline std::vector<SpinCClass> enumerate_spinc(const PlumbingGraph& g) {
  require_negative_definite(g);
  const std::size_t n = g.size();
  const auto& inv = g.form().inverse();
  std::vector<std::vector<Rational>> gens;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = inv(i, j);
    col = detail::fractional_part(col);
    if (std::any_of(col.begin(), col.end(), [](const Rational& r) { return r != 0; })) gens.push_back(col);
  }
  std::vector<std::vector<Rational>> elems{std::vector<Rational>(n, Rational(0))};
  std::set<std::string> seen{detail::frac_key(elems[0])};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& gen : gens) {
      std::vector<Rational> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = elems[head][i] + gen[i];
      s = detail::fractional_part(s);
      if (seen.insert(detail::frac_key(s)).second) elems.push_back(std::move(s));
    }
  const CharVector K = canonical_class(g);
  std::optional<CharVector> kw;
  try {
    kw = wu_char_vector(g, wu_class(g));
  } catch (const Error&) {
  }
  std::vector<SpinCClass> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(detail::make_class(g, e, K, kw));
  return out;
}

// ---------------------------------------------------------------------------
// computation sequences

namespace detail {

// Adds S_j (j != base) while (x + l', S_j) > 0, optionally recording every
// intermediate cycle. `pair` tracks (x + l', S_v) and is kept in sync.
inline void saturate(const PlumbingGraph& g, std::size_t base, const std::vector<std::size_t>& order, Cycle& x,
                     IntVec& pair, std::vector<Cycle>* trace, std::int64_t& budget) {
  const auto& q = g.form().matrix();
  while (true) {
    std::size_t pick = SIZE_MAX;
    for (auto v : order)
      if (v != base && pair[v] > 0) {
        pick = v;
        break;
      }
    if (pick == SIZE_MAX) return;
    if (--budget < 0) throw Error(Errc::IterationCap, "Laufer saturation exceeded the iteration cap");
    x[pick] += 1;
    for (std::size_t u = 0; u < g.size(); ++u) pair[u] += q(u, pick);
    if (trace) trace->push_back(x);
  }
}

inline IntVec pairing_with_lprime(const PlumbingGraph& g, const SpinCClass& spin, const Cycle& x) {
  IntVec p = g.form().covector(x);
  for (std::size_t v = 0; v < p.size(); ++v) p[v] += spin.l_prime_min.pairings[v];
  return p;
}

}  // namespace detail

// Minimal cycle with base coefficient i and (x + l', S_j) <= 0 for j != base.
inline Cycle x_cycle(const PlumbingGraph& g, const SpinCClass& spin, int base_id, std::int64_t i,
                     TieBreak tb = TieBreak::SmallestId) {
  if (i < 0) throw Error(Errc::InvalidInput, "x(i) needs i >= 0");
  const std::size_t b = g.index_of(base_id);
  Cycle x(g.size(), 0);
  x[b] = i;
  IntVec pair = detail::pairing_with_lprime(g, spin, x);
  std::int64_t budget = detail::default_cap();
  detail::saturate(g, b, detail::id_order(g, tb), x, pair, nullptr, budget);
  return x;
}

// A path of characteristic vectors k_r + 2Qx. Points are stored as covector
// pairings; `cycles` holds the x's when the path came from the lattice (it may be
// empty for abstract weight sequences). Weights are relative to `reference`.
struct WeightedPath {
  std::vector<IntVec> points;
  std::vector<Cycle> cycles;
  std::vector<Rational> weights;
  std::vector<Rational> edge_weights;
  Rational reference = 0;
  std::optional<std::size_t> central_gap;  // edge index that is not a lattice step
  std::vector<std::size_t> x_indices;      // positions of the x(i) in the path

  std::size_t size() const { return weights.size(); }

  void finish_edges() {
    edge_weights.clear();
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) edge_weights.push_back(std::min(weights[i], weights[i + 1]));
  }

  static WeightedPath from_weights(const std::vector<Rational>& ws) {
    WeightedPath p;
    p.weights = ws;
    p.finish_edges();
    return p;
  }
  static WeightedPath from_weights(std::initializer_list<std::int64_t> ws) {
    std::vector<Rational> r;
    for (auto w : ws) r.emplace_back(w);
    return from_weights(r);
  }
};

namespace detail {

inline WeightedPath path_from_cycles(const PlumbingGraph& g, const SpinCClass& spin, const std::vector<Cycle>& cycles) {
  WeightedPath p;
  p.reference = spin.reference;
  p.cycles = cycles;
  for (const auto& x : cycles) {
    p.points.push_back(shifted_covector(g, spin.distinguished.pairings, x));
    p.weights.emplace_back(relative_weight(g, spin.distinguished.pairings, x) + spin.offset);
  }
  p.finish_edges();
  return p;
}

}  // namespace detail

// The amalgamated sequence from x(i_from) to x(i_to): each round adds the base
// once and then saturates.
inline WeightedPath computation_sequence(const PlumbingGraph& g, const SpinCClass& spin, int base_id,
                                         std::int64_t i_from, std::int64_t i_to,
                                         TieBreak tb = TieBreak::SmallestId) {
  if (i_from > i_to) throw Error(Errc::InvalidInput, "computation sequence needs i_from <= i_to");
  const std::size_t b = g.index_of(base_id);
  const auto order = detail::id_order(g, tb);
  const auto& q = g.form().matrix();
  std::int64_t budget = detail::default_cap();
  Cycle x = x_cycle(g, spin, base_id, i_from, tb);
  IntVec pair = detail::pairing_with_lprime(g, spin, x);
  std::vector<Cycle> trace{x};
  std::vector<std::size_t> xs{0};
  for (std::int64_t i = i_from; i < i_to; ++i) {
    x[b] += 1;
    for (std::size_t u = 0; u < g.size(); ++u) pair[u] += q(u, b);
    trace.push_back(x);
    detail::saturate(g, b, order, x, pair, &trace, budget);
    xs.push_back(trace.size() - 1);
  }
  auto p = detail::path_from_cycles(g, spin, trace);
  p.x_indices = std::move(xs);
  return p;
}

// Default base vertex: the node of a star-shaped graph; for chains the vertex of
// largest weight (smallest id on ties); otherwise the first node by id.
inline int default_base(const PlumbingGraph& g) {
  if (auto c = g.center()) return g.id_of(*c);
  auto ns = g.nodes();
  if (!ns.empty()) {
    std::size_t best = ns.front();
    for (auto v : ns)
      if (g.id_of(v) < g.id_of(best)) best = v;
    return g.id_of(best);
  }
  std::size_t best = 0;
  for (std::size_t v = 1; v < g.size(); ++v)
    if (g.weight(v) > g.weight(best) || (g.weight(v) == g.weight(best) && g.id_of(v) < g.id_of(best))) best = v;
  return g.id_of(best);
}

struct TruncationPolicy {
  enum class Mode { Auto, Fixed };
  Mode mode = Mode::Auto;
  std::int64_t fixed_i = 0;             // Fixed: stop exactly at x(fixed_i)
  std::optional<std::int64_t> margin;   // Auto: monotone run length; default |V|(1 + max|w_v|)
  std::optional<std::int64_t> max_points;  // hard cap; default LATTICEROOT_MAX_STEPS or 2e6
  TieBreak tie = TieBreak::SmallestId;

  static TruncationPolicy fixed(std::int64_t i) {
    TruncationPolicy t;
    t.mode = Mode::Fixed;
    t.fixed_i = i;
    return t;
  }
};

namespace detail {

// For a star with base at the center and legs of weights <= -2, beyond
// i ~ (legs + 1)/|e| the x(i) weights only decrease.
inline std::int64_t star_stability_index(const PlumbingGraph& g, std::size_t base) {
  auto c = g.center();
  if (g.size() == 1) return 1;
  std::size_t center = c ? *c : SIZE_MAX;
  if (!c) {
    // a chain: any vertex can serve as the center
    center = base;
  }
  if (center != base) return 0;
  Rational e(g.weight(center));
  auto legs = g.legs(center);
  for (const auto& leg : legs) {
    std::vector<std::int64_t> ws;
    for (auto v : leg) {
      if (g.weight(v) > -2) return 0;
      ws.push_back(g.weight(v));
    }
    e -= Rational(1) / evaluate_neg_continued_fraction(ws);
  }
  if (e >= 0) return 0;
  return to_int64(ceil_div(Rational(static_cast<std::int64_t>(legs.size()) + 1) / (-e)));
}

}  // namespace detail

struct SequenceInfo {
  std::int64_t last_i = 0;
  std::int64_t stability_index = 0;
  std::int64_t margin = 0;
};

// Computation sequence from x(0) until the truncation policy fires. Weights
// tend to -infinity along x(i); the auto policy stops at the first x(i) that is
// (a) past the star stability index when one is known, (b) strictly below every
// earlier x(j), (c) the end of a run of `margin` non-increasing x-weights, and
// (d) not itself the top of a plateau (so the truncation creates no false leaf).
inline WeightedPath full_sequence(const PlumbingGraph& g, const SpinCClass& spin, int base_id,
                                  const TruncationPolicy& policy = {}, SequenceInfo* info = nullptr) {
  require_negative_definite(g);
  const std::size_t b = g.index_of(base_id);
  const auto order = detail::id_order(g, policy.tie);
  const auto& q = g.form().matrix();
  const std::int64_t cap = policy.max_points.value_or(detail::default_cap());
  std::int64_t max_abs = 0;
  for (const auto& v : g.vertices()) max_abs = std::max<std::int64_t>(max_abs, std::llabs(v.weight));
  const std::int64_t margin =
      policy.margin.value_or(static_cast<std::int64_t>(g.size()) * (1 + max_abs));
  const std::int64_t stable = detail::star_stability_index(g, b);
  if (info) {
    info->stability_index = stable;
    info->margin = margin;
  }
  std::int64_t budget = cap;
  Cycle x = x_cycle(g, spin, base_id, 0, policy.tie);
  IntVec pair = detail::pairing_with_lprime(g, spin, x);
  const IntVec& kr = spin.distinguished.pairings;
  std::vector<Cycle> trace{x};
  std::vector<std::int64_t> w{relative_weight(g, kr, x)};
  std::vector<std::size_t> xs{0};
  std::vector<std::int64_t> tau{w[0]};
  std::int64_t running_min = w[0];
  std::int64_t monotone_run = 0;
  for (std::int64_t i = 1;; ++i) {
    if (policy.mode == TruncationPolicy::Mode::Fixed && i > policy.fixed_i) break;
    const std::size_t start = trace.size();
    x[b] += 1;
    for (std::size_t u = 0; u < g.size(); ++u) pair[u] += q(u, b);
    trace.push_back(x);
    detail::saturate(g, b, order, x, pair, &trace, budget);
    for (std::size_t t = start; t < trace.size(); ++t) w.push_back(relative_weight(g, kr, trace[t]));
    if (static_cast<std::int64_t>(trace.size()) > cap)
      throw Error(Errc::TruncationNotReached, "sequence reached " + std::to_string(trace.size()) +
                                                  " points without stabilizing (raise LATTICEROOT_MAX_STEPS)");
    xs.push_back(trace.size() - 1);
    const std::int64_t t = w.back();
    monotone_run = t <= tau.back() ? monotone_run + 1 : 0;
    const bool below_all = t < running_min;
    running_min = std::min(running_min, t);
    tau.push_back(t);
    if (info) info->last_i = i;
    if (policy.mode == TruncationPolicy::Mode::Fixed) continue;
    if (i < stable || !below_all || monotone_run < margin) continue;
    // (d): the final plateau must have a strictly higher left neighbour
    std::size_t k = w.size() - 1;
    while (k > 0 && w[k - 1] == w.back()) --k;
    if (k > 0 && w[k - 1] > w.back()) break;
  }
  auto p = detail::path_from_cycles(g, spin, trace);
  p.x_indices = std::move(xs);
  return p;
}

// ---------------------------------------------------------------------------
// graded roots

struct RootPoint {
  std::size_t index = 0;
  std::int64_t grading = 0;
};

struct GradedRoot {
  std::vector<RootPoint> leaves;
  std::vector<RootPoint> angles;
  // Tree vertices: every leaf, then every merge vertex. parent[i] is empty for
  // the bottom vertex (which continues as the infinite stem).
  std::vector<RootPoint> nodes;
  std::vector<bool> is_leaf;
  std::vector<std::optional<std::size_t>> parent;
  Rational grading_shift = 0;

  // Shape and gradings only: merge vertices are nested sorted lists, with chains
  // of equal-grading merges collapsed into one vertex.
  std::string canonical() const {
    std::vector<std::vector<std::size_t>> children(nodes.size());
    std::optional<std::size_t> bottom;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (parent[i]) children[*parent[i]].push_back(i);
      else bottom = i;
    }
    if (!bottom) return "()";
    std::function<void(std::size_t, std::vector<std::string>&)> collect;
    std::function<std::string(std::size_t)> render = [&](std::size_t v) -> std::string {
      if (is_leaf[v]) return "L" + std::to_string(nodes[v].grading);
      std::vector<std::string> parts;
      collect(v, parts);
      std::sort(parts.begin(), parts.end());
      std::string s = "A" + std::to_string(nodes[v].grading) + "[";
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
      return s + "]";
    };
    collect = [&](std::size_t v, std::vector<std::string>& parts) {
      for (auto c : children[v]) {
        if (!is_leaf[c] && nodes[c].grading == nodes[v].grading) collect(c, parts);
        else parts.push_back(render(c));
      }
    };
    return render(*bottom);
  }
};

inline bool same_root(const GradedRoot& a, const GradedRoot& b) {
  return a.canonical() == b.canonical() && a.grading_shift == b.grading_shift;
}

namespace detail {

// Shift s in [0,2) making every weight an even integer.
inline std::pair<Rational, std::vector<std::int64_t>> even_gradings(const std::vector<Rational>& ws) {
  Rational s = ws.front() - Rational(2 * floor_div(ws.front() / 2));
  std::vector<std::int64_t> out;
  out.reserve(ws.size());
  for (const auto& w : ws) {
    Rational v = w - s;
    if (!is_integer(v) || mod_floor(to_int64(v), 2) != 0)
      throw Error(Errc::OddGrading, "weights are not congruent modulo 2");
    out.push_back(to_int64(v));
  }
  return {s, out};
}

}  // namespace detail

// Leaves are maximal plateaus whose neighbours (where they exist) are strictly
// lower; angles are the first global minimum between consecutive leaves.
inline GradedRoot graded_root(const WeightedPath& path) {
  if (path.weights.empty()) throw Error(Errc::InvalidInput, "graded root of an empty path");
  auto [shift, w] = detail::even_gradings(path.weights);
  GradedRoot r;
  r.grading_shift = path.reference + shift;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && w[j + 1] == w[i]) ++j;
    const bool left_ok = i == 0 || w[i - 1] < w[i];
    const bool right_ok = j + 1 == n || w[j + 1] < w[i];
    if (left_ok && right_ok) r.leaves.push_back({i, w[i]});
    i = j + 1;
  }
  for (std::size_t t = 0; t + 1 < r.leaves.size(); ++t) {
    std::size_t best = r.leaves[t].index + 1;
    for (std::size_t k = best; k < r.leaves[t + 1].index; ++k)
      if (w[k] < w[best]) best = k;
    r.angles.push_back({best, w[best]});
  }
  const std::size_t L = r.leaves.size();
  r.nodes = r.leaves;
  r.nodes.insert(r.nodes.end(), r.angles.begin(), r.angles.end());
  r.is_leaf.assign(r.nodes.size(), false);
  std::fill(r.is_leaf.begin(), r.is_leaf.begin() + static_cast<std::ptrdiff_t>(L), true);
  r.parent.assign(r.nodes.size(), std::nullopt);
  // Cartesian tree over the angle sequence: the lowest angle in a range of
  // leaves splits it.
  std::function<std::size_t(std::size_t, std::size_t)> build = [&](std::size_t a, std::size_t b) -> std::size_t {
    if (a == b) return a;
    std::size_t m = a;
    for (std::size_t k = a; k < b; ++k)
      if (r.angles[k].grading < r.angles[m].grading) m = k;
    const std::size_t node = L + m;
    r.parent[build(a, m)] = node;
    r.parent[build(m + 1, b)] = node;
    return node;
  };
  build(0, L - 1);
  return r;
}

// Merge tree of a weighted graph via union-find, processing levels from the
// top. `on_leaf` may veto a leaf (used for box-boundary detection).
inline GradedRoot merge_tree(const std::vector<std::int64_t>& w,
                             const std::function<void(std::size_t, std::vector<std::size_t>&)>& neighbours) {
  const std::size_t n = w.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  std::vector<std::size_t> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  std::vector<bool> active(n, false);
  std::vector<std::size_t> top(n, SIZE_MAX);
  std::vector<std::int64_t> stamp(n, INT64_MIN);
  std::vector<std::vector<std::size_t>> pending(n);
  std::vector<std::size_t> first_at_level(n, SIZE_MAX);
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  GradedRoot r;
  struct Merge {
    std::size_t index;
    std::int64_t gr;
    std::vector<std::size_t> children;
  };
  std::vector<Merge> merges;  // node ids are assigned after all leaves are known
  std::vector<RootPoint> leaves;
  // tops are encoded: leaf k -> k, merge m -> (1<<62) + m
  constexpr std::size_t MERGE = std::size_t(1) << 62;
  std::vector<std::size_t> nb;
  for (std::size_t s = 0; s < n;) {
    const std::int64_t level = w[order[s]];
    std::size_t e = s;
    while (e < n && w[order[e]] == level) ++e;
    std::vector<std::size_t> touched;
    auto touch = [&](std::size_t root) {
      if (stamp[root] != level) {
        stamp[root] = level;
        pending[root].clear();
        if (top[root] != SIZE_MAX) pending[root].push_back(top[root]);
        first_at_level[root] = SIZE_MAX;
        touched.push_back(root);
      }
    };
    for (std::size_t t = s; t < e; ++t) {
      const std::size_t v = order[t];
      active[v] = true;
      stamp[v] = level;
      pending[v].clear();
      first_at_level[v] = v;
      touched.push_back(v);
      nb.clear();
      neighbours(v, nb);
      for (auto u : nb) {
        if (!active[u]) continue;
        std::size_t ru = find(u), rv = find(v);
        if (ru == rv) continue;
        touch(ru);
        uf[ru] = rv;
        pending[rv].insert(pending[rv].end(), pending[ru].begin(), pending[ru].end());
        if (first_at_level[rv] == SIZE_MAX) first_at_level[rv] = first_at_level[ru];
        top[rv] = SIZE_MAX;
      }
    }
    std::set<std::size_t> roots;
    for (auto t : touched) roots.insert(find(t));
    for (auto root : roots) {
      auto& tops = pending[root];
      std::sort(tops.begin(), tops.end());
      tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
      std::size_t where = first_at_level[root] == SIZE_MAX ? root : first_at_level[root];
      if (tops.empty()) {
        leaves.push_back({where, level});
        top[root] = leaves.size() - 1;
      } else if (tops.size() == 1) {
        top[root] = tops[0];
      } else {
        merges.push_back({where, level, tops});
        top[root] = MERGE + merges.size() - 1;
      }
      pending[root].clear();
    }
    s = e;
  }
  const std::size_t L = leaves.size();
  r.leaves = leaves;
  r.nodes = leaves;
  r.is_leaf.assign(L, true);
  for (const auto& m : merges) {
    r.nodes.push_back({m.index, m.gr});
    r.is_leaf.push_back(false);
    for (std::size_t k = 1; k < m.children.size(); ++k) r.angles.push_back({m.index, m.gr});
  }
  r.parent.assign(r.nodes.size(), std::nullopt);
  for (std::size_t mi = 0; mi < merges.size(); ++mi)
    for (auto c : merges[mi].children) r.parent[c >= MERGE ? L + (c - MERGE) : c] = L + mi;
  return r;
}

// Independent oracle: the sublevel-set merge tree of w_rel over all cycles with
// coefficients in [0, R]^V (lattice adjacency x ~ x +- S_v).
inline GradedRoot brute_force_root(const PlumbingGraph& g, const SpinCClass& spin, std::int64_t radius) {
  require_negative_definite(g);
  if (radius < 1) throw Error(Errc::InvalidInput, "box radius must be positive");
  const std::size_t V = g.size();
  const std::int64_t side = radius + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < V; ++i) {
    total *= static_cast<std::size_t>(side);
    if (total > 50'000'000) throw Error(Errc::InvalidInput, "box too large to enumerate");
  }
  std::vector<std::int64_t> w(total);
  std::vector<bool> on_face(total, false);
  Cycle x(V, 0);
  std::vector<Rational> wr;
  wr.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t t = idx;
    bool face = false;
    for (std::size_t v = 0; v < V; ++v) {
      x[v] = static_cast<std::int64_t>(t % side);
      t /= side;
      face = face || x[v] == radius;
    }
    on_face[idx] = face;
    wr.emplace_back(relative_weight(g, spin.distinguished.pairings, x) + spin.offset);
  }
  auto [shift, ev] = detail::even_gradings(wr);
  w = ev;
  std::vector<std::size_t> stride(V, 1);
  for (std::size_t v = 1; v < V; ++v) stride[v] = stride[v - 1] * static_cast<std::size_t>(side);
  auto neighbours = [&](std::size_t idx, std::vector<std::size_t>& out) {
    for (std::size_t v = 0; v < V; ++v) {
      const std::size_t c = (idx / stride[v]) % static_cast<std::size_t>(side);
      if (c > 0) out.push_back(idx - stride[v]);
      if (c + 1 < static_cast<std::size_t>(side)) out.push_back(idx + stride[v]);
    }
  };
  GradedRoot r = merge_tree(w, neighbours);
  r.grading_shift = spin.reference + shift;
  for (const auto& p : r.leaves)
    if (on_face[p.index])
      throw Error(Errc::BoxTooSmall, "a leaf touches the box boundary at radius " + std::to_string(radius));
  return r;
}

}  // namespace latticeroot

#endif
