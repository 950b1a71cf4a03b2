#ifndef LATTICEROOT_EQUIVARIANT_HPP
#define LATTICEROOT_EQUIVARIANT_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "latticeroot/error.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/plumbing.hpp"
#include "latticeroot/rational.hpp"

namespace latticeroot {

struct SphereCell {
  std::size_t index = 0;
  Rational dim;
};

struct EdgeCell {
  std::size_t from = 0, to = 0;
  Rational dim;
  bool central = false;
};

// One sphere per path point and one cylinder per consecutive pair, complex
// dimensions (w + h)/2.
struct CellModel {
  std::vector<SphereCell> spheres;
  std::vector<EdgeCell> edges;
  std::int64_t h = 0;
};

// Real dimensions of the cells that survive an involution.
struct FixedModel {
  std::vector<SphereCell> spheres;
  std::vector<EdgeCell> edges;
};

inline std::int64_t default_stabilization(const WeightedPath& path) {
  if (path.weights.empty()) return 0;
  Rational lo = *std::min_element(path.weights.begin(), path.weights.end());
  std::int64_t h = to_int64(ceil_div(-lo));
  if (h < 0) h = 0;
  if (h % 2 != 0) ++h;
  return h;
}

inline CellModel build_cell_model(const WeightedPath& path, std::optional<std::int64_t> h_opt = std::nullopt) {
  const std::int64_t h = h_opt.value_or(default_stabilization(path));
  if (h % 2 != 0) throw Error(Errc::InvalidInput, "stabilization h must be even");
  CellModel m;
  m.h = h;
  for (std::size_t i = 0; i < path.weights.size(); ++i) {
    Rational d = (path.weights[i] + h) / 2;
    if (d < 0) throw Error(Errc::NegativeDimension, "cell " + std::to_string(i) + " has negative dimension " + to_string(d));
    m.spheres.push_back({i, d});
  }
  for (std::size_t i = 0; i + 1 < path.weights.size(); ++i) {
    Rational d = (std::min(path.weights[i], path.weights[i + 1]) + h) / 2;
    m.edges.push_back({i, i + 1, d, path.central_gap && *path.central_gap == i});
  }
  return m;
}

// Complex conjugation fixes R^d inside C^d, so each cell keeps its number as a
// real dimension.
inline FixedModel conjugation_fixed_model(const CellModel& m) { return FixedModel{m.spheres, m.edges}; }

namespace detail {
inline int parity_sign(const Rational& d) {
  if (!is_integer(d)) throw Error(Errc::NonIntegralDimension, "cell dimension " + to_string(d) + " is not an integer");
  return mod_floor(to_int64(d), 2) == 0 ? 1 : -1;
}
}  // namespace detail

// Reduced Euler characteristic by cell count: each sphere contributes (-1)^d;
// each cylinder S^d x I glued along S^d v S^d contributes (-1)^d - 2(-1)^d.
inline std::int64_t euler_char_fixed(const FixedModel& f) {
  std::int64_t chi = 0;
  for (const auto& s : f.spheres) chi += detail::parity_sign(s.dim);
  for (const auto& e : f.edges) {
    const int sg = detail::parity_sign(e.dim);
    chi += sg * 1 - 2 * sg;
  }
  return chi;
}

// sum over leaves of (-1)^{gr/2} minus the same over angles.
inline std::int64_t signed_leaf_angle_sum(const GradedRoot& r) {
  std::int64_t s = 0;
  for (const auto& l : r.leaves) {
    if (mod_floor(l.grading, 2) != 0) throw Error(Errc::OddGrading, "leaf grading " + std::to_string(l.grading) + " is odd");
    s += mod_floor(l.grading / 2, 2) == 0 ? 1 : -1;
  }
  for (const auto& a : r.angles) {
    if (mod_floor(a.grading, 2) != 0) throw Error(Errc::OddGrading, "angle grading " + std::to_string(a.grading) + " is odd");
    s -= mod_floor(a.grading / 2, 2) == 0 ? 1 : -1;
  }
  return s;
}

inline std::int64_t miyazawa_degree(const GradedRoot& r) { return std::llabs(signed_leaf_angle_sum(r)); }

// Closed form of the cell count for a model built from `path` with
// stabilization h, using the root of the same path.
inline std::int64_t euler_char_closed_form(const WeightedPath& path, std::int64_t h) {
  GradedRoot r = graded_root(path);
  Rational s = r.grading_shift - path.reference;  // local even-shift
  Rational e = (s + h) / 2;
  return detail::parity_sign(e) * signed_leaf_angle_sum(r);
}

struct DegreeReport {
  std::int64_t degree = 0;
  std::int64_t signed_sum = 0;
  BigInt determinant;
  bool determinant_one = false;
  GradedRoot root;
  int base = 0;
};

inline DegreeReport degree_report(const PlumbingGraph& g, std::optional<int> base = std::nullopt,
                                  const TruncationPolicy& policy = {}) {
  DegreeReport d;
  d.base = base.value_or(default_base(g));
  SpinCClass spin = spin_class(g);
  d.root = graded_root(full_sequence(g, spin, d.base, policy));
  d.signed_sum = signed_leaf_angle_sum(d.root);
  d.degree = std::llabs(d.signed_sum);
  d.determinant = abs(g.form().determinant());
  d.determinant_one = d.determinant == 1;
  return d;
}

// ---------------------------------------------------------------------------
// involutions

// J: k -> -k. For a self-conjugate class the invariant cube has vertices
// Q(w + 2u) with u_v in {0,-1} on the Wu support and 0 elsewhere.
struct NegationAction {
  IntVec wu_cycle;
  std::vector<std::size_t> cube_support;

  static IntVec apply(const IntVec& k) {
    IntVec out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = -k[i];
    return out;
  }
  static CharVector apply(const CharVector& k) { return CharVector{apply(k.pairings), k.square}; }

  // The cube vertex Q(w + 2u) where bit t of mask sets u = -1 on the t-th
  // supported vertex.
  IntVec cube_vertex(const PlumbingGraph& g, std::uint64_t mask) const {
    Cycle u(wu_cycle.size(), 0);
    for (std::size_t t = 0; t < cube_support.size(); ++t)
      if (mask >> t & 1) u[cube_support[t]] = -1;
    Cycle c(wu_cycle.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = wu_cycle[i] + 2 * u[i];
    return g.form().covector(c);
  }

  bool in_cube(const PlumbingGraph& g, const IntVec& k) const {
    auto h = g.form().dual_coords(k);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!is_integer(h[i])) return false;
      auto v = to_int64(h[i]);
      if (wu_cycle[i] == 0 ? v != 0 : (v != 1 && v != -1)) return false;
    }
    return true;
  }
};

inline NegationAction negation_action(const PlumbingGraph& g, const SpinCClass& spin) {
  if (!spin.self_conjugate) throw Error(Errc::NoCube, "class is not self-conjugate; J has no invariant cube");
  // k_r = Q h with h integral and characteristic-compatible; the cube is
  // centred on the Wu class of that class.
  auto h = g.form().dual_coords(spin.distinguished.pairings);
  NegationAction j;
  j.wu_cycle.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) j.wu_cycle[i] = mod_floor(to_int64(h[i]), 2);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (j.wu_cycle[i]) j.cube_support.push_back(i);
  return j;
}

// A vertex permutation, acting on cycles and covectors by permuting coordinates.
struct VertexPermutation {
  std::vector<std::size_t> image;
  int center = 0;
  std::vector<int> upper, lower;

  IntVec apply(const IntVec& x) const {
    IntVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[image[i]] = x[i];
    return out;
  }
  CharVector apply(const CharVector& k) const { return CharVector{apply(k.pairings), k.square}; }
  bool fixes(std::size_t v) const { return image[v] == v; }
};

namespace detail {
inline VertexPermutation swap_legs(const PlumbingGraph& g, std::size_t center, const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  VertexPermutation t;
  t.image.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t.image[i] = i;
  for (std::size_t k = 0; k < a.size(); ++k) {
    t.image[a[k]] = b[k];
    t.image[b[k]] = a[k];
    t.upper.push_back(g.id_of(a[k]));
    t.lower.push_back(g.id_of(b[k]));
  }
  t.center = g.id_of(center);
  return t;
}

inline std::vector<std::int64_t> leg_weights(const PlumbingGraph& g, const std::vector<std::size_t>& leg) {
  std::vector<std::int64_t> w;
  for (auto v : leg) w.push_back(g.weight(v));
  return w;
}
}  // namespace detail

// Swap of two identical legs around `center_id` (default: the node, or for a
// chain the vertex about which it is palindromic).
inline VertexPermutation tau_action(const PlumbingGraph& g, std::optional<int> center_id = std::nullopt) {
  std::vector<std::size_t> candidates;
  if (center_id) candidates.push_back(g.index_of(*center_id));
  else if (auto c = g.center()) candidates.push_back(*c);
  else if (g.is_star_shaped())
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.degree(v) == 2) candidates.push_back(v);
  for (auto c : candidates) {
    if (!g.is_star_shaped() && g.degree(c) < 3) continue;
    auto legs = g.legs(c);
    for (std::size_t i = 0; i < legs.size(); ++i)
      for (std::size_t j = i + 1; j < legs.size(); ++j)
        if (detail::leg_weights(g, legs[i]) == detail::leg_weights(g, legs[j])) return detail::swap_legs(g, c, legs[i], legs[j]);
  }
  throw Error(Errc::LegsNotIdentical, "no pair of identical legs to swap");
}

inline VertexPermutation tau_action(const GammaPQ& gp) {
  const auto& g = gp.graph;
  std::vector<std::size_t> a, b;
  for (auto id : gp.upper) a.push_back(g.index_of(id));
  for (auto id : gp.lower) b.push_back(g.index_of(id));
  if (detail::leg_weights(g, a) != detail::leg_weights(g, b)) throw Error(Errc::LegsNotIdentical, "b-legs differ");
  return detail::swap_legs(g, g.index_of(gp.center), a, b);
}

// ---------------------------------------------------------------------------
// almost I-invariant paths

struct InvolutionSpec {
  enum class Kind { ConjugationEverywhere, AlmostI };
  Kind kind = Kind::ConjugationEverywhere;
  std::vector<std::int64_t> labels;  // almost_I: +-i per path point (i >= 1)
  std::optional<std::size_t> central_edge;
};

struct AlmostIPath {
  WeightedPath path;
  InvolutionSpec spec;
  int base = 0;
  bool base_in_cube = false;  // fallback when no Wu-free symmetric vertex exists
  SpinCClass spin;
  std::vector<Cycle> u;       // Wu-centred coordinates: point = Q(w + 2u)
};

namespace detail {

inline std::int64_t wu_relative_weight(const PlumbingGraph& g, const IntVec& kw, const Cycle& u) {
  return relative_weight(g, kw, u);
}

inline int choose_symmetric_base(const PlumbingGraph& g, const VertexPermutation& tau, const WuClass& wu,
                                 bool& in_cube) {
  const std::size_t c = g.index_of(tau.center);
  in_cube = false;
  if (wu.coefficients[c] == 0) return tau.center;
  // walk the tau-fixed part outward from the centre
  std::vector<std::size_t> frontier{c};
  std::vector<bool> seen(g.size(), false);
  seen[c] = true;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto v : frontier)
      for (auto nb : g.neighbors(v)) {
        if (seen[nb] || !tau.fixes(nb)) continue;
        seen[nb] = true;
        if (wu.coefficients[nb] == 0) return g.id_of(nb);
        next.push_back(nb);
      }
    frontier = std::move(next);
  }
  in_cube = true;
  return tau.center;
}

}  // namespace detail

// gamma_I = J tau gamma_0 (reversed), then gamma_0: gamma_0 starts at the Wu
// vertex s_1 (u = 0), walks inside the lattice to x(i_c) (the x(i) whose base
// coordinate matches the cube) and then follows the computation sequence.
inline AlmostIPath almost_I_path(const PlumbingGraph& g, const VertexPermutation& tau,
                                 std::optional<int> base_id = std::nullopt, const TruncationPolicy& policy = {}) {
  require_negative_definite(g);
  const std::size_t V = g.size();
  const WuClass wu = wu_class(g);
  {
    IntVec w = wu.as_cycle();
    if (tau.apply(w) != w) throw Error(Errc::SymmetryBroken, "Wu class is not tau-invariant");
  }
  AlmostIPath out;
  if (base_id) {
    const std::size_t b = g.index_of(*base_id);
    if (wu.coefficients[b]) throw Error(Errc::BaseInCube, "base vertex " + std::to_string(*base_id) + " lies in the Wu cube");
    if (!tau.fixes(b)) throw Error(Errc::SymmetryBroken, "base vertex is moved by tau");
    out.base = *base_id;
  } else {
    out.base = detail::choose_symmetric_base(g, tau, wu, out.base_in_cube);
  }
  const std::size_t b = g.index_of(out.base);
  out.spin = spin_class(g);
  const SpinCClass& spin = out.spin;
  const IntVec kw = g.form().covector(wu.as_cycle());

  // k_r = k_w + 2 Q z
  Cycle z(V);
  {
    auto h = g.form().dual_coords(spin.distinguished.pairings);
    for (std::size_t i = 0; i < V; ++i) {
      Rational zi = (h[i] - Rational(wu.coefficients[i])) / 2;
      if (!is_integer(zi)) throw Error(Errc::SymmetryBroken, "k_r is not in the Wu class");
      z[i] = to_int64(zi);
    }
  }
  const std::int64_t i_c = -z[b];
  if (i_c < 0) throw Error(Errc::SymmetryBroken, "cube lies below x(0) in the base direction");

  SequenceInfo info;
  WeightedPath full = full_sequence(g, spin, out.base, policy, &info);
  const std::int64_t N = std::max(info.last_i, i_c + 1);
  WeightedPath tail = computation_sequence(g, spin, out.base, i_c, N, policy.tie);
  for (std::size_t t : tail.x_indices)
    if (tau.apply(tail.cycles[t]) != tail.cycles[t]) throw Error(Errc::SymmetryBroken, "x(i) is not tau-invariant");
  for (std::size_t t : full.x_indices)
    if (tau.apply(full.cycles[t]) != full.cycles[t]) throw Error(Errc::SymmetryBroken, "x(i) is not tau-invariant");

  // positive half in u-coordinates
  std::vector<Cycle> pos{Cycle(V, 0)};
  Cycle target(V);
  for (std::size_t i = 0; i < V; ++i) target[i] = tail.cycles.front()[i] + z[i];
  Cycle cur(V, 0);
  while (cur != target) {
    std::size_t pick = SIZE_MAX;
    std::int64_t best = INT64_MIN;
    for (std::size_t v = 0; v < V; ++v) {
      if (cur[v] == target[v]) continue;
      Cycle nxt = cur;
      nxt[v] += target[v] > cur[v] ? 1 : -1;
      std::int64_t wv = detail::wu_relative_weight(g, kw, nxt);
      if (wv > best || (wv == best && g.id_of(v) < g.id_of(pick))) {
        best = wv;
        pick = v;
      }
    }
    cur[pick] += target[pick] > cur[pick] ? 1 : -1;
    pos.push_back(cur);
  }
  for (std::size_t t = 1; t < tail.cycles.size(); ++t) {
    Cycle u(V);
    for (std::size_t i = 0; i < V; ++i) u[i] = tail.cycles[t][i] + z[i];
    pos.push_back(std::move(u));
  }

  // s_{-i} = -tau(s_i)  <=>  u_{-i} = -w - tau(u_i)
  const IntVec w = wu.as_cycle();
  std::vector<Cycle> all;
  std::vector<std::int64_t> labels;
  const auto n = static_cast<std::int64_t>(pos.size());
  for (std::int64_t i = n; i >= 1; --i) {
    Cycle tu = tau.apply(pos[static_cast<std::size_t>(i - 1)]);
    for (std::size_t k = 0; k < V; ++k) tu[k] = -w[k] - tu[k];
    all.push_back(std::move(tu));
    labels.push_back(-i);
  }
  for (std::int64_t i = 1; i <= n; ++i) {
    all.push_back(pos[static_cast<std::size_t>(i - 1)]);
    labels.push_back(i);
  }

  WeightedPath& p = out.path;
  p.reference = spin.reference;
  for (const auto& u : all) {
    Cycle c(V);
    for (std::size_t k = 0; k < V; ++k) c[k] = w[k] + 2 * u[k];
    p.points.push_back(g.form().covector(c));
    Cycle x(V);
    for (std::size_t k = 0; k < V; ++k) x[k] = u[k] - z[k];
    p.cycles.push_back(std::move(x));
    p.weights.emplace_back(detail::wu_relative_weight(g, kw, u));
  }
  p.central_gap = static_cast<std::size_t>(n - 1);
  p.finish_edges();
  out.u = std::move(all);
  out.spec.kind = InvolutionSpec::Kind::AlmostI;
  out.spec.labels = std::move(labels);
  out.spec.central_edge = p.central_gap;

  // postconditions
  for (std::int64_t i = 1; i <= n; ++i) {
    const auto& sp = p.points[static_cast<std::size_t>(n - 1 + i)];
    const auto& sm = p.points[static_cast<std::size_t>(n - i)];
    if (NegationAction::apply(tau.apply(sp)) != sm) throw Error(Errc::SymmetryBroken, "s_{-i} != -tau(s_i)");
  }
  for (std::size_t t = 0; t + 1 < p.points.size(); ++t) {
    if (p.central_gap && *p.central_gap == t) continue;
    std::int64_t diff = 0;
    for (std::size_t k = 0; k < V; ++k) diff += std::llabs(out.u[t + 1][k] - out.u[t][k]);
    if (diff != 1) throw Error(Errc::SymmetryBroken, "consecutive points are not a single lattice step");
  }
  const int ref_base = default_base(g);
  const GradedRoot ref = ref_base == out.base ? graded_root(full) : graded_root(full_sequence(g, spin, ref_base, policy));
  if (graded_root(p).canonical() != ref.canonical())
    throw Error(Errc::SymmetryBroken, "symmetric path does not carry the lattice root");
  return out;
}

struct AlmostIFixed {
  FixedModel model;
  Rational dimension;  // real dimension of the surviving cell, equal to -mubar
  Rational delta;      // delta_R = underline delta_R = bar delta_R = -mubar/2
  std::int64_t abs_euler = 1;
};

// Only the central edge is fixed by I; its real dimension is (c_1(s_1)^2 - sigma)/8.
inline AlmostIFixed almost_I_fixed_data(const PlumbingGraph& g, const AlmostIPath& ap) {
  if (ap.spec.kind != InvolutionSpec::Kind::AlmostI || !ap.spec.central_edge)
    throw Error(Errc::InvalidInput, "fixed data needs an almost-I path");
  const std::size_t e = *ap.spec.central_edge;
  const CharVector s1 = make_char_vector(g, ap.path.points[e + 1]);
  AlmostIFixed f;
  f.dimension = (s1.square - Rational(signature(g))) / 8;
  if (f.dimension != -mubar(g)) throw Error(Errc::SymmetryBroken, "central cell dimension disagrees with -mubar");
  f.delta = f.dimension / 2;
  f.model.edges.push_back({e, e + 1, f.dimension, true});
  return f;
}

struct EvenTorusEquivariant {
  GammaPQ gamma;
  AlmostIPath path;
  AlmostIFixed fixed;
};

inline EvenTorusEquivariant almost_I_for_torus(std::int64_t p, std::int64_t q) {
  if (p % 2 != 0) throw Error(Errc::NotEvenTorus, "T_{" + std::to_string(p) + "," + std::to_string(q) + "} has odd p");
  EvenTorusEquivariant r{gamma_pq(p, q), {}, {}};
  r.path = almost_I_path(r.gamma.graph, tau_action(r.gamma));
  r.fixed = almost_I_fixed_data(r.gamma.graph, r.path);
  return r;
}

}  // namespace latticeroot

#endif
