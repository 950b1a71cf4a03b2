#ifndef LATTICEROOT_PLUMBING_HPP
#define LATTICEROOT_PLUMBING_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticeroot/error.hpp"
#include "latticeroot/matrix.hpp"
#include "latticeroot/rational.hpp"

namespace latticeroot {

struct Vertex {
  int id = 0;
  std::int64_t weight = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

using Edge = std::pair<int, int>;

// Intersection form of the plumbed 4-manifold in the vertex basis. The matrix is
// built eagerly; determinant and inverse are computed on first use and cached
// behind std::call_once, so a shared form may be queried from several threads.
class IntersectionForm {
 public:
  explicit IntersectionForm(Matrix<std::int64_t> m) : matrix_(std::move(m)), cache_(std::make_shared<Cache>()) {}

  const Matrix<std::int64_t>& matrix() const { return matrix_; }
  std::size_t size() const { return matrix_.rows(); }

  const BigInt& determinant() const {
    std::call_once(cache_->det_once, [this] { cache_->det = latticeroot::determinant(matrix_); });
    return cache_->det;
  }

  // Throws NoSolution when the form is degenerate.
  const Matrix<Rational>& inverse() const {
    std::call_once(cache_->inv_once, [this] {
      cache_->inv = std::make_unique<Matrix<Rational>>(latticeroot::inverse(matrix_.cast<Rational>()));
    });
    return *cache_->inv;
  }

  // (x, y) for cycles x, y in the vertex basis.
  std::int64_t pairing(const IntVec& x, const IntVec& y) const {
    std::int64_t s = 0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (matrix_(i, j) != 0 && y[j] != 0) s += x[i] * matrix_(i, j) * y[j];
    }
    return s;
  }

  std::int64_t square(const IntVec& x) const { return pairing(x, x); }

  // Q x: the covector of a cycle, i.e. its pairings with every vertex class.
  IntVec covector(const IntVec& x) const {
    IntVec out(size(), 0);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) out[i] += matrix_(i, j) * x[j];
    return out;
  }

  // k^T Q^{-1} k for an integral covector k.
  Rational dual_square(const IntVec& k) const {
    const auto& inv = inverse();
    Rational s = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (k[i] == 0) continue;
      for (std::size_t j = 0; j < size(); ++j)
        if (k[j] != 0) s += inv(i, j) * Rational(k[i] * k[j]);
    }
    return s;
  }

  // Q^{-1} k as a rational cycle.
  std::vector<Rational> dual_coords(const IntVec& k) const {
    const auto& inv = inverse();
    std::vector<Rational> out(size(), Rational(0));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (k[j] != 0) out[i] += inv(i, j) * Rational(k[j]);
    return out;
  }

 private:
  struct Cache {
    std::once_flag det_once, inv_once;
    BigInt det;
    std::unique_ptr<Matrix<Rational>> inv;
  };
  Matrix<std::int64_t> matrix_;
  std::shared_ptr<Cache> cache_;
};

class PlumbingGraph {
 public:
  PlumbingGraph() = default;

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(std::size_t idx) const { return vertices_[idx]; }
  std::int64_t weight(std::size_t idx) const { return vertices_[idx].weight; }
  int id_of(std::size_t idx) const { return vertices_[idx].id; }
  const std::vector<std::size_t>& neighbors(std::size_t idx) const { return adj_[idx]; }
  std::size_t degree(std::size_t idx) const { return adj_[idx].size(); }
  const IntersectionForm& form() const { return *form_; }

  std::size_t index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(Errc::UnknownVertex, "no vertex with id " + std::to_string(id));
    return it->second;
  }
  bool has_vertex(int id) const { return index_.count(id) != 0; }

  // Indices of vertices of degree >= 3 ("nodes").
  std::vector<std::size_t> nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (degree(i) >= 3) out.push_back(i);
    return out;
  }

  bool is_star_shaped() const { return nodes().size() <= 1; }

  // The unique node of a star-shaped graph, if it has one.
  std::optional<std::size_t> center() const {
    auto ns = nodes();
    if (ns.size() == 1) return ns.front();
    return std::nullopt;
  }

  // Chains hanging off `c`, each listed from c outward. Requires every vertex
  // other than c to have degree <= 2.
  std::vector<std::vector<std::size_t>> legs(std::size_t c) const {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t first : adj_[c]) {
      std::vector<std::size_t> leg{first};
      std::size_t prev = c, cur = first;
      while (true) {
        if (degree(cur) > 2) throw Error(Errc::InvalidInput, "graph is not star-shaped around vertex " + std::to_string(id_of(c)));
        std::size_t next = SIZE_MAX;
        for (std::size_t nb : adj_[cur])
          if (nb != prev) next = nb;
        if (next == SIZE_MAX) break;
        leg.push_back(next);
        prev = cur;
        cur = next;
      }
      out.push_back(std::move(leg));
    }
    return out;
  }

  friend PlumbingGraph build_graph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  friend bool operator==(const PlumbingGraph& a, const PlumbingGraph& b) {
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
    auto norm = [](std::vector<Edge> es) {
      for (auto& e : es)
        if (e.first > e.second) std::swap(e.first, e.second);
      std::sort(es.begin(), es.end());
      return es;
    };
    return norm(a.edges_) == norm(b.edges_);
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::map<int, std::size_t> index_;
  std::shared_ptr<const IntersectionForm> form_;
};

inline PlumbingGraph build_graph(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  PlumbingGraph g;
  const std::size_t n = vertices.size();
  if (n == 0) throw Error(Errc::NotATree, "empty vertex set");
  for (std::size_t i = 0; i < n; ++i)
    if (!g.index_.emplace(vertices[i].id, i).second)
      throw Error(Errc::DuplicateId, "vertex id " + std::to_string(vertices[i].id) + " appears twice");
  if (edges.size() != n - 1)
    throw Error(Errc::NotATree, std::to_string(n) + " vertices need " + std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
  g.adj_.assign(n, {});
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) {
    auto ia = g.index_.find(a), ib = g.index_.find(b);
    if (ia == g.index_.end() || ib == g.index_.end())
      throw Error(Errc::UnknownVertex, "edge (" + std::to_string(a) + "," + std::to_string(b) + ") references a missing vertex");
    std::size_t ra = find(ia->second), rb = find(ib->second);
    if (ra == rb) throw Error(Errc::NotATree, "edge (" + std::to_string(a) + "," + std::to_string(b) + ") closes a cycle");
    parent[ra] = rb;
    g.adj_[ia->second].push_back(ib->second);
    g.adj_[ib->second].push_back(ia->second);
  }
  Matrix<std::int64_t> q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    q(i, i) = vertices[i].weight;
    for (std::size_t j : g.adj_[i]) q(i, j) = 1;
  }
  g.form_ = std::make_shared<const IntersectionForm>(std::move(q));
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  return g;
}

inline int signature(const PlumbingGraph& g) { return inertia(g.form().matrix()).signature(); }

inline bool is_negative_definite(const PlumbingGraph& g) {
  const auto& q = g.form().matrix();
  Matrix<std::int64_t> neg(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) neg(i, j) = -q(i, j);
  auto lm = leading_minors(neg);
  if (!lm.complete) return false;
  return std::all_of(lm.minors.begin(), lm.minors.end(), [](const BigInt& d) { return d > 0; });
}

inline void require_negative_definite(const PlumbingGraph& g) {
  if (!is_negative_definite(g)) throw Error(Errc::NotNegativeDefinite, "intersection form is not negative-definite");
}

// ---------------------------------------------------------------------------
// Hirzebruch-Jung (negative) continued fractions

// Expands p/q = a1 - 1/(a2 - 1/(... - 1/ak)) with every ai <= -2.
inline std::vector<std::int64_t> neg_continued_fraction(std::int64_t p, std::int64_t q) {
  if (q == 0) throw Error(Errc::ZeroDenominator, "continued fraction of " + std::to_string(p) + "/0");
  Rational v = frac(p, q);
  std::vector<std::int64_t> out;
  while (true) {
    BigInt a = floor_div(v);
    if (a > -2)
      throw Error(Errc::NotExpandable, std::to_string(p) + "/" + std::to_string(q) + " has no expansion with all entries <= -2");
    out.push_back(to_int64(a));
    if (Rational(a) == v) break;
    v = Rational(1) / (Rational(a) - v);
  }
  return out;
}

inline Rational evaluate_neg_continued_fraction(const std::vector<std::int64_t>& cf) {
  if (cf.empty()) throw Error(Errc::InvalidInput, "empty continued fraction");
  Rational v(cf.back());
  for (std::size_t i = cf.size() - 1; i-- > 0;) v = Rational(cf[i]) - Rational(1) / v;
  return v;
}

// ---------------------------------------------------------------------------
// Seifert and Brieskorn data

struct Orbit {
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

struct SeifertData {
  std::int64_t central_weight = 0;
  std::vector<Orbit> orbits;
  friend bool operator==(const SeifertData&, const SeifertData&) = default;
};

// e = central - sum beta/alpha; a homology sphere has e = -1/(prod alpha).
inline Rational euler_number(const SeifertData& s) {
  Rational e(s.central_weight);
  for (const auto& o : s.orbits) e -= frac(o.beta, o.alpha);
  return e;
}

inline PlumbingGraph seifert_to_plumbing(const SeifertData& s) {
  std::int64_t central = s.central_weight;
  std::vector<std::vector<std::int64_t>> legs;
  for (const auto& o : s.orbits) {
    if (o.alpha <= 0) throw Error(Errc::InvalidInput, "orbit multiplicity must be positive");
    if (std::gcd(o.alpha, o.beta) != 1)
      throw Error(Errc::NotCoprime, "orbit (" + std::to_string(o.alpha) + "," + std::to_string(o.beta) + ") is not coprime");
    if (o.alpha == 1) {
      central -= o.beta;
      continue;
    }
    legs.push_back(neg_continued_fraction(o.alpha, o.beta));
  }
  std::vector<Vertex> vs{{0, central}};
  std::vector<Edge> es;
  int next = 1;
  for (const auto& leg : legs) {
    int prev = 0;
    for (auto w : leg) {
      vs.push_back({next, w});
      es.emplace_back(prev, next);
      prev = next++;
    }
  }
  return build_graph(std::move(vs), std::move(es));
}

namespace detail {
// Smallest-magnitude negative representative b in (-m, 0) of the solution to
// a*b = 1 (mod m).
inline std::int64_t negative_inverse_mod(std::int64_t a, std::int64_t m) {
  for (std::int64_t b = -1; b > -m; --b)
    if (mod_floor(a % m * mod_floor(b, m), m) == 1 % m) return b;
  throw Error(Errc::NotCoprime, std::to_string(a) + " is not invertible mod " + std::to_string(m));
}
}  // namespace detail

inline SeifertData brieskorn_to_seifert(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  const std::int64_t as[3] = {a1, a2, a3};
  for (auto x : as)
    if (x < 1) throw Error(Errc::InvalidInput, "Brieskorn exponents must be positive");
  if (std::gcd(a1, a2) != 1 || std::gcd(a1, a3) != 1 || std::gcd(a2, a3) != 1)
    throw Error(Errc::NotCoprime, "Brieskorn exponents (" + std::to_string(a1) + "," + std::to_string(a2) + "," +
                                      std::to_string(a3) + ") are not pairwise coprime");
  const std::int64_t a = a1 * a2 * a3;
  SeifertData s;
  std::int64_t num = -1;
  for (auto alpha : as) {
    if (alpha == 1) continue;
    std::int64_t beta = detail::negative_inverse_mod(a / alpha, alpha);
    s.orbits.push_back({alpha, beta});
    num += (a / alpha) * beta;
  }
  s.central_weight = num / a;
  return s;
}

// Sigma(2,p,q) with p even and q odd: two orbits of multiplicity q and one of
// multiplicity p/2 (dropped when p = 2), Euler number -2/(pq).
inline SeifertData even_brieskorn_to_seifert(std::int64_t p, std::int64_t q) {
  if (p < 2 || p % 2 != 0 || q < 1 || q % 2 == 0)
    throw Error(Errc::NotEvenTorus, "expected p even and q odd, got (" + std::to_string(p) + "," + std::to_string(q) + ")");
  if (std::gcd(p, q) != 1) throw Error(Errc::NotCoprime, "p and q must be coprime");
  const std::int64_t h = p / 2;
  SeifertData s;
  std::int64_t beta = q == 1 ? 0 : detail::negative_inverse_mod(mod_floor(p, q), q);
  std::int64_t gamma = h == 1 ? 0 : detail::negative_inverse_mod(mod_floor(q, h), h);
  // c*p*q/2 - p*beta - q*gamma = -1
  std::int64_t num = -1 + p * beta + q * gamma;
  s.central_weight = num / (h * q);
  if (q > 1) s.orbits = {{q, beta}, {q, beta}};
  if (h > 1) s.orbits.push_back({h, gamma});
  return s;
}

// Seifert data for Sigma(a1,a2,a3); accepts pairwise coprime triples and the
// (2, even, odd) case.
inline SeifertData brieskorn_seifert(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  std::int64_t as[3] = {a1, a2, a3};
  if (std::gcd(a1, a2) == 1 && std::gcd(a1, a3) == 1 && std::gcd(a2, a3) == 1) return brieskorn_to_seifert(a1, a2, a3);
  std::sort(as, as + 3);
  if (as[0] == 2 && as[1] % 2 == 0 && as[2] % 2 == 1 && std::gcd(as[1], as[2]) == 1)
    return even_brieskorn_to_seifert(as[1], as[2]);
  if (as[0] == 2 && as[2] % 2 == 0 && as[1] % 2 == 1 && std::gcd(as[1], as[2]) == 1)
    return even_brieskorn_to_seifert(as[2], as[1]);
  throw Error(Errc::NotCoprime, "unsupported Brieskorn triple (" + std::to_string(a1) + "," + std::to_string(a2) + "," +
                                    std::to_string(a3) + ")");
}

// ---------------------------------------------------------------------------
// The leg-symmetric presentation of Sigma(2,p,q)

struct GammaPQ {
  PlumbingGraph graph;
  std::int64_t p = 0, q = 0;
  std::int64_t c = 0, beta2 = 0, beta3 = 0;
  int center = 0;
  std::vector<int> upper;  // b-leg, from the center outward
  std::vector<int> lower;  // its mirror image under the leg swap
  std::vector<int> a_leg;  // empty when p = 2
};

inline GammaPQ gamma_pq(std::int64_t p, std::int64_t q) {
  if (p < 2 || p % 2 != 0) throw Error(Errc::NotEvenTorus, "p must be even, got " + std::to_string(p));
  if (q < 3 || std::gcd(p, q) != 1) throw Error(Errc::NotCoprime, "q must be at least 3 and coprime to p");
  const std::int64_t h = p / 2;
  GammaPQ out;
  out.p = p;
  out.q = q;
  bool found = false;
  for (std::int64_t b3 = 1; b3 < q && !found; ++b3) {
    if (std::gcd(b3, q) != 1) continue;
    for (std::int64_t b2 = (h == 1 ? 0 : 1); b2 < std::max<std::int64_t>(h, 1) && !found; ++b2) {
      if (h > 1 && std::gcd(b2, h) != 1) continue;
      // c*h*q - q*b2 - p*b3 = 1
      std::int64_t num = 1 + q * b2 + p * b3;
      if (num % (h * q) != 0) continue;
      out.c = num / (h * q);
      out.beta2 = b2;
      out.beta3 = b3;
      found = true;
    }
  }
  if (!found) throw Error(Errc::NoSolution, "no Seifert solution for the leg-symmetric presentation");
  auto bleg = neg_continued_fraction(q, -out.beta3);
  std::vector<std::int64_t> aleg;
  if (h > 1) aleg = neg_continued_fraction(h, -out.beta2);
  std::vector<Vertex> vs{{0, -out.c}};
  std::vector<Edge> es;
  int next = 1;
  auto add_leg = [&](const std::vector<std::int64_t>& ws, std::vector<int>& ids) {
    int prev = 0;
    for (auto w : ws) {
      vs.push_back({next, w});
      es.emplace_back(prev, next);
      ids.push_back(next);
      prev = next++;
    }
  };
  add_leg(bleg, out.upper);
  add_leg(bleg, out.lower);
  add_leg(aleg, out.a_leg);
  out.graph = build_graph(std::move(vs), std::move(es));
  return out;
}

// ---------------------------------------------------------------------------
// Wu class and the Neumann-Siebenmann invariant

struct WuClass {
  std::vector<int> coefficients;  // 0/1 per vertex index
  IntVec as_cycle() const { return IntVec(coefficients.begin(), coefficients.end()); }
  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](int c) { return c == 0; });
  }
  friend bool operator==(const WuClass&, const WuClass&) = default;
};

namespace detail {
// Solutions of A x = b over GF(2): one particular solution plus a nullspace basis.
struct Gf2Solution {
  std::vector<int> particular;
  std::vector<std::vector<int>> kernel;
};

inline std::optional<Gf2Solution> solve_gf2(std::vector<std::vector<int>> a, std::vector<int> b) {
  const std::size_t n = a.size(), m = n ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != row && a[i][col]) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] ^= a[row][j];
        b[i] ^= b[row];
      }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (b[i]) return std::nullopt;
  Gf2Solution s;
  s.particular.assign(m, 0);
  for (std::size_t i = 0; i < row; ++i) s.particular[pivot_col[i]] = b[i];
  std::vector<bool> is_pivot(m, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<int> v(m, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < row; ++i) v[pivot_col[i]] = a[i][f];
    s.kernel.push_back(std::move(v));
  }
  return s;
}
}  // namespace detail

inline bool wu_support_nonadjacent(const PlumbingGraph& g, const std::vector<int>& x) {
  for (const auto& [a, b] : g.edges())
    if (x[g.index_of(a)] && x[g.index_of(b)]) return false;
  return true;
}

// 0/1 solution of Q x = diag(Q) (mod 2). Unique when det Q is odd; otherwise the
// first solution (in kernel-enumeration order) with non-adjacent support.
inline WuClass wu_class(const PlumbingGraph& g) {
  const std::size_t n = g.size();
  const auto& q = g.form().matrix();
  std::vector<std::vector<int>> a(n, std::vector<int>(n));
  std::vector<int> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<int>(mod_floor(q(i, j), 2));
    b[i] = static_cast<int>(mod_floor(q(i, i), 2));
  }
  auto sol = detail::solve_gf2(a, b);
  if (!sol) throw Error(Errc::NoSolution, "Wu congruence has no solution");
  const std::size_t k = sol->kernel.size();
  if (k > 20) throw Error(Errc::NoSolution, "Wu solution space too large to search");
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    std::vector<int> x = sol->particular;
    for (std::size_t t = 0; t < k; ++t)
      if (mask >> t & 1)
        for (std::size_t j = 0; j < n; ++j) x[j] ^= sol->kernel[t][j];
    if (wu_support_nonadjacent(g, x)) return WuClass{x};
  }
  throw Error(Errc::NoSolution, "no Wu solution with non-adjacent support");
}

inline std::int64_t wu_square(const PlumbingGraph& g, const WuClass& w) {
  auto x = w.as_cycle();
  return g.form().square(x);
}

inline Rational mubar(const PlumbingGraph& g) {
  require_negative_definite(g);
  auto w = wu_class(g);
  return frac(signature(g) - wu_square(g, w), 8);
}

// Almost-rationality is not decided here; star-shaped graphs are the only shape
// the truncation bounds are known to cover, so anything else earns a warning.
inline std::optional<std::string> almost_rational_warning(const PlumbingGraph& g) {
  if (g.is_star_shaped()) return std::nullopt;
  return "graph has " + std::to_string(g.nodes().size()) +
         " nodes; almost-rationality is assumed, not checked";
}

}  // namespace latticeroot

#endif
