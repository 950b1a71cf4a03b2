#ifndef LATTICEROOT_KNOTS_HPP
#define LATTICEROOT_KNOTS_HPP

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "latticeroot/error.hpp"
#include "latticeroot/rational.hpp"

namespace latticeroot {

struct TorusKnot {
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::string name() const { return "T_{" + std::to_string(p) + "," + std::to_string(q) + "}"; }
  friend bool operator==(const TorusKnot&, const TorusKnot&) = default;
};

// Signature with the convention that positive torus knots have negative
// signature. The two-branch reduction is a linear chain (each pair is visited at
// most once), so it runs as a loop carrying an affine accumulator
// sigma(original) = sign * sigma(current) + offset, which needs no cache and no
// recursion depth.
inline std::int64_t torus_signature(const TorusKnot& k) {
  if (k.p == 0 || k.q == 0) throw Error(Errc::InvalidInput, "torus knot parameters must be nonzero");
  std::int64_t a = std::llabs(k.p), b = std::llabs(k.q);
  if (std::gcd(a, b) != 1) throw Error(Errc::NotCoprime, k.name() + " has non-coprime parameters");
  const std::int64_t mirror = ((k.p < 0) != (k.q < 0)) ? -1 : 1;
  std::int64_t sign = 1, offset = 0;
  while (true) {
    std::int64_t n = std::max(a, b), q = std::min(a, b);
    if (q == 1) break;
    const bool odd = q % 2 != 0;
    if (2 * q < n) {
      offset += sign * (odd ? -(q * q) + 1 : -(q * q));
      a = n - 2 * q;
      b = q;
    } else {
      offset += sign * (odd ? -(q * q) + 1 : -(q * q) + 2);
      sign = -sign;
      a = 2 * q - n;
      b = q;
    }
  }
  return mirror * offset;
}

// d(L(p,1), i) = -1/4 + (2i - p)^2 / (4p).
inline Rational lens_d_invariant(std::int64_t p, std::int64_t i) {
  if (p < 1) throw Error(Errc::InvalidInput, "lens space order must be positive");
  if (i < 0 || i >= p)
    throw Error(Errc::IndexOutOfRange, "spin^c index " + std::to_string(i) + " not in [0," + std::to_string(p) + ")");
  return frac(-1, 4) + frac((2 * i - p) * (2 * i - p), 4 * p);
}

// For two-bridge torus knots all three real Froyshov invariants equal -sigma/16.
inline Rational lens_delta_R(const TorusKnot& k) {
  if (std::llabs(k.p) != 2 && std::llabs(k.q) != 2) throw Error(Errc::NotTwoBridge, k.name() + " is not of the form T_{2,q}");
  return frac(-torus_signature(k), 16);
}

// A concordance from K (source) to K' (target) inside a punctured ambient
// manifold X = #b2plus CP^2 # (b2 - b2plus) (-CP^2); surface_class lists the
// coefficients of [S] in that diagonal basis.
struct ConcordanceMove {
  std::int64_t ambient_sig = 0;
  std::int64_t ambient_b2plus = 0;
  std::vector<std::int64_t> surface_class;
  std::int64_t sig_source = 0;
  std::int64_t sig_target = 0;
  std::string source_name = "K";
  std::string target_name = "K'";
  std::string ambient_name = "X";
};

inline std::int64_t surface_square(const ConcordanceMove& m) {
  const auto b2 = static_cast<std::int64_t>(m.surface_class.size());
  if (m.ambient_b2plus < 0 || m.ambient_b2plus > b2 || m.ambient_sig != 2 * m.ambient_b2plus - b2)
    throw Error(Errc::InvalidInput, "ambient signature/b2+ inconsistent with a diagonal form of rank " + std::to_string(b2));
  std::int64_t s = 0;
  for (std::int64_t i = 0; i < b2; ++i) {
    const auto c = m.surface_class[static_cast<std::size_t>(i)];
    s += (i < m.ambient_b2plus ? 1 : -1) * c * c;
  }
  return s;
}

// The concordance from the (2n,1)-cable of the figure-eight knot to
// T_{2n,1-20n} in the twice-punctured 2CP^2.
inline ConcordanceMove cable_concordance(std::int64_t n, std::int64_t sig_source = 0) {
  if (n < 1) throw Error(Errc::InvalidInput, "cable parameter must be positive");
  ConcordanceMove m;
  m.ambient_sig = 2;
  m.ambient_b2plus = 2;
  m.surface_class = {2 * n, 6 * n};
  m.sig_source = sig_source;
  m.sig_target = torus_signature({2 * n, 1 - 20 * n});
  m.source_name = "E_{" + std::to_string(2 * n) + ",1}";
  m.target_name = "T_{" + std::to_string(2 * n) + "," + std::to_string(1 - 20 * n) + "}";
  m.ambient_name = "X";
  return m;
}

}  // namespace latticeroot

#endif
