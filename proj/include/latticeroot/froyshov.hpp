#ifndef LATTICEROOT_FROYSHOV_HPP
#define LATTICEROOT_FROYSHOV_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "latticeroot/error.hpp"
#include "latticeroot/knots.hpp"
#include "latticeroot/plumbing.hpp"
#include "latticeroot/rational.hpp"

namespace latticeroot {

enum class Provenance { lens, even_torus, mirror_dual, user };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::lens: return "lens";
    case Provenance::even_torus: return "even_torus";
    case Provenance::mirror_dual: return "mirror_dual";
    case Provenance::user: return "user";
  }
  return "user";
}

// The three real Froyshov invariants. Unknown entries stay empty.
struct RealFroyshov {
  std::optional<Rational> delta;
  std::optional<Rational> delta_under;
  std::optional<Rational> delta_bar;
  Provenance provenance = Provenance::user;

  static RealFroyshov all(const Rational& v, Provenance p) { return {v, v, v, p}; }
  bool any_known() const { return delta || delta_under || delta_bar; }
  friend bool operator==(const RealFroyshov&, const RealFroyshov&) = default;
};

inline bool in_sixteenths(const Rational& r) { return is_integer(r * 16); }

inline void validate(const RealFroyshov& f) {
  for (const auto* v : {&f.delta, &f.delta_under, &f.delta_bar})
    if (*v && !in_sixteenths(**v))
      throw Error(Errc::InvalidInput, "Froyshov value " + to_string(**v) + " is not a multiple of 1/16");
  if (f.delta && f.delta_under && *f.delta_under > *f.delta)
    throw Error(Errc::InvalidInput, "delta_under exceeds delta");
  if (f.delta && f.delta_bar && *f.delta > *f.delta_bar) throw Error(Errc::InvalidInput, "delta exceeds delta_bar");
  if (f.delta_under && f.delta_bar && *f.delta_under > *f.delta_bar)
    throw Error(Errc::InvalidInput, "delta_under exceeds delta_bar");
}

// Values for the mirror image.
inline RealFroyshov mirror_dual(const RealFroyshov& f) {
  if (!f.any_known()) throw Error(Errc::HypothesisFailed, "mirror of an entirely unknown triple");
  RealFroyshov m;
  if (f.delta) m.delta = -*f.delta;
  if (f.delta_under) m.delta_bar = -*f.delta_under;
  if (f.delta_bar) m.delta_under = -*f.delta_bar;
  m.provenance = Provenance::mirror_dual;
  return m;
}

inline RealFroyshov lens_froyshov(const TorusKnot& k) { return RealFroyshov::all(lens_delta_R(k), Provenance::lens); }

// T_{p,q} with p even: all three invariants equal -mubar/2 of the branched
// double cover Sigma(2,p,q).
inline RealFroyshov even_torus_froyshov(std::int64_t p, std::int64_t q) {
  if (p < 2 || p % 2 != 0 || q < 1)
    throw Error(Errc::NotEvenTorus, "expected p even and p,q positive, got (" + std::to_string(p) + "," +
                                        std::to_string(q) + ")");
  if (std::gcd(p, q) != 1) throw Error(Errc::NotCoprime, "p and q must be coprime");
  if (q == 1) return RealFroyshov::all(Rational(0), Provenance::even_torus);
  auto g = seifert_to_plumbing(even_brieskorn_to_seifert(p, q));
  return RealFroyshov::all(-mubar(g) / 2, Provenance::even_torus);
}

struct BranchedCover {
  std::int64_t b2plus_diff = 0;
  std::int64_t sigma_branched = 0;
};

namespace detail {

inline void require_even_class(const ConcordanceMove& m) {
  for (auto c : m.surface_class)
    if (c % 2 != 0) throw Error(Errc::OddClass, "surface class coefficient " + std::to_string(c) + " is odd");
  if (m.sig_source % 2 != 0 || m.sig_target % 2 != 0)
    throw Error(Errc::InvalidInput, "knot signatures must be even");
}

}  // namespace detail

inline BranchedCover branched_cover_arithmetic(const ConcordanceMove& m) {
  detail::require_even_class(m);
  const std::int64_t s2 = surface_square(m);
  BranchedCover b;
  b.b2plus_diff = m.ambient_b2plus - s2 / 4 - m.sig_source / 2 + m.sig_target / 2;
  b.sigma_branched = 2 * m.ambient_sig - s2 / 2 - m.sig_source + m.sig_target;
  return b;
}

enum class Inequality { strong, weak, none };
enum class Verdict { obstructed, no_conclusion };

inline const char* inequality_name(Inequality i) {
  return i == Inequality::strong ? "strong" : i == Inequality::weak ? "weak" : "none";
}
inline const char* verdict_name(Verdict v) { return v == Verdict::obstructed ? "obstructed" : "no_conclusion"; }

struct ObstructionReport {
  std::int64_t b2plus_diff = 0;
  std::int64_t sigma_branched = 0;
  Inequality inequality_used = Inequality::none;
  Rational correction;  // -sigma(Sigma_2(S))/16
  Rational bound_on_delta_under;
  Verdict verdict = Verdict::no_conclusion;
  std::vector<std::string> trace;
};

namespace detail {

inline std::string signed_term(std::int64_t v, bool first = false) {
  if (first) return std::to_string(v);
  return v < 0 ? " - " + std::to_string(-v) : " + " + std::to_string(v);
}

inline std::string paren_if_negative(std::int64_t v) {
  return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
}

// "2^2 + 6^2", with minus signs on the negative-definite part.
inline std::string class_square_terms(const ConcordanceMove& m) {
  std::string s;
  for (std::size_t i = 0; i < m.surface_class.size(); ++i) {
    const bool neg = static_cast<std::int64_t>(i) >= m.ambient_b2plus;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    s += paren_if_negative(m.surface_class[i]) + "^2";
  }
  return s.empty() ? "0" : s;
}

inline std::string rat_term(const Rational& r) {
  return r < 0 ? " - " + to_string(-r) : " + " + to_string(r);
}

}  // namespace detail

// Applies the concordance inequality; the verdict is left to the clasp check.
inline ObstructionReport obstruction_bound(const ConcordanceMove& m, const RealFroyshov& target) {
  const auto bc = branched_cover_arithmetic(m);
  const std::int64_t s2 = surface_square(m);
  ObstructionReport r;
  r.b2plus_diff = bc.b2plus_diff;
  r.sigma_branched = bc.sigma_branched;
  const auto& K = m.source_name;
  const auto& Kp = m.target_name;
  const std::string X = m.ambient_name;

  std::string head = "b2+(Sigma_2(S)) - b2+(" + X + ") = b2+(" + X + ") - 1/4 [S]^2";
  std::string line2 = "= " + std::to_string(m.ambient_b2plus) + " - 1/4 (" + detail::class_square_terms(m) + ")";
  std::string line3 = "= " + std::to_string(m.ambient_b2plus) + detail::signed_term(-s2 / 4);
  if (m.sig_source != 0) {
    head += " - 1/2 sigma(" + K + ")";
    line2 += " - 1/2 (" + std::to_string(m.sig_source) + ")";
    line3 += detail::signed_term(-m.sig_source / 2);
  }
  head += " + 1/2 sigma(" + Kp + ")";
  line2 += " + 1/2 (" + std::to_string(m.sig_target) + ")";
  line3 += detail::signed_term(m.sig_target / 2);
  r.trace = {head, line2, line3, "= " + std::to_string(bc.b2plus_diff)};

  if (bc.b2plus_diff == 0)
    r.inequality_used = Inequality::strong;
  else if (bc.b2plus_diff == 1)
    r.inequality_used = Inequality::weak;
  else
    throw Error(Errc::HypothesisFailed, "b2+ difference is " + std::to_string(bc.b2plus_diff) + ", expected 0 or 1");

  std::string chead = "-1/16 (2 sigma(" + X + ") - 1/2 [S]^2";
  std::string cnum = "= -1/16 (2*" + detail::paren_if_negative(m.ambient_sig) + " - 1/2 (" +
                     detail::class_square_terms(m) + ")";
  if (m.sig_source != 0) {
    chead += " - sigma(" + K + ")";
    cnum += " - " + detail::paren_if_negative(m.sig_source);
  }
  chead += " + sigma(" + Kp + "))";
  cnum += " + " + detail::paren_if_negative(m.sig_target) + ")";
  r.correction = frac(-bc.sigma_branched, 16);
  r.trace.push_back(chead);
  r.trace.push_back(cnum);
  r.trace.push_back("= " + to_string(r.correction));

  const bool strong = r.inequality_used == Inequality::strong;
  const auto& known = strong ? target.delta_under : target.delta_bar;
  const std::string tname = strong ? "underline delta_R(" + Kp + ")" : "bar delta_R(" + Kp + ")";
  if (!known) throw Error(Errc::HypothesisFailed, tname + " is unknown");
  r.trace.push_back(tname + " = " + to_string(*known));
  r.bound_on_delta_under = *known - r.correction;
  r.trace.push_back("underline delta_R(" + K + ") <= " + to_string(*known) + detail::rat_term(-r.correction) + " = " +
                    to_string(r.bound_on_delta_under));
  return r;
}

// A knot with vanishing signature bounding an immersed disk with only negative
// double points has delta_under >= 0.
inline Verdict negative_clasp_check(const Rational& delta_under_bound, std::int64_t sigma_K) {
  if (sigma_K != 0) throw Error(Errc::SignatureNonzero, "knot signature is " + std::to_string(sigma_K));
  return delta_under_bound < 0 ? Verdict::obstructed : Verdict::no_conclusion;
}

inline ObstructionReport e2n1_pipeline(std::int64_t n) {
  if (n < 1) throw Error(Errc::InvalidInput, "n must be positive");
  if (n % 2 == 0) throw Error(Errc::EvenInput, "n = " + std::to_string(n) + " is even");
  auto move = cable_concordance(n);
  auto positive = even_torus_froyshov(2 * n, 20 * n - 1);
  auto target = mirror_dual(positive);
  auto report = obstruction_bound(move, target);
  report.verdict = negative_clasp_check(report.bound_on_delta_under, move.sig_source);
  const std::string b = to_string(report.bound_on_delta_under);
  if (report.verdict == Verdict::obstructed)
    report.trace.push_back("underline delta_R <= " + b + " : NOT SLICE (odd n)");
  else
    report.trace.push_back("underline delta_R <= " + b + " : no conclusion");
  return report;
}

}  // namespace latticeroot

#endif
