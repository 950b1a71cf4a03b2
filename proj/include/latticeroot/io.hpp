#ifndef LATTICEROOT_IO_HPP
#define LATTICEROOT_IO_HPP

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "latticeroot/equivariant.hpp"
#include "latticeroot/froyshov.hpp"
#include "latticeroot/knots.hpp"
#include "latticeroot/lattice.hpp"
#include "latticeroot/plumbing.hpp"

namespace latticeroot {

using Json = nlohmann::ordered_json;

namespace detail {

template <class J>
std::int64_t get_int(const J& j, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::InvalidInput, std::string(what) + " must be an integer");
  return j.template get<std::int64_t>();
}

template <class J>
const J& member(const J& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational_field(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw Error(Errc::InvalidInput, std::string(what) + " must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// graphs

inline Json graph_to_json(const PlumbingGraph& g) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : g.vertices()) vs.push_back({{"id", v.id}, {"weight", v.weight}});
  for (const auto& [a, b] : g.edges()) es.push_back({a, b});
  return {{"vertices", vs}, {"edges", es}};
}

inline PlumbingGraph graph_from_json(const Json& j) {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  const auto& jv = detail::member(j, "vertices");
  if (!jv.is_array()) throw Error(Errc::InvalidInput, "'vertices' must be an array");
  for (const auto& v : jv) {
    auto id = detail::get_int(detail::member(v, "id"), "vertex id");
    vs.push_back({static_cast<int>(id), detail::get_int(detail::member(v, "weight"), "vertex weight")});
  }
  if (j.contains("edges")) {
    const auto& je = j.at("edges");
    if (!je.is_array()) throw Error(Errc::InvalidInput, "'edges' must be an array");
    for (const auto& e : je) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::InvalidInput, "each edge must be a pair of ids");
      es.emplace_back(static_cast<int>(detail::get_int(e[0], "edge end")),
                      static_cast<int>(detail::get_int(e[1], "edge end")));
    }
  }
  return build_graph(std::move(vs), std::move(es));
}

inline Json seifert_to_json(const SeifertData& s) {
  Json orbits = Json::array();
  for (const auto& o : s.orbits) orbits.push_back({o.alpha, o.beta});
  return {{"central", s.central_weight}, {"orbits", orbits}};
}

inline SeifertData seifert_from_json(const Json& j) {
  SeifertData s;
  s.central_weight = detail::get_int(detail::member(j, "central"), "central weight");
  const auto& jo = detail::member(j, "orbits");
  if (!jo.is_array()) throw Error(Errc::InvalidInput, "'orbits' must be an array");
  for (const auto& o : jo) {
    if (!o.is_array() || o.size() != 2) throw Error(Errc::InvalidInput, "each orbit must be [alpha, beta]");
    s.orbits.push_back({detail::get_int(o[0], "alpha"), detail::get_int(o[1], "beta")});
  }
  return s;
}

inline Json brieskorn_to_json(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
  return {{"brieskorn", {a1, a2, a3}}};
}

// Any of the three accepted input documents.
inline PlumbingGraph any_graph_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "input must be a JSON object");
  if (j.contains("vertices")) return graph_from_json(j);
  if (j.contains("central")) return seifert_to_plumbing(seifert_from_json(j));
  if (j.contains("brieskorn")) {
    const auto& b = j.at("brieskorn");
    if (!b.is_array() || b.size() != 3) throw Error(Errc::InvalidInput, "'brieskorn' must list three exponents");
    return seifert_to_plumbing(
        brieskorn_seifert(detail::get_int(b[0], "exponent"), detail::get_int(b[1], "exponent"),
                          detail::get_int(b[2], "exponent")));
  }
  throw Error(Errc::InvalidInput, "unrecognized input: expected 'vertices', 'central' or 'brieskorn'");
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Brieskorn expressions such as "2,2n,20n-1"

namespace detail {

// Integer-coefficient linear expression in n: terms "c", "cn", "c*n", "n".
inline std::int64_t eval_linear(std::string_view expr, std::optional<std::int64_t> n) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(Errc::InvalidInput, "empty exponent");
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw Error(Errc::InvalidInput, "cannot parse exponent '" + s + "'");
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    bool has_coeff = i > start;
    std::int64_t coeff = has_coeff ? std::stoll(s.substr(start, i - start)) : 1;
    bool has_n = false;
    if (i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || s[i] != 'n') throw Error(Errc::InvalidInput, "cannot parse exponent '" + s + "'");
    }
    if (i < s.size() && s[i] == 'n') {
      has_n = true;
      ++i;
    }
    if (!has_coeff && !has_n) throw Error(Errc::InvalidInput, "cannot parse exponent '" + s + "'");
    if (has_n) {
      if (!n) throw Error(Errc::InvalidInput, "exponent '" + s + "' uses n but --n was not given");
      coeff *= *n;
    }
    total += sign * coeff;
  }
  return total;
}

}  // namespace detail

inline std::array<std::int64_t, 3> parse_brieskorn(std::string_view text, std::optional<std::int64_t> n = std::nullopt) {
  std::array<std::int64_t, 3> out{};
  std::size_t k = 0, start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (k == 3) throw Error(Errc::InvalidInput, "expected three Brieskorn exponents");
    out[k++] = detail::eval_linear(part, n);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (k != 3) throw Error(Errc::InvalidInput, "expected three Brieskorn exponents");
  return out;
}

// ---------------------------------------------------------------------------
// graded roots

inline Json root_to_json(const GradedRoot& r) {
  auto points = [](const std::vector<RootPoint>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back({{"index", p.index}, {"gr", p.grading}});
    return a;
  };
  Json nodes = Json::array();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    Json parent = r.parent[i] ? Json(*r.parent[i]) : Json(nullptr);
    nodes.push_back({{"index", r.nodes[i].index}, {"gr", r.nodes[i].grading}, {"leaf", static_cast<bool>(r.is_leaf[i])},
                     {"parent", parent}});
  }
  return {{"leaves", points(r.leaves)}, {"angles", points(r.angles)}, {"nodes", nodes},
          {"shift", to_string(r.grading_shift)}};
}

inline GradedRoot root_from_json(const Json& j) {
  auto points = [](const Json& a) {
    std::vector<RootPoint> ps;
    for (const auto& p : a)
      ps.push_back({static_cast<std::size_t>(detail::get_int(detail::member(p, "index"), "index")),
                    detail::get_int(detail::member(p, "gr"), "grading")});
    return ps;
  };
  GradedRoot r;
  r.leaves = points(detail::member(j, "leaves"));
  r.angles = points(detail::member(j, "angles"));
  for (const auto& n : detail::member(j, "nodes")) {
    r.nodes.push_back({static_cast<std::size_t>(detail::get_int(detail::member(n, "index"), "index")),
                       detail::get_int(detail::member(n, "gr"), "grading")});
    r.is_leaf.push_back(detail::member(n, "leaf").get<bool>());
    const auto& p = detail::member(n, "parent");
    if (p.is_null())
      r.parent.emplace_back();
    else
      r.parent.emplace_back(static_cast<std::size_t>(detail::get_int(p, "parent")));
  }
  if (r.parent.size() != r.nodes.size()) throw Error(Errc::InvalidInput, "inconsistent root nodes");
  r.grading_shift = detail::rational_field(detail::member(j, "shift"), "shift");
  return r;
}

inline bool operator==(const RootPoint& a, const RootPoint& b) { return a.index == b.index && a.grading == b.grading; }

inline bool identical(const GradedRoot& a, const GradedRoot& b) {
  return a.leaves == b.leaves && a.angles == b.angles && a.nodes == b.nodes && a.is_leaf == b.is_leaf &&
         a.parent == b.parent && a.grading_shift == b.grading_shift;
}

inline std::string root_to_dot(const GradedRoot& r) {
  std::ostringstream os;
  os << "digraph root {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << r.nodes[i].grading << "\"";
    if (r.is_leaf[i])
      os << ", shape=circle, style=filled, fillcolor=black, fontcolor=white";
    else
      os << ", shape=circle";
    os << "];\n";
  }
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    if (r.parent[i]) os << "  n" << *r.parent[i] << " -> n" << i << ";\n";
  os << "  label=\"shift " << to_string(r.grading_shift) << "\";\n}\n";
  return os.str();
}

inline std::string root_to_text(const GradedRoot& r) {
  std::ostringstream os;
  os << "leaves:";
  for (const auto& l : r.leaves) os << " " << l.grading;
  os << "\nangles:";
  for (const auto& a : r.angles) os << " " << a.grading;
  os << "\nshift: " << to_string(r.grading_shift) << "\nshape: " << r.canonical() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// cell models and reports

inline Json cell_model_to_json(const CellModel& m) {
  Json spheres = Json::array(), edges = Json::array();
  for (const auto& s : m.spheres) spheres.push_back({{"index", s.index}, {"dim", to_string(s.dim)}});
  for (const auto& e : m.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"dim", to_string(e.dim)}, {"central", e.central}});
  return {{"h", m.h}, {"spheres", spheres}, {"edges", edges}};
}

inline Json degree_to_json(const DegreeReport& d) {
  return {{"degree", d.degree},         {"signed_sum", d.signed_sum}, {"determinant", d.determinant.str()},
          {"determinant_one", d.determinant_one}, {"base", d.base},  {"root", root_to_json(d.root)}};
}

inline Json froyshov_to_json(const RealFroyshov& f) {
  auto opt = [](const std::optional<Rational>& v) { return v ? Json(to_string(*v)) : Json(nullptr); };
  return {{"delta", opt(f.delta)},
          {"delta_under", opt(f.delta_under)},
          {"delta_bar", opt(f.delta_bar)},
          {"provenance", provenance_name(f.provenance)}};
}

inline Json report_to_json(const ObstructionReport& r) {
  return {{"b2plus_diff", r.b2plus_diff},
          {"sigma_branched", r.sigma_branched},
          {"inequality_used", inequality_name(r.inequality_used)},
          {"correction", to_string(r.correction)},
          {"bound_on_delta_under", to_string(r.bound_on_delta_under)},
          {"verdict", verdict_name(r.verdict)},
          {"trace", r.trace}};
}

// ---------------------------------------------------------------------------
// tables

inline std::string tables(const std::string& family, std::int64_t from, std::int64_t to) {
  std::ostringstream os;
  if (family == "torus-signature") {
    os << "n,signature\n";
    for (std::int64_t n = from; n <= to; ++n) os << n << "," << torus_signature({2 * n, 1 - 20 * n}) << "\n";
  } else if (family == "sigma-gamma-wu") {
    os << "n,vertices,signature,wu_square,mubar\n";
    for (std::int64_t n = from; n <= to; ++n) {
      auto g = seifert_to_plumbing(even_brieskorn_to_seifert(2 * n, 20 * n - 1));
      os << n << "," << g.size() << "," << signature(g) << "," << wu_square(g, wu_class(g)) << ","
         << to_string(mubar(g)) << "\n";
    }
  } else if (family == "sigma-2-3-n-degrees") {
    os << "n,degree\n";
    for (std::int64_t k = from; k <= to; ++k)
      for (std::int64_t n : {12 * k - 5, 12 * k + 1})
        os << n << "," << degree_report(seifert_to_plumbing(brieskorn_to_seifert(2, 3, n))).degree << "\n";
  } else {
    throw Error(Errc::UnknownFamily, "unknown table family '" + family + "'");
  }
  return os.str();
}

}  // namespace latticeroot

#endif
