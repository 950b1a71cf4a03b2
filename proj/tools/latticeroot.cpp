// Command-line front end: one verb per library operation chain.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "latticeroot/io.hpp"

namespace lr = latticeroot;

namespace {

constexpr const char* kVersion = "latticeroot 1.0.0";

struct Options {
  std::string format = "text";
  std::string out;
  std::optional<int> base;
  std::string truncation = "auto";
  std::optional<std::int64_t> h;
  bool assert_ar = false;
  bool verbose = false;
  std::string graph_file;
  std::string brieskorn;
  std::optional<std::int64_t> n;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (auto a : allowed)
    if (o.format == a) return;
  std::string msg = "--format " + o.format + " is not available here (choose from";
  for (auto a : allowed) msg += std::string(" ") + a;
  throw UsageError(msg + ")");
}

lr::TruncationPolicy policy_of(const Options& o) {
  lr::TruncationPolicy p;
  if (o.truncation == "auto") return p;
  if (o.truncation.rfind("cap=", 0) == 0) {
    try {
      p.max_points = std::stoll(o.truncation.substr(4));
    } catch (const std::exception&) {
      throw UsageError("bad --truncation value '" + o.truncation + "'");
    }
    if (*p.max_points < 1) throw UsageError("--truncation cap must be positive");
    return p;
  }
  throw UsageError("--truncation must be auto or cap=N");
}

lr::PlumbingGraph load_graph(const Options& o) {
  if (!o.graph_file.empty() && !o.brieskorn.empty()) throw UsageError("give either a graph file or --brieskorn, not both");
  lr::PlumbingGraph g;
  if (!o.graph_file.empty()) {
    g = lr::any_graph_from_json(lr::parse_json_text(read_file(o.graph_file)));
  } else if (!o.brieskorn.empty()) {
    auto a = lr::parse_brieskorn(o.brieskorn, o.n);
    g = lr::seifert_to_plumbing(lr::brieskorn_seifert(a[0], a[1], a[2]));
  } else {
    throw UsageError("an input graph is required (--graph FILE or --brieskorn a,b,c)");
  }
  if (!o.assert_ar)
    if (auto w = lr::almost_rational_warning(g)) std::cerr << "warning: " << *w << "\n";
  return g;
}

void add_graph_inputs(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph,--pretzel-graph,input", o.graph_file, "graph, Seifert or Brieskorn JSON file");
  cmd->add_option("--brieskorn", o.brieskorn, "Brieskorn exponents, e.g. 2,3,7 or 2,2n,20n-1");
  cmd->add_option("--n", o.n, "value substituted for n in --brieskorn");
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{"Lattice homology, graded roots and real Froyshov bounds for plumbed 3-manifolds"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  app.add_option("--format", o.format, "text, json, dot or csv")
      ->check(CLI::IsMember({"text", "json", "dot", "csv"}));
  app.add_option("--out", o.out, "write the result to this path");
  app.add_option("--base", o.base, "base vertex id for the computation sequence");
  app.add_option("--truncation", o.truncation, "auto or cap=N");
  app.add_option("--h", o.h, "even stabilization for cell models");
  app.add_flag("--assert-ar", o.assert_ar, "the graph is known to be almost rational");
  app.add_flag("--verbose", o.verbose, "print the version");

  auto* c_graph = app.add_subcommand("graph", "normalized plumbing graph");
  auto* c_sig = app.add_subcommand("signature", "signature of the intersection form");
  auto* c_wu = app.add_subcommand("wu", "spherical Wu class");
  auto* c_mubar = app.add_subcommand("mubar", "Neumann-Siebenmann invariant");
  auto* c_root = app.add_subcommand("graded-root", "graded root of the canonical spin^c structure");
  auto* c_deg = app.add_subcommand("degree", "Miyazawa degree from the graded root");
  for (auto* c : {c_graph, c_sig, c_wu, c_mubar, c_root, c_deg}) {
    add_graph_inputs(c, o);
    c->fallthrough();
  }

  std::int64_t tp = 0, tq = 0;
  auto* c_tsig = app.add_subcommand("torus-sig", "signature of T_{p,q}");
  c_tsig->add_option("p", tp)->required();
  c_tsig->add_option("q", tq)->required();
  c_tsig->fallthrough();

  std::int64_t fp = 0, fq = 0;
  auto* c_fr = app.add_subcommand("froyshov", "real Froyshov invariants of T_{p,q} (p even or two-bridge)");
  c_fr->add_option("p", fp)->required();
  c_fr->add_option("q", fq)->required();
  c_fr->fallthrough();

  std::string move_file;
  auto* c_obs = app.add_subcommand("obstruct", "concordance inequality for a move given as JSON");
  c_obs->add_option("move", move_file)->required();
  c_obs->fallthrough();

  std::int64_t cable_n = 0;
  auto* c_cable = app.add_subcommand("cable-case", "sliceness obstruction for E_{2n,1}");
  c_cable->add_option("n", cable_n)->required();
  c_cable->fallthrough();

  std::string family;
  std::int64_t from = 1, to = 0;
  auto* c_tab = app.add_subcommand("tables", "CSV tables for the standard families");
  c_tab->add_option("family", family)->required();
  c_tab->add_option("from", from)->required();
  c_tab->add_option("to", to)->required();
  c_tab->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (o.verbose) std::cerr << kVersion << "\n";

  if (c_graph->parsed()) {
    auto g = load_graph(o);
    require_format(o, {"text", "json"});
    if (o.format == "json") {
      emit(o, lr::graph_to_json(g).dump(2) + "\n");
    } else {
      std::ostringstream os;
      for (const auto& v : g.vertices()) os << "vertex " << v.id << " " << v.weight << "\n";
      for (const auto& [a, b] : g.edges()) os << "edge " << a << " " << b << "\n";
      emit(o, os.str());
    }
  } else if (c_sig->parsed()) {
    auto g = load_graph(o);
    require_format(o, {"text", "json"});
    auto s = lr::signature(g);
    emit(o, o.format == "json" ? lr::Json{{"signature", s}}.dump(2) + "\n" : std::to_string(s) + "\n");
  } else if (c_wu->parsed()) {
    auto g = load_graph(o);
    require_format(o, {"text", "json"});
    auto w = lr::wu_class(g);
    lr::Json support = lr::Json::array();
    for (std::size_t v = 0; v < g.size(); ++v)
      if (w.coefficients[v]) support.push_back(g.id_of(v));
    auto sq = lr::wu_square(g, w);
    if (o.format == "json") {
      emit(o, lr::Json{{"support", support}, {"square", sq}}.dump(2) + "\n");
    } else {
      std::string ids;
      for (const auto& s : support) ids += (ids.empty() ? "" : " ") + std::to_string(s.get<int>());
      emit(o, "support: " + ids + "\nsquare: " + std::to_string(sq) + "\n");
    }
  } else if (c_mubar->parsed()) {
    auto g = load_graph(o);
    require_format(o, {"text", "json"});
    auto m = lr::to_string(lr::mubar(g));
    emit(o, o.format == "json" ? lr::Json{{"mubar", m}}.dump(2) + "\n" : m + "\n");
  } else if (c_root->parsed()) {
    auto g = load_graph(o);
    require_format(o, {"text", "json", "dot"});
    auto spin = lr::spin_class(g);
    auto path = lr::full_sequence(g, spin, o.base.value_or(lr::default_base(g)), policy_of(o));
    auto root = lr::graded_root(path);
    if (o.format == "json")
      emit(o, lr::root_to_json(root).dump(2) + "\n");
    else if (o.format == "dot")
      emit(o, lr::root_to_dot(root));
    else
      emit(o, lr::root_to_text(root));
  } else if (c_deg->parsed()) {
    auto g = load_graph(o);
    require_format(o, {"text", "json"});
    auto d = lr::degree_report(g, o.base, policy_of(o));
    if (!d.determinant_one)
      std::cerr << "warning: |det| = " << d.determinant.str() << ", the degree formula assumes an integral homology sphere\n";
    if (o.format == "json") {
      auto j = lr::degree_to_json(d);
      auto path = lr::full_sequence(g, lr::spin_class(g), d.base, policy_of(o));
      auto model = lr::build_cell_model(path, o.h);
      j["cells"] = lr::cell_model_to_json(model);
      j["euler_fixed"] = lr::euler_char_fixed(lr::conjugation_fixed_model(model));
      emit(o, j.dump(2) + "\n");
    } else {
      emit(o, std::to_string(d.degree) + "\n");
    }
  } else if (c_tsig->parsed()) {
    require_format(o, {"text", "json"});
    auto s = lr::torus_signature({tp, tq});
    emit(o, o.format == "json" ? lr::Json{{"signature", s}}.dump(2) + "\n" : std::to_string(s) + "\n");
  } else if (c_fr->parsed()) {
    require_format(o, {"text", "json"});
    lr::RealFroyshov f;
    const bool even = fp % 2 == 0 && fp > 0;
    if (even && fq > 0)
      f = lr::even_torus_froyshov(fp, fq);
    else if (even && fq < 0)
      f = lr::mirror_dual(lr::even_torus_froyshov(fp, -fq));
    else
      f = lr::lens_froyshov({fp, fq});
    if (o.format == "json") {
      emit(o, lr::froyshov_to_json(f).dump(2) + "\n");
    } else {
      emit(o, "delta_R " + lr::to_string(*f.delta) + "\nunderline delta_R " + lr::to_string(*f.delta_under) +
                  "\nbar delta_R " + lr::to_string(*f.delta_bar) + "\nprovenance " + lr::provenance_name(f.provenance) +
                  "\n");
    }
  } else if (c_obs->parsed()) {
    require_format(o, {"text", "json"});
    auto j = lr::parse_json_text(read_file(move_file));
    lr::ConcordanceMove m;
    m.ambient_sig = lr::detail::get_int(lr::detail::member(j, "ambient_sig"), "ambient_sig");
    m.ambient_b2plus = lr::detail::get_int(lr::detail::member(j, "ambient_b2plus"), "ambient_b2plus");
    for (const auto& c : lr::detail::member(j, "surface_class")) m.surface_class.push_back(lr::detail::get_int(c, "class"));
    m.sig_source = lr::detail::get_int(lr::detail::member(j, "sig_source"), "sig_source");
    m.sig_target = lr::detail::get_int(lr::detail::member(j, "sig_target"), "sig_target");
    if (j.contains("source")) m.source_name = j["source"].get<std::string>();
    if (j.contains("target")) m.target_name = j["target"].get<std::string>();
    lr::RealFroyshov t;
    const auto& jt = lr::detail::member(j, "target_froyshov");
    for (auto [key, slot] : {std::pair{"delta", &t.delta}, {"delta_under", &t.delta_under}, {"delta_bar", &t.delta_bar}})
      if (jt.contains(key) && !jt[key].is_null()) *slot = lr::detail::rational_field(jt[key], key);
    lr::validate(t);
    auto r = lr::obstruction_bound(m, t);
    if (m.sig_source == 0) {
      r.verdict = lr::negative_clasp_check(r.bound_on_delta_under, m.sig_source);
      if (r.verdict == lr::Verdict::obstructed)
        r.trace.push_back("underline delta_R(" + m.source_name + ") < 0 : no immersed disk with only negative double points");
    }
    if (o.format == "json") {
      emit(o, lr::report_to_json(r).dump(2) + "\n");
    } else {
      std::string s;
      for (const auto& l : r.trace) s += l + "\n";
      emit(o, s);
    }
  } else if (c_cable->parsed()) {
    require_format(o, {"text", "json"});
    auto r = lr::e2n1_pipeline(cable_n);
    if (o.format == "json") {
      emit(o, lr::report_to_json(r).dump(2) + "\n");
    } else {
      std::string s;
      for (const auto& l : r.trace) s += l + "\n";
      emit(o, s);
    }
  } else if (c_tab->parsed()) {
    require_format(o, {"text", "csv"});
    emit(o, lr::tables(family, from, to));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
