// Command-line front end: builders, verifiers and demo reproductions for
// exact-arithmetic quiver representation analysis.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrt/basis.hpp"
#include "qrt/dynkin.hpp"
#include "qrt/fixtures.hpp"
#include "qrt/kronecker.hpp"
#include "qrt/preprojective.hpp"
#include "qrt/radiation.hpp"
#include "qrt/rep.hpp"
#include "qrt/schofield.hpp"

#ifndef QRT_SHARE_DIR
#define QRT_SHARE_DIR "share"
#endif

using namespace qrt;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

struct FieldChoice {
  bool rational = false;
  std::uint64_t p = kDefaultPrime;
};

FieldChoice parse_field(const std::string& s) {
  if (s == "q") return {true, 0};
  if (s.rfind("fp:", 0) == 0) {
    FieldChoice f;
    f.p = std::stoull(s.substr(3));
    if (f.p < 2) throw CLI::ValidationError("--field", "not a prime: " + s);
    for (std::uint64_t d = 2; d * d <= f.p; ++d)
      if (f.p % d == 0)
        throw CLI::ValidationError("--field", "not a prime: " + s);
    return f;
  }
  throw CLI::ValidationError("--field", "expected q or fp:<p>, got " + s);
}

// Decomposition (radical computation) is implemented over prime fields only;
// commands that rely on it refuse the rational field.
int refuse_rational(const std::string& cmd) {
  std::cerr << cmd
            << ": --field q is not supported; indecomposability and radical "
               "computations are only implemented over prime fields "
               "(use --field fp:<p>)\n";
  return kUsage;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

RepFp load_rep(const std::string& path, Fp proto) {
  return rep_from_json(load_json(path), proto);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json dims_json(const DimVector& d) { return fixtures::dims_json(d); }

Quiver build_diagram(const std::string& type, const std::string& orientation) {
  if (type.size() < 2) throw std::runtime_error("bad --type " + type);
  char family = type[0];
  std::size_t n = std::stoul(type.substr(1));
  if (family == 'a') {
    if (orientation.empty() || orientation == "default")
      return dynkin_a(n);
    if (orientation.size() != n - 1)
      throw std::runtime_error("--orientation for a" + std::to_string(n) +
                               " needs " + std::to_string(n - 1) +
                               " characters of > or <");
    std::vector<bool> fwd;
    for (char c : orientation) {
      if (c != '>' && c != '<')
        throw std::runtime_error("--orientation characters must be > or <");
      fwd.push_back(c == '>');
    }
    return dynkin_a(n, fwd);
  }
  if (!orientation.empty() && orientation != "default")
    throw std::runtime_error("--orientation is only configurable for type a");
  if (family == 'd') return dynkin_d(n);
  if (family == 'e') return dynkin_e(n);
  throw std::runtime_error("bad --type " + type + " (expected a/d/e + rank)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact-arithmetic toolkit for quiver representations: distinguished "
      "tree bases, reflection functors, preprojectives on bipartite trees, "
      "Kronecker push-down, and induction of exceptional modules"};
  app.require_subcommand(1);

  std::string field_str = "fp:" + std::to_string(kDefaultPrime);
  std::uint64_t seed = 0;
  app.add_option("--field", field_str, "coefficient field: q or fp:<p>")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized internals")
      ->capture_default_str();

  // verify-exceptional
  auto* cmd_ve = app.add_subcommand(
      "verify-exceptional",
      "check that a module is indecomposable with no self-extensions");
  std::string ve_rep;
  cmd_ve->add_option("--rep", ve_rep, "representation JSON file")->required();

  // analyze-thin
  auto* cmd_at = app.add_subcommand(
      "analyze-thin",
      "decompose the restriction to the quiver punctured at a thin vertex");
  std::string at_rep, at_vertex;
  cmd_at->add_option("--rep", at_rep, "representation JSON file")->required();
  cmd_at->add_option("--vertex", at_vertex, "thin vertex")->required();

  // radiation
  auto* cmd_rad = app.add_subcommand(
      "radiation", "test the radiation property and print the tree basis");
  std::string rad_rep, rad_origin, rad_dot;
  cmd_rad->add_option("--rep", rad_rep, "representation JSON file")
      ->required();
  cmd_rad->add_option("--origin", rad_origin, "origin vertex")->required();
  cmd_rad->add_option("--dot", rad_dot, "write the coefficient quiver as DOT");

  // dynkin
  auto* cmd_dyn = app.add_subcommand(
      "dynkin", "enumeration and structure checks on Dynkin quivers");
  std::string dyn_type, dyn_orient, dyn_check = "prop4", dyn_vertex;
  cmd_dyn->add_option("--type", dyn_type, "diagram: a<n>, d<n>, e6|e7|e8")
      ->required();
  cmd_dyn->add_option("--orientation", dyn_orient,
                      "for a<n>: string of > and < per edge");
  cmd_dyn->add_option("--check", dyn_check, "prop4 | hammock | e8")
      ->capture_default_str();
  cmd_dyn->add_option("--vertex", dyn_vertex,
                      "hammock anchor vertex (check=hammock)");

  // preproj
  auto* cmd_pp = app.add_subcommand(
      "preproj", "preprojective modules on the n-regular bipartite tree");
  std::size_t pp_n = 3, pp_t = 3;
  std::string pp_center = "sink", pp_prop7, pp_dot;
  cmd_pp->add_option("--n", pp_n, "tree valency")->required();
  cmd_pp->add_option("--t", pp_t, "index t of P(x,t)")->required();
  cmd_pp->add_option("--center", pp_center, "sink | source")
      ->capture_default_str();
  cmd_pp->add_option("--prop7", pp_prop7,
                     "kernel decomposition at a source vertex y");
  cmd_pp->add_option("--dot", pp_dot, "write the tree basis as DOT");

  // kron
  auto* cmd_kr = app.add_subcommand(
      "kron", "preprojective Kronecker modules via push-down");
  std::size_t kr_n = 3, kr_t = 1;
  std::string kr_dot;
  cmd_kr->add_option("--n", kr_n, "arrow count")->required();
  cmd_kr->add_option("--t", kr_t, "preprojective index")->required();
  cmd_kr->add_option("--dot", kr_dot, "write the tree basis as DOT");

  // schofield
  auto* cmd_sc = app.add_subcommand(
      "schofield", "synthesize an exceptional module from a triple (X,Y;E)");
  std::string sc_x, sc_y, sc_e;
  bool sc_glue = false;
  cmd_sc->add_option("--x", sc_x, "quotient-side module JSON")->required();
  cmd_sc->add_option("--y", sc_y, "submodule-side module JSON")->required();
  cmd_sc->add_option("--e", sc_e, "connecting Kronecker module JSON")
      ->required();
  cmd_sc->add_flag("--glue", sc_glue,
                   "also glue the standard bases into a tree basis");

  // demo
  auto* cmd_demo = app.add_subcommand(
      "demo", "reproduce a bundled worked example and diff expected output");
  std::string demo_name, demo_share = QRT_SHARE_DIR;
  cmd_demo->add_option("name", demo_name, "example1|3|4|5|6|7")->required();
  cmd_demo->add_option("--share", demo_share, "directory with expected/")
      ->capture_default_str();
  bool demo_emit = false;
  cmd_demo->add_flag("--emit", demo_emit,
                     "print the report without diffing (for regeneration)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    FieldChoice field = parse_field(field_str);
    Fp proto(field.p == 0 ? kDefaultPrime : field.p);

    if (cmd_ve->parsed()) {
      if (field.rational) return refuse_rational("verify-exceptional");
      RepFp m = load_rep(ve_rep, proto);
      json out;
      out["dims"] = dims_json(m.dims);
      bool indec = is_indecomposable(m);
      std::size_t self_ext = ext1_dim(m, m);
      out["indecomposable"] = indec;
      out["self_extensions"] = self_ext;
      out["exceptional"] = indec && self_ext == 0;
      std::cout << out.dump(2) << "\n";
      if (!indec) std::cerr << "verify-exceptional: module decomposes\n";
      if (self_ext > 0)
        std::cerr << "verify-exceptional: module has " << self_ext
                  << "-dimensional self-extensions\n";
      return (indec && self_ext == 0) ? kOk : kVerifyFail;
    }

    if (cmd_at->parsed()) {
      if (field.rational) return refuse_rational("analyze-thin");
      RepFp m = load_rep(at_rep, proto);
      ThinAnalysis an = analyze_thin_vertex(m, at_vertex, seed);
      json out;
      out["vertex"] = at_vertex;
      json sums = json::array();
      for (auto& s : an.summands)
        sums.push_back({{"dims", dims_json(s.dims_full)},
                        {"multiplicity", s.mult},
                        {"neighbor", s.neighbor}});
      out["summands"] = sums;
      out["orthogonal"] = an.orthogonal;
      out["exceptional_family"] = an.exceptional_family;
      out["thin_connectors"] = an.thin_connectors;
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (cmd_rad->parsed()) {
      if (field.rational) return refuse_rational("radiation");
      RepFp m = load_rep(rad_rep, proto);
      auto [ok, tree] = is_radiation(m, rad_origin);
      json out;
      out["origin"] = rad_origin;
      out["radiation"] = ok;
      if (ok) {
        IndexedBasis<Fp> b = radiation_basis(m, rad_origin, {m.proto.one()}, seed);
        CoefficientQuiver cq = coefficient_quiver(m, b);
        out["tree"] = to_json(cq);
        if (!rad_dot.empty()) write_file(rad_dot, to_dot(cq));
      } else {
        std::cerr << "radiation: no radiation structure at " << rad_origin
                  << "\n";
      }
      std::cout << out.dump(2) << "\n";
      return ok ? kOk : kVerifyFail;
    }

    if (cmd_dyn->parsed()) {
      if (field.rational) return refuse_rational("dynkin");
      Quiver q = build_diagram(dyn_type, dyn_orient);
      if (!is_dynkin(q)) {
        std::cerr << "dynkin: " << dyn_type << " failed the Dynkin test\n";
        return kVerifyFail;
      }
      json out;
      out["type"] = dyn_type;
      if (dyn_check == "prop4") {
        Prop4Report r = verify_prop4(q, seed);
        out["indecomposables"] = r.modules;
        out["pairs_checked"] = r.pairs_checked;
        json viol = json::array();
        for (auto& [d, why] : r.violations)
          viol.push_back({{"dims", dims_json(d)}, {"reason", why}});
        out["violations"] = viol;
        json nothin = json::array();
        for (auto& d : r.no_thin_vertex) nothin.push_back(dims_json(d));
        out["no_thin_vertex"] = nothin;
        out["ok"] = r.ok;
        std::cout << out.dump(2) << "\n";
        return r.ok ? kOk : kVerifyFail;
      }
      if (dyn_check == "hammock") {
        if (dyn_vertex.empty())
          throw std::runtime_error("--check hammock needs --vertex");
        Hammock h = hammock_support(q, dyn_vertex, proto);
        out["vertex"] = dyn_vertex;
        out["members"] = h.members.size();
        out["order_antisymmetric"] = h.order_antisymmetric;
        json anti = json::array();
        for (auto& tri : h.antichains3) {
          json t = json::array();
          for (std::size_t idx : tri)
            t.push_back(dims_json(h.members[idx].rep.dims));
          anti.push_back(t);
        }
        out["antichains3"] = anti;
        std::cout << out.dump(2) << "\n";
        return kOk;
      }
      if (dyn_check == "e8") {
        TreeBasisResult r = e8_maximal_tree_basis(q, seed, proto);
        CoefficientQuiver cq = coefficient_quiver(r.rep, r.basis);
        out["dims"] = dims_json(r.rep.dims);
        out["tree_nodes"] = cq.nodes.size();
        out["tree_edges"] = cq.edges.size();
        bool ok = is_tree_basis(r.rep, r.basis) && is_exceptional(r.rep);
        out["ok"] = ok;
        std::cout << out.dump(2) << "\n";
        return ok ? kOk : kVerifyFail;
      }
      throw std::runtime_error("unknown --check " + dyn_check);
    }

    if (cmd_pp->parsed()) {
      if (field.rational) return refuse_rational("preproj");
      CenterKind kind =
          pp_center == "source" ? CenterKind::Source : CenterKind::Sink;
      if (pp_center != "source" && pp_center != "sink")
        throw std::runtime_error("--center must be sink or source");
      ColoredTreeBall ball = regular_tree_ball(pp_n, kind, pp_t);
      Preprojective p = preprojective(ball.quiver, ball.center, pp_t, seed, proto);
      json out;
      out["dims"] = dims_json(p.rep.dims);
      json shells = json::array();
      for (std::size_t s = 0; s <= pp_t; ++s) {
        std::set<std::size_t> vals;
        for (auto& [v, dep] : ball.depth)
          if (dep == s) vals.insert(p.rep.dim(v));
        shells.push_back(json(vals));
      }
      out["shell_dims"] = shells;
      out["origin"] = p.origin;
      if (!pp_dot.empty())
        write_file(pp_dot, to_dot(coefficient_quiver(p.rep, p.basis)));
      if (!pp_prop7.empty()) {
        Prop7Report r = prop7_sequence(ball.quiver, ball.center, pp_prop7,
                                       seed, proto);
        json exp = json::array();
        for (auto& [z, s] : r.expected) exp.push_back({{"z", z}, {"t", s}});
        out["prop7"] = {{"expected", exp},
                        {"summands_match", r.summands_match},
                        {"orthogonal_bricks", r.orthogonal_bricks},
                        {"exceptional_family", r.exceptional_family},
                        {"ok", r.ok}};
        std::cout << out.dump(2) << "\n";
        return r.ok ? kOk : kVerifyFail;
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (cmd_kr->parsed()) {
      if (field.rational) return refuse_rational("kron");
      KronPreprojective k = kron_preprojective(kr_n, kr_t, seed, proto);
      json out;
      out["dims"] = dims_json(k.rep.dims);
      auto [ds, dt] = kron_preprojective_dims(kr_n, kr_t);
      out["oracle_dims"] = {{"a", ds}, {"b", dt}};
      bool ok = k.rep.dim("a") == ds && k.rep.dim("b") == dt &&
                is_exceptional(k.rep) && is_tree_basis(k.rep, k.basis);
      out["exceptional"] = is_exceptional(k.rep);
      out["tree_basis"] = is_tree_basis(k.rep, k.basis);
      if (!kr_dot.empty())
        write_file(kr_dot, to_dot(coefficient_quiver(k.rep, k.basis)));
      std::cout << out.dump(2) << "\n";
      return ok ? kOk : kVerifyFail;
    }

    if (cmd_sc->parsed()) {
      json out;
      if (field.rational) {
        if (sc_glue) return refuse_rational("schofield --glue");
        Rat rproto;
        auto x = rep_from_json(load_json(sc_x), rproto);
        auto y = rep_from_json(load_json(sc_y), rproto);
        auto e = rep_from_json(load_json(sc_e), rproto);
        auto zeta = ext_cocycle_basis(x, y);
        auto m = synthesize(x, y, e, zeta);
        out["dims"] = dims_json(m.dims);
        out["rep"] = to_json(m);
        std::cout << out.dump(2) << "\n";
        return kOk;
      }
      RepFp x = load_rep(sc_x, proto);
      RepFp y = load_rep(sc_y, proto);
      RepFp e = load_rep(sc_e, proto);
      if (sc_glue) {
        GlueResult g = glue_tree_basis(x, y, e, standard_basis(x),
                                       standard_basis(y), standard_basis(e));
        out["dims"] = dims_json(g.rep.dims);
        CoefficientQuiver cq = coefficient_quiver(g.rep, g.basis);
        out["tree_nodes"] = cq.nodes.size();
        out["tree_edges"] = cq.edges.size();
        out["rep"] = to_json(g.rep);
        std::cout << out.dump(2) << "\n";
        return kOk;
      }
      auto zeta = ext_cocycle_basis(x, y);
      RepFp m = synthesize(x, y, e, zeta);
      out["dims"] = dims_json(m.dims);
      out["exceptional"] = is_exceptional(m);
      out["rep"] = to_json(m);
      std::cout << out.dump(2) << "\n";
      return is_exceptional(m) ? kOk : kVerifyFail;
    }

    if (cmd_demo->parsed()) {
      if (field.rational) return refuse_rational("demo");
      if (demo_name.rfind("example", 0) != 0 || demo_name.size() != 8)
        throw std::runtime_error("demo name must be example1|3|4|5|6|7");
      int k = demo_name[7] - '0';
      json report = fixtures::example_report(k, proto);
      std::cout << report.dump(2) << "\n";
      if (demo_emit) return kOk;
      json expected =
          load_json(demo_share + "/expected/" + demo_name + ".json");
      if (report != expected) {
        std::cerr << "demo: report differs from bundled expected output\n";
        return kVerifyFail;
      }
      return kOk;
    }

    std::cerr << "no subcommand\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
