// Command-line surface for the bunch-decomposition pipeline.
//
// Exit codes: 0 ok, 1 usage, 2 validation/parse failure, 3 verification
// mismatch. QOPOLAR_HULL_DIM_CAP overrides the convex-hull dimension cap.

#include <qopolar/bunches.hpp>
#include <qopolar/edge_poly.hpp>
#include <qopolar/formats.hpp>
#include <qopolar/lmw.hpp>
#include <qopolar/poly_text.hpp>
#include <qopolar/render.hpp>
#include <qopolar/resolution.hpp>
#include <qopolar/resultant.hpp>
#include <qopolar/toric.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qopolar;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string points_line(const std::vector<Point>& pts) {
  std::string out = "vertices";
  for (const auto& p : pts) {
    out += " ((";
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (i) out += ",";
      out += to_string(p[i]);
    }
    out += ")," + to_string(p.back()) + ")";
  }
  return out;
}

std::vector<Int> parse_degrees(const std::string& s) {
  std::vector<Int> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.emplace_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return out;
}

std::vector<std::string> branch_names_with_mult(const EggersWallTree& tree) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tree.branch_count(); ++i) names.push_back(tree.branch(i).name);
  names.push_back("mult");
  return names;
}

int cmd_type(const std::string& file, bool pretty) {
  auto tree = parse_tree(slurp(file));
  auto type = bunch_type_fY(tree);
  std::cout << type_to_text(type);
  if (pretty) std::cout << "\n" << type_matrix_view(type, branch_names_with_mult(tree));
  return 0;
}

int cmd_polyhedron(const std::string& file) {
  auto tree = parse_tree(slurp(file));
  for (std::size_t i = 0; i < tree.branch_count(); ++i) {
    auto p = predicted_psi_i(tree, i);
    std::cout << "branch " << tree.branch(i).name << " profile " << p.str() << "\n";
    std::cout << "branch " << tree.branch(i).name << " "
              << points_line(vertices_of_profile(p)) << "\n";
  }
  auto total = predicted_psi_total(tree);
  std::cout << "total " << points_line(total.vertices()) << "\n";
  std::cout << "total polygonal " << (total.is_polygonal() ? "yes" : "no") << "\n";
  return 0;
}

int cmd_reconstruct(const std::string& file, const std::string& degs) {
  auto type = parse_type_text(slurp(file));
  auto degrees = parse_degrees(degs);
  auto tree = reconstruct_tree(type, degrees);
  std::cout << tree_to_text(tree);
  return 0;
}

int cmd_resolve(const std::string& file) {
  auto tree = parse_tree(slurp(file));
  auto inc = bunch_incidence(tree);
  const auto& st = inc.resolution;
  for (std::size_t c = 0; c < st.components.size(); ++c) {
    const auto& rc = st.components[c];
    std::cout << "component C" << c + 1 << " vertex " << rc.original_vertex.value.str()
              << " stage " << rc.stage;
    if (rc.parent) std::cout << " refines C" << *rc.parent + 1;
    std::cout << "\n";
  }
  for (std::size_t j = 0; j < inc.type.columns().size(); ++j) {
    std::cout << "bunch " << j + 1 << " deg " << inc.type.columns()[j].multiplicity.get_str()
              << " -> component C" << inc.component_of_column[j] + 1 << "\n";
  }
  std::cout << "note: " << inc.certified_fact << "\n";
  if (tree.xdim() == 1) {
    auto graph = dead_arc_and_rupture(tree);
    for (const auto& e : graph.entries)
      std::cout << "d1 component C" << e.component + 1 << " rupture"
                << (e.dead_arc ? " dead-arc" : "") << "\n";
  }
  return 0;
}

// per-file oracle job, pure; returns (report text, ok)
std::pair<std::string, bool> oracle_one(const std::string& file, bool verify, bool total,
                                        bool with_qo) {
  std::ostringstream out;
  bool ok = true;
  SessionData session = parse_session_text(slurp(file));
  auto tree = session.build_tree();
  auto eqs = session.aligned_equations();
  SparsePoly f = SparsePoly::one(session.d);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (eqs[i].has_negative_x_exponent())
      fail(errc::validation_failed, "equation for " + tree.branch(i).name +
                                        " is Laurent; normalize it with the laurent subcommand");
    if (!eqs[i].is_monic()) fail(errc::validation_failed, "equation not monic in the session");
    if (Int(eqs[i].degree()) != tree.branch(i).degree)
      fail(errc::validation_failed,
           "equation degree does not match branch " + tree.branch(i).name);
    f = f * eqs[i];
  }
  SparsePoly polar = f.monic_derivative();
  out << "f: degree " << f.degree() << ", " << f.term_count() << " terms; polar degree "
      << polar.degree() << "\n";

  if (with_qo) {
    auto qo = is_quasi_ordinary(f);
    out << "discriminant: " << (qo.quasi_ordinary ? "monomial times unit, exponent " +
                                                        qo.form.exponent.str()
                                                  : "NOT quasi-ordinary") << "\n";
    if (!qo.quasi_ordinary) ok = false;
  }

  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (polar.degree() > 0) {
      auto r = rho(eqs[i], polar);
      out << "rho " << tree.branch(i).name << " "
          << (r.comparable ? r.rho.str() : std::string("not comparable")) << "\n";
      if (verify) {
        // the resultant order is the weighted sum of the type entries
        ZeroChain chain = tree.gamma_boundary();
        QVec want = QVec::zero(session.d);
        for (std::size_t vid : tree.interior_vertices())
          want = want + tree.nu(i, vid) * Rat(chain.at(tree.key_of(vid)));
        bool match = r.comparable && r.rho == want;
        out << (match ? "MATCH" : "MISMATCH") << " rho " << tree.branch(i).name
            << ": oracle " << (r.comparable ? r.rho.str() : std::string("-")) << ", predicted "
            << want.str() << "\n";
        if (!match) ok = false;
      }
    }
    auto img = psi_image(eqs[i], polar);
    auto hull = newton_polyhedron(img);
    out << "psi_" << tree.branch(i).name << "(f_Y) " << points_line(hull.vertices()) << "\n";
    if (verify) {
      auto predicted = predicted_psi_i(tree, i);
      auto got = profile_of_polyhedron(hull);
      bool match = got == predicted;
      out << (match ? "MATCH" : "MISMATCH") << " branch " << tree.branch(i).name
          << ": oracle profile " << got.str() << ", predicted " << predicted.str() << "\n";
      if (!match) ok = false;
    }
  }
  if (total) {
    SparsePoly lifted_total = psi_image(f, polar);
    auto hull = newton_polyhedron(lifted_total);
    out << "psi_f(f_Y) " << points_line(hull.vertices()) << "\n";
    if (verify) {
      auto predicted = predicted_psi_total(tree);
      bool match = hull == predicted;
      out << (match ? "MATCH" : "MISMATCH") << " total: oracle "
          << points_line(hull.vertices()) << ", predicted "
          << points_line(predicted.vertices()) << "\n";
      if (!match) ok = false;
    }
  }
  if (verify && !session.polar_factors.empty() && session.d == 1) {
    auto rep = lmw_verify(eqs, tree, session.polar_factors);
    for (const auto& l : rep.lines) out << l << "\n";
    if (!rep.pass) ok = false;
    out << (rep.pass ? "MATCH" : "MISMATCH") << " polar decomposition end-to-end\n";
  }
  return {out.str(), ok};
}

int cmd_oracle(const std::vector<std::string>& files, bool verify, bool total, bool with_qo) {
  std::vector<std::future<std::pair<std::string, bool>>> jobs;
  for (const auto& file : files)
    jobs.push_back(std::async(std::launch::async, oracle_one, file, verify, total, with_qo));
  bool ok = true;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto [text, good] = jobs[i].get();
    std::cout << "== " << files[i] << "\n" << text;
    ok = ok && good;
  }
  return ok ? 0 : 3;
}

int cmd_laurent(const std::string& poly, std::size_t dim, const std::string& type_file,
                const std::string& qstr, const std::string& degs) {
  if (!poly.empty()) {
    auto f = parse_polynomial(poly, dim);
    auto norm = laurent_normalize(f);
    std::cout << "q (";
    for (std::size_t i = 0; i < norm.q.size(); ++i)
      std::cout << (i ? "," : "") << norm.q[i].get_str();
    std::cout << ")\n";
    std::cout << "f " << poly_to_text(norm.f) << "\n";
    std::cout << "derivative-compatible "
              << (laurent_transform(f.derivative_main(), norm.q) == norm.f.derivative_main()
                      ? "yes"
                      : "no")
              << "\n";
  }
  if (!type_file.empty()) {
    auto type = parse_type_text(slurp(type_file));
    std::vector<Int> q;
    for (const auto& r : parse_qvec(qstr, type.xdim()).coords()) {
      if (!is_integer(r)) fail(errc::validation_failed, "laurent shift q must be integral");
      q.push_back(r.get_num());
    }
    auto shifted = shift_type(type, q, parse_degrees(degs));
    std::cout << type_to_text(shifted);
  }
  return 0;
}

int cmd_irred(const std::string& poly, std::size_t dim) {
  auto f = parse_polynomial(poly, dim);
  auto verdict = irreducibility_check(f);
  if (verdict.kind == IrreducibilityVerdict::Kind::reducible)
    std::cout << "reducible: " << verdict.witness << "\n";
  else
    std::cout << "passes-necessary-criterion (edge root " << to_string(*verdict.edge_root)
              << ")\n";
  return 0;
}

int cmd_render(const std::string& tree_file, const std::string& poly, std::size_t dim,
               const std::string& wstr) {
  if (!tree_file.empty()) {
    std::cout << tree_to_dot(parse_tree(slurp(tree_file)));
    return 0;
  }
  auto f = parse_polynomial(poly, dim);
  auto g = newton_polyhedron(f);
  std::vector<Rat> w(g.ambient_dim() - 1, Rat(1));
  if (!wstr.empty()) {
    auto qv = parse_qvec(wstr, g.ambient_dim() - 1);
    w = qv.coords();
  }
  std::cout << polyhedron_to_svg(g, w);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("QOPOLAR_HULL_DIM_CAP")) {
    int v = std::atoi(cap);
    if (v >= 1) set_hull_dimension_cap(v);
  }
  if (const char* cap = std::getenv("QOPOLAR_DENOM_CAP")) {
    Int v(cap);
    if (v >= 1) set_denominator_cap(v);
  }
  CLI::App app{"bunch decompositions of polar hypersurfaces of quasi-ordinary singularities"};
  app.require_subcommand(1);

  std::string file, degs = "", poly = "", type_file = "", qstr = "", wstr = "", tree_file = "";
  std::vector<std::string> files;
  std::size_t dim = 1;
  bool verify = false, total = false, with_qo = false, pretty = false;

  auto* c_type = app.add_subcommand("type", "bunch type of f_Y from a tree file");
  c_type->add_option("tree", file, "tree file")->required();
  c_type->add_flag("--pretty", pretty, "also print the matrix layout");

  auto* c_poly = app.add_subcommand("polyhedron", "predicted Newton polyhedra of the psi images");
  c_poly->add_option("tree", file, "tree file")->required();

  auto* c_rec = app.add_subcommand("reconstruct", "rebuild the tree from a type matrix");
  c_rec->add_option("type", file, "type file")->required();
  c_rec->add_option("--deg", degs, "comma-separated branch degrees")->required();

  auto* c_res = app.add_subcommand("resolve", "components, incidence and d=1 dead arcs");
  c_res->add_option("tree", file, "tree file")->required();

  auto* c_oracle = app.add_subcommand("oracle", "exact resultant oracle on session files");
  c_oracle->add_option("files", files, "session files")->required();
  c_oracle->add_flag("--verify", verify, "diff oracle results against tree predictions");
  c_oracle->add_flag("--total", total, "also compute psi_f(f_Y) (large resultant)");
  c_oracle->add_flag("--qo", with_qo, "also run the quasi-ordinariness check");

  auto* c_laurent = app.add_subcommand("laurent", "normalize Laurent polynomials / shift types");
  c_laurent->add_option("--poly", poly, "Laurent polynomial text");
  c_laurent->add_option("--dim", dim, "number of X variables");
  c_laurent->add_option("--shift-type", type_file, "type file to shift");
  c_laurent->add_option("--q", qstr, "integral shift vector");
  c_laurent->add_option("--deg", degs, "comma-separated branch degrees for the shift");

  auto* c_irred = app.add_subcommand("irred-check", "necessary irreducibility criterion");
  c_irred->add_option("poly", poly, "polynomial text")->required();
  c_irred->add_option("--dim", dim, "number of X variables");

  auto* c_render = app.add_subcommand("render", "DOT for trees, SVG for polyhedra");
  c_render->add_option("--tree", tree_file, "tree file to render as DOT");
  c_render->add_option("--poly", poly, "polynomial whose polyhedron to render as SVG");
  c_render->add_option("--dim", dim, "number of X variables");
  c_render->add_option("--w", wstr, "projection direction");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*c_type) return cmd_type(file, pretty);
    if (*c_poly) return cmd_polyhedron(file);
    if (*c_rec) return cmd_reconstruct(file, degs);
    if (*c_res) return cmd_resolve(file);
    if (*c_oracle) return cmd_oracle(files, verify, total, with_qo);
    if (*c_laurent) return cmd_laurent(poly, dim, type_file, qstr, degs);
    if (*c_irred) return cmd_irred(poly, dim);
    if (*c_render) return cmd_render(tree_file, poly, dim, wstr);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
