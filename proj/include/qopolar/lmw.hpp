#pragma once

// End-to-end d = 1 verification: from an explicit product equation and a
// caller-supplied factorization of its polar, check the oracle bunch type
// against the tree, route every bunch to its exceptional component, and
// report the rupture / dead-arc picture. Factorization of the polar is the
// caller's input; each factor is cross-checked (product identity plus the
// necessary irreducibility criterion).

#include <qopolar/bunches.hpp>
#include <qopolar/edge_poly.hpp>
#include <qopolar/eggers_wall.hpp>
#include <qopolar/error.hpp>
#include <qopolar/profile.hpp>
#include <qopolar/resolution.hpp>
#include <qopolar/resultant.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace qopolar {

struct LmwReport {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const std::string& s) { lines.push_back(s); }
  void problem(const std::string& s) {
    pass = false;
    lines.push_back("FAIL: " + s);
  }
};

inline LmwReport lmw_verify(const std::vector<SparsePoly>& branch_equations,
                            const EggersWallTree& tree,
                            const std::vector<SparsePoly>& polar_factors) {
  if (tree.xdim() != 1) fail(errc::dimension_mismatch, "lmw_verify: requires d = 1");
  if (branch_equations.size() != tree.branch_count())
    fail(errc::shape_mismatch, "lmw_verify: one equation per branch required");
  LmwReport rep;

  SparsePoly f = SparsePoly::one(1);
  for (std::size_t i = 0; i < branch_equations.size(); ++i) {
    const SparsePoly& fi = branch_equations[i];
    if (!fi.is_monic()) fail(errc::not_monic, "lmw_verify: branch equation not monic");
    if (Int(fi.degree()) != tree.branch(i).degree)
      fail(errc::shape_mismatch, "lmw_verify: equation degree differs from the tree branch " +
                                     tree.branch(i).name);
    f = f * fi;
  }

  // tangent-cone / good-coordinate precondition: (0, deg f) is a vertex and
  // the Newton polygon is the one the tree predicts
  KappaData kd = kappa(tree);
  GeneralPolyhedron nf = newton_polyhedron(f);
  bool top_vertex = false;
  for (const auto& v : nf.vertices())
    if (v[0] == 0 && v[1] == Rat(f.degree())) top_vertex = true;
  if (!top_vertex)
    fail(errc::good_coordinate, "lmw_verify: (0, deg f) is not a vertex of the Newton polygon");
  {
    std::vector<ElementaryPolyhedron> predicted;
    for (std::size_t i = 0; i < tree.branch_count(); ++i)
      if (kd.kappa[i].is_finite())
        predicted.push_back({tree.branch(i).degree, kd.kappa[i]});
    if (!predicted.empty()) {
      auto want = minkowski_sum_profiles(predicted);
      auto got = profile_of_polyhedron(nf);
      if (want != got)
        fail(errc::good_coordinate,
             "lmw_verify: Newton polygon of f is not the tree-predicted one (" + got.str() +
                 " vs " + want.str() + ")");
    }
  }

  // the polar and its factorization
  SparsePoly polar = f.monic_derivative();
  SparsePoly prod = SparsePoly::one(1);
  for (const auto& h : polar_factors) prod = prod * h;
  if (prod != polar) {
    rep.problem("supplied factors do not multiply to the polar");
    return rep;
  }
  rep.note("polar factorization check: product equals f_Y exactly");
  if (polar.degree() <= 0) {
    rep.note("smooth case: empty polar, empty rupture set, vacuous pass");
    return rep;
  }
  for (std::size_t j = 0; j < polar_factors.size(); ++j) {
    if (polar_factors[j].term_count() < 2) continue;  // monomial factors are variables
    auto verdict = irreducibility_check(polar_factors[j]);
    if (verdict.kind == IrreducibilityVerdict::Kind::reducible)
      rep.problem("polar factor " + std::to_string(j + 1) +
                  " fails the necessary irreducibility criterion: " + verdict.witness);
  }
  if (!rep.pass) return rep;

  // oracle rho table and the resulting bunch type
  std::vector<std::vector<QVec>> table(branch_equations.size());
  std::vector<Int> degrees;
  for (const auto& h : polar_factors) degrees.push_back(Int(h.degree()));
  for (std::size_t i = 0; i < branch_equations.size(); ++i)
    for (const auto& h : polar_factors) {
      RhoResult r = rho(branch_equations[i], h);
      if (!r.comparable) {
        rep.problem("a polar factor is not comparable to branch " + tree.branch(i).name);
        return rep;
      }
      table[i].push_back(r.rho);
    }
  BunchGrouping grouping = group_bunches(table, degrees, 1);
  BunchType predicted = bunch_type_fY(tree);
  if (grouping.type != predicted) {
    rep.problem("oracle bunch type differs from the tree prediction");
    return rep;
  }
  rep.note("oracle bunch type matches the tree prediction (" +
           std::to_string(grouping.type.columns().size()) + " bunches)");

  // incidence and the rupture / dead-arc picture
  BunchIncidence inc = bunch_incidence(tree);
  DualGraphD1 graph = dead_arc_and_rupture(tree);
  std::vector<bool> hit(inc.resolution.components.size(), false);
  for (const auto& col : grouping.type.columns()) {
    // locate the tree column with the same value tuple
    bool found = false;
    auto interior = tree.interior_vertices();
    for (std::size_t c = 0; c < inc.type.columns().size(); ++c) {
      if (inc.type.columns()[c].values == col.values) {
        hit[inc.component_of_column[c]] = true;
        found = true;
        break;
      }
    }
    if (!found) rep.problem("an oracle bunch matches no component");
  }
  for (std::size_t c = 0; c < hit.size(); ++c) {
    const auto& entry = graph.entries[c];
    std::string line = "component at v = " + entry.valuation.str() + " (stage " +
                       std::to_string(entry.stage) + "): rupture vertex" +
                       (entry.dead_arc ? " with dead arc" : "") +
                       (hit[c] ? ", hit by its bunch" : "");
    if (!hit[c])
      rep.problem("rupture component at v = " + entry.valuation.str() + " receives no bunch");
    else
      rep.note(line);
  }

  // strict-transform spot check: each polar factor's polyhedron sits inside
  // the elementary polyhedron of its root-stage kappa exponent
  for (std::size_t j = 0; j < polar_factors.size(); ++j) {
    // bunch of this factor, then its root-ancestor component
    std::vector<QVec> tuple;
    for (std::size_t i = 0; i < branch_equations.size(); ++i)
      tuple.push_back(table[i][j] * ratio(1, polar_factors[j].degree()));
    std::size_t comp = static_cast<std::size_t>(-1);
    auto interior = tree.interior_vertices();
    for (std::size_t c = 0; c < inc.type.columns().size(); ++c)
      if (inc.type.columns()[c].values == tuple) comp = inc.component_of_column[c];
    if (comp == static_cast<std::size_t>(-1)) continue;
    while (inc.resolution.components[comp].parent) comp = *inc.resolution.components[comp].parent;
    const QVec& lam = inc.resolution.components[comp].stage_value;
    GeneralPolyhedron bound =
        elementary_to_polyhedron({Int(polar_factors[j].degree()), lam});
    bool inside = true;
    for (const auto& ptv : polar_factors[j].support_points(true))
      if (!bound.contains(ptv)) inside = false;
    if (!inside)
      rep.problem("polar factor " + std::to_string(j + 1) +
                  " leaves the first-stage elementary polyhedron");
    else
      rep.note("polar factor " + std::to_string(j + 1) +
               " is supported inside the elementary polyhedron of inclination " + lam.str() +
               " as the strict-transform rule requires");
  }
  return rep;
}

}  // namespace qopolar
