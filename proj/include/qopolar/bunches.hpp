#pragma once

// The bunch decomposition of the polar f_Y read off the Eggers-Wall tree:
// its type matrix, the predicted Newton polyhedra of the psi-images, the
// peeling of per-branch polyhedra back to a contact chain, grouping of
// factors by normalized resultant orders, and the full reconstruction of
// the tree from the type matrix and the branch degrees.

#include <qopolar/bunch_type.hpp>
#include <qopolar/eggers_wall.hpp>
#include <qopolar/error.hpp>
#include <qopolar/polyhedron.hpp>
#include <qopolar/profile.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qopolar {

// Columns in tree display order: one per non-extremal vertex P, holding
// (nu_1(P), ..., nu_s(P)) and the coefficient of P in -d(gamma).
inline BunchType bunch_type_fY(const EggersWallTree& tree) {
  std::size_t s = tree.branch_count();
  BunchType out(s, tree.xdim());
  ZeroChain chain = tree.gamma_boundary();
  Int total(0);
  for (std::size_t vid : tree.interior_vertices()) {
    auto it = chain.find(tree.key_of(vid));
    if (it == chain.end() || it->second <= 0)
      fail(errc::internal, "bunch_type_fY: interior vertex with nonpositive chain coefficient");
    BunchColumn col;
    for (std::size_t i = 0; i < s; ++i) col.values.push_back(tree.nu(i, vid));
    col.multiplicity = it->second;
    total += it->second;
    out.add_column(std::move(col));
  }
  if (!out.empty()) {
    Int degsum(0);
    for (std::size_t i = 0; i < s; ++i) degsum += tree.branch(i).degree;
    if (total != degsum - 1)
      fail(errc::internal, "bunch_type_fY: multiplicities do not sum to deg f - 1");
    // distinct columns: two vertices never share the whole nu-tuple
    auto canon = out.canonical();
    for (std::size_t j = 0; j + 1 < canon.columns().size(); ++j)
      if (canon.columns()[j].values == canon.columns()[j + 1].values)
        fail(errc::internal, "bunch_type_fY: duplicate nu-tuples across vertices");
  }
  return out;
}

// N(psi_(f_i)(f_Y)) = sum over non-extremal P of c_P / nu_i(P); always a
// polygonal profile since the nu_i values on the tree are totally ordered.
inline PolygonalProfile predicted_psi_i(const EggersWallTree& tree, std::size_t i) {
  ZeroChain chain = tree.gamma_boundary();
  std::vector<ElementaryPolyhedron> terms;
  for (std::size_t vid : tree.interior_vertices()) {
    auto it = chain.find(tree.key_of(vid));
    terms.push_back({it->second, tree.nu(i, vid)});
  }
  if (terms.empty()) return PolygonalProfile(tree.xdim(), Int(0));
  return minkowski_sum_profiles(terms);
}

// N(psi_f(f_Y)) = sum of c_P / (nu_1 + ... + nu_s)(P); not polygonal in
// general, so returned as a general polyhedron.
inline GeneralPolyhedron predicted_psi_total(const EggersWallTree& tree) {
  ZeroChain chain = tree.gamma_boundary();
  std::size_t d = tree.xdim();
  GeneralPolyhedron acc({Point(d + 1, Rat(0))});
  for (std::size_t vid : tree.interior_vertices()) {
    auto it = chain.find(tree.key_of(vid));
    QVec total = QVec::zero(d);
    for (std::size_t i = 0; i < tree.branch_count(); ++i) total = total + tree.nu(i, vid);
    acc = minkowski_sum_general(acc, elementary_to_polyhedron({it->second, total}));
  }
  return acc;
}

struct BunchGrouping {
  std::vector<std::vector<std::size_t>> classes;  // factor indices per bunch
  BunchType type;
};

// Group t factors by equality of all normalized orders rho(f_i, h_j)/deg h_j.
// rho_rows is the s x t table of raw rho values.
inline BunchGrouping group_bunches(const std::vector<std::vector<QVec>>& rho_rows,
                                   const std::vector<Int>& degrees, std::size_t d) {
  std::size_t s = rho_rows.size();
  std::size_t t = degrees.size();
  for (const auto& row : rho_rows)
    if (row.size() != t) fail(errc::shape_mismatch, "group_bunches: ragged rho table");
  std::vector<std::vector<QVec>> normalized(t);
  for (std::size_t j = 0; j < t; ++j) {
    if (degrees[j] <= 0) fail(errc::shape_mismatch, "group_bunches: nonpositive degree");
    for (std::size_t i = 0; i < s; ++i)
      normalized[j].push_back(rho_rows[i][j] * ratio(1, degrees[j].get_si()));
  }
  BunchGrouping out{{}, BunchType(s, d)};
  std::vector<long> cls(t, -1);
  for (std::size_t j = 0; j < t; ++j) {
    if (cls[j] >= 0) continue;
    long id = static_cast<long>(out.classes.size());
    out.classes.push_back({j});
    cls[j] = id;
    Int deg = degrees[j];
    for (std::size_t k = j + 1; k < t; ++k) {
      if (cls[k] >= 0) continue;
      if (normalized[k] == normalized[j]) {
        cls[k] = id;
        out.classes.back().push_back(k);
        deg += degrees[k];
      }
    }
    out.type.add_column({normalized[j], deg});
  }
  return out;
}

// Peel the collection of per-branch polygonal profiles down to the contact
// chain: repeatedly locate a tree-maximal attachment among the maximal
// profile inclinations, record it, and subtract its elementary term from
// every profile.
inline ZeroChain peel_contact(std::vector<PolygonalProfile> profiles, const EggersWallTree& tree) {
  std::size_t s = tree.branch_count();
  if (profiles.size() != s)
    fail(errc::inconsistent_profiles, "peel_contact: one profile per branch required");
  ZeroChain out;
  while (true) {
    bool any = false, all = true;
    for (const auto& p : profiles) {
      if (p.empty())
        all = false;
      else
        any = true;
    }
    if (!any) break;
    if (!all)
      fail(errc::inconsistent_profiles, "peel_contact: branch profiles exhaust at different times");
    // candidate attachment per branch: invert the maximal inclination
    struct Cand {
      std::size_t branch;
      QVec value;
    };
    std::vector<Cand> cands;
    for (std::size_t j = 0; j < s; ++j) {
      const auto& terms = profiles[j].terms();
      cands.push_back({j, tree.nu_invert(j, terms.back().inclination)});
    }
    auto strictly_below = [&](const Cand& a, const Cand& b) {
      // point (a.value on path a.branch) strictly below (b.value on path b.branch)
      if (a.branch == b.branch) return lt(a.value, b.value);
      return leq(a.value, tree.contact(a.branch, b.branch)) && lt(a.value, b.value);
    };
    std::size_t pick = 0;
    for (std::size_t j = 1; j < cands.size(); ++j)
      if (strictly_below(cands[pick], cands[j])) pick = j;
    for (std::size_t j = 0; j < cands.size(); ++j)
      if (strictly_below(cands[pick], cands[j]))
        fail(errc::inconsistent_profiles, "peel_contact: no tree-maximal attachment");
    std::size_t jb = cands[pick].branch;
    const QVec& a = cands[pick].value;
    Int c = profiles[jb].terms().back().height;
    VertexKey key;
    key.value = a;
    for (std::size_t j = 0; j < s; ++j)
      if (j == jb || leq(a, tree.contact(jb, j))) key.branches.push_back(j);
    out[key] += c;
    for (std::size_t i = 0; i < s; ++i) profiles[i].subtract_term(tree.nu_at(i, jb, a), c);
  }
  return out;
}

// Reconstruction of the Eggers-Wall tree from the type of f_Y and the
// degrees of the irreducible factors (assertion 2 of the decomposition
// theorem, implemented as its proof prescribes).
inline EggersWallTree reconstruct_tree(const BunchType& type, const std::vector<Int>& degrees) {
  std::size_t s = type.rows();
  std::size_t d = type.xdim();
  if (degrees.size() != s) fail(errc::shape_mismatch, "reconstruct_tree: one degree per row");
  const auto& cols = type.columns();
  std::size_t t = cols.size();

  if (t == 0) {
    // smooth case: a single degree-1 branch and no interior vertices
    if (s != 1 || degrees[0] != 1)
      fail(errc::inconsistent_chain,
           "reconstruct_tree: empty type is only realizable by a single smooth branch");
    std::vector<BranchData> bs{{"f1", Int(1), {}}};
    std::vector<std::vector<QVec>> contact{{QVec::infinity(d)}};
    return EggersWallTree(std::move(bs), std::move(contact), Lattice::standard(d));
  }

  // per-row on-path columns: the unique coordinatewise-minimal column among
  // those sharing each row value
  std::vector<std::vector<std::size_t>> on_path(s);
  for (std::size_t r = 0; r < s; ++r) {
    std::vector<std::size_t> order;
    std::set<std::size_t> seen;
    for (std::size_t j = 0; j < t; ++j) {
      const QVec& a = cols[j].values[r];
      std::vector<std::size_t> k_set;
      for (std::size_t l = 0; l < t; ++l)
        if (cols[l].values[r] == a) k_set.push_back(l);
      std::optional<std::size_t> minimal;
      for (std::size_t cand : k_set) {
        bool min_ok = true;
        for (std::size_t other : k_set) {
          for (std::size_t rr = 0; rr < s && min_ok; ++rr)
            if (!leq(cols[cand].values[rr], cols[other].values[rr])) min_ok = false;
        }
        if (min_ok) {
          if (minimal)
            fail(errc::no_minimal_column, "reconstruct_tree: two minimal columns for row " +
                                              std::to_string(r + 1) + " value " + a.str());
          minimal = cand;
        }
      }
      if (!minimal)
        fail(errc::no_minimal_column, "reconstruct_tree: no minimal column for row " +
                                          std::to_string(r + 1) + " value " + a.str());
      if (seen.insert(*minimal).second) order.push_back(*minimal);
    }
    // sort along the path by the row value (must be totally ordered)
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = a + 1; b < order.size(); ++b)
        if (!comparable(cols[order[a]].values[r], cols[order[b]].values[r]))
          fail(errc::inconsistent_chain,
               "reconstruct_tree: row values on one path are not totally ordered");
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return lt(cols[a].values[r], cols[b].values[r]);
    });
    on_path[r] = std::move(order);
  }

  // every column must sit on some path
  for (std::size_t j = 0; j < t; ++j) {
    bool used = false;
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t x : on_path[r])
        if (x == j) used = true;
    if (!used)
      fail(errc::inconsistent_chain,
           "reconstruct_tree: column " + std::to_string(j + 1) + " lies on no branch path");
  }

  // skeleton: per-column parent (preceding column on any path through it)
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(t, kRoot);
  std::vector<bool> parent_known(t, false);
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t m = 0; m < on_path[r].size(); ++m) {
      std::size_t j = on_path[r][m];
      std::size_t p = m == 0 ? kRoot : on_path[r][m - 1];
      if (!parent_known[j]) {
        parent[j] = p;
        parent_known[j] = true;
      } else if (parent[j] != p) {
        fail(errc::inconsistent_chain,
             "reconstruct_tree: rows disagree on the predecessor of column " +
                 std::to_string(j + 1));
      }
    }
  }

  // recover the chain coefficients: leaf edges carry the degrees, then
  // incoming(j) = sum of outgoing coefficients - c_j, resolved leaf-first
  std::vector<Int> incoming(t, Int(0));
  std::vector<bool> resolved(t, false);
  std::vector<std::set<std::size_t>> child_cols(t);
  std::vector<std::vector<Int>> leaf_out(t);
  for (std::size_t r = 0; r < s; ++r) {
    if (on_path[r].empty())
      fail(errc::inconsistent_chain, "reconstruct_tree: a branch path has no interior vertex");
    for (std::size_t m = 0; m + 1 < on_path[r].size(); ++m)
      child_cols[on_path[r][m]].insert(on_path[r][m + 1]);
    leaf_out[on_path[r].back()].push_back(degrees[r]);
  }
  // process columns by decreasing number of unresolved children
  std::size_t remaining = t;
  while (remaining > 0) {
    bool progress = false;
    for (std::size_t j = 0; j < t; ++j) {
      if (resolved[j]) continue;
      bool ready = true;
      for (std::size_t c : child_cols[j])
        if (!resolved[c]) ready = false;
      if (!ready) continue;
      Int outgoing(0);
      for (std::size_t c : child_cols[j]) outgoing += incoming[c];
      for (const Int& g : leaf_out[j]) outgoing += g;
      incoming[j] = outgoing - cols[j].multiplicity;
      if (incoming[j] < 1)
        fail(errc::inconsistent_chain, "reconstruct_tree: nonpositive chain coefficient at column " +
                                           std::to_string(j + 1));
      resolved[j] = true;
      --remaining;
      progress = true;
    }
    if (!progress)
      fail(errc::inconsistent_chain, "reconstruct_tree: cyclic column structure");
  }
  for (std::size_t j = 0; j < t; ++j)
    if (parent[j] == kRoot && incoming[j] != 1)
      fail(errc::inconsistent_chain,
           "reconstruct_tree: the chain coefficient below the first vertex must be 1");

  // branch data: characteristic vertices are the coefficient jumps
  std::vector<BranchData> bs(s);
  std::vector<std::vector<QVec>> col_value(s, std::vector<QVec>(t));  // v at column per row
  for (std::size_t r = 0; r < s; ++r) {
    bs[r].name = "f" + std::to_string(r + 1);
    bs[r].degree = degrees[r];
    std::vector<Int> gamma;  // coefficient above each on-path column
    for (std::size_t m = 0; m < on_path[r].size(); ++m) {
      bool last = m + 1 == on_path[r].size();
      gamma.push_back(last ? degrees[r] : incoming[on_path[r][m + 1]]);
    }
    std::vector<Int> n_seq;
    std::vector<std::size_t> char_cols;
    Int below = incoming[on_path[r][0]];
    for (std::size_t m = 0; m < on_path[r].size(); ++m) {
      const Int& above = gamma[m];
      if (above % below != 0 || above < below)
        fail(errc::inconsistent_chain,
             "reconstruct_tree: chain coefficients along a path do not divide");
      if (above != below) {
        n_seq.push_back(above / below);
        char_cols.push_back(on_path[r][m]);
      }
      below = above;
    }
    // e-values from the n-sequence
    std::size_t g = n_seq.size();
    std::vector<Int> e(g + 1, Int(1));
    for (std::size_t j = g; j-- > 0;) e[j] = e[j + 1] * n_seq[j];
    if (e[0] != degrees[r])
      fail(errc::inconsistent_chain,
           "reconstruct_tree: branch degree does not match the coefficient jumps");
    // exponents by inverting the valuation formula at the jumps
    std::vector<QVec> lambda;
    for (std::size_t m = 0; m < g; ++m) {
      QVec rest = cols[char_cols[m]].values[r];
      for (std::size_t l = 0; l < m; ++l) rest = rest - lambda[l] * Rat(e[l] - e[l + 1]);
      lambda.push_back(rest * (Rat(1) / Rat(e[m])));
    }
    bs[r].exponents = lambda;
    // valuation of every on-path column for this row, by inverting the
    // nu formula segment by segment
    auto nu_of = [&](const QVec& x) {
      std::size_t c = 0;
      while (c < g && lt(lambda[c], x)) ++c;
      QVec out = x * Rat(e[c]);
      for (std::size_t l = 0; l < c; ++l) out = out + lambda[l] * Rat(e[l] - e[l + 1]);
      return out;
    };
    for (std::size_t m = 0; m < on_path[r].size(); ++m) {
      std::size_t j = on_path[r][m];
      QVec a = cols[j].values[r];
      std::size_t c = 0;
      for (std::size_t l = 0; l < g; ++l) {
        auto cmpv = cmp_partial(nu_of(lambda[l]), a);
        if (cmpv == PartialOrder::less || cmpv == PartialOrder::equal)
          c = l + 1;
        else
          break;
      }
      QVec rest = a;
      for (std::size_t l = 0; l < c; ++l) rest = rest - lambda[l] * Rat(e[l] - e[l + 1]);
      col_value[r][j] = rest * (Rat(1) / Rat(e[c]));
    }
  }

  // coincidences from the greatest common columns
  std::vector<std::vector<QVec>> contact(s, std::vector<QVec>(s, QVec::infinity(d)));
  for (std::size_t r = 0; r < s; ++r)
    for (std::size_t k = r + 1; k < s; ++k) {
      std::size_t common = 0;
      while (common < on_path[r].size() && common < on_path[k].size() &&
             on_path[r][common] == on_path[k][common])
        ++common;
      if (common == 0)
        fail(errc::inconsistent_chain,
             "reconstruct_tree: branch paths share no column (disconnected tree)");
      // shared columns must form a common prefix
      for (std::size_t m = common; m < on_path[r].size(); ++m)
        for (std::size_t mm = common; mm < on_path[k].size(); ++mm)
          if (on_path[r][m] == on_path[k][mm])
            fail(errc::inconsistent_chain,
                 "reconstruct_tree: shared columns of two rows are not a common prefix");
      std::size_t bif = on_path[r][common - 1];
      if (col_value[r][bif] != col_value[k][bif])
        fail(errc::inconsistent_chain,
             "reconstruct_tree: rows disagree on the valuation of a shared vertex");
      contact[r][k] = contact[k][r] = col_value[r][bif];
    }

  EggersWallTree tree(std::move(bs), std::move(contact), Lattice::standard(d));
  if (bunch_type_fY(tree) != type)
    fail(errc::inconsistent_chain,
         "reconstruct_tree: reconstructed tree does not reproduce the input type");
  return tree;
}

}  // namespace qopolar
