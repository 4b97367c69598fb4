#pragma once

// The Eggers-Wall tree of a quasi-ordinary polynomial: per-branch
// characteristic data (exponents, lattices, integers n_j / e_j), orders of
// coincidence, the glued tree with its 1-chain gamma and valuation v, the
// per-branch valuations nu_i, and contact chains of attached polynomials.
//
// Coincidence data is input (with validation), never computed from
// equations. Trees are immutable after construction; every query is pure.

#include <qopolar/error.hpp>
#include <qopolar/lattice.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qopolar {

struct BranchData {
  std::string name;
  Int degree = 1;               // = product of the characteristic integers
  std::vector<QVec> exponents;  // strictly increasing, finite, > 0
};

struct CharacteristicStructure {
  std::vector<Int> n;          // n_1..n_g, each >= 2
  std::vector<Int> e;          // e_0..e_g, e_g = 1, e_(j-1) = n_j * e_j
  std::vector<Lattice> m;      // M_0..M_g
};

// Lattice chain M_j = M_(j-1) + Z lambda_j over the given reference lattice,
// with indices n_j and tails e_j. Rejects lambda_j already in M_(j-1) and a
// degree that fails to match the product of the n_j.
inline CharacteristicStructure characteristic_structure(const BranchData& b,
                                                        const Lattice& reference) {
  CharacteristicStructure out;
  out.m.push_back(reference);
  for (std::size_t j = 0; j < b.exponents.size(); ++j) {
    const QVec& lam = b.exponents[j];
    if (lam.is_infinite() || !strictly_positive(lam))
      fail(errc::validation_failed,
           "branch " + b.name + ": exponent " + std::to_string(j + 1) + " must be finite and > 0");
    if (j > 0 && cmp_partial(b.exponents[j - 1], lam) != PartialOrder::less)
      fail(errc::validation_failed,
           "branch " + b.name + ": exponents must be strictly increasing, got " +
               b.exponents[j - 1].str() + " before " + lam.str());
    if (out.m.back().contains(lam))
      fail(errc::validation_failed, "branch " + b.name + ": exponent " + lam.str() +
                                        " lies in the previous lattice (index 1)");
    Lattice next = out.m.back().extend(lam);
    out.n.push_back(out.m.back().index_in(next));
    out.m.push_back(std::move(next));
  }
  out.e.assign(b.exponents.size() + 1, Int(1));
  for (std::size_t j = b.exponents.size(); j-- > 0;) out.e[j] = out.e[j + 1] * out.n[j];
  if (out.e[0] != b.degree)
    fail(errc::validation_failed, "branch " + b.name + ": degree " + b.degree.get_str() +
                                      " does not equal the product of indices " +
                                      out.e[0].get_str());
  return out;
}

// canonical identity of a tree point: its valuation plus the set of
// branches whose elementary segment passes through it
struct VertexKey {
  QVec value;
  std::vector<std::size_t> branches;  // sorted

  bool operator<(const VertexKey& o) const {
    if (value.is_infinite() != o.value.is_infinite()) return o.value.is_infinite();
    if (value.is_finite() && value != o.value) return value.lex_less(o.value);
    return branches < o.branches;
  }
  bool operator==(const VertexKey& o) const {
    return value == o.value && branches == o.branches;
  }
};

using ZeroChain = std::map<VertexKey, Int>;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const {
    std::string s;
    for (const auto& v : violations) s += v + "\n";
    return s;
  }
};

class EggersWallTree {
 public:
  struct Vertex {
    QVec value;                          // 0 at the root, +inf at leaves
    std::vector<std::size_t> branches;   // branches through this point
    bool extremal = false;
  };
  struct TreeEdge {
    std::size_t lo = 0, hi = 0;  // vertex ids, v(lo) < v(hi)
    Int gamma;                   // coefficient of the 1-chain
  };

  static ValidationReport validate(const std::vector<BranchData>& branches,
                                   const std::vector<std::vector<QVec>>& contact,
                                   const Lattice& reference) {
    ValidationReport rep;
    std::size_t s = branches.size();
    std::size_t d = reference.dim();
    if (contact.size() != s) {
      rep.violations.push_back("contact matrix must have one row per branch");
      return rep;
    }
    for (std::size_t i = 0; i < s; ++i)
      if (contact[i].size() != s) {
        rep.violations.push_back("contact matrix must be square");
        return rep;
      }
    for (std::size_t i = 0; i < s; ++i) {
      if (!contact[i][i].is_infinite())
        rep.violations.push_back("contact(" + branches[i].name + "," + branches[i].name +
                                 ") must be +inf");
      for (std::size_t j = i + 1; j < s; ++j) {
        if (contact[i][j] != contact[j][i])
          rep.violations.push_back("contact matrix must be symmetric at (" + branches[i].name +
                                   "," + branches[j].name + ")");
        if (contact[i][j].is_infinite())
          rep.violations.push_back("contact(" + branches[i].name + "," + branches[j].name +
                                   ") must be finite for distinct branches (f is reduced)");
        else if (contact[i][j].dim() != d || !strictly_positive(contact[i][j]))
          rep.violations.push_back("contact(" + branches[i].name + "," + branches[j].name +
                                   ") must be > 0 of dimension " + std::to_string(d));
      }
    }
    if (!rep.ok()) return rep;

    std::vector<CharacteristicStructure> chars;
    for (const auto& b : branches) {
      try {
        chars.push_back(characteristic_structure(b, reference));
      } catch (const error& e) {
        rep.violations.push_back(e.what());
        return rep;
      }
    }

    // total order of each V(f_i) = {exponents} u {coincidences}
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<QVec> vals = branches[i].exponents;
      for (std::size_t j = 0; j < s; ++j)
        if (j != i) vals.push_back(contact[i][j]);
      for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b)
          if (!comparable(vals[a], vals[b]))
            rep.violations.push_back("branch " + branches[i].name +
                                     ": valuation set not totally ordered: " + vals[a].str() +
                                     " vs " + vals[b].str());
    }
    if (!rep.ok()) return rep;

    // ultrametric triple rule: k(i,r) >= min{k(i,j), k(j,r)}, with equality
    // when k(i,j) != k(j,r)
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t r = i + 1; r < s; ++r) {
          if (j == i || j == r) continue;
          const QVec& kij = contact[i][j];
          const QVec& kjr = contact[j][r];
          const QVec& kir = contact[i][r];
          if (!comparable(kij, kjr)) continue;  // already reported above
          QVec m = comparable_min(kij, kjr);
          if (!leq(m, kir)) {
            rep.violations.push_back(
                "ultrametric violation at (" + branches[i].name + "," + branches[j].name + "," +
                branches[r].name + "): min{" + kij.str() + "," + kjr.str() + "} = " + m.str() +
                " is not <= " + kir.str());
            continue;
          }
          if (kij != kjr && kir != m)
            rep.violations.push_back(
                "ultrametric violation at (" + branches[i].name + "," + branches[j].name + "," +
                branches[r].name + "): expected equality with min{" + kij.str() + "," +
                kjr.str() + "} since the two differ, got " + kir.str());
        }

    // shared-prefix and lattice-coincidence constraints per pair
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        const QVec& k = contact[i][j];
        std::size_t ci = 0, cj = 0;
        while (ci < branches[i].exponents.size() && lt(branches[i].exponents[ci], k)) ++ci;
        while (cj < branches[j].exponents.size() && lt(branches[j].exponents[cj], k)) ++cj;
        if (ci != cj) {
          rep.violations.push_back("branches " + branches[i].name + "," + branches[j].name +
                                   ": different numbers of exponents below the coincidence " +
                                   k.str());
          continue;
        }
        bool prefix_ok = true;
        for (std::size_t t = 0; t < ci; ++t)
          if (branches[i].exponents[t] != branches[j].exponents[t]) prefix_ok = false;
        if (!prefix_ok) {
          rep.violations.push_back("branches " + branches[i].name + "," + branches[j].name +
                                   ": exponents below the coincidence " + k.str() +
                                   " do not agree");
          continue;
        }
        bool at_next_i =
            ci < branches[i].exponents.size() && branches[i].exponents[ci] == k;
        bool at_next_j =
            cj < branches[j].exponents.size() && branches[j].exponents[cj] == k;
        if (!at_next_i && !at_next_j && !chars[i].m[ci].contains(k))
          rep.violations.push_back("branches " + branches[i].name + "," + branches[j].name +
                                   ": coincidence " + k.str() +
                                   " is neither a next exponent nor in the shared lattice");
      }
    return rep;
  }

  EggersWallTree(std::vector<BranchData> branches, std::vector<std::vector<QVec>> contact,
                 Lattice reference)
      : branches_(std::move(branches)), contact_(std::move(contact)),
        reference_(std::move(reference)) {
    auto rep = validate(branches_, contact_, reference_);
    if (!rep.ok()) fail(errc::validation_failed, "invalid tree data:\n" + rep.str());
    for (const auto& b : branches_) chars_.push_back(characteristic_structure(b, reference_));
    build();
  }

  std::size_t xdim() const { return reference_.dim(); }
  std::size_t branch_count() const { return branches_.size(); }
  const std::vector<BranchData>& branches() const { return branches_; }
  const BranchData& branch(std::size_t i) const { return branches_[i]; }
  const CharacteristicStructure& characteristic(std::size_t i) const { return chars_[i]; }
  const QVec& contact(std::size_t i, std::size_t j) const { return contact_[i][j]; }
  const Lattice& reference_lattice() const { return reference_; }

  const std::vector<Vertex>& vertices() const { return verts_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<std::vector<std::size_t>>& branch_paths() const { return paths_; }
  std::size_t root_id() const { return root_; }

  VertexKey key_of(std::size_t vid) const {
    return VertexKey{verts_[vid].value, verts_[vid].branches};
  }

  std::optional<std::size_t> find_vertex(const VertexKey& k) const {
    auto it = key_index_.find(k);
    if (it == key_index_.end()) return std::nullopt;
    return it->second;
  }

  // non-extremal vertices in display order (min branch, then valuation)
  std::vector<std::size_t> interior_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < verts_.size(); ++v)
      if (!verts_[v].extremal) out.push_back(v);
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
      std::size_t ba = verts_[a].branches.front(), bb = verts_[b].branches.front();
      if (ba != bb) return ba < bb;
      return lt(verts_[a].value, verts_[b].value);
    });
    return out;
  }

  // boundary of an arbitrary 1-chain given by edge coefficients
  ZeroChain boundary(const std::vector<Int>& edge_coeffs) const {
    if (edge_coeffs.size() != edges_.size()) fail(errc::shape_mismatch, "boundary: edge count");
    ZeroChain out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edge_coeffs[e] == 0) continue;
      out[key_of(edges_[e].hi)] += edge_coeffs[e];
      out[key_of(edges_[e].lo)] -= edge_coeffs[e];
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  // -d(gamma_f); restricted to non-extremal vertices when asked
  ZeroChain gamma_boundary(bool interior_only = true) const {
    std::vector<Int> coeffs;
    for (const auto& e : edges_) coeffs.push_back(-e.gamma);
    ZeroChain out = boundary(coeffs);
    if (interior_only) {
      for (auto it = out.begin(); it != out.end();) {
        auto vid = find_vertex(it->first);
        bool extremal = vid && verts_[*vid].extremal;
        it = extremal ? out.erase(it) : std::next(it);
      }
    }
    return out;
  }

  // nu_i at the tree point lying on the path of branch `carrier` with
  // valuation `a` (the point need not be a vertex: contact chains subdivide)
  QVec nu_at(std::size_t i, std::size_t carrier, const QVec& a) const {
    if (i >= branches_.size() || carrier >= branches_.size())
      fail(errc::unknown_vertex, "nu_at: branch index out of range");
    if (a.is_finite() && a == QVec::zero(xdim())) return QVec::zero(xdim());
    bool on_branch_i = (i == carrier);
    if (!on_branch_i && a.is_finite()) {
      const QVec& k = contact_[i][carrier];
      on_branch_i = leq(a, k);
    }
    if (!on_branch_i || (a.is_infinite() && i != carrier))
      return nu_formula(i, contact_[i][carrier]);
    if (a.is_infinite()) return QVec::infinity(xdim());
    return nu_formula(i, a);
  }

  // nu_i of a tree vertex
  QVec nu(std::size_t i, std::size_t vid) const {
    if (vid >= verts_.size()) fail(errc::unknown_vertex, "nu: no such vertex");
    const Vertex& v = verts_[vid];
    std::size_t carrier = v.branches.front();
    for (std::size_t b : v.branches)
      if (b == i) carrier = b;
    return nu_at(i, carrier, v.value);
  }

  // invert nu_i along the path of branch i (order-preserving bijection)
  QVec nu_invert(std::size_t i, const QVec& a) const {
    if (i >= branches_.size()) fail(errc::unknown_vertex, "nu_invert: branch out of range");
    if (a.is_infinite()) return QVec::infinity(xdim());
    const auto& ch = chars_[i];
    const auto& exps = branches_[i].exponents;
    std::size_t c = 0;
    for (std::size_t j = 0; j < exps.size(); ++j) {
      QVec at_exp = nu_formula(i, exps[j]);
      auto cmp = cmp_partial(at_exp, a);
      if (cmp == PartialOrder::less || cmp == PartialOrder::equal)
        c = j + 1;
      else
        break;
    }
    QVec rest = a;
    for (std::size_t l = 0; l < c; ++l)
      rest = rest - exps[l] * Rat(ch.e[l] - ch.e[l + 1]);
    QVec lambda = rest * (Rat(1) / Rat(ch.e[c]));
    // confirm the candidate really sits on the c-th segment
    if (!strictly_positive(lambda))
      fail(errc::not_in_image, "nu_invert: value " + a.str() + " below the image of branch " +
                                   branches_[i].name);
    if (c > 0 && !leq(exps[c - 1], lambda))
      fail(errc::not_in_image, "nu_invert: value " + a.str() + " not in the image of branch " +
                                   branches_[i].name);
    if (c < exps.size() && !leq(lambda, exps[c]))
      fail(errc::not_in_image, "nu_invert: value " + a.str() + " not in the image of branch " +
                                   branches_[i].name);
    if (nu_formula(i, lambda) != a)
      fail(errc::not_in_image, "nu_invert: value " + a.str() + " not attained on branch " +
                                   branches_[i].name);
    return lambda;
  }

  // normalized resultant order rho(f_i, h)/deg h of an attached irreducible
  // h from its order of coincidence with branch i
  QVec rho_from_coincidence(std::size_t i, const QVec& k_h_i) const {
    if (k_h_i.is_infinite())
      fail(errc::validation_failed, "rho_from_coincidence: infinite coincidence");
    return nu_formula(i, k_h_i);
  }

  // gamma coefficient of the segment of branch i's path lying just above
  // valuation a (a on the path, not a leaf)
  Int gamma_above(std::size_t i, const QVec& a) const {
    const auto& exps = branches_[i].exponents;
    std::size_t c = 0;
    while (c < exps.size() && leq(exps[c], a)) ++c;
    Int g(1);
    for (std::size_t l = 0; l < c; ++l) g *= chars_[i].n[l];
    return g;
  }

  struct AttachedFactor {
    Int degree;                // deg h_j > 0
    std::vector<QVec> contact; // k(h_j, f_i) per branch, finite
  };

  // attachment point of an irreducible factor: valuation max_i k(h, f_i) on
  // the branches attaining the max
  VertexKey attachment_point(const AttachedFactor& h) const {
    if (h.contact.size() != branches_.size())
      fail(errc::shape_mismatch, "attachment: one coincidence per branch required");
    std::size_t best = 0;
    for (std::size_t i = 1; i < branches_.size(); ++i) {
      if (!comparable(h.contact[i], h.contact[best]))
        fail(errc::validation_failed, "attachment: coincidences not totally ordered");
      if (lt(h.contact[best], h.contact[i])) best = i;
    }
    VertexKey key;
    key.value = h.contact[best];
    for (std::size_t i = 0; i < branches_.size(); ++i)
      if (h.contact[i] == h.contact[best]) key.branches.push_back(i);
    return key;
  }

  // ultrametric consistency of an attached factor against the tree
  void validate_attachment(const AttachedFactor& h) const {
    for (std::size_t i = 0; i < branches_.size(); ++i)
      for (std::size_t j = 0; j < branches_.size(); ++j) {
        if (i == j) continue;
        const QVec& khi = h.contact[i];
        const QVec& kij = contact_[i][j];
        if (!comparable(khi, kij))
          fail(errc::validation_failed, "attachment inconsistency: coincidence with " +
                                            branches_[i].name + " incomparable to the tree");
        QVec m = comparable_min(khi, kij);
        if (!leq(m, h.contact[j]) || (khi != kij && h.contact[j] != m))
          fail(errc::validation_failed,
               "attachment inconsistency: ultrametric rule fails against pair (" +
                   branches_[i].name + "," + branches_[j].name + ")");
      }
  }

  // contact chain [h] = sum deg(h_j) P(h_j) of a factored attached h
  ZeroChain contact_chain(const std::vector<AttachedFactor>& factors) const {
    ZeroChain out;
    for (const auto& h : factors) {
      if (h.degree <= 0) fail(errc::validation_failed, "contact_chain: nonpositive degree");
      validate_attachment(h);
      out[attachment_point(h)] += h.degree;
    }
    return out;
  }

  bool isomorphic_to(const EggersWallTree& o) const {
    if (branches_.size() != o.branches_.size() || xdim() != o.xdim()) return false;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      if (branches_[i].degree != o.branches_[i].degree) return false;
      if (branches_[i].exponents != o.branches_[i].exponents) return false;
      for (std::size_t j = 0; j < branches_.size(); ++j)
        if (contact_[i][j] != o.contact_[i][j]) return false;
    }
    return true;
  }

 private:
  QVec nu_formula(std::size_t i, const QVec& a) const {
    // e_c * a + sum_(l<=c) (e_(l-1) - e_l) lambda_l with c = #{lambda < a}
    const auto& ch = chars_[i];
    const auto& exps = branches_[i].exponents;
    std::size_t c = 0;
    while (c < exps.size() && lt(exps[c], a)) ++c;
    QVec out = a * Rat(ch.e[c]);
    for (std::size_t l = 0; l < c; ++l) out = out + exps[l] * Rat(ch.e[l] - ch.e[l + 1]);
    return out;
  }

  void build() {
    std::size_t s = branches_.size();
    std::size_t d = xdim();
    auto intern = [&](const VertexKey& k) {
      auto it = key_index_.find(k);
      if (it != key_index_.end()) return it->second;
      std::size_t id = verts_.size();
      verts_.push_back(Vertex{k.value, k.branches, false});
      key_index_[k] = id;
      return id;
    };
    std::vector<std::size_t> all(s);
    for (std::size_t i = 0; i < s; ++i) all[i] = i;
    root_ = intern(VertexKey{QVec::zero(d), all});
    verts_[root_].extremal = true;

    paths_.assign(s, {});
    std::map<std::pair<std::size_t, std::size_t>, Int> edge_gamma;
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<QVec> vals = branches_[i].exponents;
      for (std::size_t j = 0; j < s; ++j)
        if (j != i) vals.push_back(contact_[i][j]);
      std::sort(vals.begin(), vals.end(), [](const QVec& a, const QVec& b) { return lt(a, b); });
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

      paths_[i].push_back(root_);
      QVec prev = QVec::zero(d);
      for (const QVec& a : vals) {
        VertexKey key;
        key.value = a;
        for (std::size_t j = 0; j < s; ++j)
          if (j == i || leq(a, contact_[i][j])) key.branches.push_back(j);
        std::size_t vid = intern(key);
        link(edge_gamma, paths_[i].back(), vid, gamma_above(i, prev));
        paths_[i].push_back(vid);
        prev = a;
      }
      VertexKey leaf{QVec::infinity(d), {i}};
      std::size_t lid = intern(leaf);
      verts_[lid].extremal = true;
      link(edge_gamma, paths_[i].back(), lid, gamma_above(i, prev));
      paths_[i].push_back(lid);
    }
    for (const auto& [pr, g] : edge_gamma) edges_.push_back(TreeEdge{pr.first, pr.second, g});
  }

  void link(std::map<std::pair<std::size_t, std::size_t>, Int>& edge_gamma, std::size_t lo,
            std::size_t hi, Int g) {
    auto key = std::make_pair(lo, hi);
    auto it = edge_gamma.find(key);
    if (it == edge_gamma.end())
      edge_gamma[key] = std::move(g);
    else if (it->second != g)
      fail(errc::internal, "tree gluing produced inconsistent chain coefficients");
  }

  std::vector<BranchData> branches_;
  std::vector<std::vector<QVec>> contact_;
  Lattice reference_;
  std::vector<CharacteristicStructure> chars_;

  std::vector<Vertex> verts_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<std::size_t>> paths_;
  std::map<VertexKey, std::size_t> key_index_;
  std::size_t root_ = 0;
};

}  // namespace qopolar
