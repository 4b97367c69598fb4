#pragma once

// Newton polyhedra: convex hulls of finite point sets plus the nonnegative
// orthant as recession cone, with exact rational arithmetic throughout.
// Facets are enumerated by brute force over generator subsets of the
// homogenization cone; this is a desk-scale kernel, capped at ambient
// dimension 4 by default (override via set_hull_dimension_cap).

#include <qopolar/error.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace qopolar {

using Point = std::vector<Rat>;  // a point of Q^n

inline int& hull_dimension_cap() {
  static int cap = 4;
  return cap;
}
inline void set_hull_dimension_cap(int cap) { hull_dimension_cap() = cap; }

namespace detail {

// rank of a rational matrix (destructive Gauss)
inline std::size_t rat_rank(std::vector<std::vector<Rat>> m) {
  std::size_t rank = 0;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// 1-dimensional nullspace of a k x (k+1) rational matrix, or empty if the
// rank is below k. Returned as a primitive integer vector.
inline std::vector<Int> nullspace_1d(std::vector<std::vector<Rat>> m) {
  std::size_t k = m.size();
  std::size_t n = k + 1;
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < k; ++c) {
    std::size_t piv = rank;
    while (piv < k && m[piv][c] == 0) ++piv;
    if (piv == k) continue;
    std::swap(m[rank], m[piv]);
    Rat lead = m[rank][c];
    for (std::size_t j = c; j < n; ++j) m[rank][j] /= lead;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank < k) return {};
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<Rat> w(n, Rat(0));
  w[free_col] = 1;
  for (std::size_t r = 0; r < rank; ++r) w[pivot_col[r]] = -m[r][free_col];
  Int den(1);
  for (auto& x : w) den = lcm_int(den, x.get_den());
  std::vector<Int> out(n);
  Int g(0);
  for (std::size_t i = 0; i < n; ++i) {
    Rat scaled = w[i] * Rat(den);
    out[i] = scaled.get_num();
    g = gcd_int(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace detail

struct Facet {
  std::vector<Rat> normal;  // inner normal a, all entries >= 0
  Rat offset;               // P lies in { x : <a, x> >= offset }
};

struct CompactFace {
  int dim = 0;
  std::vector<Point> vertices;       // sorted lexicographically
  std::vector<Rat> witness_normal;   // strictly positive, exposes the face
};

class GeneralPolyhedron {
 public:
  // conv(points) + R^n_{>=0}, stored with an irredundant vertex set.
  explicit GeneralPolyhedron(std::vector<Point> points) {
    if (points.empty()) fail(errc::zero_polynomial, "GeneralPolyhedron: no points");
    n_ = points[0].size();
    if (n_ == 0) fail(errc::dimension_mismatch, "GeneralPolyhedron: dimension 0");
    for (const auto& p : points)
      if (p.size() != n_) fail(errc::dimension_mismatch, "GeneralPolyhedron: mixed dimensions");
    if (static_cast<int>(n_) > hull_dimension_cap())
      fail(errc::dimension_too_large, "GeneralPolyhedron: ambient dimension above hull cap");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    prune_dominated(points);
    prune_pairs(points);
    build_facets(points);
    keep_vertices(points);
  }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Point>& vertices() const { return verts_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool operator==(const GeneralPolyhedron& o) const {
    return n_ == o.n_ && verts_ == o.verts_;
  }
  bool operator!=(const GeneralPolyhedron& o) const { return !(*this == o); }

  bool contains(const Point& x) const {
    for (const auto& f : facets_)
      if (dot(f.normal, x) < f.offset) return false;
    return true;
  }

  std::vector<CompactFace> compact_faces() const {
    // seed the face lattice with facet incidence data, then close under
    // pairwise intersection; a face is compact iff no coordinate ray lies
    // in it, iff its witness normal is strictly positive.
    struct Face {
      std::set<std::size_t> verts;
      std::set<std::size_t> rays;
      std::vector<Rat> witness;
    };
    std::vector<Face> faces;
    auto key_of = [](const Face& f) { return std::make_pair(f.verts, f.rays); };
    std::set<std::pair<std::set<std::size_t>, std::set<std::size_t>>> seen;
    for (const auto& fac : facets_) {
      Face f;
      for (std::size_t i = 0; i < verts_.size(); ++i)
        if (dot(fac.normal, verts_[i]) == fac.offset) f.verts.insert(i);
      for (std::size_t i = 0; i < n_; ++i)
        if (fac.normal[i] == 0) f.rays.insert(i);
      f.witness = fac.normal;
      if (f.verts.empty()) continue;
      if (seen.insert(key_of(f)).second) faces.push_back(std::move(f));
    }
    for (std::size_t a = 0; a < faces.size(); ++a) {
      for (std::size_t b = a + 1; b < faces.size(); ++b) {
        Face f;
        std::set_intersection(faces[a].verts.begin(), faces[a].verts.end(),
                              faces[b].verts.begin(), faces[b].verts.end(),
                              std::inserter(f.verts, f.verts.begin()));
        if (f.verts.empty()) continue;
        std::set_intersection(faces[a].rays.begin(), faces[a].rays.end(),
                              faces[b].rays.begin(), faces[b].rays.end(),
                              std::inserter(f.rays, f.rays.begin()));
        f.witness.assign(n_, Rat(0));
        for (std::size_t i = 0; i < n_; ++i)
          f.witness[i] = faces[a].witness[i] + faces[b].witness[i];
        if (seen.insert(key_of(f)).second) faces.push_back(std::move(f));
      }
    }
    std::vector<CompactFace> out;
    for (const auto& f : faces) {
      if (!f.rays.empty()) continue;
      CompactFace cf;
      for (auto i : f.verts) cf.vertices.push_back(verts_[i]);
      std::sort(cf.vertices.begin(), cf.vertices.end());
      std::vector<std::vector<Rat>> diffs;
      for (std::size_t i = 1; i < cf.vertices.size(); ++i) {
        std::vector<Rat> d(n_);
        for (std::size_t j = 0; j < n_; ++j) d[j] = cf.vertices[i][j] - cf.vertices[0][j];
        diffs.push_back(std::move(d));
      }
      cf.dim = static_cast<int>(detail::rat_rank(diffs));
      cf.witness_normal = f.witness;
      for (std::size_t i = 0; i < n_; ++i)
        if (cf.witness_normal[i] <= 0) fail(errc::internal, "compact face witness not positive");
      out.push_back(std::move(cf));
    }
    std::sort(out.begin(), out.end(), [](const CompactFace& a, const CompactFace& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      return a.vertices < b.vertices;
    });
    return out;
  }

  bool is_polygonal() const {
    for (const auto& f : compact_faces())
      if (f.dim > 1) return false;
    return true;
  }

 private:
  static bool dominates(const Point& a, const Point& b) {
    // a <= b coordinatewise, so b is in a + orthant
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }

  static void prune_dominated(std::vector<Point>& pts) {
    std::vector<Point> kept;
    // sorted input: a dominating point sorts before anything it dominates
    // except through later coordinates, so scan against the kept minima.
    for (auto& p : pts) {
      bool dead = false;
      for (const auto& k : kept)
        if (dominates(k, p)) {
          dead = true;
          break;
        }
      if (!dead) kept.push_back(std::move(p));
    }
    pts = std::move(kept);
  }

  // drop x if x is in conv{b, c} + orthant for a pair of other points
  static void prune_pairs(std::vector<Point>& pts) {
    if (pts.size() < 3) return;
    std::vector<bool> dead(pts.size(), false);
    for (std::size_t x = 0; x < pts.size(); ++x) {
      for (std::size_t b = 0; b < pts.size() && !dead[x]; ++b) {
        if (b == x || dead[b]) continue;
        for (std::size_t c = b + 1; c < pts.size() && !dead[x]; ++c) {
          if (c == x || dead[c]) continue;
          // feasibility of t in [0,1] with t*b + (1-t)*c <= x
          Rat lo(0), hi(1);
          bool ok = true;
          for (std::size_t i = 0; i < pts[x].size() && ok; ++i) {
            Rat diff = pts[b][i] - pts[c][i];
            Rat bound = pts[x][i] - pts[c][i];
            if (diff == 0) {
              if (bound < 0) ok = false;
            } else if (diff > 0) {
              Rat t = bound / diff;
              if (t < hi) hi = t;
            } else {
              Rat t = bound / diff;
              if (t > lo) lo = t;
            }
            if (lo > hi) ok = false;
          }
          if (ok) dead[x] = true;
        }
      }
    }
    std::vector<Point> kept;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!dead[i]) kept.push_back(std::move(pts[i]));
    pts = std::move(kept);
  }

  void build_facets(const std::vector<Point>& pts) {
    // generators of the homogenization cone in R^(n+1)
    std::vector<std::vector<Rat>> gens;
    for (const auto& p : pts) {
      std::vector<Rat> g(p);
      g.push_back(Rat(1));
      gens.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<Rat> g(n_ + 1, Rat(0));
      g[i] = 1;
      gens.push_back(std::move(g));
    }
    std::set<std::vector<Int>> normals;
    // all n-subsets of generators
    std::vector<std::size_t> comb;
    enumerate_subsets(gens.size(), n_, comb, [&](const std::vector<std::size_t>& sel) {
      std::vector<std::vector<Rat>> m;
      for (auto i : sel) m.push_back(gens[i]);
      auto w = detail::nullspace_1d(std::move(m));
      if (w.empty()) return;
      int sign = 0;
      for (const auto& g : gens) {
        Rat v(0);
        for (std::size_t i = 0; i <= n_; ++i) v += Rat(w[i]) * g[i];
        if (v > 0) {
          if (sign < 0) return;
          sign = 1;
        } else if (v < 0) {
          if (sign > 0) return;
          sign = -1;
        }
      }
      if (sign < 0)
        for (auto& x : w) x = -x;
      normals.insert(w);
    });
    facets_.clear();
    for (const auto& w : normals) {
      bool all_zero = true;
      for (std::size_t i = 0; i < n_; ++i)
        if (w[i] != 0) all_zero = false;
      if (all_zero) continue;  // facet at infinity
      Facet f;
      f.normal.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) f.normal[i] = Rat(w[i]);
      f.offset = Rat(-w[n_]);
      facets_.push_back(std::move(f));
    }
  }

  template <typename Fn>
  static void enumerate_subsets(std::size_t m, std::size_t k, std::vector<std::size_t>& comb,
                                const Fn& fn) {
    std::size_t start = comb.empty() ? 0 : comb.back() + 1;
    if (comb.size() == k) {
      fn(comb);
      return;
    }
    for (std::size_t i = start; i + (k - comb.size()) <= m; ++i) {
      comb.push_back(i);
      enumerate_subsets(m, k, comb, fn);
      comb.pop_back();
    }
  }

  void keep_vertices(const std::vector<Point>& pts) {
    verts_.clear();
    for (const auto& p : pts) {
      std::vector<std::vector<Rat>> active;
      for (const auto& f : facets_)
        if (dot(f.normal, p) == f.offset) active.push_back(f.normal);
      if (detail::rat_rank(active) == n_) verts_.push_back(p);
    }
    std::sort(verts_.begin(), verts_.end());
  }

  std::size_t n_ = 0;
  std::vector<Point> verts_;
  std::vector<Facet> facets_;
};

inline GeneralPolyhedron minkowski_sum_general(const GeneralPolyhedron& a,
                                               const GeneralPolyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim())
    fail(errc::dimension_mismatch, "minkowski_sum_general: dimension mismatch");
  std::vector<Point> sums;
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) {
      Point s(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] + v[i];
      sums.push_back(std::move(s));
    }
  return GeneralPolyhedron(std::move(sums));
}

inline bool is_polygonal(const GeneralPolyhedron& g) { return g.is_polygonal(); }

inline std::vector<CompactFace> compact_faces(const GeneralPolyhedron& g) {
  return g.compact_faces();
}

enum class TieBreak { none, lexicographic };

struct PathEdge {
  QVec inclination;  // (u_low - u_high) / height, walking down in the level
  Int height;
};

// Coherent polygonal path of the polyhedron for the linear form w on the
// first n-1 coordinates, last coordinate read as the level. Ties between
// equal w-scores are broken lexicographically on the projected point,
// simulating an irrational perturbation of w. Returned bottom-to-top.
inline std::vector<PathEdge> coherent_path(const GeneralPolyhedron& g, const std::vector<Rat>& w,
                                           TieBreak tiebreak = TieBreak::lexicographic) {
  std::size_t n = g.ambient_dim();
  if (w.size() != n - 1) fail(errc::dimension_mismatch, "coherent_path: bad w dimension");
  for (const auto& x : w)
    if (x < 0) fail(errc::validation_failed, "coherent_path: w outside the closed orthant");

  struct Node {
    Rat level;
    Rat score;
    std::vector<Rat> u;
  };
  std::vector<Node> nodes;
  for (const auto& v : g.vertices()) {
    Node nd;
    nd.level = v[n - 1];
    nd.u.assign(v.begin(), v.end() - 1);
    nd.score = dot(w, nd.u);
    nodes.push_back(std::move(nd));
  }
  // per level keep the (score, lex) minimum
  std::sort(nodes.begin(), nodes.end(), [&](const Node& a, const Node& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.score != b.score) return a.score < b.score;
    return a.u < b.u;
  });
  std::vector<Node> best;
  for (auto& nd : nodes) {
    if (!best.empty() && best.back().level == nd.level) {
      if (tiebreak == TieBreak::none && best.back().score == nd.score)
        fail(errc::tie_break_required, "coherent_path: tie without perturbation");
      continue;
    }
    best.push_back(std::move(nd));
  }
  // lower convex hull of (level, score) with the lexicographic tail as an
  // infinitesimal perturbation of the score; the middle point is kept only
  // when the perturbed slope strictly increases
  auto slope_strictly_less = [&](const Node& a, const Node& b, const Node& c) {
    // slope(a,b) < slope(b,c) in the perturbed sense?
    Rat l1 = b.level - a.level, l2 = c.level - b.level;
    Rat lhs = (b.score - a.score) * l2, rhs = (c.score - b.score) * l1;
    if (lhs != rhs) return lhs < rhs;
    bool collinear = true;
    for (std::size_t i = 0; i + 1 < n && collinear; ++i)
      if ((b.u[i] - a.u[i]) * l2 != (c.u[i] - b.u[i]) * l1) collinear = false;
    if (collinear) return false;  // middle point of a straight edge
    if (tiebreak == TieBreak::none)
      fail(errc::tie_break_required, "coherent_path: slope tie without perturbation");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Rat dl = (b.u[i] - a.u[i]) * l2, dr = (c.u[i] - b.u[i]) * l1;
      if (dl != dr) return dl < dr;
    }
    return false;
  };
  std::vector<Node> hull;
  for (auto& nd : best) {
    while (hull.size() >= 2 && !slope_strictly_less(hull[hull.size() - 2], hull.back(), nd))
      hull.pop_back();
    hull.push_back(std::move(nd));
  }
  std::vector<PathEdge> out;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    PathEdge e;
    Rat h = hull[i + 1].level - hull[i].level;
    std::vector<Rat> q(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) q[j] = (hull[i].u[j] - hull[i + 1].u[j]) / h;
    e.inclination = QVec(std::move(q));
    if (!is_integer(Rat(h))) fail(errc::internal, "coherent_path: non-integral height");
    e.height = h.get_num();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qopolar
