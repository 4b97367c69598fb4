#pragma once

// Edge polynomials: the symbolic restriction of a polynomial to a compact
// segment of its Newton polyhedron, read off along the primitive lattice
// step of the segment, and the necessary irreducibility criterion for
// series with polygonal Newton polyhedra built on top of it.

#include <qopolar/error.hpp>
#include <qopolar/polyhedron.hpp>
#include <qopolar/rational.hpp>
#include <qopolar/sparse_poly.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace qopolar {

// dense univariate polynomials over Q, ascending coefficients
using UniPoly = std::vector<Rat>;

inline void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline long uni_deg(const UniPoly& p) { return static_cast<long>(p.size()) - 1; }

inline UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  uni_trim(d);
  return d;
}

inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  uni_trim(a);
  while (uni_deg(a) >= uni_deg(b) && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    uni_trim(a);
  }
  return a;
}

inline UniPoly uni_divide_exact(UniPoly a, const UniPoly& b) {
  uni_trim(a);
  UniPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (uni_deg(a) >= uni_deg(b) && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    q[off] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    uni_trim(a);
  }
  if (!a.empty()) fail(errc::internal, "uni_divide_exact: nonzero remainder");
  uni_trim(q);
  return q;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Restriction of p to the segment E = [alpha, alpha'] along its primitive
// lattice step: p(E)(t) = sum_i c_(alpha + i u) t^i. Points live in the
// scaled exponent lattice of p, last coordinate the distinguished degree.
inline UniPoly edge_polynomial(const SparsePoly& p, const Point& alpha, const Point& alpha_prime) {
  std::size_t d = p.xdim();
  if (alpha.size() != d + 1 || alpha_prime.size() != d + 1)
    fail(errc::dimension_mismatch, "edge_polynomial: endpoint dimension");
  auto scaled = [&](const Point& pt) {
    std::vector<Int> v(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
      Rat s = pt[i] * Rat(p.denom());
      if (!is_integer(s))
        fail(errc::endpoint_not_on_lattice, "edge_polynomial: endpoint off the lattice");
      v[i] = s.get_num();
    }
    if (!is_integer(pt[d]))
      fail(errc::endpoint_not_on_lattice, "edge_polynomial: fractional degree endpoint");
    v[d] = pt[d].get_num();
    return v;
  };
  auto a = scaled(alpha), b = scaled(alpha_prime);
  std::vector<Int> diff(d + 1);
  Int g(0);
  for (std::size_t i = 0; i <= d; ++i) {
    diff[i] = b[i] - a[i];
    g = gcd_int(g, diff[i]);
  }
  if (g == 0) fail(errc::endpoint_not_on_lattice, "edge_polynomial: degenerate segment");
  long l = static_cast<long>(g.get_si());
  UniPoly out;
  for (long i = 0; i <= l; ++i) {
    std::vector<Rat> x(d);
    for (std::size_t j = 0; j < d; ++j)
      x[j] = ratio(a[j] + (diff[j] / g) * i, p.denom());
    Rat degr = ratio(a[d] + (diff[d] / g) * i, 1);
    out.push_back(p.coefficient(x, static_cast<long>(degr.get_num().get_si())));
  }
  uni_trim(out);
  return out;
}

// p = c (t - a)^l exactly? Decided via the squarefree part p / gcd(p, p').
inline std::optional<Rat> single_root_check(const UniPoly& p_in) {
  UniPoly p = p_in;
  uni_trim(p);
  if (uni_deg(p) < 1) fail(errc::validation_failed, "single_root_check: degree must be >= 1");
  if (p[0] == 0) fail(errc::validation_failed, "single_root_check: zero constant term");
  UniPoly g = uni_gcd(p, uni_derivative(p));
  UniPoly q = uni_divide_exact(p, g);
  if (uni_deg(q) != 1) return std::nullopt;
  Rat a = -q[0] / q[1];
  // confirm p == lc * (t - a)^l
  long l = uni_deg(p);
  UniPoly check{Rat(1)};
  for (long i = 0; i < l; ++i) {
    UniPoly next(check.size() + 1, Rat(0));
    for (std::size_t j = 0; j < check.size(); ++j) {
      next[j + 1] += check[j];
      next[j] -= a * check[j];
    }
    check = std::move(next);
  }
  for (auto& c : check) c *= p.back();
  if (check != p) return std::nullopt;
  return a;
}

struct IrreducibilityVerdict {
  enum class Kind { reducible, passes_necessary_criterion } kind;
  std::string witness;            // human-readable reason for the verdict
  std::optional<Rat> edge_root;   // the single root, when the check passes
};

// Necessary criterion: an irreducible series with polygonal Newton
// polyhedron has exactly one compact edge, whose edge polynomial has a
// single root in C*. Reducible is certain; the positive branch is only a
// pass of the necessary condition.
inline IrreducibilityVerdict irreducibility_check(const SparsePoly& p) {
  if (p.is_zero()) fail(errc::zero_polynomial, "irreducibility_check: zero input");
  if (p.term_count() == 1)
    fail(errc::validation_failed,
         "irreducibility_check: monomial input (unit times variables) is excluded");
  GeneralPolyhedron n = newton_polyhedron(p, true);
  auto faces = n.compact_faces();
  std::vector<const CompactFace*> edges;
  for (const auto& f : faces) {
    if (f.dim > 1)
      fail(errc::not_polygonal,
           "irreducibility_check: Newton polyhedron has a compact face of dimension " +
               std::to_string(f.dim) + "; criterion inapplicable");
    if (f.dim == 1) edges.push_back(&f);
  }
  if (edges.empty())
    fail(errc::validation_failed,
         "irreducibility_check: single-vertex polyhedron (input associated to a monomial)");
  if (edges.size() >= 2)
    return {IrreducibilityVerdict::Kind::reducible,
            std::to_string(edges.size()) + " compact edges", std::nullopt};
  const CompactFace& e = *edges[0];
  Point a = e.vertices[0], b = e.vertices[1];
  // vertex order convention t < t' on the distinguished coordinate
  if (a.back() > b.back()) std::swap(a, b);
  UniPoly ep = edge_polynomial(p, a, b);
  if (ep.empty() || ep[0] == 0 || uni_deg(ep) < 1)
    fail(errc::internal, "irreducibility_check: degenerate edge polynomial");
  auto root = single_root_check(ep);
  if (!root)
    return {IrreducibilityVerdict::Kind::reducible,
            "edge polynomial has more than one root in C*", std::nullopt};
  return {IrreducibilityVerdict::Kind::passes_necessary_criterion, "", root};
}

}  // namespace qopolar
