#pragma once

// Polygonal Newton polyhedra in Minkowski normal form: a top apex plus an
// ordered list of elementary terms l/q (the polyhedron of Y^l - X^(lq)).
// The normal form is unique: terms are sorted by increasing inclination and
// equal inclinations are merged by adding heights.

#include <qopolar/error.hpp>
#include <qopolar/polyhedron.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace qopolar {

struct ElementaryPolyhedron {
  Int height;        // p >= 1
  QVec inclination;  // finite, coordinates >= 0
};

class PolygonalProfile {
 public:
  PolygonalProfile(std::size_t d, Int total_height)
      : d_(d), total_(std::move(total_height)), apex_(QVec::zero(d)) {
    if (total_ < 0) fail(errc::validation_failed, "profile: negative height");
  }

  std::size_t xdim() const { return d_; }
  const Int& total_height() const { return total_; }
  const QVec& apex_translation() const { return apex_; }
  void set_apex(QVec a) { apex_ = std::move(a); }
  const std::vector<ElementaryPolyhedron>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Int term_height_sum() const {
    Int s(0);
    for (const auto& t : terms_) s += t.height;
    return s;
  }

  // merge in one elementary term, keeping the sorted normal form
  void add_term(const ElementaryPolyhedron& t) {
    if (t.height <= 0) fail(errc::validation_failed, "profile: nonpositive term height");
    if (!t.inclination.is_finite() || t.inclination.dim() != d_ ||
        !strictly_positive(t.inclination))
      fail(errc::validation_failed, "profile: inclination must be finite and > 0");
    for (auto& u : terms_) {
      auto c = cmp_partial(t.inclination, u.inclination);
      if (c == PartialOrder::equal) {
        u.height += t.height;
        return;
      }
      if (c == PartialOrder::incomparable)
        fail(errc::incomparable_inclinations, "profile: incomparable inclinations " +
                                                  t.inclination.str() + " vs " +
                                                  u.inclination.str());
    }
    terms_.push_back(t);
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
      return lt(a.inclination, b.inclination);
    });
  }

  // remove c copies of the elementary term with inclination q
  void subtract_term(const QVec& q, const Int& c) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].inclination == q) {
        if (terms_[i].height < c)
          fail(errc::inconsistent_profiles, "profile: subtracting more height than present");
        terms_[i].height -= c;
        if (terms_[i].height == 0) terms_.erase(terms_.begin() + i);
        total_ -= c;
        return;
      }
    }
    fail(errc::inconsistent_profiles, "profile: no term with inclination " + q.str());
  }

  bool operator==(const PolygonalProfile& o) const {
    if (d_ != o.d_ || total_ != o.total_ || apex_ != o.apex_ || terms_.size() != o.terms_.size())
      return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].height != o.terms_[i].height ||
          terms_[i].inclination != o.terms_[i].inclination)
        return false;
    return true;
  }
  bool operator!=(const PolygonalProfile& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "height " + total_.get_str() + " terms";
    if (terms_.empty()) s += " (none)";
    for (const auto& t : terms_) s += " " + t.inclination.str() + ":" + t.height.get_str();
    if (apex_ != QVec::zero(d_)) s += " apex " + apex_.str();
    return s;
  }

 private:
  std::size_t d_;
  Int total_;
  QVec apex_;
  std::vector<ElementaryPolyhedron> terms_;
};

inline PolygonalProfile minkowski_sum_profiles(const std::vector<ElementaryPolyhedron>& terms) {
  if (terms.empty()) fail(errc::validation_failed, "minkowski_sum_profiles: empty sum");
  std::size_t d = terms[0].inclination.dim();
  Int total(0);
  for (const auto& t : terms) total += t.height;
  PolygonalProfile p(d, total);
  for (const auto& t : terms) p.add_term(t);
  return p;
}

// ordered vertex walk, top vertex first
inline std::vector<Point> vertices_of_profile(const PolygonalProfile& p) {
  std::size_t d = p.xdim();
  std::vector<Point> out;
  Point cur(d + 1);
  for (std::size_t i = 0; i < d; ++i)
    cur[i] = p.apex_translation().is_finite() ? p.apex_translation()[i] : Rat(0);
  cur[d] = Rat(p.total_height());
  out.push_back(cur);
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < d; ++i) cur[i] += Rat(t.height) * t.inclination[i];
    cur[d] -= Rat(t.height);
    out.push_back(cur);
  }
  return out;
}

inline GeneralPolyhedron profile_to_polyhedron(const PolygonalProfile& p) {
  return GeneralPolyhedron(vertices_of_profile(p));
}

inline GeneralPolyhedron elementary_to_polyhedron(const ElementaryPolyhedron& t) {
  std::size_t d = t.inclination.dim();
  Point top(d + 1, Rat(0)), bottom(d + 1, Rat(0));
  top[d] = Rat(t.height);
  for (std::size_t i = 0; i < d; ++i) bottom[i] = Rat(t.height) * t.inclination[i];
  return GeneralPolyhedron({top, bottom});
}

// inverse of the vertex walk: recover the unique Minkowski normal form
inline PolygonalProfile profile_of_polyhedron(const GeneralPolyhedron& g) {
  std::size_t n = g.ambient_dim();
  if (n < 2) fail(errc::dimension_mismatch, "profile_of_polyhedron: need a level coordinate");
  std::size_t d = n - 1;
  auto faces = g.compact_faces();
  std::vector<const CompactFace*> edges;
  for (const auto& f : faces) {
    if (f.dim > 1) fail(errc::not_polygonal, "profile_of_polyhedron: compact face of dimension 2+");
    if (f.dim == 1) edges.push_back(&f);
  }
  // locate the apex: unique vertex of maximal level
  const Point* apex = nullptr;
  for (const auto& v : g.vertices())
    if (!apex || v[d] > (*apex)[d]) apex = &v;
  for (const auto& v : g.vertices())
    if (&v != apex && v[d] == (*apex)[d])
      fail(errc::not_polygonal, "profile_of_polyhedron: level-parallel top face");
  if (!is_integer((*apex)[d]))
    fail(errc::not_polygonal, "profile_of_polyhedron: non-integral height");

  struct Edge {
    Rat top_level;
    QVec q;
    Int l;
    Point top, bottom;
  };
  std::vector<Edge> es;
  for (const auto* f : edges) {
    const Point& a = f->vertices[0];
    const Point& b = f->vertices[1];
    if (a[d] == b[d])
      fail(errc::not_polygonal, "profile_of_polyhedron: edge parallel to the level hyperplane");
    const Point& top = a[d] > b[d] ? a : b;
    const Point& bot = a[d] > b[d] ? b : a;
    Edge e;
    e.top = top;
    e.bottom = bot;
    e.top_level = top[d];
    Rat h = top[d] - bot[d];
    if (!is_integer(h)) fail(errc::not_polygonal, "profile_of_polyhedron: non-integral height");
    e.l = h.get_num();
    std::vector<Rat> q(d);
    for (std::size_t i = 0; i < d; ++i) q[i] = (bot[i] - top[i]) / h;
    e.q = QVec(std::move(q));
    es.push_back(std::move(e));
  }
  std::sort(es.begin(), es.end(), [](const Edge& x, const Edge& y) {
    return x.top_level > y.top_level;
  });
  // edges must chain downward from the apex with increasing inclinations
  PolygonalProfile p(d, (*apex)[d].get_num());
  std::vector<Rat> apex_u(apex->begin(), apex->end() - 1);
  p.set_apex(QVec(apex_u));
  const Point* cur = apex;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].top != *cur)
      fail(errc::not_polygonal, "profile_of_polyhedron: compact edges do not chain");
    if (i > 0) {
      auto c = cmp_partial(es[i - 1].q, es[i].q);
      if (c == PartialOrder::incomparable)
        fail(errc::incomparable_inclinations,
             "profile_of_polyhedron: incomparable edge inclinations");
    }
    if (!strictly_positive(es[i].q))
      fail(errc::not_polygonal, "profile_of_polyhedron: nonpositive inclination");
    p.add_term({es[i].l, es[i].q});
    cur = &es[i].bottom;
  }
  if (es.size() + 1 != g.vertices().size())
    fail(errc::not_polygonal, "profile_of_polyhedron: stray vertices off the edge chain");
  return p;
}

}  // namespace qopolar
