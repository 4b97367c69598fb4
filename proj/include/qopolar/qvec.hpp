#pragma once

// Points of Q^d together with the distinguished value +infinity, under the
// coordinatewise partial order: u <= u'  iff  u' - u has all entries >= 0.
// +infinity compares greater than every finite vector.

#include <qopolar/error.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace qopolar {

enum class PartialOrder { less, equal, greater, incomparable };

class QVec {
 public:
  QVec() = default;
  explicit QVec(std::vector<Rat> coords) : finite_(true), c_(std::move(coords)) {}

  static QVec infinity(std::size_t dim) {
    QVec v;
    v.finite_ = false;
    v.c_.assign(dim, Rat(0));
    return v;
  }
  static QVec zero(std::size_t dim) { return QVec(std::vector<Rat>(dim, Rat(0))); }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }
  std::size_t dim() const { return c_.size(); }

  const Rat& operator[](std::size_t i) const { return c_[i]; }
  Rat& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Rat>& coords() const { return c_; }

  bool operator==(const QVec& o) const {
    return finite_ == o.finite_ && (!finite_ || c_ == o.c_);
  }
  bool operator!=(const QVec& o) const { return !(*this == o); }

  QVec operator+(const QVec& o) const {
    check_dim(o);
    if (!finite_ || !o.finite_) return infinity(dim());
    QVec r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  QVec operator-(const QVec& o) const {
    check_dim(o);
    if (!finite_ || !o.finite_) fail(errc::dimension_mismatch, "QVec: subtraction with +inf");
    QVec r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  QVec operator*(const Rat& s) const {
    if (!finite_) return *this;
    QVec r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }

  // Strict total order used only for canonical sorting and map keys:
  // +inf last, otherwise lexicographic on coordinates.
  bool lex_less(const QVec& o) const {
    check_dim(o);
    if (!finite_) return false;
    if (!o.finite_) return true;
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
  }

  std::string str() const {
    if (!finite_) return "inf";
    if (c_.size() == 1) return to_string(c_[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += to_string(c_[i]);
    }
    return s + ")";
  }

 private:
  void check_dim(const QVec& o) const {
    if (dim() != o.dim()) fail(errc::dimension_mismatch, "QVec: dimension mismatch");
  }

  bool finite_ = true;
  std::vector<Rat> c_;
};

inline PartialOrder cmp_partial(const QVec& u, const QVec& v) {
  if (u.dim() != v.dim()) fail(errc::dimension_mismatch, "cmp_partial: dimension mismatch");
  if (u.is_infinite() && v.is_infinite()) return PartialOrder::equal;
  if (u.is_infinite()) return PartialOrder::greater;
  if (v.is_infinite()) return PartialOrder::less;
  bool some_lt = false, some_gt = false;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    int c = cmp(u[i], v[i]);
    if (c < 0) some_lt = true;
    if (c > 0) some_gt = true;
  }
  if (some_lt && some_gt) return PartialOrder::incomparable;
  if (some_lt) return PartialOrder::less;
  if (some_gt) return PartialOrder::greater;
  return PartialOrder::equal;
}

inline bool leq(const QVec& u, const QVec& v) {
  auto c = cmp_partial(u, v);
  return c == PartialOrder::less || c == PartialOrder::equal;
}
inline bool lt(const QVec& u, const QVec& v) { return cmp_partial(u, v) == PartialOrder::less; }
inline bool comparable(const QVec& u, const QVec& v) {
  return cmp_partial(u, v) != PartialOrder::incomparable;
}

// min of two comparable values; rejects incomparable pairs.
inline QVec comparable_min(const QVec& u, const QVec& v) {
  switch (cmp_partial(u, v)) {
    case PartialOrder::less:
    case PartialOrder::equal:
      return u;
    case PartialOrder::greater:
      return v;
    default:
      fail(errc::incomparable_inclinations, "comparable_min: incomparable arguments");
  }
}

// u > 0 in the partial order: all coordinates >= 0 and u != 0.
inline bool strictly_positive(const QVec& u) {
  if (u.is_infinite()) return true;
  bool nonzero = false;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (u[i] < 0) return false;
    if (u[i] != 0) nonzero = true;
  }
  return nonzero;
}

inline Rat dot(const std::vector<Rat>& w, const std::vector<Rat>& x) {
  Rat s(0);
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s;
}

}  // namespace qopolar
