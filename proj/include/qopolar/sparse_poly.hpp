#pragma once

// Sparse multivariate polynomials with rational coefficients, rational
// X-exponents held over an explicit common denominator k, and one
// distinguished variable (Y or T) with integer degrees. Laurent supports
// (negative X-exponents) are representable; the distinguished degree is
// always >= 0.

#include <qopolar/error.hpp>
#include <qopolar/polyhedron.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qopolar {

// guard against runaway common denominators on adversarial input
inline Int& denominator_cap() {
  static Int cap = Int(1) << 30;
  return cap;
}
inline void set_denominator_cap(const Int& cap) { denominator_cap() = cap; }

class SparsePoly {
 public:
  // exponent key: d scaled X-exponents followed by the distinguished degree
  using Key = std::vector<std::int64_t>;
  using TermMap = std::map<Key, Rat>;

  SparsePoly() : SparsePoly(0) {}
  explicit SparsePoly(std::size_t d, std::string main_var = "Y")
      : d_(d), k_(1), main_var_(std::move(main_var)) {}

  static SparsePoly zero(std::size_t d, std::string v = "Y") { return SparsePoly(d, std::move(v)); }
  static SparsePoly constant(std::size_t d, const Rat& c, std::string v = "Y") {
    SparsePoly p(d, std::move(v));
    if (c != 0) p.terms_[Key(d + 1, 0)] = c;
    return p;
  }
  static SparsePoly one(std::size_t d, std::string v = "Y") {
    return constant(d, Rat(1), std::move(v));
  }
  static SparsePoly main_variable(std::size_t d, std::string v = "Y") {
    return main_power(d, 1, std::move(v));
  }
  static SparsePoly main_power(std::size_t d, long e, std::string v = "Y") {
    SparsePoly p(d, std::move(v));
    Key k(d + 1, 0);
    k[d] = e;
    p.terms_[k] = 1;
    return p;
  }

  std::size_t xdim() const { return d_; }
  const Int& denom() const { return k_; }
  const std::string& main_var() const { return main_var_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void set_main_var(std::string v) { main_var_ = std::move(v); }

  // add c * X^xexp * V^deg, merging and renormalizing
  void add_term(const std::vector<Rat>& xexp, long deg, const Rat& c) {
    if (xexp.size() != d_) fail(errc::dimension_mismatch, "SparsePoly::add_term");
    if (deg < 0) fail(errc::validation_failed, "SparsePoly: negative main-variable degree");
    if (c == 0) return;
    Int need(1);
    for (const auto& e : xexp) need = lcm_int(need, e.get_den());
    rescale_to(lcm_int(k_, need));
    Key key(d_ + 1);
    for (std::size_t i = 0; i < d_; ++i) {
      Rat scaled = xexp[i] * Rat(k_);
      key[i] = int64_from(scaled.get_num());
    }
    key[d_] = deg;
    auto it = terms_.find(key);
    if (it == terms_.end())
      terms_[key] = c;
    else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    shrink_denominator();
  }

  long degree() const {  // degree in the distinguished variable; -1 for 0
    long dmax = -1;
    for (const auto& [key, c] : terms_) dmax = std::max(dmax, static_cast<long>(key[d_]));
    return dmax;
  }

  long order() const {  // smallest distinguished-variable degree present
    long dmin = -1;
    for (const auto& [key, c] : terms_) {
      long y = static_cast<long>(key[d_]);
      if (dmin < 0 || y < dmin) dmin = y;
    }
    return dmin;
  }

  bool has_negative_x_exponent() const {
    for (const auto& [key, c] : terms_)
      for (std::size_t i = 0; i < d_; ++i)
        if (key[i] < 0) return true;
    return false;
  }

  bool is_fractional() const { return k_ != 1; }

  // coefficient of V^j as a polynomial with degree 0 in V
  SparsePoly coeff_of_main(long j) const {
    SparsePoly out(d_, main_var_);
    out.k_ = k_;
    for (const auto& [key, c] : terms_)
      if (key[d_] == j) {
        Key k2 = key;
        k2[d_] = 0;
        out.terms_[k2] = c;
      }
    out.shrink_denominator();
    return out;
  }

  bool is_monic() const {
    long n = degree();
    if (n < 0) return false;
    SparsePoly lead = coeff_of_main(n);
    return lead.terms_.size() == 1 && lead.terms_.begin()->first == Key(d_ + 1, 0) &&
           lead.terms_.begin()->second == 1;
  }

  bool is_constant_in_main() const { return degree() <= 0; }

  Rat constant_coefficient() const {
    auto it = terms_.find(Key(d_ + 1, 0));
    return it == terms_.end() ? Rat(0) : it->second;
  }

  SparsePoly operator-() const {
    SparsePoly out(*this);
    for (auto& [key, c] : out.terms_) c = -c;
    return out;
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    check_shape(o);
    SparsePoly rhs(o);
    Int k = lcm_int(k_, o.k_);
    rescale_to(k);
    rhs.rescale_to(k);
    for (auto& [key, c] : rhs.terms_) {
      auto it = terms_.find(key);
      if (it == terms_.end())
        terms_.emplace(key, c);
      else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    shrink_denominator();
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) { return *this += -o; }
  SparsePoly operator+(const SparsePoly& o) const {
    SparsePoly r(*this);
    r += o;
    return r;
  }
  SparsePoly operator-(const SparsePoly& o) const {
    SparsePoly r(*this);
    r -= o;
    return r;
  }

  SparsePoly operator*(const SparsePoly& o) const {
    check_shape(o);
    SparsePoly a(*this), b(o);
    Int k = lcm_int(k_, o.k_);
    a.rescale_to(k);
    b.rescale_to(k);
    SparsePoly out(d_, main_var_);
    out.k_ = k;
    if (a.terms_.empty() || b.terms_.empty()) {
      out.k_ = 1;
      return out;
    }
    const TermMap& small = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
    const TermMap& large = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;
    Key key(d_ + 1);
    for (const auto& [ka, ca] : small)
      for (const auto& [kb, cb] : large) {
        for (std::size_t i = 0; i <= d_; ++i) key[i] = ka[i] + kb[i];
        auto it = out.terms_.find(key);
        if (it == out.terms_.end())
          out.terms_.emplace(key, ca * cb);
        else {
          it->second += ca * cb;
          if (it->second == 0) out.terms_.erase(it);
        }
      }
    out.shrink_denominator();
    return out;
  }

  SparsePoly operator*(const Rat& s) const {
    SparsePoly out(*this);
    if (s == 0) {
      out.terms_.clear();
      out.k_ = 1;
      return out;
    }
    for (auto& [key, c] : out.terms_) c *= s;
    return out;
  }

  SparsePoly pow(unsigned long e) const {
    SparsePoly acc = one(d_, main_var_);
    SparsePoly base(*this);
    while (e) {
      if (e & 1) acc = acc * base;
      base = e > 1 ? base * base : base;
      e >>= 1;
    }
    return acc;
  }

  SparsePoly derivative_main() const {
    SparsePoly out(d_, main_var_);
    out.k_ = k_;
    for (const auto& [key, c] : terms_) {
      if (key[d_] == 0) continue;
      Key k2 = key;
      long j = static_cast<long>(k2[d_]--);
      out.terms_[k2] = c * j;
    }
    out.shrink_denominator();
    return out;
  }

  // normalized polar: (1/deg) * d/dY, monic when the input is
  SparsePoly monic_derivative() const {
    long n = degree();
    if (n <= 0) return zero(d_, main_var_);
    return derivative_main() * ratio(1, n);
  }

  // exact division; the remainder must vanish. For inputs without negative
  // exponents every quotient term of an exact division is itself a
  // monomial, so a negative entry certifies non-exactness; Laurent inputs
  // fall back to a step cap.
  SparsePoly exact_div(const SparsePoly& den) const {
    check_shape(den);
    if (den.is_zero()) fail(errc::internal, "exact_div: division by zero");
    SparsePoly num(*this), d2(den);
    Int k = lcm_int(k_, den.k_);
    num.rescale_to(k);
    d2.rescale_to(k);
    SparsePoly q(d_, main_var_);
    q.k_ = k;
    const auto& dlead_it = *d2.terms_.rbegin();
    bool laurent = num.has_negative_x_exponent() || d2.has_negative_x_exponent();
    std::size_t steps = 0;
    while (!num.terms_.empty()) {
      if (laurent && ++steps > 10000000) fail(errc::internal, "exact_div: division is not exact");
      const auto& nlead_it = *num.terms_.rbegin();
      Key t(d_ + 1);
      bool neg = false;
      for (std::size_t i = 0; i <= d_; ++i) {
        t[i] = nlead_it.first[i] - dlead_it.first[i];
        if (t[i] < 0) neg = true;
      }
      if (t[d_] < 0 || (neg && !laurent))
        fail(errc::internal, "exact_div: division is not exact");
      Rat coef = nlead_it.second / dlead_it.second;
      q.terms_[t] = coef;
      // num -= (coef * X^t) * den
      Key key(d_ + 1);
      for (const auto& [kd, cd] : d2.terms_) {
        for (std::size_t i = 0; i <= d_; ++i) key[i] = kd[i] + t[i];
        auto it = num.terms_.find(key);
        Rat delta = coef * cd;
        if (it == num.terms_.end())
          num.terms_.emplace(key, -delta);
        else {
          it->second -= delta;
          if (it->second == 0) num.terms_.erase(it);
        }
      }
    }
    q.shrink_denominator();
    return q;
  }

  bool operator==(const SparsePoly& o) const {
    if (d_ != o.d_) return false;
    SparsePoly a(*this), b(o);
    Int k = lcm_int(k_, o.k_);
    a.rescale_to(k);
    b.rescale_to(k);
    return a.terms_ == b.terms_;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // support as rational points; with_main selects (x, deg) in Q^(d+1)
  // versus x alone in Q^d
  std::vector<Point> support_points(bool with_main) const {
    std::vector<Point> out;
    for (const auto& [key, c] : terms_) {
      Point p;
      p.reserve(with_main ? d_ + 1 : d_);
      for (std::size_t i = 0; i < d_; ++i) p.push_back(ratio(Int(key[i]), k_));
      if (with_main) p.push_back(Rat(static_cast<long>(key[d_])));
      out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // coordinatewise minimum of the X-part of the support
  QVec min_x_exponent() const {
    if (terms_.empty()) fail(errc::zero_polynomial, "min_x_exponent of zero");
    std::vector<std::int64_t> mins(d_);
    bool first = true;
    for (const auto& [key, c] : terms_) {
      for (std::size_t i = 0; i < d_; ++i)
        mins[i] = first ? key[i] : std::min(mins[i], key[i]);
      first = false;
    }
    std::vector<Rat> out(d_);
    for (std::size_t i = 0; i < d_; ++i) out[i] = ratio(Int(mins[i]), k_);
    return QVec(std::move(out));
  }

  Rat coefficient(const std::vector<Rat>& xexp, long deg) const {
    Key key(d_ + 1);
    Int need = k_;
    for (const auto& e : xexp) need = lcm_int(need, e.get_den());
    if (need != k_) return Rat(0);
    for (std::size_t i = 0; i < d_; ++i) {
      Rat scaled = xexp[i] * Rat(k_);
      key[i] = int64_from(scaled.get_num());
    }
    key[d_] = deg;
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second;
  }

 private:
  friend class PolyBuilder;

  static std::int64_t int64_from(const Int& z) {
    if (!z.fits_slong_p()) fail(errc::degree_overflow, "exponent exceeds 64-bit range");
    return z.get_si();
  }

  void check_shape(const SparsePoly& o) const {
    if (d_ != o.d_) fail(errc::dimension_mismatch, "SparsePoly: mixed X-dimension");
  }

  void rescale_to(const Int& k) {
    if (k == k_) return;
    if (k % k_ != 0) fail(errc::internal, "SparsePoly: bad rescale");
    if (k > denominator_cap())
      fail(errc::degree_overflow, "SparsePoly: common denominator above the configured cap");
    Int f = k / k_;
    std::int64_t fs = int64_from(f);
    TermMap out;
    for (const auto& [key, c] : terms_) {
      Key k2 = key;
      for (std::size_t i = 0; i < d_; ++i) k2[i] *= fs;
      out.emplace(std::move(k2), c);
    }
    terms_ = std::move(out);
    k_ = k;
  }

  void shrink_denominator() {
    if (k_ == 1) return;
    Int g = k_;
    for (const auto& [key, c] : terms_) {
      for (std::size_t i = 0; i < d_ && g > 1; ++i) g = gcd_int(g, Int(key[i]));
      if (g == 1) break;
    }
    if (g == 1) return;
    std::int64_t gs = int64_from(g);
    TermMap out;
    for (const auto& [key, c] : terms_) {
      Key k2 = key;
      for (std::size_t i = 0; i < d_; ++i) k2[i] /= gs;
      out.emplace(std::move(k2), c);
    }
    terms_ = std::move(out);
    k_ /= g;
    if (terms_.empty()) k_ = 1;
  }

  std::size_t d_;
  Int k_;
  TermMap terms_;
  std::string main_var_;
};

inline SparsePoly operator*(const Rat& s, const SparsePoly& p) { return p * s; }

// Newton polyhedron of a nonzero polynomial: conv(support) + orthant.
// Y-bearing input gives a polyhedron in Q^(d+1); with_main=false restricts
// to the X-support for series in X alone.
inline GeneralPolyhedron newton_polyhedron(const SparsePoly& p, bool with_main = true) {
  if (p.is_zero()) fail(errc::zero_polynomial, "newton_polyhedron of zero");
  // dominance prune on the integer exponent keys before any rational work
  std::vector<SparsePoly::Key> keys;
  keys.reserve(p.term_count());
  for (const auto& [key, c] : p.terms()) {
    if (with_main)
      keys.push_back(key);
    else {
      SparsePoly::Key k2(key.begin(), key.end() - 1);
      keys.push_back(std::move(k2));
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<SparsePoly::Key> minima;
  for (const auto& k : keys) {
    bool dead = false;
    for (const auto& m : minima) {
      bool dom = true;
      for (std::size_t i = 0; i < m.size() && dom; ++i)
        if (m[i] > k[i]) dom = false;
      if (dom) {
        dead = true;
        break;
      }
    }
    if (!dead) minima.push_back(k);
  }
  std::vector<Point> pts;
  std::size_t d = p.xdim();
  for (const auto& k : minima) {
    Point pt;
    pt.reserve(k.size());
    for (std::size_t i = 0; i < d; ++i) pt.push_back(ratio(Int(k[i]), p.denom()));
    if (with_main) pt.push_back(Rat(static_cast<long>(k[d])));
    pts.push_back(std::move(pt));
  }
  return GeneralPolyhedron(std::move(pts));
}

}  // namespace qopolar
