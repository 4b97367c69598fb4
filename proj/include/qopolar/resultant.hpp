#pragma once

// Resultants in the distinguished variable over the multivariate coefficient
// ring, plus everything built on them: discriminants, the quasi-ordinary
// test, the comparability order rho, and psi_f(h) = Res_Y(T - f, h).
//
// Convention (fixed by the examples it must reproduce):
//   Res_Y(f, g) := lc(g)^deg(f) * prod over roots beta of g of f(beta),
// i.e. the determinant of the Sylvester matrix with the deg(f) rows of
// g-coefficients on top. With this choice Res_Y(T - f, h) is monic in T of
// degree deg h, and Res_Y(Y - a, Y - b) = b - a. Multiplicativity in both
// arguments holds exactly.

#include <qopolar/error.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>
#include <qopolar/sparse_poly.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qopolar {

inline int& sylvester_size_cap() {
  static int cap = 64;
  return cap;
}

// Spec'd default: fraction-free Bareiss on the Sylvester matrix. Above this
// size the subresultant PRS route computes the same determinant with far
// fewer ring operations; the two are cross-checked by property tests.
inline int& bareiss_size_threshold() {
  static int t = 12;
  return t;
}

namespace detail {

inline SparsePoly bareiss_det(std::vector<std::vector<SparsePoly>> m, std::size_t d,
                              const std::string& var) {
  std::size_t n = m.size();
  if (n == 0) return SparsePoly::one(d, var);
  int sign = 1;
  SparsePoly prev = SparsePoly::one(d, var);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return SparsePoly::zero(d, var);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        SparsePoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = num.is_zero() ? num : num.exact_div(prev);
      }
      m[i][k] = SparsePoly::zero(d, var);
    }
    prev = m[k][k];
  }
  SparsePoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

// coefficients of p in the distinguished variable, ascending degree
inline std::vector<SparsePoly> main_coeffs(const SparsePoly& p) {
  long n = p.degree();
  std::vector<SparsePoly> out;
  for (long j = 0; j <= n; ++j) out.push_back(p.coeff_of_main(j));
  return out;
}

// pseudo-remainder prem(A, B) = lc(B)^(degA-degB+1) * A  mod  B
inline SparsePoly prem(const SparsePoly& a, const SparsePoly& b) {
  long db = b.degree();
  SparsePoly lb = b.coeff_of_main(db);
  SparsePoly r = a;
  long e = a.degree() - db + 1;
  std::size_t d = a.xdim();
  while (!r.is_zero() && r.degree() >= db) {
    long dr = r.degree();
    SparsePoly lr = r.coeff_of_main(dr);
    // r <- lc(b) * r - lr * Y^(dr-db) * b
    SparsePoly scaled = lr * SparsePoly::main_power(d, dr - db, a.main_var());
    r = lb * r - scaled * b;
    --e;
  }
  for (long i = 0; i < e; ++i) r = lb * r;
  return r;
}

// Res_std(A, B) = lc(A)^deg(B) * prod over roots alpha of A of B(alpha),
// by the subresultant PRS (Cohen, Algorithm 3.3.7).
inline SparsePoly subresultant_res_std(SparsePoly a, SparsePoly b) {
  std::size_t d = a.xdim();
  std::string var = a.main_var();
  if (a.is_zero() || b.is_zero()) return SparsePoly::zero(d, var);
  int s = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    std::swap(a, b);
  }
  if (b.degree() == 0) {
    SparsePoly r = b.pow(static_cast<unsigned long>(a.degree()));
    return s < 0 ? -r : r;
  }
  SparsePoly g = SparsePoly::one(d, var);
  SparsePoly h = SparsePoly::one(d, var);
  while (true) {
    long delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    SparsePoly r = prem(a, b);
    a = b;
    SparsePoly divisor = g;
    for (long i = 0; i < delta; ++i) divisor = divisor * h;
    b = r.is_zero() ? r : r.exact_div(divisor);
    g = a.coeff_of_main(a.degree());
    if (delta > 0) {
      SparsePoly hn = g;
      for (long i = 1; i < delta; ++i) hn = hn * g;
      for (long i = 0; i + 1 < delta; ++i) hn = hn.exact_div(h);
      h = hn;
    }
    if (b.is_zero() || b.degree() <= 0) break;
  }
  if (b.is_zero()) return SparsePoly::zero(d, var);
  long da = a.degree();
  SparsePoly lb = b.coeff_of_main(0);
  SparsePoly res = lb;
  for (long i = 1; i < da; ++i) res = res * lb;
  for (long i = 0; i + 1 < da; ++i) res = res.exact_div(h);
  return s < 0 ? -res : res;
}

}  // namespace detail

// Res_Y(f, g) in the convention above; the result has degree 0 in the
// distinguished variable.
inline SparsePoly resultant_y(const SparsePoly& f, const SparsePoly& g) {
  if (f.xdim() != g.xdim()) fail(errc::dimension_mismatch, "resultant_y");
  std::size_t d = f.xdim();
  const std::string& var = f.main_var();
  if (f.is_zero() || g.is_zero()) return SparsePoly::zero(d, var);
  long a = f.degree(), b = g.degree();
  if (a + b > sylvester_size_cap())
    fail(errc::degree_overflow, "resultant_y: Sylvester size " + std::to_string(a + b) +
                                    " above cap " + std::to_string(sylvester_size_cap()));
  if (a == 0 && b == 0) return SparsePoly::one(d, var);
  if (a == 0) return f.pow(static_cast<unsigned long>(b));
  if (b == 0) return g.pow(static_cast<unsigned long>(a));

  if (a + b > bareiss_size_threshold()) {
    // Res_spec(f, g) = Res_std(g, f)
    return detail::subresultant_res_std(g, f);
  }
  // Sylvester matrix with g's coefficient rows first (a rows of g, b of f)
  auto fc = detail::main_coeffs(f);
  auto gc = detail::main_coeffs(g);
  std::size_t n = static_cast<std::size_t>(a + b);
  std::vector<std::vector<SparsePoly>> m(n, std::vector<SparsePoly>(n, SparsePoly::zero(d, var)));
  for (long i = 0; i < a; ++i)
    for (long j = 0; j <= b; ++j) m[i][i + j] = gc[b - j];
  for (long i = 0; i < b; ++i)
    for (long j = 0; j <= a; ++j) m[a + i][i + j] = fc[a - j];
  return detail::bareiss_det(std::move(m), d, var);
}

// Discriminant with the convention
//   Delta_Y f := (-1)^(n(n-1)/2) Res_Y(f, df/dY) / lc(f),  n = deg f,
// so that Delta_Y(Y^2 - X) = 4X and Delta_Y(fh) = Delta f * Delta h * Res(f,h)^2.
inline SparsePoly discriminant_y(const SparsePoly& f) {
  if (!f.is_monic()) fail(errc::not_monic, "discriminant_y: input not monic");
  long n = f.degree();
  if (n < 1) fail(errc::validation_failed, "discriminant_y: degree must be >= 1");
  SparsePoly res = resultant_y(f, f.derivative_main());
  return ((n * (n - 1) / 2) % 2) ? -res : res;
}

struct MonomialUnitForm {
  QVec exponent;      // rho (or delta)
  Rat unit_constant;  // constant term of the cofactor, nonzero
};

struct QoResult {
  bool quasi_ordinary = false;
  MonomialUnitForm form;      // valid when quasi_ordinary
  SparsePoly discriminant;    // the full discriminant
  SparsePoly cofactor;        // X^-delta * discriminant (offending when not QO)
};

namespace detail {

inline SparsePoly shift_x(const SparsePoly& p, const QVec& by) {
  SparsePoly mono(p.xdim(), p.main_var());
  mono.add_term(by.coords(), 0, Rat(1));
  return p * mono;
}

// factor X^delta out of a nonzero X-polynomial; unit iff delta's own
// coefficient is nonzero
inline std::pair<QVec, SparsePoly> monomial_content(const SparsePoly& p) {
  QVec delta = p.min_x_exponent();
  QVec neg = QVec::zero(delta.dim()) - delta;
  return {delta, shift_x(p, neg)};
}

}  // namespace detail

inline QoResult is_quasi_ordinary(const SparsePoly& f) {
  QoResult out;
  out.discriminant = discriminant_y(f);
  if (out.discriminant.is_zero()) {
    out.cofactor = out.discriminant;
    return out;  // non-reduced input: discriminant vanishes identically
  }
  auto [delta, cof] = detail::monomial_content(out.discriminant);
  out.cofactor = cof;
  Rat c0 = cof.constant_coefficient();
  out.quasi_ordinary = (c0 != 0);
  if (out.quasi_ordinary) out.form = {delta, c0};
  return out;
}

struct RhoResult {
  bool comparable = false;
  QVec rho;            // valid when comparable
  SparsePoly resultant;
  SparsePoly cofactor;  // X^-rho * resultant; vanishes at 0 when not comparable
};

// Membership test for the comparable set: Res_Y(f, h) = X^rho * unit.
inline RhoResult rho(const SparsePoly& f, const SparsePoly& h) {
  RhoResult out;
  out.resultant = resultant_y(f, h);
  if (out.resultant.is_zero()) {
    out.cofactor = out.resultant;
    return out;
  }
  auto [r, cof] = detail::monomial_content(out.resultant);
  out.cofactor = cof;
  if (cof.constant_coefficient() != 0) {
    out.comparable = true;
    out.rho = r;
  }
  return out;
}

// psi_f(h) = Res_Y(T - f, h), monic in T of degree deg h.
inline SparsePoly psi_image(const SparsePoly& f, const SparsePoly& h) {
  if (f.xdim() != h.xdim()) fail(errc::dimension_mismatch, "psi_image");
  std::size_t d = f.xdim();
  if (!h.is_monic() && h.degree() > 0) fail(errc::not_monic, "psi_image: h must be monic");
  // lift to d+1 X-variables with T in the last slot
  auto lift = [d](const SparsePoly& p) {
    SparsePoly out(d + 1, p.main_var());
    for (const auto& [key, c] : p.terms()) {
      std::vector<Rat> x(d + 1, Rat(0));
      for (std::size_t i = 0; i < d; ++i) x[i] = ratio(Int(key[i]), p.denom());
      out.add_term(x, static_cast<long>(key[d]), c);
    }
    return out;
  };
  SparsePoly a = -lift(f);
  {
    std::vector<Rat> t(d + 1, Rat(0));
    t[d] = 1;
    a.add_term(t, 0, Rat(1));
  }
  SparsePoly res = resultant_y(a, lift(h));
  if (res.degree() > 0) fail(errc::internal, "psi_image: variable not eliminated");
  // drop the eliminated variable and re-read T as the distinguished one
  SparsePoly out(d, "T");
  for (const auto& [key, c] : res.terms()) {
    std::vector<Rat> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = ratio(Int(key[i]), res.denom());
    Rat tdeg = ratio(Int(key[d]), res.denom());
    if (!is_integer(tdeg)) fail(errc::internal, "psi_image: fractional T-degree");
    out.add_term(x, static_cast<long>(tdeg.get_num().get_si()), c);
  }
  if (out.degree() != h.degree() || (h.degree() > 0 && !out.is_monic()))
    fail(errc::internal, "psi_image: result not monic of degree deg h");
  return out;
}

}  // namespace qopolar
