#pragma once

// Toric base changes (monomial substitutions along a unimodular basis),
// Laurent normalization Y -> X^q Y, and the induced shift of bunch types.

#include <qopolar/bunch_type.hpp>
#include <qopolar/error.hpp>
#include <qopolar/lattice.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>
#include <qopolar/sparse_poly.hpp>

#include <cstddef>
#include <vector>

namespace qopolar {

namespace detail {

// inverse of a square rational matrix; fails if singular
inline std::vector<std::vector<Rat>> rat_inverse(std::vector<std::vector<Rat>> m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) fail(errc::non_unimodular, "matrix not invertible");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    Rat lead = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= lead;
      inv[c][j] /= lead;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

// Rewrites H in the variables V_i = X^(a_i) for a unimodular basis a_1..a_d
// whose cone contains the dual positive orthant, i.e. exponents transform by
// the inverse transpose. The distinguished variable is untouched.
inline SparsePoly toric_base_change(const SparsePoly& h, const std::vector<std::vector<Int>>& basis) {
  std::size_t d = h.xdim();
  if (basis.size() != d) fail(errc::dimension_mismatch, "toric_base_change: basis size");
  for (const auto& row : basis)
    if (row.size() != d) fail(errc::dimension_mismatch, "toric_base_change: basis row size");
  // unimodularity via the Smith diagonal of the basis matrix
  IntMat m = basis;
  auto diag = smith_diagonal(m);
  Int det(1);
  for (const auto& x : diag) det *= x;
  if (diag.size() != d || det != 1)
    fail(errc::non_unimodular, "toric_base_change: basis is not unimodular");
  for (const auto& row : basis)
    for (const auto& x : row)
      if (x < 0)
        fail(errc::non_unimodular,
             "toric_base_change: basis vectors must lie in the dual positive orthant");
  // coordinates of e in the basis: solve A^T c = e, c = (A^T)^-1 e
  std::vector<std::vector<Rat>> at(d, std::vector<Rat>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) at[i][j] = Rat(basis[j][i]);
  auto inv = detail::rat_inverse(at);
  SparsePoly out(d, h.main_var());
  for (const auto& [key, c] : h.terms()) {
    std::vector<Rat> e(d);
    for (std::size_t i = 0; i < d; ++i) e[i] = ratio(Int(key[i]), h.denom());
    std::vector<Rat> nc(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) nc[i] += inv[i][j] * e[j];
    out.add_term(nc, static_cast<long>(key[d]), c);
  }
  return out;
}

// f = X^(-deg(F) q) F(X^q Y) for a given integer vector q.
inline SparsePoly laurent_transform(const SparsePoly& f, const std::vector<Int>& q) {
  std::size_t d = f.xdim();
  if (q.size() != d) fail(errc::dimension_mismatch, "laurent_transform: q dimension");
  long n = f.degree();
  if (n < 0) return f;
  SparsePoly out(d, f.main_var());
  for (const auto& [key, c] : f.terms()) {
    long i = static_cast<long>(key[d]);
    std::vector<Rat> e(d);
    for (std::size_t t = 0; t < d; ++t)
      e[t] = ratio(Int(key[t]), f.denom()) + Rat(q[t]) * Rat(i - n);
    out.add_term(e, i, c);
  }
  return out;
}

struct LaurentNormalization {
  SparsePoly f;
  std::vector<Int> q;
};

// Picks the lowest integral supporting slope q (coordinatewise floor of the
// support bounds, capped at 0 so holomorphic input is returned unchanged)
// and applies the transform above. The derivative of F normalizes with the
// same q to the derivative of f.
inline LaurentNormalization laurent_normalize(const SparsePoly& f) {
  std::size_t d = f.xdim();
  if (!f.is_monic()) fail(errc::not_monic, "laurent_normalize: input must be monic");
  long n = f.degree();
  std::vector<Int> q(d, Int(0));
  for (std::size_t t = 0; t < d; ++t) {
    bool have = false;
    Rat bound(0);
    for (const auto& [key, c] : f.terms()) {
      long i = static_cast<long>(key[d]);
      if (i >= n) continue;
      Rat slope = ratio(Int(key[t]), f.denom()) / Rat(n - i);
      if (!have || slope < bound) {
        bound = slope;
        have = true;
      }
    }
    if (have && bound < 0) q[t] = floor_int(bound);
  }
  LaurentNormalization out{laurent_transform(f, q), q};
  if (out.f.has_negative_x_exponent())
    fail(errc::internal, "laurent_normalize: transform left negative exponents");
  return out;
}

// Type of the transformed decomposition: row j shifts by deg(f_j) * q,
// multiplicities unchanged.
inline BunchType shift_type(const BunchType& t, const std::vector<Int>& q,
                            const std::vector<Int>& factor_degrees) {
  if (factor_degrees.size() != t.rows())
    fail(errc::shape_mismatch, "shift_type: one degree per row required");
  if (q.size() != t.xdim()) fail(errc::shape_mismatch, "shift_type: q dimension");
  std::vector<Rat> qr(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) qr[i] = Rat(q[i]);
  QVec qv(qr);
  BunchType out(t.rows(), t.xdim());
  for (const auto& col : t.columns()) {
    BunchColumn nc;
    nc.multiplicity = col.multiplicity;
    for (std::size_t j = 0; j < t.rows(); ++j)
      nc.values.push_back(col.values[j] + qv * Rat(factor_degrees[j]));
    out.add_column(std::move(nc));
  }
  return out;
}

}  // namespace qopolar
