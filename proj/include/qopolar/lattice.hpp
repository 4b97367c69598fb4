#pragma once

// Integer linear algebra for the characteristic lattices: Hermite form for
// bases and membership, Smith form for indices. Lattices live in (1/D)Z^d
// and always contain a scaled copy of Z^d, so bases are square full rank.

#include <qopolar/error.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <cstddef>
#include <vector>

namespace qopolar {

using IntMat = std::vector<std::vector<Int>>;

// Row-style Hermite normal form (echelon, nonnegative pivots). Returns the
// nonzero rows; input rows may be linearly dependent.
inline IntMat hermite_rows(IntMat rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // eliminate column c below row r by gcd chaining
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (piv == rows.size() || abs(rows[i][c]) < abs(rows[piv][c]))) piv = i;
      if (piv == rows.size()) break;
      std::swap(rows[r], rows[piv]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
      // reduce entries above the pivot
      for (std::size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        if (q != 0)
          for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

// Diagonal of the Smith normal form (invariant factors, nonincreasing
// divisibility d1 | d2 | ...). Destroys its argument.
inline std::vector<Int> smith_diagonal(IntMat a) {
  std::size_t m = a.size();
  std::size_t n = m ? a[0].size() : 0;
  std::vector<Int> diag;
  std::size_t t = 0;
  while (t < m && t < n) {
    // find a nonzero pivot of minimal absolute value
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);
    bool again = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a[i][t] == 0) continue;
      Int q = a[i][t] / a[t][t];
      for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) again = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a[t][j] == 0) continue;
      Int q = a[t][j] / a[t][t];
      for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
      if (a[t][j] != 0) again = true;
    }
    if (again) continue;
    // pivot must divide every remaining entry
    bool fixed = false;
    for (std::size_t i = t + 1; i < m && !fixed; ++i)
      for (std::size_t j = t + 1; j < n && !fixed; ++j)
        if (a[i][j] % a[t][t] != 0) {
          for (std::size_t jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
          fixed = true;
        }
    if (fixed) continue;
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

// A full-rank lattice in (1/denom)Z^d containing a scaled copy of Z^d.
class Lattice {
 public:
  static Lattice standard(std::size_t d) {
    Lattice m;
    m.d_ = d;
    m.denom_ = 1;
    m.basis_.assign(d, std::vector<Int>(d, 0));
    for (std::size_t i = 0; i < d; ++i) m.basis_[i][i] = 1;
    return m;
  }

  std::size_t dim() const { return d_; }
  const Int& denom() const { return denom_; }
  const IntMat& scaled_basis() const { return basis_; }

  // Lattice spanned by this one and the finite vector v.
  Lattice extend(const QVec& v) const {
    if (v.is_infinite() || v.dim() != d_) fail(errc::dimension_mismatch, "Lattice::extend");
    Int den(1);
    for (std::size_t i = 0; i < d_; ++i) den = lcm_int(den, v[i].get_den());
    Lattice out;
    out.d_ = d_;
    out.denom_ = lcm_int(denom_, den);
    Int s = out.denom_ / denom_;
    IntMat rows = basis_;
    for (auto& row : rows)
      for (auto& x : row) x *= s;
    std::vector<Int> extra(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      Rat scaled = v[i] * Rat(out.denom_);
      extra[i] = scaled.get_num();  // integral by construction
    }
    rows.push_back(std::move(extra));
    out.basis_ = hermite_rows(std::move(rows), d_);
    if (out.basis_.size() != d_) fail(errc::internal, "Lattice::extend: rank drop");
    return out;
  }

  bool contains(const QVec& v) const {
    if (v.is_infinite()) return false;
    if (v.dim() != d_) fail(errc::dimension_mismatch, "Lattice::contains");
    // solve x * B = denom * v over Z by back substitution on the echelon basis
    std::vector<Rat> target(d_);
    for (std::size_t i = 0; i < d_; ++i) target[i] = v[i] * Rat(denom_);
    for (std::size_t i = 0; i < d_; ++i) {
      const Rat& t = target[i];
      const Int& piv = basis_[i][i];
      Rat coeff = t / Rat(piv);
      if (!is_integer(coeff)) return false;
      for (std::size_t j = i; j < d_; ++j) target[j] -= coeff * Rat(basis_[i][j]);
    }
    return true;
  }

  // covolume relative to (1/denom)Z^d scaling, i.e. |det scaled_basis|.
  Int scaled_covolume() const {
    auto diag = smith_diagonal(basis_);
    Int p(1);
    for (auto& x : diag) p *= x;
    return p;
  }

  // [other : this] for this contained in other; must be a positive integer.
  Int index_in(const Lattice& finer) const {
    Int den = lcm_int(denom_, finer.denom_);
    Int a = scaled_covolume() * pow_int(den / denom_, d_);
    Int b = finer.scaled_covolume() * pow_int(den / finer.denom_, d_);
    if (b == 0 || a % b != 0) fail(errc::internal, "Lattice::index_in: non-integral index");
    return a / b;
  }

  std::vector<QVec> basis_vectors() const {
    std::vector<QVec> out;
    for (const auto& row : basis_) {
      std::vector<Rat> c(d_);
      for (std::size_t j = 0; j < d_; ++j) c[j] = ratio(row[j], denom_);
      out.emplace_back(std::move(c));
    }
    return out;
  }

  bool operator==(const Lattice& o) const {
    if (d_ != o.d_) return false;
    Int den = lcm_int(denom_, o.denom_);
    Int sa = den / denom_, sb = den / o.denom_;
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        if (basis_[i][j] * sa != o.basis_[i][j] * sb) return false;
    return true;
  }

 private:
  static Int pow_int(Int b, std::size_t e) {
    Int r(1);
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
  }

  std::size_t d_ = 0;
  Int denom_ = 1;
  IntMat basis_;  // square echelon form, scaled by denom_
};

}  // namespace qopolar
