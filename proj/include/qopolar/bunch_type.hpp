#pragma once

// The type of a bunch decomposition: one column per bunch, holding the s
// normalized resultant orders rho(f_i, .)/deg together with the bunch
// degree. Columns are kept in a caller-chosen display order; equality is
// decided on the canonical (lexicographically sorted) form.

#include <qopolar/error.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace qopolar {

struct BunchColumn {
  std::vector<QVec> values;  // one entry per branch of f
  Int multiplicity;          // the bunch degree, > 0
};

class BunchType {
 public:
  BunchType(std::size_t rows, std::size_t d) : rows_(rows), d_(d) {}

  std::size_t rows() const { return rows_; }
  std::size_t xdim() const { return d_; }
  const std::vector<BunchColumn>& columns() const { return cols_; }
  bool empty() const { return cols_.empty(); }

  void add_column(BunchColumn col) {
    if (col.values.size() != rows_) fail(errc::shape_mismatch, "BunchType: wrong row count");
    for (const auto& v : col.values)
      if (v.dim() != d_ || v.is_infinite())
        fail(errc::shape_mismatch, "BunchType: entries must be finite of dimension d");
    if (col.multiplicity <= 0) fail(errc::shape_mismatch, "BunchType: nonpositive multiplicity");
    cols_.push_back(std::move(col));
  }

  Int total_multiplicity() const {
    Int t(0);
    for (const auto& c : cols_) t += c.multiplicity;
    return t;
  }

  // canonical column order: lexicographic on the flattened rational tuples
  BunchType canonical() const {
    BunchType out(rows_, d_);
    out.cols_ = cols_;
    std::sort(out.cols_.begin(), out.cols_.end(), [](const BunchColumn& a, const BunchColumn& b) {
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] != b.values[i]) return a.values[i].lex_less(b.values[i]);
      }
      return a.multiplicity < b.multiplicity;
    });
    return out;
  }

  bool operator==(const BunchType& o) const {
    if (rows_ != o.rows_ || d_ != o.d_ || cols_.size() != o.cols_.size()) return false;
    auto a = canonical(), b = o.canonical();
    for (std::size_t j = 0; j < a.cols_.size(); ++j) {
      if (a.cols_[j].multiplicity != b.cols_[j].multiplicity) return false;
      for (std::size_t i = 0; i < rows_; ++i)
        if (a.cols_[j].values[i] != b.cols_[j].values[i]) return false;
    }
    return true;
  }
  bool operator!=(const BunchType& o) const { return !(*this == o); }

 private:
  std::size_t rows_;
  std::size_t d_;
  std::vector<BunchColumn> cols_;
};

}  // namespace qopolar
