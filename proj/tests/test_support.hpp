#pragma once

// Shared helpers for the test suites: terse constructors for rationals,
// vectors and points, and a deterministic RNG for property tests.

#include <qopolar/qvec.hpp>
#include <qopolar/rational.hpp>
#include <qopolar/sparse_poly.hpp>

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace qtest {

using qopolar::Point;
using qopolar::QVec;
using qopolar::Rat;

inline Rat q(const std::string& s) { return qopolar::parse_rat(s); }

inline QVec qv(std::initializer_list<const char*> cs) {
  std::vector<Rat> v;
  for (auto* c : cs) v.push_back(q(c));
  return QVec(std::move(v));
}

inline Point pt(std::initializer_list<const char*> cs) {
  Point v;
  for (auto* c : cs) v.push_back(q(c));
  return v;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  long pick(long lo, long hi) {  // inclusive
    return std::uniform_int_distribution<long>(lo, hi)(eng);
  }
  Rat rat(long num_lo, long num_hi, long den_hi) {
    long den = pick(1, den_hi);
    return qopolar::ratio(pick(num_lo, num_hi), den);
  }
  Rat pos_rat(long num_hi, long den_hi) {
    long den = pick(1, den_hi);
    return qopolar::ratio(pick(1, num_hi), den);
  }
};

}  // namespace qtest
