#pragma once

// Exact rational scalars. Thin helpers around GMP's mpq_class so the rest
// of the library never touches raw mpq_t state.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qopolar {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat ratio(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// floor(a/b) with exact semantics for negative values.
inline Int floor_int(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

// Parses "a" or "a/b" with optional sign. Throws on malformed input.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace qopolar
