#pragma once

#include <stdexcept>
#include <string>

namespace qopolar {

enum class errc {
  dimension_mismatch,
  incomparable_inclinations,
  not_polygonal,
  dimension_too_large,
  endpoint_not_on_lattice,
  not_monic,
  zero_polynomial,
  degree_overflow,
  non_unimodular,
  shape_mismatch,
  not_in_image,
  unknown_vertex,
  inconsistent_profiles,
  no_minimal_column,
  inconsistent_chain,
  division_not_integral,
  good_coordinate,
  tie_break_required,
  parse_error,
  validation_failed,
  internal,
};

struct error : std::runtime_error {
  errc code;
  error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace qopolar
