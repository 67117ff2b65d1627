#pragma once

#include <iosfwd>

#include "gplab/field.hpp"

namespace gplab {

// Text record, one item per line:
//   gplab-field 1
//   L <half_length>
//   N <n_points>
//   background constant <re> <im>      |  background soliton <c> <a> <theta>
//   samples
//   <re> <im>                          (N lines, perturbation w_j, j = 0..N-1)
// Reals are written with 17 significant digits, so a round trip is exact.

void write_field(std::ostream& out, const Field& f);

/// Throws std::runtime_error naming the offending line on malformed input.
Field read_field(std::istream& in);

}  // namespace gplab
