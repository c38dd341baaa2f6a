#pragma once

#include <cstdint>
#include <utility>

#include "pinchlab/diagram.hpp"

namespace pinchlab {

// |Delta(-1)|, the knot determinant, computed from the strand presentation.
std::int64_t knot_determinant(const Diagram& d);

// invariant pair used to tell small knots apart: (|Delta(-1)|, odd part of
// |Delta(2)|).  both components are insensitive to the unit ambiguity of the
// Alexander polynomial, so they are safe to compare across diagrams.
std::pair<std::int64_t, std::int64_t> alexander_fingerprint(const Diagram& d);

}  // namespace pinchlab
