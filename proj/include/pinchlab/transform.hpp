#pragma once

// Solution-preserving diagram moves. A region-variable solution survives a
// crossing change at pinched crossings verbatim (region ids are carried
// across) and survives rational twist insertion at a pinched crossing with
// the outside values untouched bit for bit.

#include <map>
#include <set>
#include <vector>

#include "pinchlab/diagram.hpp"
#include "pinchlab/gluing.hpp"

namespace pinchlab {

struct TransferResult {
  Diagram diagram;
  WSolution solution;  // same w vector, re-checked on the new diagram
};

// Change the crossings in J, all of which must be pinched in s.
// Throws precondition_error naming the first non-pinched crossing;
// throws verification_error if the carried solution fails to verify.
TransferResult transfer_crossing_change(const Diagram& d, const WSolution& s,
                                        const std::set<int>& J);

struct TangleResult {
  Diagram diagram;
  WSolution solution;
  std::vector<int> tangle_crossings;  // all pinched in the result
  std::map<int, int> region_map;      // old region id -> new region id
};

// Insert the twist word at a pinched crossing; the new region values are
// the unique solution of the pinch conditions at the twist crossings.
TangleResult insert_tangle(const Diagram& d, const WSolution& s,
                           int crossing_id, const std::vector<int>& word);

// True when d1 and d2 differ exactly by crossing changes (same underlying
// projection) and w solves both, every switched crossing being pinched.
// Throws precondition_error when the projections differ.
bool r_related(const Diagram& d1, const Diagram& d2, const WSolution& s);

}  // namespace pinchlab
