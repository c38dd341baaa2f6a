#pragma once

// Hyperbolic volume of a region-variable solution. Every crossing carries
// an ideal octahedron that splits into five ideal tetrahedra; their shape
// parameters are ratios of the four quadrant values. Summing the
// Bloch-Wigner function over all shapes gives the volume. Pinched
// crossings contribute degenerate (real-shape) tetrahedra and hence 0.

#include <vector>

#include "pinchlab/diagram.hpp"

namespace pinchlab {

// dilogarithm, principal branch, accurate to ~1e-14 everywhere
cplx dilog(cplx z);

// Bloch-Wigner function D(z) = Im(Li2(z)) + arg(1-z) log|z|;
// identically 0 on the real axis
double bloch_wigner(cplx z);

struct OctahedronShapes {
  int crossing = 0;
  std::array<cplx, 5> shapes{};  // w_b/w_a, w_b/w_c, w_d/w_c, w_d/w_a,
                                 // w_a w_c / (w_b w_d)
};

OctahedronShapes octahedron_shapes(const Diagram& d,
                                   const std::vector<cplx>& w,
                                   int crossing_id);

std::vector<double> per_crossing_volume(const Diagram& d,
                                        const std::vector<cplx>& w);
double volume(const Diagram& d, const std::vector<cplx>& w);

}  // namespace pinchlab
