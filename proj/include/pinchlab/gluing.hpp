#pragma once

// Region-variable gluing system. Each region of a diagram carries one
// complex variable; every region imposes one equation: the product of its
// corner ratios equals 1.
//
// At a crossing with quadrant values (w_a, w_b, w_c, w_d), quadrant a
// being the under-in corner:
//   tau_a = (w_b w_d - w_a w_c) / ((w_a - w_b)(w_a - w_d))
//   tau_b = (w_b - w_c)(w_b - w_a) / (w_a w_c - w_b w_d)
//   tau_c = (w_b w_d - w_a w_c) / ((w_c - w_d)(w_c - w_b))
//   tau_d = (w_d - w_a)(w_d - w_c) / (w_a w_c - w_b w_d)
// The four ratios multiply to 1 at every crossing and are invariant under
// scaling all four values. A crossing is pinched when
// w_a - w_b + w_c - w_d = 0; that is equivalent to any single tau being 1
// and to all four being 1.

#include <set>
#include <vector>

#include "pinchlab/diagram.hpp"

namespace pinchlab {

// corner ratio for one quadrant; corner is a letter 'a'..'d'.
// Throws degeneracy_error when the needed denominators vanish.
cplx tau(cplx wa, cplx wb, cplx wc, cplx wd, char corner);

// the four quadrant values of w around a crossing
std::array<cplx, 4> corner_values(const Diagram& d, const std::vector<cplx>& w,
                                  int crossing_id);

// per-region equation residuals: product of corner ratios minus 1
std::vector<cplx> residuals(const Diagram& d, const std::vector<cplx>& w);

struct SolutionReport {
  bool ok = false;
  double residual_norm = 0.0;  // max |per-region residual|
  double margin = 0.0;         // smallest non-degeneracy margin, relative
  std::vector<std::string> failures;
};

// Residuals plus non-degeneracy margins: adjacent quadrant values at each
// crossing stay apart, the central quantity w_a w_c - w_b w_d stays away
// from 0 relative to scale, and no region value is (relatively) zero.
SolutionReport check_solution(const Diagram& d, const std::vector<cplx>& w,
                              double tol = 1e-10);
bool is_solution(const Diagram& d, const std::vector<cplx>& w,
                 double tol = 1e-10);

// pinch predicate: |w_a - w_b + w_c - w_d| below tol relative to the
// largest quadrant value
bool is_pinched(const Diagram& d, const std::vector<cplx>& w, int crossing_id,
                double tol = 1e-8);
std::set<int> pinched_set(const Diagram& d, const std::vector<cplx>& w,
                          double tol = 1e-8);

// Close a set of pinched crossings under the region equations: if all of
// a region's corners except those at one crossing c sit at pinched
// crossings, and the corners at c occupy a forcing quadrant pattern (one
// corner, two corners at adjacent quadrants, or three corners), then c is
// pinched too. Purely combinatorial; w is not consulted.
std::set<int> propagate_pinch(const Diagram& d, const std::set<int>& known);

struct WSolution {
  std::vector<cplx> w;         // w[id-1] is the value of region id
  double residual_norm = 0.0;  // max |per-region residual|
  std::set<int> pinched;       // 1-based crossing ids
  double tol = 1e-10;          // tolerance the solution was accepted at
};

// bundle a value vector with its residual norm and pinched set
WSolution make_solution(const Diagram& d, std::vector<cplx> w,
                        double tol = 1e-10);

}  // namespace pinchlab
