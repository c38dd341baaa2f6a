#pragma once

// Boundary-parabolic representations of the knot group, one 2x2 matrix
// per arc (all arcs of one over-strand share their meridian image). The
// conjugation relation at a crossing with under-in arc i, over arc j and
// under-out arc k reads
//   positive crossing:  M_k M_j = M_j M_i
//   negative crossing:  M_j M_k = M_i M_j
// Meridian images are parabolic with trace +2: the matrix fixing z with
// translation parameter t is [[1+tz, -t z^2], [t, 1-tz]]; the matrix
// fixing infinity is [[1, t], [0, 1]].

#include <cstdint>
#include <map>
#include <optional>

#include "pinchlab/diagram.hpp"
#include "pinchlab/gluing.hpp"

namespace pinchlab {

struct Mat2 {
  cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  cplx trace() const { return a + d; }
  cplx det() const { return a * d - b * c; }
  Mat2 inverse() const;
  double norm() const;  // Frobenius
};

inline Mat2 identity_mat() { return Mat2{}; }
// the standard unit translation [[1,1],[0,1]]
inline Mat2 unit_translation() { return Mat2{1.0, 1.0, 0.0, 1.0}; }

// parabolic matrix fixing the given point (nullopt = infinity)
Mat2 parabolic_about(const std::optional<cplx>& fix, cplx t);

// fixed point of a parabolic matrix; nullopt = infinity
std::optional<cplx> fix_of(const Mat2& m, double tol = 1e-9);

bool commute(const Mat2& x, const Mat2& y, double tol = 1e-8);

struct ParabolicRep {
  std::vector<Mat2> images;  // images[arc], entry 0 unused
  bool normalized = false;
};

// expand per-class matrices (indexed by Wirtinger class) to per-arc images
ParabolicRep rep_from_classes(const Diagram& d,
                              const std::vector<Mat2>& class_images);

// largest Frobenius norm of a crossing relation residual
double relation_residual(const Diagram& d, const ParabolicRep& rho);
bool rep_relations_ok(const Diagram& d, const ParabolicRep& rho,
                      double tol = 1e-8);

// crossings whose over and under-in meridian images commute
std::set<int> commutation_profile(const Diagram& d, const ParabolicRep& rho,
                                  double tol = 1e-8);

struct RepSolveConfig {
  int restarts = 60;
  std::uint64_t seed = 1;
  double accept_tol = 1e-10;
  int max_newton_steps = 120;
};

// Random-restart search for boundary-parabolic representations.
// Deterministic for a fixed seed; results are normalized and deduplicated
// by commutation profile and rounded matrix entries.
std::vector<ParabolicRep> solve_parabolic_reps(const Diagram& d,
                                               const RepSolveConfig& cfg = {});

// Conjugate so the meridian of base_arc becomes [[1,1],[0,1]] and (when an
// independent generator exists) the first non-commuting generator fixes 0.
ParabolicRep normalize_rep(const Diagram& d, const ParabolicRep& rho,
                           int base_arc = 1);

// Carry a representation across crossing changes at J. Requires the over
// and under-in meridians at every crossing of J to commute; the arcwise
// images are unchanged and satisfy the changed diagram's relations.
ParabolicRep transport(const Diagram& d, const ParabolicRep& rho,
                       const std::set<int>& J);
// same, with the pinched certificate of a region-variable solution checked
ParabolicRep transport(const Diagram& d, const ParabolicRep& rho,
                       const std::set<int>& J, const WSolution& w);

// difference of the two meridian fixed points; the conjugation shift that
// aligns two factors before composing them
cplx shift_parameter(const ParabolicRep& rho, int arc_b,
                     const ParabolicRep& rho2, int arc_b2);

struct ComposedRep {
  Diagram diagram;
  ParabolicRep rep;
  std::map<int, int> first_arcs, second_arcs;  // factor arc -> new arc
  int bridge1 = 0, bridge2 = 0;
};

// Connected sum of two represented diagrams: both factors are renormalized
// so the cut meridians become [[1,1],[0,1]], the second factor is shifted
// by [[1,r],[0,1]], and the spliced strand carries the common meridian.
ComposedRep connected_sum_rep(const Diagram& d1, const ParabolicRep& rho1,
                              int arc_a, const Diagram& d2,
                              const ParabolicRep& rho2, int arc_a2,
                              cplx shift);

// Propagate seed images (keyed by arc) through the crossing relations
// until every class is determined; verifies the result.
ParabolicRep complete_rep(const Diagram& d, const std::map<int, Mat2>& seeds);

}  // namespace pinchlab
