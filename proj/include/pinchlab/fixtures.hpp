#pragma once

// Bundled fixtures: the small-knot census asset, the exact parametric
// solution families of the 8_5 and 8_18 diagrams, the integral trefoil
// representations, and the three connected-sum figure configurations.

#include <optional>
#include <string>
#include <vector>

#include "pinchlab/diagram.hpp"
#include "pinchlab/gluing.hpp"
#include "pinchlab/holonomy.hpp"
#include "pinchlab/solver.hpp"

namespace pinchlab {

struct CensusEntry {
  std::string name;
  std::string pd;
  long determinant = 0;  // |Delta(-1)|
  long det2_odd = 0;     // odd part of |Delta(2)|
  int crossing_count = 0;
  int region_count = 0;
  // known (non-exhaustive) solution data; volumes are absolute values
  std::vector<std::set<int>> known_pinched;
  std::vector<double> known_volumes;
};

struct CensusEdge {
  std::string from;
  std::set<int> crossings;  // 1-based ids changed in `from`
  std::string to;
};

const std::vector<CensusEntry>& census();
const std::vector<CensusEdge>& census_edges();
const CensusEntry& census_entry(const std::string& name);
Diagram census_diagram(const std::string& name);

// entry whose invariants (and crossing count, when >0) match; nullopt when
// no entry or more than one entry matches
std::optional<std::string> census_lookup(long determinant, long det2_odd,
                                         int crossing_count = 0);

struct FamilyPoint {
  cplx p, q, r;
};

// Exact three-parameter solution families, one value per region id.
// family_8_5 pinches crossings {1,2}; the two 8_18 families pinch {6,8}
// and {2,4}. All three satisfy the gluing equations identically in
// (p,q,r); degenerate parameter choices throw degeneracy_error.
std::vector<cplx> family_8_5(const FamilyPoint& fp);
std::vector<cplx> family_8_18_w(const FamilyPoint& fp);
std::vector<cplx> family_8_18_wp(const FamilyPoint& fp);

/// dispatcher used by the CLI: family is "w" or "wp"
std::vector<cplx> family_values(const std::string& knot,
                                const std::string& family,
                                const FamilyPoint& fp);

// verify and bundle a family evaluation (margins and residuals checked;
// degenerate points throw degeneracy_error)
WSolution family_solution(const Diagram& d, const std::vector<cplx>& w,
                          double tol = 1e-10);

// integral representations on the bundled trefoil PD and its mirror image
ParabolicRep exact_trefoil_rep(const Diagram& trefoil);
ParabolicRep exact_mirror_trefoil_rep(const Diagram& mirror_trefoil);

// Connected-sum figures: compose two trefoil factors, run a strand-pass
// move on (arc_b, arc_b2) of the composite, and change either new crossing.
struct SumFigure {
  std::string name;
  int cut_arc1 = 0, cut_arc2 = 0;  // cut arcs (factor 1 is the trefoil)
  bool second_mirrored = false;    // second factor mirrored (square knot)
  double shift = 0.0;              // conjugation shift for the second factor
  int arc_b = 0, arc_b2 = 0;       // strand-pass arcs in the composite
  bool b_over = true;
  std::string p_target, q_target;  // census knots after changing P resp. Q
};
const std::vector<SumFigure>& sum_figures();

/// Census runner: solve each named knot, record signatures, and verify the
// bundled transfer edges. Per-knot errors are recorded, never thrown.
struct CensusRow {
  std::string name;
  int solution_count = 0;
  std::vector<std::string> classifications;  // per solution
  std::vector<std::set<int>> pinched_sets;   // per solution
  std::vector<double> volumes;               // per solution
  std::vector<std::string> failures;
};
struct CensusEdgeHit {
  std::string from;
  std::set<int> crossings;
  std::string to;
  bool verified = false;
};
struct CensusReport {
  std::vector<CensusRow> rows;
  std::vector<CensusEdgeHit> edges;
};
CensusReport census_report(const std::vector<std::string>& names,
                           const SolverConfig& cfg = {});

}  // namespace pinchlab
