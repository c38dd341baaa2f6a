#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>

#include "pinchlab/fixtures.hpp"
#include "pinchlab/holonomy.hpp"

using namespace pinchlab;

namespace {

double mat_gap(const Mat2& x, const Mat2& y) { return (x - y).norm(); }

const char* k_mirror_trefoil = "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]";

}  // namespace

TEST_CASE("matrix helpers") {
  const Mat2 m{cplx(2, 0), cplx(1, 0), cplx(-1, 0), cplx(0, 0)};
  CHECK(std::abs(m.det() - cplx(1, 0)) < 1e-15);
  CHECK(mat_gap(m * m.inverse(), identity_mat()) < 1e-15);
  CHECK(std::abs(m.trace() - cplx(2, 0)) < 1e-15);

  const Mat2 t = parabolic_about(std::nullopt, cplx(3, 1));
  CHECK(mat_gap(t, Mat2{cplx(1, 0), cplx(3, 1), cplx(0, 0), cplx(1, 0)}) == 0.0);
  CHECK_FALSE(fix_of(t).has_value());

  const cplx z(0.5, 0.1);
  const Mat2 p = parabolic_about(z, cplx(1.2, -0.3));
  CHECK(std::abs(p.trace() - cplx(2, 0)) < 1e-14);
  CHECK(std::abs(p.det() - cplx(1, 0)) < 1e-14);
  const auto fx = fix_of(p);
  REQUIRE(fx.has_value());
  CHECK(std::abs(*fx - z) < 1e-12);

  CHECK(commute(unit_translation(), parabolic_about(std::nullopt, cplx(2, 5))));
  CHECK_FALSE(commute(unit_translation(),
                      Mat2{cplx(1, 0), cplx(0, 0), cplx(1, 0), cplx(1, 0)}));
}

TEST_CASE("exact trefoil representations") {
  const Diagram tre = census_diagram("trefoil");
  const ParabolicRep rho = exact_trefoil_rep(tre);
  CHECK(rep_relations_ok(tre, rho));
  CHECK(relation_residual(tre, rho) < 1e-14);
  // meridian fixed points: arcs 1,6 at infinity, 2,3 at 0, 4,5 at -1
  CHECK_FALSE(fix_of(rho.images[1]).has_value());
  CHECK_FALSE(fix_of(rho.images[6]).has_value());
  CHECK(std::abs(*fix_of(rho.images[2])) < 1e-12);
  CHECK(std::abs(*fix_of(rho.images[4]) - cplx(-1, 0)) < 1e-12);
  // no crossing has commuting strands: the representation is irreducible
  CHECK(commutation_profile(tre, rho).empty());
  // the shift between the meridians at arcs 4 and 2 is -1
  CHECK(std::abs(shift_parameter(rho, 4, rho, 2) - cplx(-1, 0)) < 1e-12);

  const Diagram mir = parse_pd(k_mirror_trefoil);
  const ParabolicRep rho2 = exact_mirror_trefoil_rep(mir);
  CHECK(rep_relations_ok(mir, rho2));
  CHECK(commutation_profile(mir, rho2).empty());
  // the exact representations refuse a diagram with the wrong presentation
  CHECK_THROWS_AS(exact_trefoil_rep(mir), precondition_error);
}

TEST_CASE("normalization fixes the exact representation") {
  const Diagram tre = census_diagram("trefoil");
  const ParabolicRep rho = exact_trefoil_rep(tre);
  const ParabolicRep nu = normalize_rep(tre, rho);
  CHECK(nu.normalized);
  for (int a = 1; a <= 6; ++a) {
    CHECK(mat_gap(nu.images[a], rho.images[a]) < 1e-12);
  }
  // normalization is insensitive to a global conjugation
  const Mat2 g{cplx(2, 1), cplx(0.5, 0), cplx(1, -1), cplx(1, 0.25)};
  ParabolicRep moved = rho;
  const Mat2 gi = g.inverse();
  for (int a = 1; a <= 6; ++a) moved.images[a] = g * rho.images[a] * gi;
  CHECK(rep_relations_ok(tre, moved));
  const ParabolicRep back = normalize_rep(tre, moved);
  for (int a = 1; a <= 6; ++a) {
    CHECK(mat_gap(back.images[a], rho.images[a]) < 1e-9);
  }
}

TEST_CASE("rep_from_classes expands and complete_rep propagates") {
  const Diagram tre = census_diagram("trefoil");
  const WirtingerPresentation wp = wirtinger(tre);
  const ParabolicRep rho = exact_trefoil_rep(tre);
  std::vector<Mat2> cls(3);
  for (int a = 1; a <= 6; ++a) cls[wp.class_of_arc[a]] = rho.images[a];
  const ParabolicRep again = rep_from_classes(tre, cls);
  for (int a = 1; a <= 6; ++a) {
    CHECK(mat_gap(again.images[a], rho.images[a]) == 0.0);
  }
  // seeding two of the three classes is enough: the crossing relations
  // force the remaining class
  const std::map<int, Mat2> seeds = {{1, rho.images[1]}, {2, rho.images[2]}};
  const ParabolicRep filled = complete_rep(tre, seeds);
  for (int a = 1; a <= 6; ++a) {
    CHECK(mat_gap(filled.images[a], rho.images[a]) < 1e-12);
  }
  // an inconsistent seeding is rejected
  const std::map<int, Mat2> bad = {{1, rho.images[1]},
                                   {2, rho.images[2]},
                                   {4, unit_translation()}};
  CHECK_THROWS_AS(complete_rep(tre, bad), verification_error);
}

TEST_CASE("transport requires commuting strands") {
  const Diagram tre = census_diagram("trefoil");
  const ParabolicRep rho = exact_trefoil_rep(tre);
  // nothing to change: the transported representation is the same one
  const ParabolicRep same = transport(tre, rho, {});
  for (int a = 1; a <= 6; ++a) {
    CHECK(mat_gap(same.images[a], rho.images[a]) < 1e-12);
  }
  // crossing 1 has non-commuting strands, so transport must refuse
  CHECK_THROWS_AS(transport(tre, rho, {1}), precondition_error);
}

TEST_CASE("connected sum of represented factors") {
  const Diagram tre = census_diagram("trefoil");
  const ParabolicRep rho = exact_trefoil_rep(tre);
  for (const cplx shift : {cplx(-1, 0), cplx(0, 0), cplx(2.5, 0.5)}) {
    const ComposedRep comp = connected_sum_rep(tre, rho, 1, tre, rho, 1, shift);
    CHECK(comp.diagram.crossing_count() == 6);
    CHECK(rep_relations_ok(comp.diagram, comp.rep));
  }
}

TEST_CASE("representation search finds the integral trefoil rep") {
  const Diagram mir = parse_pd(k_mirror_trefoil);
  const ParabolicRep target = exact_mirror_trefoil_rep(mir);
  RepSolveConfig cfg;
  cfg.restarts = 40;
  cfg.seed = 1;
  const std::vector<ParabolicRep> found = solve_parabolic_reps(mir, cfg);
  REQUIRE_FALSE(found.empty());
  bool hit = false;
  for (const ParabolicRep& r : found) {
    CHECK(rep_relations_ok(mir, r));
    double gap = 0.0;
    for (int a = 1; a <= 6; ++a) {
      gap = std::max(gap, mat_gap(r.images[a], target.images[a]));
    }
    hit = hit || gap < 1e-6;
  }
  CHECK(hit);
}
