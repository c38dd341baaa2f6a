#include <doctest.h>

#include <cmath>
#include <complex>

#include "pinchlab/fixtures.hpp"
#include "pinchlab/volume.hpp"

using namespace pinchlab;

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

TEST_CASE("dilogarithm reference points") {
  // closed forms at 1, -1, 1/2
  CHECK(std::abs(dilog(cplx(1, 0)) - cplx(k_pi * k_pi / 6, 0)) < 1e-14);
  CHECK(std::abs(dilog(cplx(-1, 0)) - cplx(-k_pi * k_pi / 12, 0)) < 1e-14);
  const double half = k_pi * k_pi / 12 - 0.5 * std::log(2.0) * std::log(2.0);
  CHECK(std::abs(dilog(cplx(0.5, 0)) - cplx(half, 0)) < 1e-14);
}

TEST_CASE("dilogarithm branch consistency") {
  // Landen-type identity: Li2(z) + Li2(z/(z-1)) = -log^2(1-z)/2, valid for
  // Re z < 1/2; exercises different evaluation branches on the two sides
  const cplx pts[] = {{0.3, 0.4}, {-1.7, 0.9}, {0.45, -1.3}, {-0.2, 0.01}};
  for (const cplx& z : pts) {
    const cplx lhs = dilog(z) + dilog(z / (z - cplx(1, 0)));
    const cplx rhs = -0.5 * std::pow(std::log(cplx(1, 0) - z), 2);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("bloch_wigner special values") {
  // the regular ideal simplex parameter
  const cplx omega = std::polar(1.0, k_pi / 3);
  CHECK(std::abs(bloch_wigner(omega) - 1.0149416064096536) < 1e-12);
  // D(i) is Catalan's constant
  CHECK(std::abs(bloch_wigner(cplx(0, 1)) - 0.9159655941772190) < 1e-12);
  // real arguments give exactly zero
  CHECK(bloch_wigner(cplx(2.5, 0)) == 0.0);
  CHECK(bloch_wigner(cplx(-0.3, 0)) == 0.0);
  CHECK(bloch_wigner(cplx(0.5, 0)) == 0.0);
  // conjugation flips the sign
  const cplx z(0.7, 0.2);
  CHECK(std::abs(bloch_wigner(std::conj(z)) + bloch_wigner(z)) < 1e-13);
}

TEST_CASE("bloch_wigner six-fold symmetry") {
  // D is invariant under z -> 1 - 1/z -> 1/(1-z) and flips sign under
  // z -> 1/z, 1 - z, z/(z-1); checking both orbits crosses every
  // evaluation branch (series, inversion, reflection)
  const cplx pts[] = {{0.3, 0.4}, {0.9, 0.05}, {-2.0, 1.5}, {0.5001, 0.8659}};
  const cplx one(1, 0);
  for (const cplx& z : pts) {
    const double d = bloch_wigner(z);
    CHECK(std::abs(bloch_wigner(one - one / z) - d) < 1e-12);
    CHECK(std::abs(bloch_wigner(one / (one - z)) - d) < 1e-12);
    CHECK(std::abs(bloch_wigner(one / z) + d) < 1e-12);
    CHECK(std::abs(bloch_wigner(one - z) + d) < 1e-12);
    CHECK(std::abs(bloch_wigner(z / (z - one)) + d) < 1e-12);
  }
}

TEST_CASE("five shapes per crossing, sum matches total") {
  const Diagram d = census_diagram("8_5");
  const std::vector<cplx> w =
      family_values("8_5", "w", {{3.0, 0.4}, {5.0, -0.2}, {2.0, 0.1}});
  double total = 0.0;
  for (int k = 1; k <= d.crossing_count(); ++k) {
    const OctahedronShapes os = octahedron_shapes(d, w, k);
    CHECK(os.crossing == k);
    double v = 0.0;
    for (const cplx& z : os.shapes) v += bloch_wigner(z);
    total += v;
  }
  const std::vector<double> per = per_crossing_volume(d, w);
  CHECK(per.size() == 8);
  double per_total = 0.0;
  for (double v : per) per_total += v;
  CHECK(std::abs(per_total - volume(d, w)) < 1e-12);
  CHECK(std::abs(total - volume(d, w)) < 1e-12);
}

TEST_CASE("pinched families carry zero volume") {
  // these solutions come from representations with abelian pieces; the
  // octahedron contributions cancel even though no single term vanishes
  const Diagram e5 = census_diagram("8_5");
  const std::vector<cplx> w5 =
      family_values("8_5", "w", {{1.3, 0.7}, {2.1, -0.4}, {0.8, 0.5}});
  CHECK(std::abs(volume(e5, w5)) < 1e-6);

  const Diagram e18 = census_diagram("8_18");
  const std::vector<cplx> w18 =
      family_values("8_18", "w", {{2.0, 0.3}, {3.0, -0.6}, {5.0, 0.2}});
  CHECK(std::abs(volume(e18, w18)) < 1e-6);
  const std::vector<cplx> wp18 =
      family_values("8_18", "wp", {{1.1, 0.9}, {0.7, -0.3}, {1.9, 0.35}});
  CHECK(std::abs(volume(e18, wp18)) < 1e-6);
}
