#include "pinchlab/volume.hpp"

#include <cmath>
#include <numbers>

namespace pinchlab {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr double k_pi2_6 = k_pi * k_pi / 6.0;

// plain defining series, fast for |z| <= 1/2
cplx dilog_series(cplx z) {
  cplx acc(0.0, 0.0);
  cplx zk(1.0, 0.0);
  for (int k = 1; k <= 200; ++k) {
    zk *= z;
    const cplx term = zk / static_cast<double>(k * k);
    acc += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
  }
  return acc;
}

// Series in u = -log(1-z), valid for |u| < 2*pi; used on the annulus
// 1/2 < |z| <= 1, Re z <= 1/2 where the plain series converges too
// slowly. Coefficients are Bernoulli numbers over factorials.
cplx dilog_log_series(cplx z) {
  static const double bernoulli[] = {
      1.0,                      // B0
      -0.5,                     // B1
      1.0 / 6.0,                // B2
      -1.0 / 30.0,              // B4
      1.0 / 42.0,               // B6
      -1.0 / 30.0,              // B8
      5.0 / 66.0,               // B10
      -691.0 / 2730.0,          // B12
      7.0 / 6.0,                // B14
      -3617.0 / 510.0,          // B16
      43867.0 / 798.0,          // B18
      -174611.0 / 330.0,        // B20
      854513.0 / 138.0,         // B22
      -236364091.0 / 2730.0,    // B24
      8553103.0 / 6.0,          // B26
      -23749461029.0 / 870.0,   // B28
      8615841276005.0 / 14322.0 // B30
  };
  const cplx u = -std::log(cplx(1.0, 0.0) - z);
  cplx acc(0.0, 0.0);
  cplx upow = u;        // u^{k+1}
  double fact = 1.0;    // (k+1)!
  int bi = 0;
  for (int k = 0; k <= 31; ++k) {
    fact *= (k + 1);
    if (k == 0 || k == 1 || k % 2 == 0) {
      const cplx term = bernoulli[bi] * upow / fact;
      acc += term;
      ++bi;
      if (k > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
      if (bi >= static_cast<int>(sizeof(bernoulli) / sizeof(double))) break;
    }
    upow *= u;
  }
  return acc;
}

}  // namespace

cplx dilog(cplx z) {
  if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
  cplx pre(0.0, 0.0);
  double outer_sign = 1.0;
  if (std::abs(z) > 1.0) {
    // inversion onto the unit disk
    const cplx lz = std::log(-z);
    pre = -k_pi2_6 - 0.5 * lz * lz;
    z = cplx(1.0, 0.0) / z;
    outer_sign = -1.0;
  }
  if (z == cplx(1.0, 0.0)) return pre + outer_sign * k_pi2_6;
  cplx pre2(0.0, 0.0);
  bool reflected = false;
  if (z.real() > 0.5) {
    // reflection z -> 1-z
    pre2 = k_pi2_6 - std::log(z) * std::log(cplx(1.0, 0.0) - z);
    z = cplx(1.0, 0.0) - z;
    reflected = true;
  }
  cplx core = (std::abs(z) <= 0.5) ? dilog_series(z) : dilog_log_series(z);
  if (reflected) core = pre2 - core;
  return pre + outer_sign * core;
}

double bloch_wigner(cplx z) {
  if (z.imag() == 0.0) return 0.0;
  return dilog(z).imag() +
         std::arg(cplx(1.0, 0.0) - z) * std::log(std::abs(z));
}

OctahedronShapes octahedron_shapes(const Diagram& d,
                                   const std::vector<cplx>& w,
                                   int crossing_id) {
  OctahedronShapes out;
  out.crossing = crossing_id;
  std::array<cplx, 4> v{};
  for (int q = 0; q < 4; ++q) v[q] = w[d.region_at(crossing_id, q) - 1];
  const auto [wa, wb, wc, wd] = v;
  out.shapes = {wb / wa, wb / wc, wd / wc, wd / wa, wa * wc / (wb * wd)};
  return out;
}

std::vector<double> per_crossing_volume(const Diagram& d,
                                        const std::vector<cplx>& w) {
  if (static_cast<int>(w.size()) != d.region_count()) {
    throw precondition_error("value vector length mismatch");
  }
  std::vector<double> out;
  out.reserve(d.crossing_count());
  for (int k = 1; k <= d.crossing_count(); ++k) {
    const OctahedronShapes oct = octahedron_shapes(d, w, k);
    double v = 0.0;
    for (const cplx& z : oct.shapes) v += bloch_wigner(z);
    out.push_back(v);
  }
  return out;
}

double volume(const Diagram& d, const std::vector<cplx>& w) {
  double total = 0.0;
  for (double v : per_crossing_volume(d, w)) total += v;
  return total;
}

}  // namespace pinchlab
