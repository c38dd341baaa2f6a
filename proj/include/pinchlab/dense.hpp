#pragma once

// Tiny dense linear solvers for the damped least-squares iterations and
// the twist-region value system. Row-major storage, partial pivoting.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "pinchlab/diagram.hpp"

namespace pinchlab::detail {

// solve a (n x n) * x = b; returns empty vector when the pivot collapses
template <typename T>
std::vector<T> solve_dense(std::vector<T> a, std::vector<T> b, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-300) return {};
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    const T inv = T(1.0) / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const T f = a[r * n + col] * inv;
      if (f == T(0.0)) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(n);
  for (int r = n - 1; r >= 0; --r) {
    T acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / a[r * n + r];
  }
  return x;
}

struct lstsq_result {
  std::vector<cplx> x;
  bool full_rank = false;
  double residual = 0.0;  // |a x - b|
};

// Least squares via normal equations for a (m x n) complex system,
// m >= n. full_rank is false when the smallest elimination pivot falls
// under 1e-10 of the matrix scale.
inline lstsq_result lstsq(const std::vector<cplx>& a,
                          const std::vector<cplx>& b, int m, int n) {
  lstsq_result out;
  const auto final_residual = [&](const std::vector<cplx>& x) {
    double acc = 0.0;
    for (int r = 0; r < m; ++r) {
      cplx rv = -b[r];
      for (int c = 0; c < n; ++c) rv += a[r * n + c] * x[c];
      acc += std::norm(rv);
    }
    return std::sqrt(acc);
  };
  if (n == 0) {
    out.full_rank = true;
    out.residual = final_residual({});
    return out;
  }
  std::vector<cplx> ata(n * n), atb(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx s(0.0, 0.0);
      for (int r = 0; r < m; ++r) s += std::conj(a[r * n + i]) * a[r * n + j];
      ata[i * n + j] = s;
    }
    cplx s(0.0, 0.0);
    for (int r = 0; r < m; ++r) s += std::conj(a[r * n + i]) * b[r];
    atb[i] = s;
  }
  double scale = 0.0;
  for (const cplx& v : ata) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return out;

  double min_piv = 1e300;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(ata[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(ata[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    min_piv = std::min(min_piv, best);
    if (best < 1e-300) return out;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(ata[col * n + c], ata[piv * n + c]);
      std::swap(atb[col], atb[piv]);
    }
    const cplx inv = cplx(1.0, 0.0) / ata[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const cplx f = ata[r * n + col] * inv;
      if (f == cplx(0.0, 0.0)) continue;
      for (int c = col; c < n; ++c) ata[r * n + c] -= f * ata[col * n + c];
      atb[r] -= f * atb[col];
    }
  }
  if (min_piv < 1e-10 * scale) return out;
  std::vector<cplx> x(n);
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = atb[r];
    for (int c = r + 1; c < n; ++c) acc -= ata[r * n + c] * x[c];
    x[r] = acc / ata[r * n + r];
  }
  out.full_rank = true;
  out.residual = final_residual(x);
  out.x = std::move(x);
  return out;
}

// Deterministic uniform reals: the 64-bit Mersenne twister sequence is
// pinned down by the standard, and the mapping to doubles below avoids the
// implementation-defined std::uniform_real_distribution.
struct uniform_source {
  std::mt19937_64 engine;
  explicit uniform_source(std::uint64_t seed) : engine(seed) {}
  double next() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double range(double a, double b) { return a + (b - a) * next(); }
};

}  // namespace pinchlab::detail
