#include "pinchlab/alexander.hpp"

#include <vector>

namespace pinchlab {

namespace {

// fraction-free determinant over the integers.  products are taken in 128-bit
// arithmetic before the exact division, so moderate matrices never overflow.
std::int64_t bareiss_det(std::vector<std::int64_t> m, int n) {
  if (n == 0) return 1;
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (m[r * n + k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m[k * n + c], m[swap_row * n + c]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(m[i * n + j]) * m[k * n + k] -
                     static_cast<__int128>(m[i * n + k]) * m[k * n + j];
        m[i * n + j] = static_cast<std::int64_t>(v / prev);
      }
      m[i * n + k] = 0;
    }
    prev = m[k * n + k];
  }
  return sign * m[(n - 1) * n + (n - 1)];
}

// Fox-derivative matrix of the strand presentation at an integer parameter.
// mode 0 evaluates at t = -1.  mode 1 evaluates at t = 2, with each row that
// comes from a negative crossing doubled to clear the 1/t; that only changes
// the determinant by a power of two.
std::int64_t presentation_minor(const WirtingerPresentation& wp, int mode) {
  const int g = wp.generator_count;
  const int nrel = static_cast<int>(wp.relations.size());
  if (nrel != g) {
    throw verification_error("strand presentation is not square");
  }
  if (g == 1) return 1;
  std::vector<std::int64_t> rows(static_cast<std::size_t>(nrel) * g, 0);
  for (int r = 0; r < nrel; ++r) {
    const auto& rel = wp.relations[r];
    const int ci = wp.class_of_arc[rel.under_in];
    const int cj = wp.class_of_arc[rel.over];
    const int ck = wp.class_of_arc[rel.under_out];
    std::int64_t vi, vj, vk;
    if (mode == 0) {
      vi = -1;
      vj = 2;
      vk = -1;
    } else if (rel.sign > 0) {
      vi = 2;
      vj = -1;
      vk = -1;
    } else {
      vi = 1;
      vj = 1;
      vk = -2;
    }
    rows[static_cast<std::size_t>(r) * g + ci] += vi;
    rows[static_cast<std::size_t>(r) * g + cj] += vj;
    rows[static_cast<std::size_t>(r) * g + ck] += vk;
  }
  // one relation is redundant; drop the first generator column together with
  // one row, trying rows in order until a minor is nonzero
  const int n = g - 1;
  for (int drop = 0; drop < nrel; ++drop) {
    std::vector<std::int64_t> sub(static_cast<std::size_t>(n) * n, 0);
    int out = 0;
    for (int r = 0; r < nrel; ++r) {
      if (r == drop) continue;
      for (int c = 1; c < g; ++c) {
        sub[static_cast<std::size_t>(out) * n + (c - 1)] =
            rows[static_cast<std::size_t>(r) * g + c];
      }
      ++out;
    }
    const std::int64_t det = bareiss_det(std::move(sub), n);
    if (det != 0) return det;
  }
  return 0;
}

}  // namespace

std::int64_t knot_determinant(const Diagram& d) {
  const WirtingerPresentation wp = wirtinger(d);
  std::int64_t v = presentation_minor(wp, 0);
  return v < 0 ? -v : v;
}

std::pair<std::int64_t, std::int64_t> alexander_fingerprint(const Diagram& d) {
  const WirtingerPresentation wp = wirtinger(d);
  std::int64_t a = presentation_minor(wp, 0);
  if (a < 0) a = -a;
  std::int64_t b = presentation_minor(wp, 1);
  if (b < 0) b = -b;
  while (b != 0 && b % 2 == 0) b /= 2;
  return {a, b};
}

}  // namespace pinchlab
