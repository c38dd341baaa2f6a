#include "pinchlab/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pinchlab {

namespace {

double scale4(const std::array<cplx, 4>& v) {
  double s = 0.0;
  for (const cplx& x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

cplx tau(cplx wa, cplx wb, cplx wc, cplx wd, char corner) {
  const int q = quadrant_of_letter(corner);
  const cplx central = wa * wc - wb * wd;
  const auto guard = [](cplx denom, const char* what) {
    if (denom == cplx(0.0, 0.0)) {
      throw degeneracy_error(std::string("corner ratio denominator ") + what +
                             " vanishes");
    }
    return denom;
  };
  switch (q) {
    case 0:
      return -central / guard((wa - wb) * (wa - wd), "(w_a-w_b)(w_a-w_d)");
    case 1:
      return (wb - wc) * (wb - wa) / guard(central, "w_a w_c - w_b w_d");
    case 2:
      return -central / guard((wc - wd) * (wc - wb), "(w_c-w_d)(w_c-w_b)");
    default:
      return (wd - wa) * (wd - wc) / guard(central, "w_a w_c - w_b w_d");
  }
}

std::array<cplx, 4> corner_values(const Diagram& d, const std::vector<cplx>& w,
                                  int crossing_id) {
  if (static_cast<int>(w.size()) != d.region_count()) {
    throw precondition_error("value vector length " +
                             std::to_string(w.size()) + " differs from " +
                             std::to_string(d.region_count()) + " regions");
  }
  std::array<cplx, 4> out{};
  for (int q = 0; q < 4; ++q) {
    out[q] = w[d.region_at(crossing_id, q) - 1];
  }
  return out;
}

std::vector<cplx> residuals(const Diagram& d, const std::vector<cplx>& w) {
  std::vector<cplx> out;
  out.reserve(d.region_count());
  // cache the corner values per crossing once
  std::vector<std::array<cplx, 4>> cv;
  cv.reserve(d.crossing_count());
  for (int k = 1; k <= d.crossing_count(); ++k) {
    cv.push_back(corner_values(d, w, k));
  }
  for (const Region& reg : d.regions()) {
    cplx prod(1.0, 0.0);
    for (const Corner& c : reg.corners) {
      const auto& v = cv[c.crossing - 1];
      prod *= tau(v[0], v[1], v[2], v[3], quadrant_letter(c.quadrant));
    }
    out.push_back(prod - cplx(1.0, 0.0));
  }
  return out;
}

SolutionReport check_solution(const Diagram& d, const std::vector<cplx>& w,
                              double tol) {
  SolutionReport rep;
  rep.margin = 1.0;
  double wmax = 0.0, wmin = 0.0;
  for (const cplx& x : w) wmax = std::max(wmax, std::abs(x));
  if (wmax == 0.0) {
    rep.failures.push_back("all region values vanish");
    return rep;
  }
  wmin = wmax;
  for (const cplx& x : w) wmin = std::min(wmin, std::abs(x));
  rep.margin = std::min(rep.margin, wmin / wmax);
  if (wmin / wmax <= tol) {
    rep.failures.push_back("a region value is zero relative to scale");
  }

  for (int k = 1; k <= d.crossing_count(); ++k) {
    const auto v = corner_values(d, w, k);
    const double s = scale4(v);
    for (int q = 0; q < 4; ++q) {
      const double gap = std::abs(v[q] - v[(q + 1) % 4]) / s;
      rep.margin = std::min(rep.margin, gap);
      if (gap <= tol) {
        rep.failures.push_back("adjacent quadrant values coincide at crossing " +
                               std::to_string(k));
      }
    }
    const double central = std::abs(v[0] * v[2] - v[1] * v[3]) / (s * s);
    rep.margin = std::min(rep.margin, central);
    if (central <= tol) {
      rep.failures.push_back("central product degenerates at crossing " +
                             std::to_string(k));
    }
  }
  if (!rep.failures.empty()) return rep;

  const std::vector<cplx> res = residuals(d, w);
  for (const cplx& r : res) rep.residual_norm = std::max(rep.residual_norm, std::abs(r));
  if (rep.residual_norm >= tol) {
    rep.failures.push_back("residual norm " + std::to_string(rep.residual_norm) +
                           " at or above tolerance");
  }
  rep.ok = rep.failures.empty();
  return rep;
}

bool is_solution(const Diagram& d, const std::vector<cplx>& w, double tol) {
  return check_solution(d, w, tol).ok;
}

bool is_pinched(const Diagram& d, const std::vector<cplx>& w, int crossing_id,
                double tol) {
  const auto v = corner_values(d, w, crossing_id);
  const double s = scale4(v);
  if (s == 0.0) return true;
  return std::abs(v[0] - v[1] + v[2] - v[3]) < tol * s;
}

std::set<int> pinched_set(const Diagram& d, const std::vector<cplx>& w,
                          double tol) {
  std::set<int> out;
  for (int k = 1; k <= d.crossing_count(); ++k) {
    if (is_pinched(d, w, k, tol)) out.insert(k);
  }
  return out;
}

std::set<int> propagate_pinch(const Diagram& d, const std::set<int>& known) {
  for (int k : known) {
    if (k < 1 || k > d.crossing_count()) {
      throw precondition_error("crossing id " + std::to_string(k) +
                               " out of range");
    }
  }
  std::set<int> pinched = known;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Region& reg : d.regions()) {
      // group the region's corners by crossing
      std::map<int, std::vector<int>> quads_at;
      for (const Corner& c : reg.corners) {
        quads_at[c.crossing].push_back(c.quadrant);
      }
      int lone = 0;
      bool single_outside = true;
      for (const auto& [k, qs] : quads_at) {
        if (pinched.count(k)) continue;
        if (lone != 0) {
          single_outside = false;
          break;
        }
        lone = k;
      }
      if (!single_outside || lone == 0) continue;
      const auto& qs = quads_at[lone];
      // the corner ratios at the lone crossing must force tau = 1 there:
      // a single corner, two corners at adjacent quadrants (their product
      // is a ratio of the two pinch differences), or three corners (the
      // missing one is forced since all four multiply to 1). Two opposite
      // corners or all four carry no information.
      bool forcing = false;
      if (qs.size() == 1 || qs.size() == 3) {
        forcing = true;
      } else if (qs.size() == 2) {
        const int diff = ((qs[0] - qs[1]) % 4 + 4) % 4;
        forcing = diff == 1 || diff == 3;
      }
      if (forcing) {
        pinched.insert(lone);
        grew = true;
      }
    }
  }
  return pinched;
}

WSolution make_solution(const Diagram& d, std::vector<cplx> w, double tol) {
  WSolution s;
  s.tol = tol;
  s.pinched = pinched_set(d, w);
  const std::vector<cplx> res = residuals(d, w);
  for (const cplx& r : res) s.residual_norm = std::max(s.residual_norm, std::abs(r));
  s.w = std::move(w);
  return s;
}

}  // namespace pinchlab
