#include "pinchlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pinchlab/dense.hpp"
#include "pinchlab/volume.hpp"

namespace pinchlab {

const char* to_string(rep_class c) {
  switch (c) {
    case rep_class::abelian:
      return "abelian";
    case rep_class::partially_abelian:
      return "partially_abelian";
    default:
      return "nowhere_pinched";
  }
}

int gauge_region(const Diagram& d) {
  int best = 1;
  std::size_t best_size = 0;
  for (const Region& reg : d.regions()) {
    if (reg.corners.size() > best_size) {
      best_size = reg.corners.size();
      best = reg.id;
    }
  }
  return best;
}

namespace {

// real-parameter view of the gluing system with one region pinned to 1
struct glue_system {
  const Diagram& d;
  int gauge;
  std::vector<int> free_ids;  // region ids carrying unknowns, ascending

  explicit glue_system(const Diagram& dd) : d(dd), gauge(gauge_region(dd)) {
    for (const Region& reg : d.regions()) {
      if (reg.id != gauge) free_ids.push_back(reg.id);
    }
  }

  int unknowns() const { return 2 * static_cast<int>(free_ids.size()); }
  int equations() const { return 2 * d.region_count(); }

  std::vector<cplx> expand(const std::vector<double>& x) const {
    std::vector<cplx> w(d.region_count(), cplx(1.0, 0.0));
    for (std::size_t i = 0; i < free_ids.size(); ++i) {
      w[free_ids[i] - 1] = cplx(x[2 * i], x[2 * i + 1]);
    }
    return w;
  }

  std::vector<double> resid(const std::vector<double>& x) const {
    std::vector<double> out(equations(), 1e6);
    try {
      const std::vector<cplx> r = residuals(d, expand(x));
      for (std::size_t i = 0; i < r.size(); ++i) {
        out[2 * i] = r[i].real();
        out[2 * i + 1] = r[i].imag();
      }
    } catch (const degeneracy_error&) {
      // exact degeneracy mid-iteration: leave the huge residuals so the
      // step is rejected
    }
    return out;
  }
};

double cost_of(const std::vector<double>& r) {
  double c = 0.0;
  for (double v : r) c += v * v;
  return c;
}

// damped least-squares iteration; returns a parameter vector with
// squared residual below 1e-24, or nothing
std::optional<std::vector<double>> lm_minimize(const glue_system& sys,
                                               std::vector<double> x,
                                               int max_steps) {
  const int m = sys.equations();
  const int n = sys.unknowns();
  std::vector<double> r = sys.resid(x);
  double cost = cost_of(r);
  double lam = 1e-3;
  for (int step = 0; step < max_steps; ++step) {
    if (cost < 1e-24) return x;
    // forward-difference jacobian
    std::vector<double> jac(m * n);
    const double h = 1e-7;
    for (int c = 0; c < n; ++c) {
      std::vector<double> x2 = x;
      x2[c] += h;
      const std::vector<double> r2 = sys.resid(x2);
      for (int rr = 0; rr < m; ++rr) jac[rr * n + c] = (r2[rr] - r[rr]) / h;
    }
    std::vector<double> g(n, 0.0), a(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int rr = 0; rr < m; ++rr) g[i] += jac[rr * n + i] * r[rr];
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int rr = 0; rr < m; ++rr) s += jac[rr * n + i] * jac[rr * n + j];
        a[i * n + j] = s;
        a[j * n + i] = s;
      }
    }
    bool improved = false;
    while (true) {
      std::vector<double> ad = a;
      for (int i = 0; i < n; ++i) ad[i * n + i] += lam;
      std::vector<double> rhs(n);
      for (int i = 0; i < n; ++i) rhs[i] = -g[i];
      const std::vector<double> dx = detail::solve_dense(ad, rhs, n);
      if (!dx.empty()) {
        std::vector<double> xt = x;
        for (int i = 0; i < n; ++i) xt[i] += dx[i];
        const std::vector<double> rt = sys.resid(xt);
        const double ct = cost_of(rt);
        if (ct < cost) {
          x = std::move(xt);
          r = rt;
          cost = ct;
          lam = std::max(lam * 0.3, 1e-12);
          improved = true;
          break;
        }
      }
      lam *= 10.0;
      if (lam > 1e12) return std::nullopt;
    }
    if (!improved) return std::nullopt;
  }
  return cost < 1e-24 ? std::optional<std::vector<double>>(x) : std::nullopt;
}

}  // namespace

std::vector<WSolution> solve(const Diagram& d, const SolverConfig& cfg) {
  glue_system sys(d);
  detail::uniform_source rng(cfg.seed);

  struct cluster {
    WSolution sol;
    double vol;
  };
  std::vector<cluster> found;

  for (int attempt = 0; attempt < cfg.restarts; ++attempt) {
    std::vector<double> x0(sys.unknowns());
    for (double& v : x0) v = rng.range(-2.0, 2.0);
    const auto xs = lm_minimize(sys, std::move(x0), cfg.max_newton_steps);
    if (!xs) continue;
    const std::vector<cplx> w = sys.expand(*xs);
    const SolutionReport rep = check_solution(d, w, 1e-8);
    if (!rep.ok || rep.residual_norm >= cfg.accept_tol) continue;

    WSolution sol = make_solution(d, w, cfg.accept_tol);
    const double vol = volume(d, sol.w);
    bool dup = false;
    for (const cluster& cl : found) {
      if (cl.sol.pinched == sol.pinched &&
          std::abs(cl.vol - vol) <= cfg.dedup_tol * std::max(1.0, std::abs(cl.vol))) {
        dup = true;
        break;
      }
    }
    if (!dup) found.push_back({std::move(sol), vol});
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const cluster& a, const cluster& b) {
                     if (a.sol.pinched.size() != b.sol.pinched.size()) {
                       return a.sol.pinched.size() < b.sol.pinched.size();
                     }
                     if (a.sol.pinched != b.sol.pinched) {
                       return a.sol.pinched < b.sol.pinched;
                     }
                     return a.vol < b.vol;
                   });
  std::vector<WSolution> out;
  out.reserve(found.size());
  for (cluster& cl : found) out.push_back(std::move(cl.sol));
  return out;
}

rep_class classify(const Diagram& d, const WSolution& s) {
  if (static_cast<int>(s.pinched.size()) == d.crossing_count()) {
    return rep_class::abelian;
  }
  if (s.pinched.empty()) return rep_class::nowhere_pinched;
  return rep_class::partially_abelian;
}

}  // namespace pinchlab
