#include "pinchlab/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "pinchlab/dense.hpp"

namespace pinchlab {

Mat2 Mat2::inverse() const {
  const cplx dt = det();
  if (dt == cplx(0.0, 0.0)) {
    throw degeneracy_error("singular 2x2 matrix");
  }
  const cplx inv = cplx(1.0, 0.0) / dt;
  return {d * inv, -b * inv, -c * inv, a * inv};
}

double Mat2::norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

Mat2 parabolic_about(const std::optional<cplx>& fix, cplx t) {
  if (!fix) return {1.0, t, 0.0, 1.0};
  const cplx z = *fix;
  return {cplx(1.0, 0.0) + t * z, -t * z * z, t, cplx(1.0, 0.0) - t * z};
}

std::optional<cplx> fix_of(const Mat2& m, double tol) {
  if (std::abs(m.c) < tol) return std::nullopt;
  return (m.a - m.d) / (2.0 * m.c);
}

bool commute(const Mat2& x, const Mat2& y, double tol) {
  const Mat2 comm = x * y - y * x;
  return comm.norm() <= tol * std::max(1.0, x.norm() * y.norm());
}

ParabolicRep rep_from_classes(const Diagram& d,
                              const std::vector<Mat2>& class_images) {
  const WirtingerPresentation wp = wirtinger(d);
  if (static_cast<int>(class_images.size()) != wp.generator_count) {
    throw precondition_error("class image count mismatch");
  }
  ParabolicRep rho;
  rho.images.resize(d.arc_count() + 1);
  for (int a = 1; a <= d.arc_count(); ++a) {
    rho.images[a] = class_images[wp.class_of_arc[a]];
  }
  return rho;
}

namespace {

void check_rep_shape(const Diagram& d, const ParabolicRep& rho) {
  if (static_cast<int>(rho.images.size()) != d.arc_count() + 1) {
    throw precondition_error("representation has " +
                             std::to_string(rho.images.size()) +
                             " images, diagram needs " +
                             std::to_string(d.arc_count() + 1));
  }
}

Mat2 relation_defect(const Crossing& cr, const ParabolicRep& rho) {
  const Mat2& mi = rho.images[cr.arcs[0]];
  const Mat2& mo = rho.images[cr.arcs[1]];
  const Mat2& mk = rho.images[cr.arcs[2]];
  if (cr.sign > 0) return mk * mo - mo * mi;
  return mo * mk - mi * mo;
}

}  // namespace

double relation_residual(const Diagram& d, const ParabolicRep& rho) {
  check_rep_shape(d, rho);
  double worst = 0.0;
  for (const Crossing& cr : d.crossings()) {
    worst = std::max(worst, relation_defect(cr, rho).norm());
  }
  return worst;
}

bool rep_relations_ok(const Diagram& d, const ParabolicRep& rho, double tol) {
  return relation_residual(d, rho) <= tol;
}

std::set<int> commutation_profile(const Diagram& d, const ParabolicRep& rho,
                                  double tol) {
  check_rep_shape(d, rho);
  std::set<int> out;
  for (const Crossing& cr : d.crossings()) {
    if (commute(rho.images[cr.arcs[1]], rho.images[cr.arcs[0]], tol)) {
      out.insert(cr.id);
    }
  }
  return out;
}

namespace {

// shared damped least-squares driver over real parameter vectors
std::optional<std::vector<double>> lm_generic(
    const std::function<std::vector<double>(const std::vector<double>&)>& f,
    std::vector<double> x, int max_steps, double target_cost) {
  const auto cost_of = [](const std::vector<double>& r) {
    double c = 0.0;
    for (double v : r) c += v * v;
    return c;
  };
  std::vector<double> r = f(x);
  const int m = static_cast<int>(r.size());
  const int n = static_cast<int>(x.size());
  double cost = cost_of(r);
  double lam = 1e-3;
  for (int step = 0; step < max_steps; ++step) {
    if (cost < target_cost) return x;
    std::vector<double> jac(m * n);
    const double h = 1e-7;
    for (int c = 0; c < n; ++c) {
      std::vector<double> x2 = x;
      x2[c] += h;
      const std::vector<double> r2 = f(x2);
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
        const std::vector<double> rt = f(xt);
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
      if (lam > 1e12) break;
    }
    if (!improved) return std::nullopt;
  }
  return cost < target_cost ? std::optional<std::vector<double>>(x)
                            : std::nullopt;
}

struct class_info {
  std::vector<int> class_of_arc;
  int count = 0;
  std::vector<int> first_arc;  // representative arc per class
};

class_info classes_of(const Diagram& d) {
  const WirtingerPresentation wp = wirtinger(d);
  class_info out;
  out.class_of_arc = wp.class_of_arc;
  out.count = wp.generator_count;
  out.first_arc.assign(wp.generator_count, 0);
  for (int a = 1; a <= d.arc_count(); ++a) {
    if (out.first_arc[wp.class_of_arc[a]] == 0) {
      out.first_arc[wp.class_of_arc[a]] = a;
    }
  }
  return out;
}

// conjugate every class image by t
void conj_all(std::vector<Mat2>& ms, const Mat2& t) {
  const Mat2 ti = t.inverse();
  for (Mat2& m : ms) m = t * m * ti;
}

std::vector<Mat2> normalized_class_images(const Diagram& d,
                                          const ParabolicRep& rho,
                                          int base_arc) {
  const class_info ci = classes_of(d);
  if (base_arc < 1 || base_arc > d.arc_count()) {
    throw precondition_error("base arc out of range");
  }
  std::vector<Mat2> ms(ci.count);
  for (int c = 0; c < ci.count; ++c) ms[c] = rho.images[ci.first_arc[c]];
  const int c1 = ci.class_of_arc[base_arc];

  const std::optional<cplx> z1 = fix_of(ms[c1]);
  if (z1) {
    conj_all(ms, Mat2{0.0, 1.0, 1.0, -*z1});
  }
  // first generator independent of the base meridian, if any
  int c2 = -1;
  for (int c = 0; c < ci.count; ++c) {
    if (c == c1) continue;
    if (!commute(ms[c1], ms[c], 1e-8)) {
      c2 = c;
      break;
    }
  }
  if (c2 >= 0) {
    const std::optional<cplx> z2 = fix_of(ms[c2]);
    if (!z2) {
      throw verification_error(
          "independent generator fixes infinity after conjugation");
    }
    conj_all(ms, Mat2{1.0, -*z2, 0.0, 1.0});
  }
  const cplx tau = ms[c1].b;
  if (tau == cplx(0.0, 0.0)) {
    throw verification_error("base meridian degenerates during normalization");
  }
  const cplx s = std::sqrt(cplx(1.0, 0.0) / tau);
  conj_all(ms, Mat2{s, 0.0, 0.0, cplx(1.0, 0.0) / s});

  const Mat2 defect = ms[c1] - unit_translation();
  if (defect.norm() > 1e-6) {
    throw verification_error("normalization failed to reach [[1,1],[0,1]]");
  }
  return ms;
}

}  // namespace

ParabolicRep normalize_rep(const Diagram& d, const ParabolicRep& rho,
                           int base_arc) {
  check_rep_shape(d, rho);
  ParabolicRep out = rep_from_classes(d, normalized_class_images(d, rho, base_arc));
  out.normalized = true;
  return out;
}

std::vector<ParabolicRep> solve_parabolic_reps(const Diagram& d,
                                               const RepSolveConfig& cfg) {
  const class_info ci = classes_of(d);
  const int g = ci.count;
  const WirtingerPresentation wp = wirtinger(d);
  detail::uniform_source rng(cfg.seed);

  // parameters per free class: (Re z, Im z, Re t, Im t). In pinned mode
  // the base class is frozen at [[1,1],[0,1]] (conjugation gauge), which
  // finds irreducible representations quickly; unpinned restarts keep the
  // reducible ones reachable.
  const auto build = [&](bool pinned, const std::vector<double>& x) {
    std::vector<Mat2> ms(g);
    int at = 0;
    for (int c = 0; c < g; ++c) {
      if (pinned && c == 0) {
        ms[c] = unit_translation();
        continue;
      }
      const cplx z(x[at], x[at + 1]);
      const cplx t(x[at + 2], x[at + 3]);
      ms[c] = parabolic_about(z, t);
      at += 4;
    }
    return ms;
  };
  const auto resid_fn = [&](bool pinned) {
    return [&, pinned](const std::vector<double>& x) {
      const std::vector<Mat2> ms = build(pinned, x);
      std::vector<double> out;
      out.reserve(wp.relations.size() * 8);
      for (const auto& rel : wp.relations) {
        const Mat2& mi = ms[ci.class_of_arc[rel.under_in]];
        const Mat2& mo = ms[ci.class_of_arc[rel.over]];
        const Mat2& mk = ms[ci.class_of_arc[rel.under_out]];
        const Mat2 defect =
            rel.sign > 0 ? mk * mo - mo * mi : mo * mk - mi * mo;
        for (const cplx v : {defect.a, defect.b, defect.c, defect.d}) {
          out.push_back(v.real());
          out.push_back(v.imag());
        }
      }
      return out;
    };
  };

  std::vector<ParabolicRep> found;
  std::vector<std::pair<std::set<int>, std::vector<long long>>> keys;

  for (int attempt = 0; attempt < cfg.restarts; ++attempt) {
    const bool pinned = attempt % 2 == 0;
    const int nfree = pinned ? g - 1 : g;
    std::vector<double> x0;
    x0.reserve(4 * nfree);
    for (int c = 0; c < nfree; ++c) {
      x0.push_back(rng.range(-2.0, 2.0));
      x0.push_back(rng.range(-2.0, 2.0));
      // keep the meridian parameter away from the trivial matrix
      double tr = 0.0, tim = 0.0;
      do {
        tr = rng.range(-2.0, 2.0);
        tim = rng.range(-2.0, 2.0);
      } while (tr * tr + tim * tim <= 0.04);
      x0.push_back(tr);
      x0.push_back(tim);
    }
    const auto xs =
        lm_generic(resid_fn(pinned), std::move(x0), cfg.max_newton_steps, 1e-22);
    if (!xs) continue;
    const std::vector<Mat2> ms = build(pinned, *xs);

    // reject degenerate meridians (images collapsing to the identity)
    bool degenerate = false;
    for (const Mat2& m : ms) {
      if ((m - identity_mat()).norm() < 1e-6) degenerate = true;
    }
    if (degenerate) continue;

    ParabolicRep rho = rep_from_classes(d, ms);
    if (relation_residual(d, rho) > cfg.accept_tol) continue;
    ParabolicRep canon;
    try {
      canon = normalize_rep(d, rho, 1);
    } catch (const verification_error&) {
      continue;  // numerically un-normalizable corner case
    }
    const std::set<int> profile = commutation_profile(d, canon);
    std::vector<long long> key;
    for (int c = 0; c < g; ++c) {
      const Mat2& m = canon.images[ci.first_arc[c]];
      for (const cplx v : {m.a, m.b, m.c, m.d}) {
        key.push_back(std::llround(v.real() * 1e6));
        key.push_back(std::llround(v.imag() * 1e6));
      }
    }
    bool dup = false;
    for (const auto& [p, k] : keys) {
      if (p == profile && k == key) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    keys.push_back({profile, std::move(key)});
    found.push_back(std::move(canon));
  }
  return found;
}

ParabolicRep transport(const Diagram& d, const ParabolicRep& rho,
                       const std::set<int>& J) {
  check_rep_shape(d, rho);
  for (int k : J) {
    if (k < 1 || k > d.crossing_count()) {
      throw precondition_error("crossing id " + std::to_string(k) +
                               " out of range");
    }
  }
  if (!rep_relations_ok(d, rho, 1e-8)) {
    throw precondition_error("representation violates the diagram relations");
  }
  for (int k : J) {
    const Crossing& cr = d.crossing(k);
    if (!commute(rho.images[cr.arcs[1]], rho.images[cr.arcs[0]], 1e-8)) {
      throw precondition_error(
          "meridians at crossing " + std::to_string(k) +
          " do not commute; the crossing change is not transportable");
    }
  }
  const Diagram dj = change_crossings(d, J);
  ParabolicRep out;
  out.images = rho.images;
  out.normalized = rho.normalized;

  // arcwise identity must be constant on the coarser/finer meridian
  // classes of the changed diagram
  const class_info cj = classes_of(dj);
  for (int a = 1; a <= dj.arc_count(); ++a) {
    const Mat2 diff =
        out.images[a] - out.images[cj.first_arc[cj.class_of_arc[a]]];
    if (diff.norm() > 1e-6) {
      throw verification_error("transported images break a meridian class");
    }
  }
  if (!rep_relations_ok(dj, out, 1e-6)) {
    throw verification_error("transported representation violates relations");
  }
  return out;
}

ParabolicRep transport(const Diagram& d, const ParabolicRep& rho,
                       const std::set<int>& J, const WSolution& w) {
  for (int k : J) {
    if (k < 1 || k > d.crossing_count()) {
      throw precondition_error("crossing id " + std::to_string(k) +
                               " out of range");
    }
    if (!is_pinched(d, w.w, k)) {
      throw precondition_error("crossing " + std::to_string(k) +
                               " is not pinched; transfer undefined");
    }
  }
  return transport(d, rho, J);
}

cplx shift_parameter(const ParabolicRep& rho, int arc_b,
                     const ParabolicRep& rho2, int arc_b2) {
  if (arc_b < 1 || arc_b >= static_cast<int>(rho.images.size()) ||
      arc_b2 < 1 || arc_b2 >= static_cast<int>(rho2.images.size())) {
    throw precondition_error("arc id out of range");
  }
  const std::optional<cplx> f1 = fix_of(rho.images[arc_b]);
  const std::optional<cplx> f2 = fix_of(rho2.images[arc_b2]);
  if (!f1 || !f2) {
    throw precondition_error("a meridian fixes infinity; shift undefined");
  }
  return *f1 - *f2;
}

ComposedRep connected_sum_rep(const Diagram& d1, const ParabolicRep& rho1,
                              int arc_a, const Diagram& d2,
                              const ParabolicRep& rho2, int arc_a2,
                              cplx shift) {
  const ParabolicRep n1 = normalize_rep(d1, rho1, arc_a);
  ParabolicRep n2 = normalize_rep(d2, rho2, arc_a2);
  const Mat2 tr{1.0, shift, 0.0, 1.0};
  const Mat2 tri = tr.inverse();
  for (Mat2& m : n2.images) m = tr * m * tri;

  ConnectedSum cs = connected_sum_detail(d1, arc_a, d2, arc_a2);
  Diagram nd(cs.tuples);
  ParabolicRep rep;
  rep.images.resize(nd.arc_count() + 1);
  std::vector<bool> set(nd.arc_count() + 1, false);
  for (const auto& [old_arc, new_arc] : cs.first_arcs) {
    rep.images[new_arc] = n1.images[old_arc];
    set[new_arc] = true;
  }
  for (const auto& [old_arc, new_arc] : cs.second_arcs) {
    rep.images[new_arc] = n2.images[old_arc];
    set[new_arc] = true;
  }
  rep.images[cs.bridge1] = unit_translation();
  rep.images[cs.bridge2] = unit_translation();
  set[cs.bridge1] = set[cs.bridge2] = true;
  for (int a = 1; a <= nd.arc_count(); ++a) {
    if (!set[a]) throw verification_error("composition left an arc unset");
  }

  const class_info ci = classes_of(nd);
  for (int a = 1; a <= nd.arc_count(); ++a) {
    const Mat2 diff = rep.images[a] - rep.images[ci.first_arc[ci.class_of_arc[a]]];
    if (diff.norm() > 1e-6) {
      throw verification_error("composition broke a meridian class");
    }
  }
  if (!rep_relations_ok(nd, rep, 1e-6)) {
    throw verification_error("composed representation violates relations");
  }

  ComposedRep out{std::move(nd), std::move(rep), std::move(cs.first_arcs),
                  std::move(cs.second_arcs), cs.bridge1, cs.bridge2};
  return out;
}

ParabolicRep complete_rep(const Diagram& d, const std::map<int, Mat2>& seeds) {
  const class_info ci = classes_of(d);
  std::vector<std::optional<Mat2>> ms(ci.count);
  for (const auto& [arc, m] : seeds) {
    if (arc < 1 || arc > d.arc_count()) {
      throw precondition_error("seed arc " + std::to_string(arc) +
                               " out of range");
    }
    const int c = ci.class_of_arc[arc];
    if (ms[c]) {
      if ((*ms[c] - m).norm() > 1e-8) {
        throw precondition_error("conflicting seed images on one meridian class");
      }
    } else {
      ms[c] = m;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Crossing& cr : d.crossings()) {
      const int cin = ci.class_of_arc[cr.arcs[0]];
      const int cov = ci.class_of_arc[cr.arcs[1]];
      const int cout = ci.class_of_arc[cr.arcs[2]];
      if (!ms[cov]) continue;
      const Mat2& mo = *ms[cov];
      if (ms[cin] && !ms[cout]) {
        ms[cout] = cr.sign > 0 ? mo * (*ms[cin]) * mo.inverse()
                               : mo.inverse() * (*ms[cin]) * mo;
        changed = true;
      } else if (ms[cout] && !ms[cin]) {
        ms[cin] = cr.sign > 0 ? mo.inverse() * (*ms[cout]) * mo
                              : mo * (*ms[cout]) * mo.inverse();
        changed = true;
      }
    }
  }
  std::vector<Mat2> full(ci.count);
  for (int c = 0; c < ci.count; ++c) {
    if (!ms[c]) {
      throw precondition_error("seeds do not determine every meridian class");
    }
    full[c] = *ms[c];
  }
  ParabolicRep rho = rep_from_classes(d, full);
  if (!rep_relations_ok(d, rho, 1e-6)) {
    throw verification_error("completed representation violates relations");
  }
  return rho;
}

}  // namespace pinchlab
