// Acceptance harness: ten end-to-end checks over the library, each printed
// as a PASS/FAIL line with its wall time. The process exits 0 only when
// every check passes. All randomness is seeded, so a run is reproducible.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pinchlab/alexander.hpp"
#include "pinchlab/diagram.hpp"
#include "pinchlab/fixtures.hpp"
#include "pinchlab/gluing.hpp"
#include "pinchlab/holonomy.hpp"
#include "pinchlab/solver.hpp"
#include "pinchlab/transform.hpp"
#include "pinchlab/volume.hpp"

using namespace pinchlab;

namespace {

constexpr double k_pi = 3.14159265358979323846;
constexpr double k_vol_4_1 = 2.029883212819307;   // figure-eight complement
constexpr double k_vol_double = 4.059766425638614;  // twice the above

// frozen solver seeds; every criterion is deterministic given these
constexpr std::uint64_t k_seed_quads = 2026;
constexpr std::uint64_t k_seed_family = 61;
constexpr std::uint64_t k_seed_rep = 5;
constexpr std::uint64_t k_seed_solve = 7;

struct Check {
  std::vector<std::string> problems;
  int checks = 0;
  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok) problems.push_back(what);
  }
};

double uniform(std::mt19937_64& g) { return (g() >> 11) * 0x1.0p-53; }

cplx box(std::mt19937_64& g) {
  return {uniform(g) * 4.0 + 1.0, uniform(g) * 4.0 - 2.0};
}

double quad_margin(const std::array<cplx, 4>& v) {
  double s = 0.0;
  for (const cplx& z : v) s = std::max(s, std::abs(z));
  double m = std::abs(v[0] * v[2] - v[1] * v[3]) / (s * s);
  for (int q = 0; q < 4; ++q) {
    m = std::min(m, std::abs(v[q] - v[(q + 1) % 4]) / s);
  }
  return m;
}

// generic quadruple, well separated so the ratios are well conditioned
std::array<cplx, 4> random_quad(std::mt19937_64& g) {
  while (true) {
    std::array<cplx, 4> v{box(g), box(g), box(g), box(g)};
    if (quad_margin(v) > 0.05) return v;
  }
}

// quadruple with vanishing alternating sum, same conditioning guard
std::array<cplx, 4> pinched_quad(std::mt19937_64& g) {
  while (true) {
    std::array<cplx, 4> v{box(g), box(g), box(g), cplx()};
    v[3] = v[0] - v[1] + v[2];
    if (quad_margin(v) > 0.05) return v;
  }
}

FamilyPoint random_point(std::mt19937_64& g) {
  const auto c = [&] {
    return cplx(uniform(g) * 2.0 + 0.8, uniform(g) * 1.4 - 0.7);
  };
  return {c(), c(), c()};
}

std::set<int> every_crossing(const Diagram& d) {
  std::set<int> out;
  for (const Crossing& c : d.crossings()) out.insert(c.id);
  return out;
}

bool integral_entries(const ParabolicRep& rho, double tol) {
  for (std::size_t a = 1; a < rho.images.size(); ++a) {
    for (const cplx e : {rho.images[a].a, rho.images[a].b, rho.images[a].c,
                         rho.images[a].d}) {
      if (std::abs(e.imag()) > tol) return false;
      if (std::abs(e.real() - std::round(e.real())) > tol) return false;
    }
  }
  return true;
}

std::string show_set(const std::set<int>& s) {
  std::string out = "{";
  for (int k : s) {
    if (out.size() > 1) out += ",";
    out += std::to_string(k);
  }
  return out + "}";
}

// independent reference for the figure-eight volume: a lobachevsky-style
// sine series summed term by term, no dilogarithm involved
double lobachevsky(double theta, int terms) {
  double acc = 0.0;
  for (int n = terms; n >= 1; --n) {
    acc += std::sin(2.0 * n * theta) / (static_cast<double>(n) * n);
  }
  return 0.5 * acc;
}

// ---------------------------------------------------------------- 1

void criterion_1(Check& c) {
  std::mt19937_64 g(k_seed_quads);
  double worst_prod = 0.0, worst_scale = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto v = random_quad(g);
    cplx prod(1, 0);
    for (char q : {'a', 'b', 'c', 'd'}) {
      prod *= tau(v[0], v[1], v[2], v[3], q);
    }
    worst_prod = std::max(worst_prod, std::abs(prod - cplx(1, 0)));
    // scale invariance: multiply all four values by one nonzero factor
    const cplx lambda(uniform(g) * 1.5 + 0.5, uniform(g) * 2.0 - 1.0);
    for (char q : {'a', 'b', 'c', 'd'}) {
      const cplx t0 = tau(v[0], v[1], v[2], v[3], q);
      const cplx t1 = tau(lambda * v[0], lambda * v[1], lambda * v[2],
                          lambda * v[3], q);
      worst_scale = std::max(worst_scale, std::abs(t1 - t0) / std::abs(t0));
    }
  }
  c.require(worst_prod < 1e-9,
            "corner ratio product drifts from 1 by " + std::to_string(worst_prod));
  c.require(worst_scale < 1e-9,
            "corner ratios are not scale invariant: " + std::to_string(worst_scale));
}

// ---------------------------------------------------------------- 2

void criterion_2(Check& c) {
  std::mt19937_64 g(k_seed_quads + 1);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = pinched_quad(g);
    for (char q : {'a', 'b', 'c', 'd'}) {
      worst = std::max(worst,
                       std::abs(tau(v[0], v[1], v[2], v[3], q) - cplx(1, 0)));
    }
  }
  c.require(worst < 1e-9,
            "a pinched quadruple has a corner ratio off 1 by " +
                std::to_string(worst));

  // converse: when the alternating sum does not vanish, no corner ratio
  // equals 1, so ratio-one at any single corner certifies the pinch
  double closest = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = random_quad(g);
    double s = 0.0;
    for (const cplx& z : v) s = std::max(s, std::abs(z));
    if (std::abs(v[0] - v[1] + v[2] - v[3]) < 1e-3 * s) continue;
    for (char q : {'a', 'b', 'c', 'd'}) {
      closest = std::min(closest,
                         std::abs(tau(v[0], v[1], v[2], v[3], q) - cplx(1, 0)));
    }
  }
  c.require(closest > 1e-9,
            "an unpinched quadruple fakes a ratio-one corner: gap " +
                std::to_string(closest));

  // and solving ratio-one at one corner lands on the alternating-sum root
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = pinched_quad(g);
    const cplx perturbed = v[3] + cplx(0.1, 0.05);
    c.require(std::abs(tau(v[0], v[1], v[2], perturbed, 'a') - cplx(1, 0)) >
                  1e-6,
              "corner ratio stays 1 away from the alternating-sum root");
  }
}

// ---------------------------------------------------------------- 3

void criterion_3(Check& c) {
  const Diagram d = census_diagram("8_5");
  std::mt19937_64 g(k_seed_family);
  int done = 0, attempts = 0;
  while (done < 20 && attempts < 200) {
    ++attempts;
    WSolution s;
    try {
      s = family_solution(d, family_8_5(random_point(g)));
    } catch (const degeneracy_error&) {
      continue;
    }
    ++done;
    c.require(s.residual_norm <= 1e-10,
              "family residual " + std::to_string(s.residual_norm));
    c.require(s.pinched == std::set<int>{1, 2},
              "family pinched set " + show_set(s.pinched));
    c.require(classify(d, s) == rep_class::partially_abelian,
              "family classification is not partially_abelian");
    const double v = volume(d, s.w);
    c.require(std::abs(v) < 1e-6,
              "family volume " + std::to_string(v) + " is not 0");
  }
  c.require(done == 20, "only " + std::to_string(done) +
                            " non-degenerate parameter points in 200 draws");
}

// ---------------------------------------------------------------- 4

void criterion_4(Check& c) {
  const Diagram d = census_diagram("8_5");
  for (const FamilyPoint& fp :
       {FamilyPoint{3.0, 5.0, 2.0},
        FamilyPoint{{3.0, 0.2}, {5.0, -0.4}, {2.0, 0.3}}}) {
    const WSolution s = family_solution(d, family_8_5(fp));

    const TransferResult granny = transfer_crossing_change(d, s, {1});
    c.require(granny.solution.residual_norm <= 1e-10,
              "granny transfer residual too large");
    c.require(alexander_fingerprint(granny.diagram) ==
                  std::pair<std::int64_t, std::int64_t>(9, 9),
              "switching crossing 1 does not give the granny knot");
    c.require(r_related(d, granny.diagram, s),
              "granny transfer is not flagged as related");

    const TransferResult torus = transfer_crossing_change(d, s, {1, 2});
    c.require(torus.solution.residual_norm <= 1e-10,
              "torus transfer residual too large");
    c.require(alexander_fingerprint(torus.diagram) ==
                  std::pair<std::int64_t, std::int64_t>(3, 39),
              "switching crossings 1,2 does not give the (3,4) torus knot");
    c.require(census_lookup(3, 39) == std::optional<std::string>("8_19"),
              "census lookup misses the (3,4) torus knot");
    c.require(r_related(d, torus.diagram, s),
              "torus transfer is not flagged as related");
  }
}

// ---------------------------------------------------------------- 5

void criterion_5(Check& c) {
  const Diagram d = census_diagram("8_18");
  struct Fam {
    const char* family;
    std::set<int> J;
  };
  const Fam fams[] = {{"w", {6, 8}}, {"wp", {2, 4}}};
  std::mt19937_64 g(k_seed_family + 1);
  for (const Fam& f : fams) {
    // the parametric solutions pinch exactly J, and the solution survives
    // switching J verbatim, landing on a trefoil diagram
    int done = 0, attempts = 0;
    WSolution carried;  // last verified family solution, reused below
    while (done < 5 && attempts < 100) {
      ++attempts;
      WSolution s;
      try {
        s = family_solution(d, family_values("8_18", f.family, random_point(g)));
      } catch (const degeneracy_error&) {
        continue;
      }
      ++done;
      c.require(s.pinched == f.J, std::string(f.family) + " family pinches " +
                                      show_set(s.pinched));
      const TransferResult tr = transfer_crossing_change(d, s, f.J);
      c.require(tr.solution.residual_norm <= 1e-10,
                std::string(f.family) + " transfer residual too large");
      c.require(alexander_fingerprint(tr.diagram) ==
                    std::pair<std::int64_t, std::int64_t>(3, 3),
                std::string(f.family) + " switch does not give a trefoil");
      c.require(r_related(d, tr.diagram, s),
                std::string(f.family) + " transfer not flagged as related");
      carried = s;
    }
    c.require(done == 5, "not enough non-degenerate parameter points");

    // holonomy side: solve for representations on the switched diagram,
    // carry them back across J, and check they normalize to integer
    // matrices (the trefoil representation is defined over the integers)
    const Diagram dj = change_crossings(d, f.J);
    RepSolveConfig rcfg;
    rcfg.restarts = 80;
    rcfg.seed = k_seed_rep;
    const std::vector<ParabolicRep> reps = solve_parabolic_reps(dj, rcfg);
    int carried_back = 0, irreducible = 0;
    for (const ParabolicRep& r : reps) {
      const std::set<int> profile = commutation_profile(dj, r);
      if (!std::includes(profile.begin(), profile.end(), f.J.begin(),
                         f.J.end())) {
        continue;
      }
      ParabolicRep back;
      try {
        back = transport(dj, r, f.J);
      } catch (const precondition_error&) {
        continue;
      }
      ++carried_back;
      c.require(rep_relations_ok(d, back),
                "transported representation breaks a crossing relation");
      // carrying it forward again must succeed, certified by the family
      // solution that pinches exactly at J
      const ParabolicRep forward = transport(d, back, f.J, carried);
      c.require(rep_relations_ok(dj, forward),
                "re-transported representation breaks a relation");
      if (commutation_profile(d, back) != every_crossing(d)) {
        ++irreducible;
        const ParabolicRep nu = normalize_rep(d, back);
        c.require(integral_entries(nu, 1e-6),
                  std::string(f.family) +
                      ": transported representation is not integral");
      }
    }
    c.require(carried_back >= 1,
              std::string(f.family) + ": no representation crossed back");
    c.require(irreducible >= 1,
              std::string(f.family) + ": only abelian representations found");
  }
}

// ---------------------------------------------------------------- 6

void criterion_6(Check& c) {
  const Diagram d = census_diagram("8_5");
  const WSolution s =
      family_solution(d, family_8_5({{3.0, 0.2}, {5.0, -0.4}, {2.0, 0.3}}));
  const double vol_before = volume(d, s.w);
  for (const std::vector<int>& word :
       {std::vector<int>{3}, std::vector<int>{2, -2, 3}}) {
    const TangleResult t = insert_tangle(d, s, 1, word);
    c.require(t.solution.residual_norm <= 1e-10,
              "twist insertion residual too large");
    bool outside_exact = true;
    for (const auto& [old_id, new_id] : t.region_map) {
      outside_exact =
          outside_exact && t.solution.w[new_id - 1] == s.w[old_id - 1];
    }
    c.require(outside_exact, "outside region values were rewritten");
    for (int k : t.tangle_crossings) {
      c.require(t.solution.pinched.count(k) == 1,
                "twist crossing " + std::to_string(k) + " is not pinched");
    }
    const double vol_after = volume(t.diagram, t.solution.w);
    c.require(std::abs(vol_after - vol_before) < 1e-9,
              "twist insertion changed the volume by " +
                  std::to_string(vol_after - vol_before));
  }
}

// ---------------------------------------------------------------- 7

void criterion_7(Check& c) {
  // reference value summed at run time, independently of the dilogarithm
  const double reference = 6.0 * lobachevsky(k_pi / 3.0, 2000000);
  c.require(std::abs(reference - k_vol_4_1) < 1e-9,
            "sine series and frozen constant disagree");

  SolverConfig cfg;
  cfg.seed = k_seed_solve;
  const Diagram d = census_diagram("4_1");
  double best = 0.0;
  for (const WSolution& s : solve(d, cfg)) {
    if (s.pinched.empty()) {
      best = std::max(best, std::abs(volume(d, s.w)));
    }
  }
  c.require(std::abs(best - reference) < 1e-6,
            "figure-eight volume " + std::to_string(best) +
                " is off the series value");
  c.require(std::abs(best - k_vol_4_1) < 1e-6,
            "figure-eight volume misses the frozen constant");

  const Diagram tre = census_diagram("trefoil");
  bool tre_flat = false;
  for (const WSolution& s : solve(tre, cfg)) {
    if (s.pinched.empty() && std::abs(volume(tre, s.w)) < 1e-6) {
      tre_flat = true;
    }
  }
  c.require(tre_flat, "no flat irreducible trefoil solution found");
}

// ---------------------------------------------------------------- 8

void criterion_8(Check& c) {
  const Diagram tre = census_diagram("trefoil");
  const Diagram mir = mirror(tre);
  const ParabolicRep rho = exact_trefoil_rep(tre);
  const ParabolicRep rho_m = exact_mirror_trefoil_rep(mir);

  // the meridian fixed points of the spliced strands differ by -1
  c.require(std::abs(shift_parameter(rho, 4, rho, 2) - cplx(-1, 0)) < 1e-12,
            "trefoil shift parameter is not -1");

  for (const SumFigure& fig : sum_figures()) {
    const Diagram& second_d = fig.second_mirrored ? mir : tre;
    const ParabolicRep& second_r = fig.second_mirrored ? rho_m : rho;
    const ComposedRep comp = connected_sum_rep(
        tre, rho, fig.cut_arc1, second_d, second_r, fig.cut_arc2, fig.shift);
    const std::string base = fig.second_mirrored ? "square" : "granny";
    c.require(comp.diagram.pd() == census_entry(base).pd,
              fig.name + ": composite differs from the bundled " + base);
    c.require(rep_relations_ok(comp.diagram, comp.rep),
              fig.name + ": composed representation breaks a relation");

    // push one strand over the other, seeding the new diagram's arcs from
    // the old ones; the pushed strand keeps its meridian on all three
    // pieces and the relations at the two new crossings fill in the rest
    const RMove rm = reidemeister2_detail(comp.diagram, fig.arc_b, fig.arc_b2,
                                          fig.b_over);
    const Diagram d8{rm.tuples};
    c.require(rm.crossing_p == 7 && rm.crossing_q == 8,
              fig.name + ": unexpected new crossing ids");
    std::map<int, Mat2> seeds;
    for (const auto& [old_arc, new_arc] : rm.old_arcs) {
      seeds[new_arc] = comp.rep.images[old_arc];
    }
    for (int seg : rm.b_segments) {
      seeds[seg] = comp.rep.images[fig.arc_b];
    }
    const ParabolicRep rho8 = complete_rep(d8, seeds);
    c.require(rep_relations_ok(d8, rho8),
              fig.name + ": completed representation breaks a relation");
    const std::set<int> profile = commutation_profile(d8, rho8);
    c.require(profile.count(rm.crossing_p) == 1 &&
                  profile.count(rm.crossing_q) == 1,
              fig.name + ": the two new crossings do not commute");

    // switching either new crossing gives an eight-crossing knot carrying
    // the transported representation
    const struct {
      int crossing;
      const std::string& target;
    } sides[] = {{rm.crossing_p, fig.p_target}, {rm.crossing_q, fig.q_target}};
    for (const auto& side : sides) {
      const ParabolicRep moved = transport(d8, rho8, {side.crossing});
      const Diagram changed = change_crossings(d8, {side.crossing});
      c.require(rep_relations_ok(changed, moved),
                fig.name + ": transported representation fails on " +
                    side.target);
      const auto [det, det2] = alexander_fingerprint(changed);
      const CensusEntry& want = census_entry(side.target);
      c.require(det == want.determinant && det2 == want.det2_odd,
                fig.name + ": switched diagram is not " + side.target);
      if (fig.name != "fig8" || side.crossing == rm.crossing_q) {
        c.require(changed.pd() == want.pd,
                  fig.name + ": switched pd differs from the bundled " +
                      side.target);
      } else {
        // the bundled 8_5 uses a different projection; identify by the
        // invariant pair instead, which is unique to it in the census
        c.require(census_lookup(det, det2) ==
                      std::optional<std::string>("8_5"),
                  fig.name + ": invariants do not single out 8_5");
      }
    }
  }
}

// ---------------------------------------------------------------- 9

void criterion_9(Check& c) {
  SolverConfig cfg;
  cfg.restarts = 200;
  cfg.seed = k_seed_solve;
  for (const char* name : {"trefoil", "4_1", "granny", "8_18"}) {
    const Diagram d = census_diagram(name);
    const std::vector<WSolution> sols = solve(d, cfg);
    const CensusEntry& e = census_entry(name);
    for (const std::set<int>& pins : e.known_pinched) {
      const bool found =
          std::any_of(sols.begin(), sols.end(),
                      [&](const WSolution& s) { return s.pinched == pins; });
      c.require(found, std::string(name) + ": no solution pinched at " +
                           show_set(pins));
    }
    for (double v : e.known_volumes) {
      const bool found =
          std::any_of(sols.begin(), sols.end(), [&](const WSolution& s) {
            return std::abs(std::abs(volume(d, s.w)) - v) < 1e-5;
          });
      c.require(found, std::string(name) + ": no solution with volume " +
                           std::to_string(v));
    }
    for (const WSolution& s : sols) {
      c.require(s.residual_norm < cfg.accept_tol,
                std::string(name) + ": accepted residual above tolerance");
      c.require(is_solution(d, s.w, 1e-8),
                std::string(name) + ": accepted vector fails verification");
    }

    // a second run must reproduce the first bit for bit
    const std::vector<WSolution> again = solve(d, cfg);
    bool same = sols.size() == again.size();
    for (std::size_t i = 0; same && i < sols.size(); ++i) {
      same = sols[i].pinched == again[i].pinched &&
             sols[i].w.size() == again[i].w.size();
      for (std::size_t r = 0; same && r < sols[i].w.size(); ++r) {
        same = sols[i].w[r] == again[i].w[r];
      }
    }
    c.require(same, std::string(name) + ": two runs disagree");
  }
}

// ---------------------------------------------------------------- 10

void criterion_10(Check& c) {
  const Diagram f8 = census_diagram("4_1");
  const Diagram d = connected_sum(f8, 1, f8, 1);
  c.require(d.crossing_count() == 8, "composite has the wrong size");
  SolverConfig cfg;
  cfg.restarts = 200;
  cfg.seed = k_seed_solve;
  const std::vector<WSolution> sols = solve(d, cfg);
  double best_gap = 1.0;
  for (const WSolution& s : sols) {
    best_gap = std::min(best_gap,
                        std::abs(std::abs(volume(d, s.w)) - k_vol_double));
  }
  c.require(best_gap < 1e-5, "no solution near twice the figure-eight "
                             "volume; best gap " + std::to_string(best_gap));
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    void (*body)(Check&);
    double budget;  // seconds; 0 = unlimited
  };
  const Entry entries[] = {
      {1, "corner ratio identities", criterion_1, 1.0},
      {2, "pinch detection both ways", criterion_2, 1.0},
      {3, "pretzel family", criterion_3, 0.0},
      {4, "pretzel crossing changes", criterion_4, 1.0},
      {5, "double-eight families and holonomy transport", criterion_5, 0.0},
      {6, "twist insertion", criterion_6, 0.0},
      {7, "volume against the sine series", criterion_7, 0.0},
      {8, "composite representations", criterion_8, 10.0},
      {9, "solver census signatures", criterion_9, 60.0},
      {10, "composite volume", criterion_10, 0.0},
  };

  int passed = 0;
  const int total = static_cast<int>(std::size(entries));
  for (const Entry& e : entries) {
    Check chk;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.body(chk);
    } catch (const std::exception& ex) {
      chk.problems.push_back(std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (e.budget > 0.0 && secs > e.budget) {
      std::ostringstream os;
      os << "took " << secs << "s, budget " << e.budget << "s";
      chk.problems.push_back(os.str());
    }
    const bool ok = chk.problems.empty();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << e.id << ": " << (ok ? "PASS" : "FAIL") << " ("
         << secs << "s) " << e.label;
    std::cout << line.str() << "\n";
    for (const std::string& p : chk.problems) {
      std::cout << "  - " << p << "\n";
    }
    if (ok) ++passed;
  }
  if (passed == total) {
    std::cout << "ALL CRITERIA PASS (" << passed << "/" << total << ")\n";
    return 0;
  }
  std::cout << "CRITERIA FAILED (" << passed << "/" << total << " passed)\n";
  return 1;
}
