#include "pinchlab/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "census_data.hpp"
#include "pinchlab/alexander.hpp"
#include "pinchlab/transform.hpp"
#include "pinchlab/volume.hpp"

namespace pinchlab {

namespace {

struct census_data {
  std::vector<CensusEntry> entries;
  std::vector<CensusEdge> edges;
};

std::set<int> parse_id_set(const std::string& text) {
  std::set<int> out;
  if (text == "-") return out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) out.insert(std::stoi(tok));
  }
  return out;
}

census_data parse_census(const char* text) {
  census_data data;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    if (kind == "knot") {
      CensusEntry e;
      ls >> e.name >> e.determinant >> e.det2_odd;
      std::string tok, pd;
      while (ls >> tok) {
        if (!pd.empty()) pd += ' ';
        pd += tok;
        if (tok.rfind("X[", 0) == 0 || tok.rfind("x[", 0) == 0) {
          ++e.crossing_count;
        }
      }
      e.pd = pd;
      data.entries.push_back(std::move(e));
    } else if (kind == "expect") {
      std::string name;
      ls >> name;
      auto it = std::find_if(data.entries.begin(), data.entries.end(),
                             [&](const CensusEntry& e) { return e.name == name; });
      if (it == data.entries.end()) {
        throw parse_error("census expectation for unknown knot " + name);
      }
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
          throw parse_error("malformed census expectation: " + tok);
        }
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "regions") {
          it->region_count = std::stoi(val);
        } else if (key == "pins") {
          std::istringstream ps(val);
          std::string one;
          while (std::getline(ps, one, '|')) {
            it->known_pinched.push_back(parse_id_set(one));
          }
        } else if (key == "vols") {
          std::istringstream vs(val);
          std::string one;
          while (std::getline(vs, one, ',')) {
            it->known_volumes.push_back(std::stod(one));
          }
        } else {
          throw parse_error("unknown census expectation key: " + key);
        }
      }
    } else if (kind == "edge") {
      CensusEdge e;
      std::string csv;
      ls >> e.from >> csv >> e.to;
      e.crossings = parse_id_set(csv);
      data.edges.push_back(std::move(e));
    } else {
      throw parse_error("unknown census line kind: " + kind);
    }
  }
  return data;
}

const census_data& data() {
  static const census_data d = parse_census(detail::k_census_text);
  return d;
}

}  // namespace

const std::vector<CensusEntry>& census() { return data().entries; }
const std::vector<CensusEdge>& census_edges() { return data().edges; }

const CensusEntry& census_entry(const std::string& name) {
  for (const auto& e : census()) {
    if (e.name == name) return e;
  }
  throw precondition_error("unknown census knot: " + name);
}

Diagram census_diagram(const std::string& name) {
  return parse_pd(census_entry(name).pd);
}

std::optional<std::string> census_lookup(long determinant, long det2_odd,
                                         int crossing_count) {
  std::optional<std::string> found;
  for (const auto& e : census()) {
    if (e.determinant != determinant || e.det2_odd != det2_odd) continue;
    if (crossing_count > 0 && e.crossing_count != crossing_count) continue;
    if (found) return std::nullopt;  // ambiguous
    found = e.name;
  }
  return found;
}

std::vector<cplx> family_8_5(const FamilyPoint& fp) {
  const cplx p = fp.p, q = fp.q, r = fp.r;
  const cplx denom = p + q - p * q * r;
  if (p == 0.0 || q == 0.0 || denom == 0.0) {
    throw degeneracy_error("family parameters hit a pole");
  }
  const cplx s = -1.0 / denom;
  const std::array<cplx, 10> slot = {
      s + 1.0 / p + 1.0 / q, s + 1.0 / p + r,       s + 1.0 / p + 2.0 / q - r,
      s + 1.0 / p + 1.0 / q, s + 1.0 / q + r,       1.0 / p + 1.0 / q,
      r,                     1.0 / p + 1.0 / q,     s + 1.0 / q + r,
      s + 1.0 / p + r};
  static constexpr std::array<int, 10> to_slot = {1, 3, 4, 2, 10,
                                                  5, 7, 6, 8, 9};
  std::vector<cplx> w(10);
  for (int f = 0; f < 10; ++f) w[f] = slot[to_slot[f] - 1];
  return w;
}

std::vector<cplx> family_8_18_w(const FamilyPoint& fp) {
  const cplx p = fp.p, q = fp.q, r = fp.r;
  const std::array<cplx, 10> slot = {
      p - q * r + q,         p - q * r + q,      p * r + p - q * r,
      p * r + p - q * r,     p * r - q * r + q,  p - q * r + 2.0 * q,
      p * r + p + q,         2.0 * p * r + p - q * r,
      p * r + q,             p - q * r};
  static constexpr std::array<int, 10> to_slot = {6, 9, 5, 1, 7,
                                                  2, 3, 10, 8, 4};
  std::vector<cplx> w(10);
  for (int f = 0; f < 10; ++f) w[f] = slot[to_slot[f] - 1];
  return w;
}

std::vector<cplx> family_8_18_wp(const FamilyPoint& fp) {
  const cplx p = fp.p, q = fp.q, r = fp.r;
  const std::array<cplx, 10> slot = {
      p - q * r + q,
      p * r - 2.0 * q * r + q,
      4.0 * p * r - p - 3.0 * q * r + q,
      p * r + p - q * r,
      p * r - q * r + q,
      p * r - q * r + q,
      3.0 * p * r - p - 2.0 * q * r + q,
      3.0 * p * r - p - 2.0 * q * r + q,
      2.0 * p * r - p - q * r + q,
      p - q * r};
  static constexpr std::array<int, 10> to_slot = {5, 9, 7, 2, 6,
                                                  1, 3, 10, 8, 4};
  std::vector<cplx> w(10);
  for (int f = 0; f < 10; ++f) w[f] = slot[to_slot[f] - 1];
  return w;
}

std::vector<cplx> family_values(const std::string& knot,
                                const std::string& family,
                                const FamilyPoint& fp) {
  if (knot == "8_5") {
    if (family.empty() || family == "w") return family_8_5(fp);
    throw precondition_error("8_5 bundles a single family (\"w\")");
  }
  if (knot == "8_18") {
    if (family.empty() || family == "w") return family_8_18_w(fp);
    if (family == "wp") return family_8_18_wp(fp);
    throw precondition_error("8_18 families are \"w\" and \"wp\"");
  }
  throw precondition_error("no bundled parametric family for " + knot);
}

WSolution family_solution(const Diagram& d, const std::vector<cplx>& w,
                          double tol) {
  const SolutionReport rep = check_solution(d, w, tol);
  if (!rep.ok) {
    std::string why = rep.failures.empty() ? "margin" : rep.failures.front();
    throw degeneracy_error("family point is degenerate: " + why);
  }
  return make_solution(d, w, tol);
}

ParabolicRep exact_trefoil_rep(const Diagram& trefoil) {
  const std::vector<Mat2> cls = {unit_translation(),
                                 Mat2{1.0, 0.0, -1.0, 1.0},
                                 Mat2{2.0, 1.0, -1.0, 0.0}};
  WirtingerPresentation wp = wirtinger(trefoil);
  if (wp.generator_count != 3) {
    throw precondition_error("diagram is not a 3-strand trefoil projection");
  }
  ParabolicRep rho = rep_from_classes(trefoil, cls);
  if (!rep_relations_ok(trefoil, rho)) {
    throw precondition_error("integral matrices fail on this diagram");
  }
  return rho;
}

ParabolicRep exact_mirror_trefoil_rep(const Diagram& mirror_trefoil) {
  const std::vector<Mat2> cls = {unit_translation(),
                                 Mat2{1.0, 0.0, -1.0, 1.0},
                                 Mat2{0.0, 1.0, -1.0, 2.0}};
  WirtingerPresentation wp = wirtinger(mirror_trefoil);
  if (wp.generator_count != 3) {
    throw precondition_error("diagram is not a 3-strand trefoil projection");
  }
  ParabolicRep rho = rep_from_classes(mirror_trefoil, cls);
  if (!rep_relations_ok(mirror_trefoil, rho)) {
    throw precondition_error("integral matrices fail on this diagram");
  }
  return rho;
}

const std::vector<SumFigure>& sum_figures() {
  static const std::vector<SumFigure> figs = {
      {"fig7", 1, 1, false, -1.0, 4, 8, true, "8_21", "8_15"},
      {"fig8", 1, 1, false, 0.0, 3, 9, true, "8_5", "8_19"},
      {"fig9", 1, 2, true, -2.0, 3, 10, true, "8_10", "8_20"},
  };
  return figs;
}

namespace {

// deterministic generic parameter points for the bundled families
std::pair<Diagram, WSolution> bundled_solution(const std::string& name,
                                               const std::set<int>& J) {
  if (name == "8_5") {
    Diagram d = census_diagram("8_5");
    WSolution s = family_solution(d, family_8_5({3.0, 5.0, 2.0}));
    if (std::includes(s.pinched.begin(), s.pinched.end(), J.begin(), J.end()))
      return {std::move(d), std::move(s)};
  } else if (name == "8_18") {
    Diagram d = census_diagram("8_18");
    const FamilyPoint pt{2.0, 3.0, 5.0};
    for (auto* fn : {&family_8_18_w, &family_8_18_wp}) {
      WSolution s = family_solution(d, (*fn)(pt));
      if (std::includes(s.pinched.begin(), s.pinched.end(), J.begin(),
                        J.end()))
        return {std::move(d), std::move(s)};
    }
  }
  throw precondition_error("no bundled family of " + name +
                           " pinches the requested crossings");
}

}  // namespace

CensusReport census_report(const std::vector<std::string>& names,
                           const SolverConfig& cfg) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  CensusReport report;
  for (const auto& name : sorted) {
    CensusRow row;
    row.name = name;
    try {
      const Diagram d = census_diagram(name);
      const std::vector<WSolution> sols = solve(d, cfg);
      row.solution_count = static_cast<int>(sols.size());
      for (const auto& s : sols) {
        row.classifications.push_back(to_string(classify(d, s)));
        row.pinched_sets.push_back(s.pinched);
        row.volumes.push_back(volume(d, s.w));
      }
    } catch (const std::exception& e) {
      row.failures.push_back(e.what());
    }
    report.rows.push_back(std::move(row));
  }

  const auto named = [&](const std::string& n) {
    return std::find(sorted.begin(), sorted.end(), n) != sorted.end();
  };
  for (const auto& e : census_edges()) {
    if (!named(e.from) || !named(e.to)) continue;
    CensusEdgeHit hit{e.from, e.crossings, e.to, false};
    try {
      const auto [d, s] = bundled_solution(e.from, e.crossings);
      const TransferResult tr = transfer_crossing_change(d, s, e.crossings);
      const auto fp = alexander_fingerprint(tr.diagram);
      const CensusEntry& target = census_entry(e.to);
      hit.verified = fp.first == target.determinant &&
                     fp.second == target.det2_odd &&
                     r_related(d, tr.diagram, s);
    } catch (const std::exception& ex) {
      for (auto& row : report.rows) {
        if (row.name == e.from) {
          row.failures.push_back(std::string("edge check: ") + ex.what());
        }
      }
    }
    report.edges.push_back(std::move(hit));
  }
  return report;
}

}  // namespace pinchlab
