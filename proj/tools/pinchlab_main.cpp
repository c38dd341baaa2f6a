// pinchlab: region-variable gluing solver and diagram surgery toolkit.
//
// Subcommands: validate, solve, pinch, change, tangle, sum, volume, census.
// Exit codes: 0 on success, 1 on parse or precondition failure, 2 when an
// internal verification check fails (a convention bug, not bad input).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pinchlab/alexander.hpp"
#include "pinchlab/diagram.hpp"
#include "pinchlab/fixtures.hpp"
#include "pinchlab/gluing.hpp"
#include "pinchlab/json_io.hpp"
#include "pinchlab/solver.hpp"
#include "pinchlab/transform.hpp"
#include "pinchlab/volume.hpp"

namespace {

using namespace pinchlab;
using nlohmann::json;

Diagram load_diagram(const std::string& knot, const std::string& pd) {
  if (!knot.empty() && !pd.empty()) {
    throw precondition_error("give --knot or --pd, not both");
  }
  if (!knot.empty()) return census_diagram(knot);
  if (!pd.empty()) return parse_pd(pd);
  throw precondition_error("a diagram is required: --knot NAME or --pd CODE");
}

FamilyPoint parse_point(const std::vector<double>& v) {
  if (v.size() == 3) return {v[0], v[1], v[2]};
  if (v.size() == 6) {
    return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
  }
  throw precondition_error(
      "--family-params wants p,q,r (3 reals) or 3 re,im pairs (6 reals)");
}

std::string fmt_set(const std::set<int>& s) {
  std::string out = "{";
  for (int k : s) {
    if (out.size() > 1) out += ",";
    out += std::to_string(k);
  }
  return out + "}";
}

std::string fmt_cplx(const cplx& z) {
  std::ostringstream o;
  o.precision(12);
  o << z.real();
  if (z.imag() != 0.0) {
    o << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  }
  return o.str();
}

void print_solution_text(std::ostream& os, const Diagram& d,
                         const WSolution& s, int index) {
  os << "[" << index << "] pinched=" << fmt_set(s.pinched)
     << " class=" << to_string(classify(d, s)) << " volume=" << std::showpos
     << volume(d, s.w) << std::noshowpos << " residual=" << s.residual_norm
     << "\n    w:";
  for (const cplx& v : s.w) os << " " << fmt_cplx(v);
  os << "\n";
}

json solution_json(const Diagram& d, const WSolution& s) {
  json j = json::parse(solution_to_json(s));
  j["classification"] = to_string(classify(d, s));
  j["volume"] = volume(d, s.w);
  return j;
}

void emit_diagram(const Diagram& d, const std::string& format) {
  if (format == "json") {
    std::cout << diagram_to_json(d) << "\n";
    return;
  }
  std::cout << d.pd() << "\n";
  std::cout << "crossings: " << d.crossing_count() << " (signs:";
  for (const Crossing& c : d.crossings()) std::cout << (c.sign > 0 ? " +" : " -");
  std::cout << ")\nregions: " << d.region_count() << "\n";
  for (const Region& r : d.regions()) {
    std::cout << "  region " << r.id << ":";
    for (const Corner& c : r.corners) {
      std::cout << " (" << c.crossing << "," << quadrant_letter(c.quadrant)
                << ")";
    }
    std::cout << "\n";
  }
}

void emit_pair(const Diagram& d, const WSolution& s, const std::string& format,
               const std::vector<int>* tangle_crossings = nullptr) {
  if (format == "json") {
    json j{{"diagram", json::parse(diagram_to_json(d))},
           {"solution", json::parse(solution_json(d, s).dump())}};
    if (tangle_crossings) j["tangle_crossings"] = *tangle_crossings;
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << d.pd() << "\n";
  if (tangle_crossings) {
    std::cout << "tangle crossings:";
    for (int k : *tangle_crossings) std::cout << " " << k;
    std::cout << "\n";
  }
  print_solution_text(std::cout, d, s, 1);
}

int run(int argc, char** argv) {
  CLI::App app{"Thurston gluing equations in region variables: solve, detect "
               "pinched crossings, and rebuild diagrams without losing the "
               "solution"};
  app.require_subcommand(1);

  std::string knot, pd, knot2, pd2, family = "w", format = "text";
  std::string solution_file;
  std::vector<double> params;
  std::vector<int> crossings, word;
  std::vector<std::string> census_knots;
  int restarts = 200;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  int arc = 1, arc2 = 1;

  const auto add_diagram = [&](CLI::App* c) {
    c->add_option("--knot", knot, "bundled census knot name");
    c->add_option("--pd", pd, "planar diagram code \"X[i,j,k,l] ...\"");
  };
  const auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_family = [&](CLI::App* c) {
    c->add_option("--family-params", params,
                  "parameters p,q,r for the bundled family (3 reals or 3 "
                  "re,im pairs)")
        ->delimiter(',');
    c->add_option("--family", family, "family name (8_18 has \"w\", \"wp\")");
  };

  CLI::App* c_validate =
      app.add_subcommand("validate", "parse a diagram and print its regions");
  add_diagram(c_validate);
  add_format(c_validate);

  CLI::App* c_solve = app.add_subcommand(
      "solve", "random-restart search for gluing solutions");
  add_diagram(c_solve);
  add_format(c_solve);
  c_solve->add_option("--restarts", restarts, "random restarts");
  c_solve->add_option("--seed", seed, "random seed");
  c_solve->add_option("--tol", tol, "acceptance residual tolerance");

  CLI::App* c_pinch = app.add_subcommand(
      "pinch", "pinched set of a family solution, or the combinatorial "
               "closure of a crossing set");
  add_diagram(c_pinch);
  add_format(c_pinch);
  add_family(c_pinch);
  c_pinch->add_option("--crossings", crossings,
                      "crossing ids to close under the region equations")
      ->delimiter(',');

  CLI::App* c_change = app.add_subcommand(
      "change", "switch crossings; with a family solution, carry it across");
  c_change->alias("change-crossings");
  add_diagram(c_change);
  add_format(c_change);
  add_family(c_change);
  c_change->add_option("--crossings", crossings, "crossing ids to switch")
      ->delimiter(',')
      ->required();

  CLI::App* c_tangle = app.add_subcommand(
      "tangle", "replace a crossing by a rational twist region; with a "
                "family solution, extend it across");
  c_tangle->alias("insert-tangle");
  add_diagram(c_tangle);
  add_format(c_tangle);
  add_family(c_tangle);
  c_tangle->add_option("--crossings", crossings, "the crossing to replace")
      ->delimiter(',')
      ->required();
  c_tangle->add_option("--tangle", word,
                       "twist word: even entries, odd last entry")
      ->delimiter(',')
      ->required();

  CLI::App* c_sum = app.add_subcommand("sum", "connected sum of two diagrams");
  add_diagram(c_sum);
  add_format(c_sum);
  c_sum->add_option("--knot2", knot2, "second bundled knot name");
  c_sum->add_option("--pd2", pd2, "second planar diagram code");
  c_sum->add_option("--arc", arc, "cut arc of the first diagram");
  c_sum->add_option("--arc2", arc2, "cut arc of the second diagram");

  CLI::App* c_volume = app.add_subcommand(
      "volume", "total and per-crossing volume of a solution");
  add_diagram(c_volume);
  add_format(c_volume);
  add_family(c_volume);
  c_volume->add_option("--solution", solution_file,
                       "solution JSON file (alternative to --family-params)");

  CLI::App* c_census = app.add_subcommand(
      "census", "solve the bundled knots and verify the transfer edges");
  add_format(c_census);
  c_census->add_option("--knot", census_knots,
                       "restrict to these census knots (default: all)");
  c_census->add_option("--restarts", restarts, "random restarts per knot");
  c_census->add_option("--seed", seed, "random seed");
  c_census->add_option("--tol", tol, "acceptance residual tolerance");

  CLI11_PARSE(app, argc, argv);

  if (c_validate->parsed()) {
    emit_diagram(load_diagram(knot, pd), format);
    return 0;
  }

  if (c_solve->parsed()) {
    const Diagram d = load_diagram(knot, pd);
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.accept_tol = tol;
    const std::vector<WSolution> sols = solve(d, cfg);
    if (format == "json") {
      json out = json::array();
      for (const WSolution& s : sols) out.push_back(solution_json(d, s));
      std::cout << out.dump() << "\n";
    } else {
      std::cout << sols.size() << " solutions\n";
      int i = 1;
      for (const WSolution& s : sols) print_solution_text(std::cout, d, s, i++);
    }
    return 0;
  }

  if (c_pinch->parsed()) {
    const Diagram d = load_diagram(knot, pd);
    if (!params.empty()) {
      const WSolution s =
          family_solution(d, family_values(knot, family, parse_point(params)));
      if (format == "json") {
        std::cout << json{{"pinched", s.pinched}}.dump() << "\n";
      } else {
        std::cout << "pinched: " << fmt_set(s.pinched) << "\n";
      }
      return 0;
    }
    if (crossings.empty()) {
      throw precondition_error("pinch needs --family-params or --crossings");
    }
    const std::set<int> closure = propagate_pinch(
        d, std::set<int>(crossings.begin(), crossings.end()));
    if (format == "json") {
      std::cout << json{{"pinched", closure}}.dump() << "\n";
    } else {
      std::cout << "pinched: " << fmt_set(closure) << "\n";
    }
    return 0;
  }

  if (c_change->parsed()) {
    const Diagram d = load_diagram(knot, pd);
    const std::set<int> J(crossings.begin(), crossings.end());
    if (params.empty()) {
      emit_diagram(change_crossings(d, J), format);
      return 0;
    }
    const WSolution s =
        family_solution(d, family_values(knot, family, parse_point(params)));
    const TransferResult tr = transfer_crossing_change(d, s, J);
    emit_pair(tr.diagram, tr.solution, format);
    return 0;
  }

  if (c_tangle->parsed()) {
    const Diagram d = load_diagram(knot, pd);
    if (crossings.size() != 1) {
      throw precondition_error("--crossings wants exactly one id here");
    }
    if (params.empty()) {
      emit_diagram(insert_tangle_diagram(d, crossings[0], word), format);
      return 0;
    }
    const WSolution s =
        family_solution(d, family_values(knot, family, parse_point(params)));
    const TangleResult tr = insert_tangle(d, s, crossings[0], word);
    emit_pair(tr.diagram, tr.solution, format, &tr.tangle_crossings);
    return 0;
  }

  if (c_sum->parsed()) {
    const Diagram d1 = load_diagram(knot, pd);
    const Diagram d2 = load_diagram(knot2, pd2);
    emit_diagram(connected_sum(d1, arc, d2, arc2), format);
    return 0;
  }

  if (c_volume->parsed()) {
    const Diagram d = load_diagram(knot, pd);
    std::vector<cplx> w;
    if (!params.empty()) {
      w = family_values(knot, family, parse_point(params));
    } else if (!solution_file.empty()) {
      std::ifstream in(solution_file);
      if (!in) throw precondition_error("cannot read " + solution_file);
      std::stringstream buf;
      buf << in.rdbuf();
      w = solution_from_json(buf.str()).w;
    } else {
      throw precondition_error("volume needs --family-params or --solution");
    }
    if (static_cast<int>(w.size()) != d.region_count()) {
      throw precondition_error("solution length does not match the diagram");
    }
    if (format == "json") {
      std::cout << volume_to_json(d, w) << "\n";
    } else {
      const std::vector<double> per = per_crossing_volume(d, w);
      std::cout << "volume: " << volume(d, w) << "\nper crossing:";
      for (double v : per) std::cout << " " << v;
      std::cout << "\n";
    }
    return 0;
  }

  if (c_census->parsed()) {
    std::vector<std::string> names;
    for (const std::string& n : census_knots) {
      if (!n.empty()) names.push_back(n);
    }
    // with no --knot at all, run the whole bundled census; an explicitly
    // empty name list is allowed and yields an empty report
    if (names.empty() && c_census->count("--knot") == 0) {
      for (const CensusEntry& e : census()) names.push_back(e.name);
    }
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.accept_tol = tol;
    const CensusReport report = census_report(names, cfg);
    if (format == "json") {
      json rows = json::array();
      for (const CensusRow& r : report.rows) {
        json sols = json::array();
        for (std::size_t i = 0; i < r.pinched_sets.size(); ++i) {
          sols.push_back({{"pinched", r.pinched_sets[i]},
                          {"classification", r.classifications[i]},
                          {"volume", r.volumes[i]}});
        }
        rows.push_back({{"name", r.name},
                        {"solution_count", r.solution_count},
                        {"solutions", std::move(sols)},
                        {"failures", r.failures}});
      }
      json edges = json::array();
      for (const CensusEdgeHit& e : report.edges) {
        edges.push_back({{"from", e.from},
                         {"crossings", e.crossings},
                         {"to", e.to},
                         {"verified", e.verified}});
      }
      std::cout << json{{"rows", std::move(rows)}, {"edges", std::move(edges)}}
                       .dump()
                << "\n";
    } else {
      for (const CensusRow& r : report.rows) {
        std::cout << r.name << ": " << r.solution_count << " solutions\n";
        for (std::size_t i = 0; i < r.pinched_sets.size(); ++i) {
          std::cout << "  pinched=" << fmt_set(r.pinched_sets[i])
                    << " class=" << r.classifications[i]
                    << " volume=" << std::showpos << r.volumes[i]
                    << std::noshowpos << "\n";
        }
        for (const std::string& f : r.failures) {
          std::cout << "  failure: " << f << "\n";
        }
      }
      for (const CensusEdgeHit& e : report.edges) {
        std::cout << "edge: " << e.from << " --" << fmt_set(e.crossings)
                  << "--> " << e.to
                  << (e.verified ? " (verified)" : " (NOT verified)") << "\n";
      }
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const verification_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
