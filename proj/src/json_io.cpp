#include "pinchlab/json_io.hpp"

#include <json.hpp>

#include "pinchlab/volume.hpp"

namespace pinchlab {

using nlohmann::json;

std::string diagram_to_json(const Diagram& d) {
  json crossings = json::array();
  for (const Crossing& c : d.crossings()) {
    crossings.push_back({{"id", c.id},
                         {"sign", c.sign},
                         {"arcs", {c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3]}}});
  }
  json regions = json::array();
  for (const Region& r : d.regions()) {
    json corners = json::array();
    for (const Corner& c : r.corners) {
      corners.push_back(
          {c.crossing, std::string(1, quadrant_letter(c.quadrant))});
    }
    regions.push_back({{"id", r.id}, {"corners", std::move(corners)}});
  }
  return json{{"crossings", std::move(crossings)},
              {"regions", std::move(regions)}}
      .dump();
}

std::string solution_to_json(const WSolution& s) {
  json w = json::array();
  for (const cplx& v : s.w) {
    w.push_back({{"re", v.real()}, {"im", v.imag()}});
  }
  json pinched = json::array();
  for (int k : s.pinched) pinched.push_back(k);
  return json{{"w", std::move(w)},
              {"residual_norm", s.residual_norm},
              {"pinched", std::move(pinched)},
              {"tol", s.tol}}
      .dump();
}

std::string rep_to_json(const Diagram& d, const ParabolicRep& rho) {
  const WirtingerPresentation wp = wirtinger(d);
  // one generator per meridian class, keyed by its smallest arc
  std::vector<int> arc_of_class(wp.generator_count, 0);
  for (int a = d.arc_count(); a >= 1; --a) {
    arc_of_class[wp.class_of_arc[a]] = a;
  }
  json generators = json::array();
  for (int c = 0; c < wp.generator_count; ++c) {
    const int arc = arc_of_class[c];
    const Mat2& m = rho.images[arc];
    json mat = json::array();
    for (const cplx& e : {m.a, m.b, m.c, m.d}) {
      mat.push_back({e.real(), e.imag()});
    }
    generators.push_back({{"arc", arc}, {"matrix", std::move(mat)}});
  }
  return json{{"generators", std::move(generators)},
              {"normalized", rho.normalized}}
      .dump();
}

std::string volume_to_json(const Diagram& d, const std::vector<cplx>& w) {
  const std::vector<double> per = per_crossing_volume(d, w);
  double total = 0.0;
  for (double v : per) total += v;
  return json{{"volume", total}, {"per_crossing", per}}.dump();
}

Diagram diagram_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad diagram JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("crossings") || !j["crossings"].is_array()) {
    throw parse_error("diagram JSON lacks a crossings array");
  }
  std::vector<std::array<int, 4>> tuples;
  try {
    for (const json& c : j["crossings"]) {
      const json& arcs = c.at("arcs");
      if (!arcs.is_array() || arcs.size() != 4) {
        throw parse_error("crossing arcs must be a 4-element array");
      }
      tuples.push_back({arcs[0].get<int>(), arcs[1].get<int>(),
                        arcs[2].get<int>(), arcs[3].get<int>()});
    }
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad diagram JSON: ") + e.what());
  }
  return Diagram(std::move(tuples));
}

WSolution solution_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad solution JSON: ") + e.what());
  }
  WSolution s;
  try {
    for (const json& v : j.at("w")) {
      s.w.emplace_back(v.at("re").get<double>(), v.at("im").get<double>());
    }
    s.residual_norm = j.at("residual_norm").get<double>();
    for (const json& k : j.at("pinched")) s.pinched.insert(k.get<int>());
    s.tol = j.at("tol").get<double>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad solution JSON: ") + e.what());
  }
  return s;
}

}  // namespace pinchlab
