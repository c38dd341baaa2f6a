#include <doctest.h>
#include <json.hpp>

#include "pinchlab/fixtures.hpp"
#include "pinchlab/json_io.hpp"
#include "pinchlab/volume.hpp"

using namespace pinchlab;
using nlohmann::json;

TEST_CASE("diagram json round trip") {
  for (const CensusEntry& e : census()) {
    const Diagram d = census_diagram(e.name);
    const std::string text = diagram_to_json(d);
    const Diagram back = diagram_from_json(text);
    CHECK(back.pd() == d.pd());
    CHECK(back.region_count() == d.region_count());
    // the emitted regions match what the parser rebuilds
    const json j = json::parse(text);
    CHECK(j.at("crossings").size() == static_cast<std::size_t>(d.crossing_count()));
    CHECK(j.at("regions").size() == static_cast<std::size_t>(d.region_count()));
    CHECK(j.at("regions")[0].at("corners")[0].size() == 2);
  }
  CHECK_THROWS_AS(diagram_from_json("not json"), parse_error);
  CHECK_THROWS_AS(diagram_from_json("{\"crossings\": 4}"), parse_error);
}

TEST_CASE("solution json round trip") {
  const Diagram d = census_diagram("8_5");
  const WSolution s =
      family_solution(d, family_8_5({{3.0, 0.2}, {5.0, -0.4}, {2.0, 0.3}}));
  const std::string text = solution_to_json(s);
  const WSolution back = solution_from_json(text);
  REQUIRE(back.w.size() == s.w.size());
  for (std::size_t i = 0; i < s.w.size(); ++i) CHECK(back.w[i] == s.w[i]);
  CHECK(back.pinched == s.pinched);
  CHECK(back.residual_norm == s.residual_norm);
  CHECK(back.tol == s.tol);
  // unknown fields are ignored, so decorated payloads still load
  json j = json::parse(text);
  j["classification"] = "partially_abelian";
  j["volume"] = 0.0;
  const WSolution again = solution_from_json(j.dump());
  CHECK(again.pinched == s.pinched);
}

TEST_CASE("representation json lists one generator per strand class") {
  const Diagram d = census_diagram("trefoil");
  const ParabolicRep rho = exact_trefoil_rep(d);
  const json j = json::parse(rep_to_json(d, rho));
  CHECK(j.at("normalized").is_boolean());
  REQUIRE(j.at("generators").size() == 3);
  for (const json& g : j.at("generators")) {
    const int arc = g.at("arc").get<int>();
    CHECK(arc >= 1);
    CHECK(arc <= 6);
    REQUIRE(g.at("matrix").size() == 4);
    for (const json& entry : g.at("matrix")) CHECK(entry.size() == 2);
  }
  // smallest arc of each class is the representative: 1, 2, 4
  CHECK(j.at("generators")[0].at("arc") == 1);
  CHECK(j.at("generators")[1].at("arc") == 2);
  CHECK(j.at("generators")[2].at("arc") == 4);
}

TEST_CASE("volume json carries the per-crossing breakdown") {
  const Diagram d = census_diagram("8_5");
  const std::vector<cplx> w =
      family_values("8_5", "w", {{3.0, 0.2}, {5.0, -0.4}, {2.0, 0.3}});
  const json j = json::parse(volume_to_json(d, w));
  CHECK(j.at("volume").is_number());
  REQUIRE(j.at("per_crossing").size() == 8);
  const std::vector<double> per = per_crossing_volume(d, w);
  double total = 0.0;
  for (int k = 0; k < 8; ++k) {
    CHECK(j.at("per_crossing")[k].get<double>() == per[k]);
    total += per[k];
  }
  CHECK(j.at("volume").get<double>() == total);
}
