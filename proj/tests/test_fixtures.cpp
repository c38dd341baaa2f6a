#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pinchlab/fixtures.hpp"

using namespace pinchlab;

TEST_CASE("census integrity") {
  const auto& entries = census();
  CHECK(entries.size() == 11);
  for (const CensusEntry& e : entries) {
    const Diagram d = census_diagram(e.name);
    CHECK(d.crossing_count() == e.crossing_count);
    CHECK(d.region_count() == e.region_count);
    CHECK(d.pd() == e.pd);
    CHECK(e.determinant % 2 == 1);  // knots have odd determinant
    CHECK(e.det2_odd % 2 == 1);
    for (const auto& pins : e.known_pinched) {
      for (int k : pins) {
        CHECK(k >= 1);
        CHECK(k <= e.crossing_count);
      }
    }
  }
  CHECK_THROWS_AS(census_entry("no_such_knot"), precondition_error);
  CHECK(census_edges().size() == 4);
  for (const CensusEdge& e : census_edges()) {
    census_entry(e.from);  // both endpoints must exist
    census_entry(e.to);
  }
  CHECK(sum_figures().size() == 3);
}

TEST_CASE("an empty census gives an empty report") {
  const CensusReport rep = census_report({});
  CHECK(rep.rows.empty());
  CHECK(rep.edges.empty());
}

TEST_CASE("census report on the two smallest knots") {
  SolverConfig cfg;
  cfg.restarts = 40;
  cfg.seed = 1;
  const CensusReport rep = census_report({"4_1", "trefoil"}, cfg);
  REQUIRE(rep.rows.size() == 2);
  // rows come back sorted by name
  CHECK(rep.rows[0].name == "4_1");
  CHECK(rep.rows[1].name == "trefoil");
  for (const CensusRow& r : rep.rows) {
    CHECK(r.failures.empty());
    CHECK(r.solution_count >= 2);
    CHECK(r.classifications.size() == static_cast<std::size_t>(r.solution_count));
    CHECK(r.pinched_sets.size() == static_cast<std::size_t>(r.solution_count));
    CHECK(r.volumes.size() == static_cast<std::size_t>(r.solution_count));
  }
  // the geometric solution of 4_1 shows up in the volume list
  const auto& vols = rep.rows[0].volumes;
  CHECK(std::any_of(vols.begin(), vols.end(), [](double v) {
    return std::abs(std::abs(v) - 2.029883212819307) < 1e-6;
  }));
  // no edges connect these two knots
  CHECK(rep.edges.empty());
}

TEST_CASE("duplicate names collapse in the report") {
  SolverConfig cfg;
  cfg.restarts = 25;
  cfg.seed = 1;
  const CensusReport rep = census_report({"trefoil", "trefoil"}, cfg);
  CHECK(rep.rows.size() == 1);
}
