#include <doctest.h>

#include "fixtures.hpp"
#include "ornament/constructions.hpp"
#include "ornament/interchange.hpp"
#include "ornament/sweep.hpp"

using namespace ornament;
using nlohmann::json;

TEST_CASE("ornament documents round-trip byte for byte") {
  for (const Ornament& o : {make_borromean(1), make_random_ornament(1, 1, 5, ratio(3, 7)), fixture::concurrent_segments()}) {
    const std::string text = dump(to_json(o));
    const Ornament back = ornament_from_json(json::parse(text));
    CHECK(dump(to_json(back)) == text);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(back.components[i].images == o.components[i].images);
      CHECK(back.components[i].domain == o.components[i].domain);
      CHECK(back.components[i].name == o.components[i].name);
    }
  }
}

TEST_CASE("homotopy documents round-trip") {
  const HomotopyTrack t = sweep_to_trivial(make_borromean(1), 1).track;
  const std::string text = dump(to_json(t));
  const HomotopyTrack back = track_from_json(json::parse(text));
  CHECK(dump(to_json(back)) == text);
  CHECK(back.keyframes.size() == t.keyframes.size());
  CHECK(relative_sweep(back) == 1);
}

TEST_CASE("parse errors carry a location") {
  json doc = to_json(make_borromean(1));
  doc["components"][1]["vertices"][2][0] = "3/0";
  try {
    ornament_from_json(doc);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("$.components[1].vertices[2][0]") != std::string::npos);
  }

  json missing = to_json(make_borromean(1));
  missing["components"][0].erase("facets");
  CHECK_THROWS_AS(ornament_from_json(missing), ParseError);

  json numeric = to_json(make_borromean(1));
  numeric["components"][0]["vertices"][0][0] = 0.5;
  CHECK_THROWS_AS(ornament_from_json(numeric), ParseError);

  json track = to_json(straight_line_track(make_borromean(1), make_borromean(1)));
  track["keyframes"][0]["vertices"][0][0][0] = "7";
  CHECK_THROWS_AS(track_from_json(track), ParseError);
  CHECK_THROWS_AS(read_document("/nonexistent/file.json"), ParseError);
}
