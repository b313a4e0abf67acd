#include <doctest.h>
#include <omp.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ornament/constructions.hpp"
#include "ornament/degree.hpp"
#include "ornament/perturb.hpp"
#include "ornament/sweep.hpp"

using namespace ornament;

namespace {

SignedTriplePoint dummy(int sign, long t) {
  SignedTriplePoint p;
  p.sign = sign;
  p.t = ratio(t, 10);
  return p;
}

// Point of the prism facet x I in the model coordinates where the facet's
// listed vertex j < d sits at e_j and the last listed vertex at 0.
Vector model_point(const Facet& f, std::size_t vertex, int level) {
  Vector p = zeros(f.size());
  for (std::size_t j = 0; j + 1 < f.size(); ++j)
    if (f[j] == vertex) p[j] = 1;
  p.back() = level;
  return p;
}

}  // namespace

TEST_CASE("staircase cells tile the prism with coherent orientation") {
  for (const Facet& f : {Facet{4, 1, 7}, Facet{2, 0}, Facet{9, 3, 5, 1}, Facet{1, 3, 5, 9}}) {
    const auto cells = staircase_cells(f, 0, 0);
    const std::size_t d = f.size() - 1;
    REQUIRE(cells.size() == d + 1);
    for (const auto& c : cells) {
      REQUIRE(c.vertices.size() == d + 2);
      Matrix e(d + 1, d + 1);
      const Vector last = model_point(f, c.vertices.back().first, c.vertices.back().second);
      for (std::size_t j = 0; j <= d; ++j) {
        const Vector q = sub(model_point(f, c.vertices[j].first, c.vertices[j].second), last);
        for (std::size_t r = 0; r <= d; ++r) e(r, j) = q[r];
      }
      // unimodular in model coordinates: the d + 1 cells have total volume 1/d!
      CHECK(abs(oracle::det(e)) == 1);
      CHECK(c.orientation == oracle::det_sign(e));
    }
  }
}

TEST_CASE("trivial track at fixed targets has no triple points") {
  for (int k = 1; k <= 2; ++k) {
    const Ornament t = make_trivial(k, fixture::targets(k));
    CHECK(detect_triple_points(straight_line_track(t, t)).empty());
    CHECK(mu_via_sweep(t, 3) == 0);
  }
}

TEST_CASE("Borromean k = 1 sweep") {
  const Ornament b = make_borromean(1);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SweepOutcome out = sweep_to_trivial(b, s);
    CHECK(out.sum == 1);
    CHECK(out.track.start().components[0].images == b.components[0].images);
    CHECK(validate_ornament(out.track.start()).valid());
    CHECK(validate_ornament(out.track.end()).valid());
    for (const auto& p : out.points) CHECK(oracle::triple_point_exact(out.track, p));
  }
}

TEST_CASE("time reversal negates and concatenation adds") {
  const Ornament b = make_borromean(1);
  const Ornament p = perturb_ornament(b, ratio(1, 50), 8);
  const Ornament t = make_trivial(1, fixture::targets(1));
  const HomotopyTrack first = sweep_generic(straight_line_track(b, p), 1).track;
  const HomotopyTrack second = sweep_generic(straight_line_track(p, t), 2).track;
  const long a = relative_sweep(first, 3);
  const long c = relative_sweep(second, 4);
  CHECK(a == 0);
  CHECK(c == 1);
  CHECK(relative_sweep(reverse_track(second), 5) == -c);
  CHECK(relative_sweep(concatenate_tracks(first, second), 6) == a + c);
  CHECK(relative_sweep(concatenate_tracks(second, reverse_track(second)), 7) == 0);
}

TEST_CASE("relative sweep equals the change of mu") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Ornament a = make_random_ornament(1, 0, s, 1);
    const Ornament b = make_random_ornament(1, 0, 1000 + s, 1);
    const SweepOutcome out = sweep_generic(straight_line_track(a, b), s);
    CHECK(out.sum == mu_via_degree_seeded(a, s).mu - mu_via_degree_seeded(b, s).mu);
    for (const auto& p : out.points) CHECK(oracle::triple_point_exact(out.track, p));
    const Pairing pr = pair_opposite_signs(out.points);
    CHECK(static_cast<long>(pr.unpaired.size()) == std::abs(out.sum));
  }
}

TEST_CASE("non-generic tracks are detected and repaired") {
  // All three components sweep through the origin at t = 1/2.
  const Ornament start = make_trivial(1, {Vector{-1, 0}, Vector{0, -1}, Vector{0, 0}});
  const Ornament end = make_trivial(1, {Vector{1, 0}, Vector{0, 1}, Vector{0, 0}});
  const HomotopyTrack track = straight_line_track(start, end);
  CHECK_THROWS_AS(detect_triple_points(track), NonGenericTrack);
  const SweepOutcome out = sweep_generic(track, 9);
  CHECK(out.repairs > 0);
  CHECK(out.sum == 0);
  CHECK(out.track.start().components[0].images == start.components[0].images);
  CHECK(out.track.end().components[1].images == end.components[1].images);
}

TEST_CASE("serial and parallel detection agree") {
  omp_set_num_threads(4);  // interleave even on a single core
  const Ornament b = make_borromean(1);
  const HomotopyTrack track = sweep_to_trivial(b, 2).track;
  const auto par = detect_triple_points(track, Execution::parallel);
  const auto ser = detect_triple_points(track, Execution::serial);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].sign == ser[i].sign);
    CHECK(par[i].point == ser[i].point);
    CHECK(par[i].t == ser[i].t);
  }
}

TEST_CASE("track well-formedness") {
  const Ornament b = make_borromean(1);
  HomotopyTrack t = straight_line_track(b, b);
  t.keyframes[1].t = ratio(1, 2);
  CHECK_THROWS_AS(t.check_well_formed(), ContractViolation);
  CHECK_THROWS_AS(straight_line_track(b, make_trivial(2, fixture::targets(2))), DimensionError);
  CHECK_THROWS_AS(straight_line_homotopy_to_trivial(b, {Vector{0, 0}, Vector{0, 0}, Vector{1, 1}}, 0, 0),
                  ContractViolation);
}

TEST_CASE("pairing examples") {
  CHECK(pair_opposite_signs({}).pairs.empty());
  CHECK(pair_opposite_signs({}).unpaired.empty());

  const auto one = pair_opposite_signs({dummy(1, 1), dummy(-1, 2)});
  CHECK(one.pairs.size() == 1);
  CHECK(one.unpaired.empty());

  const auto two = pair_opposite_signs({dummy(1, 1), dummy(1, 2), dummy(-1, 3)});
  REQUIRE(two.pairs.size() == 1);
  CHECK(two.pairs[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(two.unpaired == std::vector<std::size_t>{1});

  // time order, not input order
  const auto three = pair_opposite_signs({dummy(-1, 5), dummy(1, 9), dummy(1, 1)});
  REQUIRE(three.pairs.size() == 1);
  CHECK(three.pairs[0] == std::pair<std::size_t, std::size_t>{2, 0});
  CHECK(three.unpaired == std::vector<std::size_t>{1});
}
