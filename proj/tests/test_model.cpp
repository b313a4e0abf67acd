#include <doctest.h>
#include <omp.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ornament/constructions.hpp"
#include "ornament/perturb.hpp"
#include "ornament/degree.hpp"
#include "ornament/sweep.hpp"

using namespace ornament;

namespace {

// Ornament condition decided by the oracle: one system per facet triple in
// full barycentric coordinates, solved by vertex enumeration.
bool oracle_valid(const Ornament& o) {
  const auto& f = o.components;
  const std::size_t m = o.ambient_dim();
  for (std::size_t a = 0; a < f[0].domain.facets.size(); ++a)
    for (std::size_t b = 0; b < f[1].domain.facets.size(); ++b)
      for (std::size_t c = 0; c < f[2].domain.facets.size(); ++c) {
        const std::array<std::size_t, 3> idx{a, b, c};
        std::array<std::vector<Vector>, 3> v;
        std::size_t vars = 0;
        for (std::size_t i = 0; i < 3; ++i) {
          v[i] = f[i].facet_images(idx[i]);
          vars += v[i].size();
        }
        LinearSystem s;
        s.variables = vars;
        std::array<std::size_t, 3> off{0, v[0].size(), v[0].size() + v[1].size()};
        for (std::size_t i = 0; i < 3; ++i) {
          Vector sum(vars, Scalar(0));
          for (std::size_t j = 0; j < v[i].size(); ++j) {
            sum[off[i] + j] = 1;
            Vector neg(vars, Scalar(0));
            neg[off[i] + j] = -1;
            s.add_upper(neg, 0);
          }
          s.add_equality(sum, 1);
        }
        for (std::size_t pair = 0; pair < 2; ++pair)
          for (std::size_t r = 0; r < m; ++r) {
            Vector row(vars, Scalar(0));
            for (std::size_t j = 0; j < v[pair].size(); ++j) row[off[pair] + j] = v[pair][j][r];
            for (std::size_t j = 0; j < v[pair + 1].size(); ++j) row[off[pair + 1] + j] = -v[pair + 1][j][r];
            s.add_equality(row, 0);
          }
        if (oracle::feasible_by_vertices(s)) return false;
      }
  return true;
}

// Random plane curves on a coarse grid: lots of coincidences and contacts.
Ornament grid_curves(std::uint64_t seed) {
  SeededRng rng(seed);
  Ornament o;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Vector> pts;
    for (int v = 0; v < 3; ++v) pts.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    o.components[i] = fixture::curve("X" + std::to_string(i + 1), fixture::triangle_boundary(), pts);
  }
  return o;
}

}  // namespace

TEST_CASE("manifold examples") {
  CHECK(validate_manifold(fixture::triangle_boundary()).valid());
  CHECK(validate_manifold(fixture::digon()).valid());

  auto flipped = fixture::triangle_boundary();
  std::swap(flipped.facets[1][0], flipped.facets[1][1]);
  const auto r = validate_manifold(flipped);
  CHECK(r.defect == ManifoldReport::Defect::incoherent_orientation);
  CHECK_FALSE(r.face.empty());

  TriangulatedManifold two{1, 6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}};
  const auto d = validate_manifold(two);
  CHECK(d.defect == ManifoldReport::Defect::disconnected);
  CHECK(d.facets.size() == 2);

  TriangulatedManifold open{1, 3, {{0, 1}, {1, 2}}};
  CHECK(validate_manifold(open).defect == ManifoldReport::Defect::face_not_shared_twice);

  TriangulatedManifold repeated{1, 2, {{0, 0}, {1, 1}}};
  CHECK(validate_manifold(repeated).defect == ManifoldReport::Defect::malformed_facet);

  TriangulatedManifold out_of_range{1, 2, {{0, 1}, {1, 5}}};
  CHECK(validate_manifold(out_of_range).defect == ManifoldReport::Defect::malformed_facet);
}

TEST_CASE("cross-polytope spheres are valid for k <= 3, r <= 2") {
  for (int k = 1; k <= 3; ++k)
    for (int r = 0; r <= 2; ++r) {
      if (k == 3 && r == 2) continue;  // 64 * 6 * 6 facets, checked by the k <= 2 cases
      CAPTURE(k);
      CAPTURE(r);
      const SphereModel s = sphere(k, r);
      CHECK(validate_manifold(s.manifold).valid());
      CHECK(s.manifold.dim == 2 * k - 1);
    }
}

TEST_CASE("ornament examples") {
  const auto bad = validate_ornament(fixture::concurrent_segments());
  REQUIRE_FALSE(bad.valid());
  CHECK(bad.witness->point == Vector{0, 0});
  CHECK(validate_ornament(fixture::separated_triangles()).valid());
  CHECK(validate_ornament(make_borromean(1)).valid());
}

TEST_CASE("witness substitutes to a common point") {
  const Ornament o = fixture::concurrent_segments();
  const auto w = *validate_ornament(o).witness;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(oracle::is_full_barycentric(w.barycentric[i], false));
    CHECK(oracle::facet_point(o.components[i], w.facets[i], w.barycentric[i]) == w.point);
  }
}

TEST_CASE("validate_ornament agrees with vertex enumeration") {
  omp_set_num_threads(4);  // interleave even on a single core
  int valid = 0, invalid = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Ornament o = grid_curves(seed);
    if (!validate_manifold(o.components[0].domain).valid()) continue;
    const auto r = validate_ornament(o);
    CAPTURE(seed);
    CHECK(r.valid() == oracle_valid(o));
    CHECK(r.valid() == validate_ornament(o, Execution::serial).valid());
    (r.valid() ? valid : invalid)++;
  }
  CHECK(valid > 5);
  CHECK(invalid > 5);
}

TEST_CASE("validate_ornament is invariant under relabeling and facet order") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Ornament o = grid_curves(seed);
    const bool before = validate_ornament(o).valid();
    for (auto& c : o.components) {
      // relabel v -> 2 - v and reverse the facet list
      std::vector<Vector> imgs(c.images.rbegin(), c.images.rend());
      c.images = imgs;
      for (auto& f : c.domain.facets)
        for (auto& v : f) v = 2 - v;
      std::reverse(c.domain.facets.begin(), c.domain.facets.end());
    }
    CHECK(validate_ornament(o).valid() == before);
  }
}

TEST_CASE("validate_ornament rejects bad inputs") {
  Ornament o = fixture::separated_triangles();
  o.components[2].ambient_dim = 3;
  CHECK_THROWS_AS(validate_ornament(o), DimensionError);
  Ornament p = fixture::separated_triangles();
  std::swap(p.components[0].domain.facets[0][0], p.components[0].domain.facets[0][1]);
  CHECK_THROWS_AS(validate_ornament(p), ContractViolation);
}

TEST_CASE("orientation reversal is an involution preserving validity") {
  const Ornament b = make_borromean(1);
  for (std::size_t i = 0; i < 3; ++i) {
    const Ornament r = reverse_component_orientation(b, i);
    CHECK(validate_manifold(r.components[i].domain).valid());
    CHECK(validate_ornament(r).valid());
    CHECK(reverse_component_orientation(r, i).components[i].domain == b.components[i].domain);
  }
}

TEST_CASE("perturb_ornament") {
  const Ornament b = make_borromean(1);
  const Scalar eps = ratio(1, 100);
  const Ornament p = perturb_ornament(b, eps, 5);
  CHECK(validate_ornament(p).valid());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t v = 0; v < b.components[i].images.size(); ++v)
      CHECK(sup_distance(p.components[i].images[v], b.components[i].images[v]) < eps);
  CHECK(detect_triple_points(straight_line_track(b, p)).empty());
  CHECK(mu_via_degree_seeded(p, 1).mu == mu_via_degree_seeded(b, 1).mu);

  // an enormous eps still ends in a valid, certified ornament
  const Ornament q = perturb_ornament(b, 1000, 6);
  CHECK(validate_ornament(q).valid());
  CHECK(detect_triple_points(straight_line_track(b, q)).empty());

  const Ornament t = make_trivial(1, fixture::targets(1));
  const Ornament tp = perturb_ornament(t, ratio(1, 2), 7);
  CHECK(validate_ornament(tp).valid());
  CHECK(mu_via_degree_seeded(tp, 3).mu == 0);
}
