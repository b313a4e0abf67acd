#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ornament/model.hpp"

namespace ornament {

/// Orientation constant relating det_sign of the preimage system to the
/// generator of H^{2m-1}(S^{2m-1}). Fixed once so that the k = 1 Borromean
/// ornament has mu = +1; every other sign is a consequence.
inline constexpr int kDegreeSign = 1;

/// Sign applied to det_sign in ambient dimension m. R^{2m} is oriented as
/// (R^m x R)^2 with the time axes removed, which puts a factor (-1)^m between
/// it and (R^m)^2; with that choice a triple point of tracks and the
/// corresponding preimage of the ray carry the same sign in every dimension.
constexpr int degree_orientation(std::size_t m) { return m % 2 == 0 ? kDegreeSign : -kDegreeSign; }

/// A target ray R+ * v in R^{2m}, standing in for a point of S^{2m-1}.
struct RayDirection {
  Vector v;
  std::uint64_t seed = 0;
};

/// Nonzero integer direction drawn from `seed`.
RayDirection random_direction(std::size_t length, std::uint64_t seed);

/// (2x - y - z, 2y - x - z); zero exactly on the diagonal x = y = z.
Vector unnormalized_sphere_map(const Vector& x, const Vector& y, const Vector& z);

/// One transverse preimage of the ray: facet triple, strictly interior
/// barycentric coordinates (listed vertex order), ray scalar s > 0, sign.
struct PreimageSolution {
  std::array<std::size_t, 3> facets{};
  std::array<Vector, 3> barycentric;
  Scalar s;
  int sign = 0;
};

struct DegreeResult {
  long mu = 0;
  std::vector<PreimageSolution> preimages;  // ordered by facet triple
  RayDirection direction;
};

/// Checks that the three components share one dimension d and that
/// 3d = 2m - 1. Throws DimensionError otherwise.
void require_degree_dimensions(const Ornament& o);

/// Signed count of the transverse preimages of the ray through `v`.
/// Throws NonGenericDirection when `v` is not a regular value and
/// DimensionError on incompatible dimensions.
///
/// Per facet triple the unknowns are the free barycentric parameters of the
/// three facets followed by s; the system matrix has columns
/// [2E1; -E1], [-E2; 2E2], [-E3; -E3], [-v_a; -v_b], where Ei holds the edge
/// vectors of facet i (vertex_j - last vertex) in listed order.
DegreeResult mu_via_degree(const Ornament& o, const RayDirection& v, Execution exec = Execution::parallel);

/// Retries mu_via_degree with directions derived from `seed` until one is
/// regular. Throws NonGenericDirection after `max_attempts` failures.
DegreeResult mu_via_degree_seeded(const Ornament& o, std::uint64_t seed, Execution exec = Execution::parallel,
                                  int max_attempts = 64);

}  // namespace ornament
