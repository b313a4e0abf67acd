#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ornament/model.hpp"

namespace ornament {

/// A triangulated sphere together with vertex positions in R^{2k}.
struct SphereModel {
  TriangulatedManifold manifold;
  std::vector<Vector> points;
};

/// Boundary of the 2k-dimensional cross-polytope: vertices +e_j (index 2j) and
/// -e_j (index 2j + 1), 2^{2k} facets oriented as the boundary of the ball.
SphereModel cross_polytope_sphere(int k);

/// One round of stellar subdivision: each facet is coned from its barycenter,
/// and the new vertex is pushed radially to a rational point near the unit
/// sphere. Orientation is preserved.
SphereModel stellar_subdivide(const SphereModel& sphere);

/// cross_polytope_sphere(k) subdivided `rounds` times.
SphereModel sphere(int k, int rounds);

/// Exact rational point on the unit sphere S^{n-1} close to (1, ..., 1)/sqrt(n).
Vector projection_center(std::size_t n);

/// Central projection from `center` (a unit vector) onto the hyperplane
/// orthogonal to it, in coordinates obtained by dropping the last axis.
/// Requires <p, center> != 1.
Vector stereographic_projection(const Vector& p, const Vector& center);

/// Three level-`rounds` spheres in the coordinate 2k-planes of R^{3k},
/// projected to R^{3k-1} and rounded to multiples of 1/1024. Jittered with `seed` if the raw projection is not a
/// valid ornament.
Ornament make_borromean(int k, int rounds = 0, std::uint64_t seed = 0);

/// Cross-polytope spheres with component i mapped to targets[i].
Ornament make_trivial(int k, const std::array<Vector, 3>& targets);

/// Random vertex images: component i lives in the box centers[i] +
/// [-spread, spread]^m (centers default to the origin). Rejection-sampled
/// until valid.
Ornament make_random_ornament(int k, int rounds, std::uint64_t seed, const Scalar& spread,
                              const std::optional<std::array<Vector, 3>>& centers = std::nullopt);

}  // namespace ornament
