#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ornament/exact.hpp"

namespace ornament {

/// Loop scheduling for the facet-triple kernels. `serial` is the reference
/// implementation kept for testing and benchmarking the OpenMP path.
enum class Execution { parallel, serial };

/// Ordered vertex tuple of a top simplex; the order encodes orientation.
using Facet = std::vector<std::size_t>;

/// Closed oriented pseudomanifold of dimension `dim`, given combinatorially.
struct TriangulatedManifold {
  int dim = 0;
  std::size_t vertex_count = 0;
  std::vector<Facet> facets;

  bool operator==(const TriangulatedManifold&) const = default;
};

struct ManifoldReport {
  enum class Defect { none, malformed_facet, face_not_shared_twice, incoherent_orientation, disconnected };

  Defect defect = Defect::none;
  std::string message;
  /// Offending (d-1)-face (sorted vertex indices) or facet, when applicable.
  std::vector<std::size_t> face;
  /// Facets involved: those containing the face, or one facet per component
  /// when disconnected.
  std::vector<std::size_t> facets;

  bool valid() const noexcept { return defect == Defect::none; }
};

ManifoldReport validate_manifold(const TriangulatedManifold& t);

/// A PL map: linear on each facet, determined by its vertex images.
struct PLMap {
  std::string name;
  TriangulatedManifold domain;
  std::size_t ambient_dim = 0;
  std::vector<Vector> images;

  /// Image of the point with full barycentric coordinates `bary` (listed
  /// vertex order) in facet `facet`.
  Vector image_of(std::size_t facet, const Vector& bary) const;
  /// Vertex images of one facet, in listed order.
  std::vector<Vector> facet_images(std::size_t facet) const;
};

/// Three PL maps into the same R^m. Construction checks shapes only; the
/// no-triple-point condition is decided by validate_ornament.
struct Ornament {
  std::array<PLMap, 3> components;

  std::size_t ambient_dim() const { return components[0].ambient_dim; }
  /// Throws DimensionError when ambient dims differ or image lists do not
  /// match the domains.
  void check_shapes() const;
};

/// A common image point f1(x) = f2(y) = f3(z) on closed facets.
struct TripleWitness {
  std::array<std::size_t, 3> facets{};
  std::array<Vector, 3> barycentric;
  Vector point;
};

struct OrnamentReport {
  std::optional<TripleWitness> witness;
  bool valid() const noexcept { return !witness.has_value(); }
};

/// Decides exactly whether the three images have a common point, testing
/// every closed-facet triple. Returns the lexicographically first offending
/// triple. Every component must pass validate_manifold.
OrnamentReport validate_ornament(const Ornament& o, Execution exec = Execution::parallel);

/// Swaps the first two vertices of every facet of component `which` (0, 1 or
/// 2). Images are untouched.
Ornament reverse_component_orientation(const Ornament& o, std::size_t which);

/// Axis-aligned bounding box, used to skip facet combinations that cannot meet.
struct Box {
  Vector lo;
  Vector hi;
};
Box bounding_box(const std::vector<Vector>& points);
bool boxes_meet(const Box& a, const Box& b);
bool boxes_meet(const Box& a, const Box& b, const Box& c);

/// Affine parameterization of a simplex image: point = base + edges * params,
/// where base is the last listed vertex and column j of edges is
/// vertex_j - base.
struct AffineCell {
  Vector base;
  Matrix edges;
};
AffineCell affine_cell(const std::vector<Vector>& vertices);

}  // namespace ornament
