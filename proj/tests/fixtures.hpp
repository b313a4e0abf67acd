#pragma once

// Small hand-built complexes and ornaments shared by the unit tests.

#include <string>

#include "ornament/constructions.hpp"
#include "ornament/model.hpp"

namespace fixture {

using namespace ornament;

// Boundary of a triangle: 0 -> 1 -> 2 -> 0.
inline TriangulatedManifold triangle_boundary() { return {1, 3, {{0, 1}, {1, 2}, {2, 0}}}; }

// Two-edge circle; its image under a PL map is a segment.
inline TriangulatedManifold digon() { return {1, 2, {{0, 1}, {1, 0}}}; }

inline PLMap curve(const std::string& name, TriangulatedManifold t, std::vector<Vector> images) {
  return PLMap{name, std::move(t), 2, std::move(images)};
}

// Three segments in the plane crossing at the origin.
inline Ornament concurrent_segments() {
  Ornament o;
  o.components[0] = curve("X1", digon(), {{-1, 0}, {1, 0}});
  o.components[1] = curve("X2", digon(), {{0, -1}, {0, 1}});
  o.components[2] = curve("X3", digon(), {{-1, -1}, {1, 1}});
  return o;
}

// Three small triangles far apart.
inline Ornament separated_triangles() {
  Ornament o;
  o.components[0] = curve("X1", triangle_boundary(), {{0, 0}, {1, 0}, {0, 1}});
  o.components[1] = curve("X2", triangle_boundary(), {{10, 0}, {11, 0}, {10, 1}});
  o.components[2] = curve("X3", triangle_boundary(), {{0, 10}, {1, 10}, {0, 11}});
  return o;
}

// The same triangles lifted to R^3, where 3d != 2m - 1.
inline Ornament triangles_in_space() {
  Ornament o = separated_triangles();
  for (auto& c : o.components) {
    c.ambient_dim = 3;
    for (auto& v : c.images) v.push_back(0);
  }
  return o;
}

inline std::array<Vector, 3> targets(int k) {
  const std::size_t m = 3 * static_cast<std::size_t>(k) - 1;
  std::array<Vector, 3> t;
  for (std::size_t i = 0; i < 3; ++i) {
    t[i] = zeros(m);
    t[i][0] = static_cast<long>(3 * i);
    t[i][m - 1] = static_cast<long>(i * i);
  }
  return t;
}

}  // namespace fixture
