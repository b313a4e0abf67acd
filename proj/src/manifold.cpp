#include <algorithm>
#include <map>
#include <numeric>

#include "ornament/model.hpp"

namespace ornament {

namespace {

int inversion_parity(const std::vector<std::size_t>& v) {
  int parity = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) parity = -parity;
  return parity;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

ManifoldReport defect(ManifoldReport::Defect d, std::string msg, std::vector<std::size_t> face,
                      std::vector<std::size_t> facets) {
  return {d, std::move(msg), std::move(face), std::move(facets)};
}

}  // namespace

ManifoldReport validate_manifold(const TriangulatedManifold& t) {
  using D = ManifoldReport::Defect;
  if (t.dim < 1) return defect(D::malformed_facet, "dimension must be at least 1", {}, {});
  if (t.facets.empty()) return defect(D::malformed_facet, "no facets", {}, {});

  const std::size_t width = static_cast<std::size_t>(t.dim) + 1;
  for (std::size_t f = 0; f < t.facets.size(); ++f) {
    const Facet& facet = t.facets[f];
    if (facet.size() != width)
      return defect(D::malformed_facet, "facet has " + std::to_string(facet.size()) + " vertices, expected " +
                                            std::to_string(width), facet, {f});
    Facet sorted = facet;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= t.vertex_count)
      return defect(D::malformed_facet, "vertex index out of range", facet, {f});
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return defect(D::malformed_facet, "repeated vertex in facet", facet, {f});
  }

  // (d-1)-face -> (facet, induced orientation sign)
  std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, int>>> faces;
  for (std::size_t f = 0; f < t.facets.size(); ++f) {
    const Facet& facet = t.facets[f];
    for (std::size_t drop = 0; drop < width; ++drop) {
      std::vector<std::size_t> face;
      face.reserve(width - 1);
      for (std::size_t i = 0; i < width; ++i)
        if (i != drop) face.push_back(facet[i]);
      const int sign = (drop % 2 == 0 ? 1 : -1) * inversion_parity(face);
      std::sort(face.begin(), face.end());
      faces[std::move(face)].emplace_back(f, sign);
    }
  }

  std::vector<std::size_t> parent(t.facets.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [face, cofaces] : faces) {
    std::vector<std::size_t> owners;
    for (const auto& c : cofaces) owners.push_back(c.first);
    if (cofaces.size() != 2)
      return defect(D::face_not_shared_twice,
                    "face lies in " + std::to_string(cofaces.size()) + " facets, expected 2", face, owners);
    if (cofaces[0].second == cofaces[1].second)
      return defect(D::incoherent_orientation, "facets induce the same orientation on a shared face", face,
                    owners);
    parent[find_root(parent, owners[0])] = find_root(parent, owners[1]);
  }

  const std::size_t root0 = find_root(parent, 0);
  for (std::size_t f = 1; f < t.facets.size(); ++f) {
    if (find_root(parent, f) != root0)
      return defect(D::disconnected, "facet adjacency graph is disconnected", {}, {0, f});
  }
  return {};
}

}  // namespace ornament
