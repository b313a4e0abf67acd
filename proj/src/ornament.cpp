#include <algorithm>
#include <atomic>
#include <limits>

#include "ornament/feasibility.hpp"
#include "ornament/model.hpp"

namespace ornament {

Vector PLMap::image_of(std::size_t facet, const Vector& bary) const {
  const Facet& f = domain.facets.at(facet);
  if (bary.size() != f.size()) throw DimensionError("PLMap::image_of: barycentric length mismatch");
  Vector p = zeros(ambient_dim);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vector& img = images[f[i]];
    for (std::size_t c = 0; c < ambient_dim; ++c) p[c] += bary[i] * img[c];
  }
  return p;
}

std::vector<Vector> PLMap::facet_images(std::size_t facet) const {
  std::vector<Vector> out;
  for (auto v : domain.facets.at(facet)) out.push_back(images.at(v));
  return out;
}

void Ornament::check_shapes() const {
  for (std::size_t i = 0; i < 3; ++i) {
    const PLMap& c = components[i];
    if (c.ambient_dim != components[0].ambient_dim)
      throw DimensionError("ornament components have different ambient dimensions");
    if (c.images.size() != c.domain.vertex_count)
      throw DimensionError("component " + std::to_string(i + 1) + ": image count " +
                           std::to_string(c.images.size()) + " != vertex count " +
                           std::to_string(c.domain.vertex_count));
    for (const auto& img : c.images)
      if (img.size() != c.ambient_dim)
        throw DimensionError("component " + std::to_string(i + 1) + ": vertex image of wrong length");
  }
}

Box bounding_box(const std::vector<Vector>& points) {
  if (points.empty()) throw ContractViolation("bounding_box: no points");
  Box b{points.front(), points.front()};
  for (const auto& p : points) {
    if (p.size() != b.lo.size()) throw DimensionError("bounding_box: mixed lengths");
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (p[c] < b.lo[c]) b.lo[c] = p[c];
      if (p[c] > b.hi[c]) b.hi[c] = p[c];
    }
  }
  return b;
}

bool boxes_meet(const Box& a, const Box& b) {
  for (std::size_t c = 0; c < a.lo.size(); ++c)
    if (a.hi[c] < b.lo[c] || b.hi[c] < a.lo[c]) return false;
  return true;
}

bool boxes_meet(const Box& a, const Box& b, const Box& c) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const Scalar& lo = std::max({a.lo[i], b.lo[i], c.lo[i]});
    const Scalar& hi = std::min({a.hi[i], b.hi[i], c.hi[i]});
    if (hi < lo) return false;
  }
  return true;
}

AffineCell affine_cell(const std::vector<Vector>& vertices) {
  if (vertices.empty()) throw ContractViolation("affine_cell: no vertices");
  const std::size_t dim = vertices.front().size();
  const std::size_t params = vertices.size() - 1;
  AffineCell cell{vertices.back(), Matrix(dim, params)};
  for (std::size_t j = 0; j < params; ++j)
    for (std::size_t r = 0; r < dim; ++r) cell.edges(r, j) = vertices[j][r] - cell.base[r];
  return cell;
}

namespace {

struct FacetData {
  AffineCell cell;
  Box box;
};

std::vector<FacetData> facet_data(const PLMap& map) {
  std::vector<FacetData> out;
  out.reserve(map.domain.facets.size());
  for (std::size_t f = 0; f < map.domain.facets.size(); ++f) {
    auto verts = map.facet_images(f);
    out.push_back({affine_cell(verts), bounding_box(verts)});
  }
  return out;
}

// Closed-simplex constraints on a block of parameters: each >= 0, sum <= 1.
void add_simplex_constraints(LinearSystem& sys, std::size_t offset, std::size_t count) {
  Vector sum = zeros(sys.variables);
  for (std::size_t j = 0; j < count; ++j) {
    sys.add_nonnegative(offset + j);
    sum[offset + j] = 1;
  }
  sys.add_upper(std::move(sum), 1);
}

std::optional<TripleWitness> check_triple(const std::array<const FacetData*, 3>& f,
                                          const std::array<std::size_t, 3>& index) {
  if (!boxes_meet(f[0]->box, f[1]->box, f[2]->box)) return std::nullopt;
  const std::size_t m = f[0]->cell.base.size();
  const std::array<std::size_t, 3> n{f[0]->cell.edges.cols(), f[1]->cell.edges.cols(), f[2]->cell.edges.cols()};
  const std::array<std::size_t, 3> offset{0, n[0], n[0] + n[1]};

  LinearSystem sys;
  sys.variables = n[0] + n[1] + n[2];
  for (std::size_t pair = 0; pair < 2; ++pair) {
    const FacetData& a = *f[pair];
    const FacetData& b = *f[pair + 1];
    for (std::size_t r = 0; r < m; ++r) {
      Vector coeffs = zeros(sys.variables);
      for (std::size_t j = 0; j < n[pair]; ++j) coeffs[offset[pair] + j] = a.cell.edges(r, j);
      for (std::size_t j = 0; j < n[pair + 1]; ++j) coeffs[offset[pair + 1] + j] = -b.cell.edges(r, j);
      sys.add_equality(std::move(coeffs), b.cell.base[r] - a.cell.base[r]);
    }
  }
  for (std::size_t i = 0; i < 3; ++i) add_simplex_constraints(sys, offset[i], n[i]);

  auto x = find_feasible_point(sys);
  if (!x) return std::nullopt;

  TripleWitness w;
  w.facets = index;
  for (std::size_t i = 0; i < 3; ++i) {
    std::span<const Scalar> params(x->data() + offset[i], n[i]);
    w.barycentric[i] = complete_barycentric(params);
  }
  w.point = add(f[0]->cell.base, f[0]->cell.edges * Vector(x->begin(), x->begin() + n[0]));
  return w;
}

}  // namespace

OrnamentReport validate_ornament(const Ornament& o, Execution exec) {
  o.check_shapes();
  for (std::size_t i = 0; i < 3; ++i) {
    if (!validate_manifold(o.components[i].domain).valid())
      throw ContractViolation("validate_ornament: component " + std::to_string(i + 1) +
                              " is not a valid closed oriented pseudomanifold");
  }
  const auto d0 = facet_data(o.components[0]);
  const auto d1 = facet_data(o.components[1]);
  const auto d2 = facet_data(o.components[2]);

  const std::size_t n0 = d0.size();
  std::vector<std::optional<TripleWitness>> found(n0);
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};

  auto scan = [&](std::size_t i) {
    if (i > first_hit.load(std::memory_order_relaxed)) return;
    for (std::size_t j = 0; j < d1.size(); ++j) {
      if (!boxes_meet(d0[i].box, d1[j].box)) continue;
      for (std::size_t l = 0; l < d2.size(); ++l) {
        auto w = check_triple({&d0[i], &d1[j], &d2[l]}, {i, j, l});
        if (w) {
          found[i] = std::move(w);
          std::size_t cur = first_hit.load();
          while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    }
  };

  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n0; ++i) scan(i);
  } else {
    const long count = static_cast<long>(n0);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) scan(static_cast<std::size_t>(i));
  }

  for (auto& w : found)
    if (w) return {std::move(w)};
  return {};
}

Ornament reverse_component_orientation(const Ornament& o, std::size_t which) {
  if (which > 2) throw ContractViolation("reverse_component_orientation: component index must be 0, 1 or 2");
  Ornament out = o;
  for (auto& facet : out.components[which].domain.facets) {
    if (facet.size() < 2) throw ContractViolation("reverse_component_orientation: facet too small");
    std::swap(facet[0], facet[1]);
  }
  return out;
}

}  // namespace ornament
