#include "ornament/degree.hpp"

#include <optional>
#include <string>

#include "ornament/feasibility.hpp"

namespace ornament {

RayDirection random_direction(std::size_t length, std::uint64_t seed) {
  SeededRng rng(seed);
  Vector v(length);
  do {
    for (auto& x : v) x = Scalar(static_cast<long>(rng.uniform(-(1 << 20), 1 << 20)));
  } while (is_zero(v));
  return {std::move(v), seed};
}

Vector unnormalized_sphere_map(const Vector& x, const Vector& y, const Vector& z) {
  if (x.size() != y.size() || y.size() != z.size())
    throw DimensionError("unnormalized_sphere_map: length mismatch");
  const std::size_t m = x.size();
  Vector out(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = 2 * x[i] - y[i] - z[i];
    out[m + i] = 2 * y[i] - x[i] - z[i];
  }
  return out;
}

void require_degree_dimensions(const Ornament& o) {
  o.check_shapes();
  const int d = o.components[0].domain.dim;
  for (const auto& c : o.components)
    if (c.domain.dim != d) throw DimensionError("components have different dimensions");
  const std::size_t m = o.ambient_dim();
  if (3 * static_cast<std::size_t>(d) != 2 * m - 1)
    throw DimensionError("need 3d = 2m - 1, got d = " + std::to_string(d) + ", m = " + std::to_string(m));
}

namespace {

enum class TripleOutcome { miss, hit, degenerate };

struct TripleResult {
  TripleOutcome outcome = TripleOutcome::miss;
  PreimageSolution solution;
};

// Rows 0..m-1 hold the first half (2x - y - z), rows m..2m-1 the second.
constexpr std::array<std::array<int, 3>, 2> kBlockWeights{{{2, -1, -1}, {-1, 2, -1}}};

TripleResult solve_triple(const std::array<const AffineCell*, 3>& cells, const Vector& v) {
  const std::size_t m = cells[0]->base.size();
  const std::size_t d = cells[0]->edges.cols();
  const std::size_t n = 3 * d + 1;  // == 2m

  Matrix a(2 * m, n);
  Vector rhs(2 * m);
  for (std::size_t half = 0; half < 2; ++half) {
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t row = half * m + r;
      Scalar c = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        const int w = kBlockWeights[half][i];
        for (std::size_t j = 0; j < d; ++j) a(row, i * d + j) = w * cells[i]->edges(r, j);
        c += w * cells[i]->base[r];
      }
      a(row, n - 1) = -v[row];
      rhs[row] = -c;
    }
  }

  TripleResult out;
  SolveResult sol = solve_with_sign(a, rhs);
  if (sol.det_sign == 0) {
    if (!sol.consistent) return out;
    // Singular: the ray is regular here only if it misses the closed cell
    // product entirely.
    LinearSystem sys;
    sys.variables = n;
    for (std::size_t row = 0; row < 2 * m; ++row) sys.add_equality(Vector(a.row(row).begin(), a.row(row).end()), rhs[row]);
    for (std::size_t i = 0; i < 3; ++i) {
      Vector sum = zeros(n);
      for (std::size_t j = 0; j < d; ++j) {
        sys.add_nonnegative(i * d + j);
        sum[i * d + j] = 1;
      }
      sys.add_upper(std::move(sum), 1);
    }
    sys.add_nonnegative(n - 1);
    if (find_feasible_point(sys)) out.outcome = TripleOutcome::degenerate;
    return out;
  }

  const Scalar& s = sol.x[n - 1];
  if (sgn(s) < 0) return out;
  bool boundary = sgn(s) == 0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.solution.barycentric[i] = complete_barycentric(std::span<const Scalar>(sol.x.data() + i * d, d));
    switch (barycentric_position(out.solution.barycentric[i])) {
      case Position::outside:
        return {};
      case Position::boundary:
        boundary = true;
        break;
      case Position::interior:
        break;
    }
  }
  if (boundary) {
    out.outcome = TripleOutcome::degenerate;
    return out;
  }
  out.outcome = TripleOutcome::hit;
  out.solution.s = s;
  out.solution.sign = degree_orientation(m) * sol.det_sign;
  return out;
}

struct RowResult {
  std::vector<PreimageSolution> hits;
  std::optional<std::array<std::size_t, 3>> degenerate;
};

}  // namespace

DegreeResult mu_via_degree(const Ornament& o, const RayDirection& dir, Execution exec) {
  require_degree_dimensions(o);
  const std::size_t m = o.ambient_dim();
  if (dir.v.size() != 2 * m) throw DimensionError("ray direction must have length 2m");
  if (is_zero(dir.v)) throw ContractViolation("ray direction must be nonzero");

  std::array<std::vector<AffineCell>, 3> cells;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t f = 0; f < o.components[i].domain.facets.size(); ++f)
      cells[i].push_back(affine_cell(o.components[i].facet_images(f)));

  const std::size_t n0 = cells[0].size();
  std::vector<RowResult> rows(n0);
  auto scan = [&](std::size_t i) {
    RowResult& row = rows[i];
    for (std::size_t j = 0; j < cells[1].size(); ++j) {
      for (std::size_t l = 0; l < cells[2].size(); ++l) {
        TripleResult r = solve_triple({&cells[0][i], &cells[1][j], &cells[2][l]}, dir.v);
        if (r.outcome == TripleOutcome::degenerate) {
          row.degenerate = {i, j, l};
          return;
        }
        if (r.outcome == TripleOutcome::hit) {
          r.solution.facets = {i, j, l};
          row.hits.push_back(std::move(r.solution));
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

  DegreeResult result;
  result.direction = dir;
  for (auto& row : rows) {
    if (row.degenerate) {
      const auto& t = *row.degenerate;
      throw NonGenericDirection("direction is not a regular value at facet triple (" + std::to_string(t[0]) +
                                ", " + std::to_string(t[1]) + ", " + std::to_string(t[2]) + ")");
    }
    for (auto& h : row.hits) {
      result.mu += h.sign;
      result.preimages.push_back(std::move(h));
    }
  }
  return result;
}

DegreeResult mu_via_degree_seeded(const Ornament& o, std::uint64_t seed, Execution exec, int max_attempts) {
  require_degree_dimensions(o);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    try {
      return mu_via_degree(o, random_direction(2 * o.ambient_dim(), derive_seed(seed, attempt)), exec);
    } catch (const NonGenericDirection&) {
    }
  }
  throw NonGenericDirection("no regular direction found after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace ornament
