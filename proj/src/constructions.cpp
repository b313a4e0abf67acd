#include "ornament/constructions.hpp"

#include <stdexcept>
#include <string>

#include "ornament/perturb.hpp"

namespace ornament {

namespace {

void require_k(int k) {
  if (k < 1) throw ContractViolation("k must be at least 1");
}

Ornament assemble(const std::array<SphereModel, 3>& domains, std::size_t m,
                  const std::array<std::vector<Vector>, 3>& images) {
  Ornament o;
  for (std::size_t i = 0; i < 3; ++i) {
    o.components[i] = PLMap{"X" + std::to_string(i + 1), domains[i].manifold, m, images[i]};
  }
  o.check_shapes();
  return o;
}

// Nearest multiple of 1/grid (ties rounded up).
Scalar snap(const Scalar& x, long grid) {
  mpz_class scaled = x.get_num() * grid * 2 + x.get_den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), mpz_class(2 * x.get_den()).get_mpz_t());
  Scalar r{q, mpz_class(grid)};
  r.canonicalize();
  return r;
}

}  // namespace

SphereModel cross_polytope_sphere(int k) {
  require_k(k);
  const std::size_t n = 2 * static_cast<std::size_t>(k);
  SphereModel s;
  s.manifold.dim = static_cast<int>(n) - 1;
  s.manifold.vertex_count = 2 * n;
  for (std::size_t j = 0; j < n; ++j) {
    Vector plus = zeros(n), minus = zeros(n);
    plus[j] = 1;
    minus[j] = -1;
    s.points.push_back(std::move(plus));
    s.points.push_back(std::move(minus));
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Facet f;
    int parity = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const bool negative = (mask >> j) & 1U;
      f.push_back(2 * j + (negative ? 1 : 0));
      if (negative) parity = -parity;
    }
    // det(v_1, ..., v_n) = product of signs; make every cone over the origin
    // positive so the facets are oriented as the boundary of the ball.
    if (parity < 0) std::swap(f[0], f[1]);
    s.manifold.facets.push_back(std::move(f));
  }
  return s;
}

SphereModel stellar_subdivide(const SphereModel& in) {
  SphereModel out;
  out.manifold.dim = in.manifold.dim;
  out.points = in.points;
  for (const Facet& f : in.manifold.facets) {
    Vector center = zeros(in.points.front().size());
    for (auto v : f) center = add(center, in.points[v]);
    center = scale(ratio(1, static_cast<long>(f.size())), center);
    const Scalar inverse_norm = approx_sqrt(1 / dot(center, center), 20);
    const std::size_t apex = out.points.size();
    out.points.push_back(scale(inverse_norm, center));
    for (std::size_t i = 0; i < f.size(); ++i) {
      Facet g = f;
      g[i] = apex;
      out.manifold.facets.push_back(std::move(g));
    }
  }
  out.manifold.vertex_count = out.points.size();
  return out;
}

SphereModel sphere(int k, int rounds) {
  if (rounds < 0) throw ContractViolation("subdivision level must be non-negative");
  SphereModel s = cross_polytope_sphere(k);
  for (int r = 0; r < rounds; ++r) s = stellar_subdivide(s);
  return s;
}

Vector projection_center(std::size_t n) {
  if (n < 2) throw ContractViolation("projection_center: need n >= 2");
  // Inverse stereographic projection from e_n of u = t'/(1 - t_n), with t the
  // target direction: u_i = 1/(sqrt(n) - 1), rounded down to a multiple of 1/16.
  const Scalar root = approx_sqrt(Scalar(static_cast<long>(n)), 24);
  const Scalar u_exact = 1 / (root - 1);
  mpz_class scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), mpz_class(u_exact.get_num() * 16).get_mpz_t(), u_exact.get_den_mpz_t());
  Scalar u(scaled, mpz_class(16));
  u.canonicalize();

  const Scalar norm2 = Scalar(static_cast<long>(n - 1)) * u * u;
  Vector z(n);
  for (std::size_t i = 0; i + 1 < n; ++i) z[i] = 2 * u / (norm2 + 1);
  z[n - 1] = (norm2 - 1) / (norm2 + 1);
  return z;
}

Vector stereographic_projection(const Vector& p, const Vector& center) {
  const Scalar denom = 1 - dot(p, center);
  if (sgn(denom) == 0) throw ContractViolation("stereographic_projection: point on the projection ray");
  Vector q = add(center, scale(1 / denom, sub(p, center)));
  q.pop_back();
  return q;
}

Ornament make_borromean(int k, int rounds, std::uint64_t seed) {
  require_k(k);
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t ambient = 3 * kk;
  const SphereModel s = sphere(k, rounds);
  const Vector z = projection_center(ambient);

  // Coordinate 2k-planes R^k x R^k x 0, R^k x 0 x R^k and 0 x R^k x R^k.
  const std::array<std::array<std::size_t, 2>, 3> blocks{{{0, 1}, {0, 2}, {1, 2}}};
  std::array<std::vector<Vector>, 3> images;
  for (std::size_t c = 0; c < 3; ++c) {
    for (const Vector& p : s.points) {
      Vector lifted = zeros(ambient);
      for (std::size_t j = 0; j < 2 * kk; ++j) lifted[blocks[c][j / kk] * kk + j % kk] = p[j];
      // Dyadic coordinates keep the exact kernels cheap; the shift is below
      // 2^-11 per coordinate and the result is validated below.
      Vector q = stereographic_projection(lifted, z);
      for (auto& x : q) x = snap(x, 1024);
      images[c].push_back(std::move(q));
    }
  }
  Ornament o = assemble({s, s, s}, ambient - 1, images);
  if (validate_ornament(o).valid()) return o;

  Scalar eps = ratio(1, 64);
  for (int attempt = 0; attempt < 32; ++attempt, eps /= 2) {
    Ornament jittered = jitter_images(o, eps, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (validate_ornament(jittered).valid()) return jittered;
  }
  throw std::runtime_error("make_borromean: could not produce a valid ornament; raise the subdivision level");
}

Ornament make_trivial(int k, const std::array<Vector, 3>& targets) {
  require_k(k);
  const std::size_t m = 3 * static_cast<std::size_t>(k) - 1;
  for (const auto& t : targets)
    if (t.size() != m) throw DimensionError("make_trivial: targets must lie in R^{3k-1}");
  if (targets[0] == targets[1] || targets[1] == targets[2] || targets[0] == targets[2])
    throw ContractViolation("make_trivial: targets must be pairwise distinct");
  const SphereModel s = cross_polytope_sphere(k);
  std::array<std::vector<Vector>, 3> images;
  for (std::size_t i = 0; i < 3; ++i) images[i].assign(s.points.size(), targets[i]);
  return assemble({s, s, s}, m, images);
}

Ornament make_random_ornament(int k, int rounds, std::uint64_t seed, const Scalar& spread,
                              const std::optional<std::array<Vector, 3>>& centers) {
  require_k(k);
  if (sgn(spread) <= 0) throw ContractViolation("make_random_ornament: spread must be positive");
  const std::size_t m = 3 * static_cast<std::size_t>(k) - 1;
  if (centers)
    for (const auto& c : *centers)
      if (c.size() != m) throw DimensionError("make_random_ornament: centers must lie in R^{3k-1}");
  const SphereModel s = sphere(k, rounds);
  constexpr long kGrid = 512;
  for (std::uint64_t attempt = 0;; ++attempt) {
    SeededRng rng(derive_seed(seed, attempt));
    std::array<std::vector<Vector>, 3> images;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t v = 0; v < s.points.size(); ++v) {
        Vector p(m);
        for (std::size_t c = 0; c < m; ++c) {
          p[c] = spread * ratio(static_cast<long>(rng.uniform(-kGrid, kGrid)), kGrid);
          if (centers) p[c] += (*centers)[i][c];
        }
        images[i].push_back(std::move(p));
      }
    }
    Ornament o = assemble({s, s, s}, m, images);
    if (validate_ornament(o).valid()) return o;
  }
}

}  // namespace ornament
