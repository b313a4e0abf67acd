#include "ornament/sweep.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>

#include "ornament/degree.hpp"
#include "ornament/feasibility.hpp"

namespace ornament {

void HomotopyTrack::check_well_formed() const {
  if (keyframes.size() < 2) throw ContractViolation("track needs at least two keyframes");
  if (keyframes.front().t != 0 || keyframes.back().t != 1)
    throw ContractViolation("track keyframes must start at t = 0 and end at t = 1");
  for (std::size_t k = 1; k < keyframes.size(); ++k)
    if (!(keyframes[k - 1].t < keyframes[k].t)) throw ContractViolation("keyframe times must increase strictly");
  for (const auto& kf : keyframes) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (kf.images[i].size() != domains[i].vertex_count)
        throw DimensionError("keyframe image count does not match component " + std::to_string(i + 1));
      for (const auto& v : kf.images[i])
        if (v.size() != ambient_dim) throw DimensionError("keyframe vertex image of wrong length");
    }
  }
}

Ornament HomotopyTrack::ornament_at(std::size_t keyframe) const {
  Ornament o;
  for (std::size_t i = 0; i < 3; ++i) {
    o.components[i] = PLMap{names[i], domains[i], ambient_dim, keyframes.at(keyframe).images[i]};
  }
  return o;
}

HomotopyTrack straight_line_track(const Ornament& from, const Ornament& to) {
  from.check_shapes();
  to.check_shapes();
  HomotopyTrack track;
  track.ambient_dim = from.ambient_dim();
  if (to.ambient_dim() != track.ambient_dim) throw DimensionError("straight_line_track: ambient dims differ");
  Keyframe a{Scalar(0), {}}, b{Scalar(1), {}};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(from.components[i].domain == to.components[i].domain))
      throw ContractViolation("straight_line_track: endpoint domains differ");
    track.names[i] = from.components[i].name;
    track.domains[i] = from.components[i].domain;
    a.images[i] = from.components[i].images;
    b.images[i] = to.components[i].images;
  }
  track.keyframes = {std::move(a), std::move(b)};
  return track;
}

HomotopyTrack reverse_track(const HomotopyTrack& track) {
  HomotopyTrack out = track;
  std::reverse(out.keyframes.begin(), out.keyframes.end());
  for (auto& kf : out.keyframes) kf.t = 1 - kf.t;
  return out;
}

HomotopyTrack concatenate_tracks(const HomotopyTrack& first, const HomotopyTrack& second) {
  first.check_well_formed();
  second.check_well_formed();
  if (first.domains != second.domains || first.ambient_dim != second.ambient_dim)
    throw ContractViolation("concatenate_tracks: tracks have different domains");
  if (first.keyframes.back().images != second.keyframes.front().images)
    throw ContractViolation("concatenate_tracks: end of first track differs from start of second");
  HomotopyTrack out = first;
  const Scalar half = ratio(1, 2);
  for (auto& kf : out.keyframes) kf.t *= half;
  for (std::size_t k = 1; k < second.keyframes.size(); ++k) {
    Keyframe kf = second.keyframes[k];
    kf.t = half + kf.t * half;
    out.keyframes.push_back(std::move(kf));
  }
  return out;
}

std::vector<PrismCell> staircase_cells(const Facet& facet, std::size_t facet_index, std::size_t slab) {
  const std::size_t n = facet.size();
  Facet sorted = facet;
  std::sort(sorted.begin(), sorted.end());
  auto listed_position = [&](std::size_t v) {
    return static_cast<std::size_t>(std::find(facet.begin(), facet.end(), v) - facet.begin());
  };
  // Model of facet x I in R^(n-1) x R: listed vertex p sits at e_p, the last
  // one at the origin, so the facet parameterization is the identity.
  auto model_point = [&](std::size_t v, int level) {
    Vector p = zeros(n);
    const std::size_t pos = listed_position(v);
    if (pos + 1 < n) p[pos] = 1;
    p[n - 1] = level;
    return p;
  };

  std::vector<PrismCell> cells;
  cells.reserve(n);
  for (std::size_t split = 0; split < n; ++split) {
    PrismCell c;
    c.slab = slab;
    c.facet = facet_index;
    c.cell = split;
    for (std::size_t i = 0; i <= split; ++i) c.vertices.emplace_back(sorted[i], 0);
    for (std::size_t i = split; i < n; ++i) c.vertices.emplace_back(sorted[i], 1);
    std::vector<Vector> model;
    for (const auto& [v, level] : c.vertices) model.push_back(model_point(v, level));
    c.orientation = det_sign(affine_cell(model).edges);
    cells.push_back(std::move(c));
  }
  return cells;
}

namespace {

Vector lifted_image(const HomotopyTrack& track, std::size_t component, std::size_t slab, std::size_t vertex,
                    int level) {
  const Keyframe& kf = track.keyframes[slab + static_cast<std::size_t>(level)];
  Vector p = kf.images[component][vertex];
  p.push_back(kf.t);
  return p;
}

struct CellData {
  PrismCell cell;
  AffineCell affine;
  Box box;
};

std::vector<CellData> slab_cells(const HomotopyTrack& track, std::size_t component, std::size_t slab) {
  std::vector<CellData> out;
  const auto& facets = track.domains[component].facets;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    for (auto& cell : staircase_cells(facets[f], f, slab)) {
      std::vector<Vector> verts;
      for (const auto& [v, level] : cell.vertices) verts.push_back(lifted_image(track, component, slab, v, level));
      out.push_back({std::move(cell), affine_cell(verts), bounding_box(verts)});
    }
  }
  return out;
}

enum class Outcome { miss, hit, degenerate };

struct CellTripleResult {
  Outcome outcome = Outcome::miss;
  std::array<Vector, 3> barycentric;
  int det = 0;
};

CellTripleResult solve_cells(const std::array<const CellData*, 3>& c) {
  const std::size_t rows = c[0]->affine.base.size();  // m + 1
  const std::size_t n = c[0]->affine.edges.cols();    // 2k
  const std::size_t vars = 3 * n;
  Matrix a(2 * rows, vars);
  Vector rhs(2 * rows);
  for (std::size_t pair = 0; pair < 2; ++pair) {
    const AffineCell& lhs = c[pair]->affine;
    const AffineCell& other = c[pair + 1]->affine;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t row = pair * rows + r;
      for (std::size_t j = 0; j < n; ++j) {
        a(row, pair * n + j) = lhs.edges(r, j);
        a(row, (pair + 1) * n + j) = -other.edges(r, j);
      }
      rhs[row] = other.base[r] - lhs.base[r];
    }
  }

  CellTripleResult out;
  SolveResult sol = solve_with_sign(a, rhs);
  if (sol.det_sign == 0) {
    if (!sol.consistent) return out;
    LinearSystem sys;
    sys.variables = vars;
    for (std::size_t row = 0; row < 2 * rows; ++row)
      sys.add_equality(Vector(a.row(row).begin(), a.row(row).end()), rhs[row]);
    for (std::size_t i = 0; i < 3; ++i) {
      Vector sum = zeros(vars);
      for (std::size_t j = 0; j < n; ++j) {
        sys.add_nonnegative(i * n + j);
        sum[i * n + j] = 1;
      }
      sys.add_upper(std::move(sum), 1);
    }
    if (find_feasible_point(sys)) out.outcome = Outcome::degenerate;
    return out;
  }

  bool boundary = false;
  for (std::size_t i = 0; i < 3; ++i) {
    out.barycentric[i] = complete_barycentric(std::span<const Scalar>(sol.x.data() + i * n, n));
    switch (barycentric_position(out.barycentric[i])) {
      case Position::outside:
        return {};
      case Position::boundary:
        boundary = true;
        break;
      case Position::interior:
        break;
    }
  }
  out.outcome = boundary ? Outcome::degenerate : Outcome::hit;
  out.det = sol.det_sign;
  return out;
}

// Closed cells of two components share a point of R^m x I.
bool cells_meet(const CellData& p, const CellData& q) {
  if (!boxes_meet(p.box, q.box)) return false;
  const std::size_t rows = p.affine.base.size();
  const std::size_t n = p.affine.edges.cols();
  LinearSystem sys;
  sys.variables = 2 * n;
  for (std::size_t r = 0; r < rows; ++r) {
    Vector coeffs(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      coeffs[j] = p.affine.edges(r, j);
      coeffs[n + j] = -q.affine.edges(r, j);
    }
    sys.add_equality(std::move(coeffs), q.affine.base[r] - p.affine.base[r]);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    Vector sum = zeros(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      sys.add_nonnegative(i * n + j);
      sum[i * n + j] = 1;
    }
    sys.add_upper(std::move(sum), 1);
  }
  return find_feasible_point(sys).has_value();
}

// meets[a][b] for cells a of component `first`, b of `second`.
std::vector<std::vector<char>> pair_table(const std::vector<CellData>& first, const std::vector<CellData>& second,
                                          Execution exec) {
  std::vector<std::vector<char>> meets(first.size(), std::vector<char>(second.size(), 0));
  auto fill = [&](std::size_t a) {
    for (std::size_t b = 0; b < second.size(); ++b) meets[a][b] = cells_meet(first[a], second[b]) ? 1 : 0;
  };
  if (exec == Execution::serial) {
    for (std::size_t a = 0; a < first.size(); ++a) fill(a);
  } else {
    const long count = static_cast<long>(first.size());
#pragma omp parallel for schedule(dynamic)
    for (long a = 0; a < count; ++a) fill(static_cast<std::size_t>(a));
  }
  return meets;
}

void require_track_dimensions(const HomotopyTrack& track) {
  track.check_well_formed();
  require_degree_dimensions(track.start());
}

}  // namespace

Vector track_image(const HomotopyTrack& track, std::size_t component, const PrismCell& cell, const Vector& bary) {
  if (bary.size() != cell.vertices.size()) throw DimensionError("track_image: barycentric length mismatch");
  Vector p = zeros(track.ambient_dim + 1);
  for (std::size_t j = 0; j < bary.size(); ++j) {
    const auto& [v, level] = cell.vertices[j];
    p = add(p, scale(bary[j], lifted_image(track, component, cell.slab, v, level)));
  }
  return p;
}

std::vector<SignedTriplePoint> detect_triple_points(const HomotopyTrack& track, Execution exec) {
  require_track_dimensions(track);
  std::vector<SignedTriplePoint> points;
  for (std::size_t slab = 0; slab + 1 < track.keyframes.size(); ++slab) {
    const std::array<std::vector<CellData>, 3> cells{slab_cells(track, 0, slab), slab_cells(track, 1, slab),
                                                     slab_cells(track, 2, slab)};
    const std::size_t n0 = cells[0].size();
    std::vector<std::vector<SignedTriplePoint>> found(n0);
    std::vector<char> degenerate(n0, 0);
    // A triple point needs all three pairs of closed cells to meet.
    const auto meets01 = pair_table(cells[0], cells[1], exec);
    const auto meets02 = pair_table(cells[0], cells[2], exec);
    const auto meets12 = pair_table(cells[1], cells[2], exec);

    auto scan = [&](std::size_t i) {
      const CellData& c0 = cells[0][i];
      for (std::size_t j = 0; j < cells[1].size(); ++j) {
        if (!meets01[i][j]) continue;
        const CellData& c1 = cells[1][j];
        for (std::size_t l = 0; l < cells[2].size(); ++l) {
          if (!meets02[i][l] || !meets12[j][l]) continue;
          const CellData& c2 = cells[2][l];
          if (!boxes_meet(c0.box, c1.box, c2.box)) continue;
          CellTripleResult r = solve_cells({&c0, &c1, &c2});
          if (r.outcome == Outcome::degenerate) {
            degenerate[i] = 1;
            return;
          }
          if (r.outcome != Outcome::hit) continue;
          SignedTriplePoint p;
          p.cells = {c0.cell, c1.cell, c2.cell};
          p.sign = kSweepSign * c0.cell.orientation * c1.cell.orientation * c2.cell.orientation * r.det;
          Vector lifted = add(c0.affine.base,
                              c0.affine.edges * Vector(r.barycentric[0].begin(), r.barycentric[0].end() - 1));
          p.t = lifted.back();
          lifted.pop_back();
          p.point = std::move(lifted);
          p.barycentric = std::move(r.barycentric);
          found[i].push_back(std::move(p));
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

    if (std::any_of(degenerate.begin(), degenerate.end(), [](char c) { return c != 0; }))
      throw NonGenericTrack("non-generic cell triple in slab " + std::to_string(slab), slab);
    for (auto& row : found)
      for (auto& p : row) points.push_back(std::move(p));
  }
  return points;
}

namespace {

Scalar image_scale(const HomotopyTrack& track) {
  std::vector<Vector> all;
  for (const auto& kf : track.keyframes)
    for (const auto& comp : kf.images) all.insert(all.end(), comp.begin(), comp.end());
  const Box b = bounding_box(all);
  Scalar diameter = 0;
  for (std::size_t c = 0; c < b.lo.size(); ++c) diameter = std::max(diameter, Scalar(b.hi[c] - b.lo[c]));
  return sgn(diameter) == 0 ? Scalar(1) : diameter;
}

void perturb_keyframe(Keyframe& kf, const Scalar& eps, std::uint64_t seed) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t v = 0; v < kf.images[i].size(); ++v)
      kf.images[i][v] = random_rational_perturbation(kf.images[i][v], eps, derive_seed(seed, (i << 32) | v));
}

}  // namespace

SweepOutcome sweep_generic(HomotopyTrack track, std::uint64_t seed, Scalar eps, Execution exec, int max_repairs) {
  require_track_dimensions(track);
  if (sgn(eps) <= 0) eps = image_scale(track) / 256;
  SweepOutcome out;
  for (;;) {
    try {
      out.points = detect_triple_points(track, exec);
      break;
    } catch (const NonGenericTrack& e) {
      if (out.repairs >= max_repairs) throw;
      const std::uint64_t repair_seed = derive_seed(seed, static_cast<std::uint64_t>(out.repairs));
      ++out.repairs;
      const std::size_t lo = e.slab();
      const std::size_t hi = lo + 1;
      const std::size_t last = track.keyframes.size() - 1;
      bool touched = false;
      if (lo != 0) {
        perturb_keyframe(track.keyframes[lo], eps, derive_seed(repair_seed, 1));
        touched = true;
      }
      if (hi != last) {
        perturb_keyframe(track.keyframes[hi], eps, derive_seed(repair_seed, 2));
        touched = true;
      }
      if (!touched) {
        Keyframe mid;
        mid.t = (track.keyframes[lo].t + track.keyframes[hi].t) / 2;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t v = 0; v < track.keyframes[lo].images[i].size(); ++v)
            mid.images[i].push_back(
                scale(ratio(1, 2), add(track.keyframes[lo].images[i][v], track.keyframes[hi].images[i][v])));
        perturb_keyframe(mid, eps, derive_seed(repair_seed, 3));
        track.keyframes.insert(track.keyframes.begin() + static_cast<long>(hi), std::move(mid));
      }
    }
  }
  out.sum = std::accumulate(out.points.begin(), out.points.end(), 0L,
                            [](long acc, const SignedTriplePoint& p) { return acc + p.sign; });
  out.track = std::move(track);
  return out;
}

std::array<Vector, 3> default_trivial_targets(const Ornament& o, std::uint64_t seed) {
  o.check_shapes();
  std::vector<Vector> all;
  for (const auto& c : o.components) all.insert(all.end(), c.images.begin(), c.images.end());
  const Box b = bounding_box(all);
  const std::size_t m = o.ambient_dim();
  Vector center(m);
  Scalar radius = 1;
  for (std::size_t c = 0; c < m; ++c) {
    center[c] = (b.lo[c] + b.hi[c]) / 2;
    radius = std::max(radius, Scalar(b.hi[c] - b.lo[c]));
  }
  SeededRng rng(derive_seed(seed, 0x7a79));
  constexpr long kGrid = 1024;
  auto draw = [&] {
    Vector u(m);
    do {
      for (auto& x : u) x = ratio(static_cast<long>(rng.uniform(-kGrid, kGrid)), kGrid);
    } while (sup_distance(u, zeros(m)) < ratio(1, 2));
    return u;
  };
  std::array<Vector, 3> u;
  for (;;) {
    for (auto& x : u) x = draw();
    if (sup_distance(u[0], u[1]) >= ratio(1, 2) && sup_distance(u[1], u[2]) >= ratio(1, 2) &&
        sup_distance(u[0], u[2]) >= ratio(1, 2))
      break;
  }
  std::array<Vector, 3> targets;
  for (std::size_t i = 0; i < 3; ++i) targets[i] = add(center, scale(4 * radius, u[i]));
  return targets;
}

namespace {

Ornament collapsed_to(const Ornament& o, const std::array<Vector, 3>& targets) {
  Ornament out = o;
  for (std::size_t i = 0; i < 3; ++i) {
    if (targets[i].size() != o.ambient_dim()) throw DimensionError("target has wrong length");
    for (auto& img : out.components[i].images) img = targets[i];
  }
  return out;
}

}  // namespace

HomotopyTrack straight_line_homotopy_to_trivial(const Ornament& o, const std::array<Vector, 3>& targets,
                                                Scalar eps, std::uint64_t seed) {
  if (targets[0] == targets[1] || targets[1] == targets[2] || targets[0] == targets[2])
    throw ContractViolation("trivial ornament targets must be pairwise distinct");
  return sweep_generic(straight_line_track(o, collapsed_to(o, targets)), seed, std::move(eps)).track;
}

SweepOutcome sweep_to_trivial(const Ornament& o, std::uint64_t seed, Execution exec) {
  require_degree_dimensions(o);
  const auto targets = default_trivial_targets(o, seed);
  return sweep_generic(straight_line_track(o, collapsed_to(o, targets)), seed, 0, exec);
}

long mu_via_sweep(const Ornament& o, std::uint64_t seed, Execution exec) { return sweep_to_trivial(o, seed, exec).sum; }

long relative_sweep(const HomotopyTrack& track, std::uint64_t seed, Execution exec) {
  return sweep_generic(track, seed, 0, exec).sum;
}

Pairing pair_opposite_signs(const std::vector<SignedTriplePoint>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a].t < points[b].t; });
  std::deque<std::size_t> positive, negative;
  Pairing out;
  for (std::size_t i : order) {
    if (points[i].sign > 0) {
      if (!negative.empty()) {
        out.pairs.emplace_back(i, negative.front());
        negative.pop_front();
      } else {
        positive.push_back(i);
      }
    } else {
      if (!positive.empty()) {
        out.pairs.emplace_back(positive.front(), i);
        positive.pop_front();
      } else {
        negative.push_back(i);
      }
    }
  }
  out.unpaired.assign(positive.begin(), positive.end());
  out.unpaired.insert(out.unpaired.end(), negative.begin(), negative.end());
  return out;
}

}  // namespace ornament
