#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ornament/model.hpp"

namespace ornament {

/// Orientation constant for triple points of tracks, fixed once so that the
/// sign sum of a track equals mu(start) - mu(end) on the k = 1 Borromean
/// ornament. Agreement elsewhere is tested, not assumed.
inline constexpr int kSweepSign = -1;

/// Vertex images of all three components at one time value.
struct Keyframe {
  Scalar t;
  std::array<std::vector<Vector>, 3> images;
};

/// Keyframed PL homotopy. Between consecutive keyframes vertex images move
/// linearly; the track map is (x, t) -> (h_t(x), t) in R^m x I.
struct HomotopyTrack {
  std::array<std::string, 3> names;
  std::array<TriangulatedManifold, 3> domains;
  std::size_t ambient_dim = 0;
  std::vector<Keyframe> keyframes;

  /// Throws ContractViolation / DimensionError unless t runs strictly from 0
  /// to 1 and every keyframe matches the domains.
  void check_well_formed() const;
  Ornament ornament_at(std::size_t keyframe) const;
  Ornament start() const { return ornament_at(0); }
  Ornament end() const { return ornament_at(keyframes.size() - 1); }
};

/// Two-keyframe straight-line track. Domains must be identical.
HomotopyTrack straight_line_track(const Ornament& from, const Ornament& to);
/// t -> 1 - t.
HomotopyTrack reverse_track(const HomotopyTrack& track);
/// `first` followed by `second`, each squeezed into half the interval. The
/// end of `first` must equal the start of `second`.
HomotopyTrack concatenate_tracks(const HomotopyTrack& first, const HomotopyTrack& second);

/// A 2k-simplex of the staircase triangulation of facet x [t_slab, t_slab+1].
struct PrismCell {
  std::size_t slab = 0;
  std::size_t facet = 0;
  std::size_t cell = 0;  // position in the staircase, 0..d
  /// (vertex index, level) with level 0 = keyframe slab, 1 = slab + 1.
  std::vector<std::pair<std::size_t, int>> vertices;
  /// +1 if the listed vertex order agrees with facet-orientation x I.
  int orientation = 0;
};

/// Staircase triangulation of one prism. Vertices are ordered by global index,
/// so neighbouring prisms induce the same triangulation on shared faces.
std::vector<PrismCell> staircase_cells(const Facet& facet, std::size_t facet_index, std::size_t slab);

struct SignedTriplePoint {
  std::array<PrismCell, 3> cells;
  /// Full barycentric coordinates per cell, in the cell's listed order.
  std::array<Vector, 3> barycentric;
  Vector point;  // in R^m
  Scalar t;
  int sign = 0;
};

/// Image of a cell point in R^m x I.
Vector track_image(const HomotopyTrack& track, std::size_t component, const PrismCell& cell, const Vector& bary);

/// All transverse 1=2=3 points of the track, ordered by slab and cell triple.
/// Throws NonGenericTrack on a singular-but-meeting or boundary configuration.
std::vector<SignedTriplePoint> detect_triple_points(const HomotopyTrack& track,
                                                    Execution exec = Execution::parallel);

struct SweepOutcome {
  HomotopyTrack track;  // after any genericity repairs
  std::vector<SignedTriplePoint> points;
  long sum = 0;
  int repairs = 0;
};

/// Detects triple points, repairing non-generic tracks by perturbing interior
/// keyframes (inserting a midpoint keyframe when the failing slab has none).
/// Endpoints are never modified. `eps` <= 0 picks a scale from the images.
SweepOutcome sweep_generic(HomotopyTrack track, std::uint64_t seed, Scalar eps = 0,
                           Execution exec = Execution::parallel, int max_repairs = 64);

/// Three pairwise distinct points well outside the bounding box of the images.
std::array<Vector, 3> default_trivial_targets(const Ornament& o, std::uint64_t seed);

/// Straight-line track from `o` to the trivial ornament at `targets`, made
/// generic by sweep_generic. Throws ContractViolation on coincident targets.
HomotopyTrack straight_line_homotopy_to_trivial(const Ornament& o, const std::array<Vector, 3>& targets,
                                                Scalar eps, std::uint64_t seed);

/// Sweeps the straight-line track from `o` to the trivial ornament at
/// default_trivial_targets(o, seed).
SweepOutcome sweep_to_trivial(const Ornament& o, std::uint64_t seed, Execution exec = Execution::parallel);

/// mu as the signed number of triple points on a generic homotopy to a
/// trivial ornament.
long mu_via_sweep(const Ornament& o, std::uint64_t seed, Execution exec = Execution::parallel);

/// Signed triple-point count of an arbitrary track; equals mu(start) - mu(end).
long relative_sweep(const HomotopyTrack& track, std::uint64_t seed = 0, Execution exec = Execution::parallel);

struct Pairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (positive, negative) indices
  std::vector<std::size_t> unpaired;
};

/// Greedy pairing in time order: each point is matched with the earliest
/// still-unmatched point of opposite sign.
Pairing pair_opposite_signs(const std::vector<SignedTriplePoint>& points);

}  // namespace ornament
