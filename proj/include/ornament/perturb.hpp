#pragma once

#include <cstdint>

#include "ornament/model.hpp"

namespace ornament {

/// Moves every vertex image by less than `eps` (sup-metric) and returns an
/// ornament such that the straight-line homotopy from `o` is certified
/// triple-point free. On failure eps is halved and the seed re-derived.
Ornament perturb_ornament(const Ornament& o, const Scalar& eps, std::uint64_t seed, int max_attempts = 48);

/// Vertex-wise random_rational_perturbation of every component without any
/// certification. Used by the constructors before validation.
Ornament jitter_images(const Ornament& o, const Scalar& eps, std::uint64_t seed);

}  // namespace ornament
