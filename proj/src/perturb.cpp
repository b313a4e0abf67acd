#include "ornament/perturb.hpp"

#include <stdexcept>

#include "ornament/sweep.hpp"

namespace ornament {

Ornament jitter_images(const Ornament& o, const Scalar& eps, std::uint64_t seed) {
  Ornament out = o;
  for (std::size_t i = 0; i < 3; ++i) {
    auto& images = out.components[i].images;
    for (std::size_t v = 0; v < images.size(); ++v)
      images[v] = random_rational_perturbation(images[v], eps, derive_seed(seed, (i << 32) | v));
  }
  return out;
}

Ornament perturb_ornament(const Ornament& o, const Scalar& eps, std::uint64_t seed, int max_attempts) {
  if (sgn(eps) <= 0) throw ContractViolation("perturb_ornament: eps must be positive");
  Scalar current = eps;
  for (int attempt = 0; attempt < max_attempts; ++attempt, current /= 2) {
    Ornament candidate = jitter_images(o, current, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (!validate_ornament(candidate).valid()) continue;
    try {
      if (detect_triple_points(straight_line_track(o, candidate)).empty()) return candidate;
    } catch (const NonGenericTrack&) {
    }
  }
  throw std::runtime_error("perturb_ornament: no certified perturbation found; is the input a valid ornament?");
}

}  // namespace ornament
