#pragma once

#include <stdexcept>
#include <string>

namespace ornament {

/// Mismatched vector / matrix shapes, or ornament dimensions that do not fit
/// the requested computation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input (rational literal or interchange document).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The chosen ray direction is not a regular value: some facet triple gave a
/// singular-but-feasible system, a boundary preimage, or s = 0.
class NonGenericDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A homotopy track hit a degenerate cell triple. `slab` is the index of the
/// keyframe interval [t_slab, t_slab+1] where it happened.
class NonGenericTrack : public std::runtime_error {
 public:
  NonGenericTrack(const std::string& what, std::size_t slab)
      : std::runtime_error(what), slab_(slab) {}
  std::size_t slab() const noexcept { return slab_; }

 private:
  std::size_t slab_;
};

}  // namespace ornament
