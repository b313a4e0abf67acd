#pragma once

// Exact rational linear algebra and the geometric predicates built on it.
// Nothing in this library rounds: every predicate is decided on mpq_class.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ornament/errors.hpp"

namespace ornament {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "p" or "p/q" (q > 0). The result is canonicalized, so "2/4" reads
/// as 1/2. Throws ParseError on anything else, including "3/0" and "1/-2".
Scalar parse_rational(std::string_view text);

/// Canonical p/q from machine integers; q must be nonzero.
Scalar ratio(long p, long q);

/// Canonical "p/q" (or "p" when q == 1).
std::string format_rational(const Scalar& value);

/// Row-major dense rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transposed() const;
  Vector operator*(const Vector& x) const;
  Matrix operator*(const Matrix& other) const;
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Vector helpers. All of them check lengths and throw DimensionError.
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& a);
Scalar dot(const Vector& a, const Vector& b);
Vector zeros(std::size_t n);
bool is_zero(const Vector& a);

/// Exact sign of det(m) via fraction-free elimination.
int det_sign(const Matrix& m);

/// Solution of a·x = b, or nullopt when a is singular.
std::optional<Vector> solve_affine(const Matrix& a, const Vector& b);

/// Combined elimination used by the hot kernels: one fraction-free echelon
/// pass over [a | b] yields the determinant sign, the solution when a is
/// nonsingular, and solvability when it is not.
struct SolveResult {
  int det_sign = 0;
  Vector x;                 // empty when det_sign == 0
  bool consistent = true;   // meaningful when det_sign == 0: some x solves a x = b
};
SolveResult solve_with_sign(const Matrix& a, const Vector& b);

enum class Position { interior, boundary, outside };

/// Classifies full barycentric coordinates. They must sum to exactly 1.
Position barycentric_position(std::span<const Scalar> coords);

/// Expands d free parameters (the last barycentric coordinate eliminated) to
/// the full d+1 coordinates.
Vector complete_barycentric(std::span<const Scalar> params);

/// Deterministic 64-bit generator. All randomness in the library flows
/// through explicitly seeded instances of this.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [lo, hi], inclusive; requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Mixes a seed with a salt into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

inline constexpr std::int64_t kDefaultPerturbationDenominator = std::int64_t{1} << 16;

/// Returns v' with |v'_i - v_i| < eps for every i. Each offset is
/// eps * n / D with n a nonzero integer in (-D, D), D = denominator_limit.
/// Throws ContractViolation when eps <= 0.
Vector random_rational_perturbation(const Vector& v, const Scalar& eps, std::uint64_t seed,
                                    std::int64_t denominator_limit = kDefaultPerturbationDenominator);

/// Max-norm distance.
Scalar sup_distance(const Vector& a, const Vector& b);

/// Rational approximation r of sqrt(x) with |r - sqrt(x)| < 2^-bits, x >= 0.
Scalar approx_sqrt(const Scalar& x, unsigned bits);

}  // namespace ornament
