#pragma once

#include <optional>
#include <vector>

#include "ornament/exact.hpp"

namespace ornament {

/// One linear constraint `coeffs · x (op) rhs`.
struct LinearConstraint {
  Vector coeffs;
  Scalar rhs;
};

/// A system of equalities and non-strict inequalities over `variables`
/// rational unknowns.
struct LinearSystem {
  std::size_t variables = 0;
  std::vector<LinearConstraint> equalities;  // coeffs · x == rhs
  std::vector<LinearConstraint> upper;       // coeffs · x <= rhs

  void add_equality(Vector coeffs, Scalar rhs);
  void add_upper(Vector coeffs, Scalar rhs);
  /// x[var] >= 0
  void add_nonnegative(std::size_t var);
};

/// Decides feasibility exactly. Equalities are eliminated by Gauss-Jordan
/// reduction; the remaining inequalities over the free parameters go through
/// Fourier-Motzkin elimination. On success returns one feasible point,
/// recovered by back-substitution.
std::optional<Vector> find_feasible_point(const LinearSystem& system);

/// Reduced row echelon form of the augmented matrix [a | b]. Used by the
/// feasibility solver and exposed for tests.
struct EchelonForm {
  Matrix reduced;                    // rows x (cols + 1), zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column per row
  bool consistent = true;
};
EchelonForm reduce(const Matrix& a, const Vector& b);

}  // namespace ornament
