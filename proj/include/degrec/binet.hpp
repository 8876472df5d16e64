#pragma once

#include "degrec/numerics.hpp"
#include "degrec/recurrence.hpp"

#include <array>
#include <cstddef>

namespace degrec {

/// 3x3 grid of scalars, row-major.
struct CoefficientMatrix {
  std::array<std::array<Scalar, 3>, 3> entries;

  const Scalar& operator()(std::size_t row, std::size_t col) const {
    return entries[row][col];
  }

  static CoefficientMatrix identity(Backend backend);
};

CoefficientMatrix operator*(const CoefficientMatrix& lhs, const CoefficientMatrix& rhs);
bool operator==(const CoefficientMatrix& lhs, const CoefficientMatrix& rhs);

/// Weights of U_n = c1 (-lambda3)^n + c2 lambda2^n + c3 lambda3^n.
struct BinetCoefficients {
  Scalar c1, c2, c3;
};

/// Rows (1, 1, 1), (-l3, l2, l3), (l3^2, l2^2, l3^2): the initial
/// conditions expressed in the basis of root powers.
CoefficientMatrix coefficient_matrix(const DegenerateRoots& roots);

/// Closed-form inverse of coefficient_matrix, entry by entry.
CoefficientMatrix invert_coefficient_matrix(const DegenerateRoots& roots);

/// c1 + c3 and c3 - c1 written directly in the initial conditions.
struct OuterAggregates {
  Scalar sum;         // c1 + c3
  Scalar difference;  // c3 - c1
};

OuterAggregates outer_aggregates(const DegenerateRoots& roots, const Scalar& u0,
                                 const Scalar& u1, const Scalar& u2);

/// c = A^-1 u. Also evaluates outer_aggregates and throws std::logic_error
/// if they disagree with the solved vector (beyond `tol` on float).
BinetCoefficients solve_coefficients(const DegenerateRoots& roots, const Scalar& u0,
                                     const Scalar& u1, const Scalar& u2,
                                     const Tolerance& tol = {});

/// c1 (-lambda3)^n + c2 lambda2^n + c3 lambda3^n. Float overflow yields a
/// non-finite scalar.
Scalar binet_eval(const DegenerateRoots& roots, const BinetCoefficients& c, unsigned n);

}  // namespace degrec
