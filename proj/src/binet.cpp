#include "degrec/binet.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace degrec {

CoefficientMatrix CoefficientMatrix::identity(Backend backend) {
  const Scalar zero = Scalar::zero(backend);
  const Scalar one = Scalar::one(backend);
  return {{{{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}}};
}

CoefficientMatrix operator*(const CoefficientMatrix& lhs, const CoefficientMatrix& rhs) {
  CoefficientMatrix out = CoefficientMatrix::identity(lhs(0, 0).backend());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Scalar acc = lhs(i, 0) * rhs(0, j);
      acc += lhs(i, 1) * rhs(1, j);
      acc += lhs(i, 2) * rhs(2, j);
      out.entries[i][j] = acc;
    }
  }
  return out;
}

bool operator==(const CoefficientMatrix& lhs, const CoefficientMatrix& rhs) {
  return lhs.entries == rhs.entries;
}

CoefficientMatrix coefficient_matrix(const DegenerateRoots& roots) {
  const Backend b = roots.backend();
  const Scalar& l2 = roots.lambda2();
  const Scalar& l3 = roots.lambda3();
  const Scalar one = Scalar::one(b);
  return {{{{one, one, one}, {-l3, l2, l3}, {l3 * l3, l2 * l2, l3 * l3}}}};
}

CoefficientMatrix invert_coefficient_matrix(const DegenerateRoots& roots) {
  const Backend b = roots.backend();
  const Scalar& l2 = roots.lambda2();
  const Scalar& l3 = roots.lambda3();
  const Scalar one = Scalar::one(b);
  const Scalar two = Scalar::integer(2, b);
  const Scalar l2_sq = l2 * l2;
  const Scalar l3_sq = l3 * l3;

  CoefficientMatrix inv;
  inv.entries[0] = {l2 / (two * (l2 + l3)), -(one / (two * l3)),
                    one / (two * l3_sq + two * l2 * l3)};
  inv.entries[1] = {l3_sq / (l3_sq - l2_sq), Scalar::zero(b), one / (l2_sq - l3_sq)};
  inv.entries[2] = {l2 / (two * (l2 - l3)), one / (two * l3),
                    one / (two * l3_sq - two * l2 * l3)};
  return inv;
}

OuterAggregates outer_aggregates(const DegenerateRoots& roots, const Scalar& u0,
                                 const Scalar& u1, const Scalar& u2) {
  const Scalar& l2 = roots.lambda2();
  const Scalar& l3 = roots.lambda3();
  const Scalar l2_sq = l2 * l2;
  const Scalar l3_sq = l3 * l3;
  Scalar sum = (u2 - l2_sq * u0) / (l3_sq - l2_sq);
  Scalar difference = (l3_sq * (u1 - l2 * u0) + l2 * (u2 - l2 * u1)) /
                      (l3_sq * l3 - l3 * l2_sq);
  return {std::move(sum), std::move(difference)};
}

BinetCoefficients solve_coefficients(const DegenerateRoots& roots, const Scalar& u0,
                                     const Scalar& u1, const Scalar& u2,
                                     const Tolerance& tol) {
  const CoefficientMatrix inv = invert_coefficient_matrix(roots);
  const std::array<const Scalar*, 3> u{&u0, &u1, &u2};
  std::array<Scalar, 3> c;
  for (std::size_t i = 0; i < 3; ++i) {
    c[i] = inv(i, 0) * *u[0] + inv(i, 1) * *u[1] + inv(i, 2) * *u[2];
  }
  BinetCoefficients out{c[0], c[1], c[2]};

  const OuterAggregates agg = outer_aggregates(roots, u0, u1, u2);
  const Scalar scale = std::max({out.c1.abs(), out.c2.abs(), out.c3.abs()});
  const Scalar sum_err = agg.sum - (out.c1 + out.c3);
  const Scalar diff_err = agg.difference - (out.c3 - out.c1);
  if (!negligible(sum_err, scale, tol) || !negligible(diff_err, scale, tol)) {
    throw std::logic_error("closed-form c1+c3 / c3-c1 disagree with solved coefficients: " +
                           render(sum_err) + ", " + render(diff_err));
  }
  return out;
}

Scalar binet_eval(const DegenerateRoots& roots, const BinetCoefficients& c, unsigned n) {
  return c.c1 * pow(roots.lambda1(), n) + c.c2 * pow(roots.lambda2(), n) +
         c.c3 * pow(roots.lambda3(), n);
}

}  // namespace degrec
