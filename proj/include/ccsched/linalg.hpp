// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ccsched Authors

#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <type_traits>

#include <Eigen/Dense>

namespace ccsched::linalg {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-8;

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& a,
                            typename Derived::RealScalar rel_tol = kRankTolerance) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  using Plain = typename Derived::PlainObject;
  const Eigen::JacobiSVD<Plain> svd(a.eval());
  const auto& sv = svd.singularValues();
  if (sv(0) == 0) return 0;
  return (sv.array() > rel_tol * sv(0)).count();
}

/// Orthonormal basis of the right nullspace of `a` (columns). A matrix with
/// no rows has the whole space as nullspace.
template <typename Derived>
typename Derived::PlainObject nullspace_basis(
    const Eigen::MatrixBase<Derived>& a,
    typename Derived::RealScalar rel_tol = kRankTolerance) {
  using Plain = typename Derived::PlainObject;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Plain::Identity(n, n);
  const Eigen::JacobiSVD<Plain> svd(a.eval(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() > 0 && sv(0) > 0) rank = (sv.array() > rel_tol * sv(0)).count();
  return svd.matrixV().rightCols(n - rank);
}

template <typename Derived>
typename Derived::RealScalar smallest_singular_value(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  using Plain = typename Derived::PlainObject;
  const Eigen::JacobiSVD<Plain> svd(a.eval());
  return svd.singularValues().tail(1)(0);
}

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// i.i.d. standard (circularly-symmetric when complex) Gaussian entries with
/// unit variance.
template <typename Scalar, typename Rng>
Matrix<Scalar> gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix<Scalar> out(rows, cols);
  if constexpr (is_complex<Scalar>::value) {
    using Real = typename Scalar::value_type;
    std::normal_distribution<Real> normal(0, std::sqrt(Real(0.5)));
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = Scalar(normal(rng), normal(rng));
  } else {
    std::normal_distribution<Scalar> normal(0, 1);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = normal(rng);
  }
  return out;
}

/// rows x cols matrix with orthonormal columns (Haar distributed).
template <typename Scalar, typename Rng>
Matrix<Scalar> random_orthonormal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const Matrix<Scalar> g = gaussian<Scalar>(rows, cols, rng);
  const Eigen::HouseholderQR<Matrix<Scalar>> qr(g);
  return qr.householderQ() * Matrix<Scalar>::Identity(rows, cols);
}

/// Leading `cols` left singular vectors of `a`.
template <typename Derived>
typename Derived::PlainObject dominant_left_subspace(const Eigen::MatrixBase<Derived>& a,
                                                     Eigen::Index cols) {
  using Plain = typename Derived::PlainObject;
  const Eigen::JacobiSVD<Plain> svd(a.eval(), Eigen::ComputeFullU);
  return svd.matrixU().leftCols(cols);
}

}  // namespace ccsched::linalg
