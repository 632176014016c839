#pragma once

#include <cmath>

#include "sparsecert/types.hpp"

namespace sparsecert {

/// Gram matrix C = A^T A. Each inner product <a_i, a_j> is accumulated once
/// in fixed row order and mirrored, so C is symmetric bitwise and every entry
/// is reproducible regardless of SIMD width or threading.
template <typename Derived>
Matrix<typename Derived::Scalar> gram(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const Index n = A.rows();
  const Index m = A.cols();
  if (n < 1 || m < 1) throw DimensionError("gram: matrix must be at least 1x1");

  Matrix<Scalar> C(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      Scalar acc = Scalar(0);
      for (Index k = 0; k < n; ++k) acc += A(k, i) * A(k, j);
      C(i, j) = acc;
      C(j, i) = acc;
    }
  }
  return C;
}

template <typename Derived>
Vector<typename Derived::Scalar> column_norms(const Eigen::MatrixBase<Derived>& a) {
  return a.derived().colwise().norm().transpose();
}

/// Rescales every column to unit l2 norm. Zero columns are rejected with
/// their index.
template <typename Derived>
Matrix<typename Derived::Scalar> normalize_columns(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> A = a.derived();
  for (Index j = 0; j < A.cols(); ++j) {
    const Scalar nrm = A.col(j).norm();
    if (nrm == Scalar(0)) throw ZeroColumnError(j);
    A.col(j) /= nrm;
  }
  return A;
}

/// True when every column norm is within tol of 1.
template <typename Derived>
bool has_unit_columns(const Eigen::MatrixBase<Derived>& a,
                      typename Derived::Scalar tol) {
  using std::abs;
  for (Index j = 0; j < a.cols(); ++j) {
    if (abs(a.derived().col(j).norm() - typename Derived::Scalar(1)) > tol)
      return false;
  }
  return true;
}

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.derived().allFinite();
}

}  // namespace sparsecert
