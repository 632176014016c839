#pragma once

#include <cmath>

#include "sparsecert/types.hpp"

namespace sparsecert {

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const Matrix<Scalar>& S) {
  using std::sqrt;
  Scalar sum = Scalar(0);
  for (Index j = 0; j < S.cols(); ++j)
    for (Index i = 0; i < S.rows(); ++i)
      if (i != j) sum += S(i, j) * S(i, j);
  return sqrt(sum);
}

}  // namespace detail

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sweeping
/// until the off-diagonal Frobenius norm drops to off_tol. Returned sorted
/// ascending. Convergence is unconditional for symmetric input; the sweep
/// cap only guards against a tolerance below the rounding floor.
template <typename Scalar>
Vector<Scalar> jacobi_eigenvalues(Matrix<Scalar> S, Scalar off_tol = Scalar(1e-12),
                                  int max_sweeps = 100) {
  using std::abs;
  using std::sqrt;
  const Index n = S.rows();
  if (n < 1 || S.cols() != n)
    throw DimensionError("jacobi_eigenvalues: matrix must be square and nonempty");

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (detail::off_diagonal_norm(S) <= off_tol) {
      Vector<Scalar> eig = S.diagonal();
      std::sort(eig.data(), eig.data() + n);
      return eig;
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (S(p, q) == Scalar(0)) continue;
        const Scalar tau = (S(q, q) - S(p, p)) / (Scalar(2) * S(p, q));
        const Scalar t = (tau >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (abs(tau) + sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;
        // Rotate rows and columns p, q; the (p, q) entry is annihilated.
        for (Index i = 0; i < n; ++i) {
          const Scalar sip = S(i, p);
          const Scalar siq = S(i, q);
          S(i, p) = c * sip - s * siq;
          S(i, q) = s * sip + c * siq;
        }
        for (Index i = 0; i < n; ++i) {
          const Scalar spi = S(p, i);
          const Scalar sqi = S(q, i);
          S(p, i) = c * spi - s * sqi;
          S(q, i) = s * spi + c * sqi;
        }
        S(p, q) = Scalar(0);
        S(q, p) = Scalar(0);
      }
    }
  }
  throw ConvergenceError("jacobi_eigenvalues: off-diagonal norm did not reach tolerance");
}

}  // namespace sparsecert
