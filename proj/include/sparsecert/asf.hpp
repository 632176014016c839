#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sparsecert/types.hpp"

namespace sparsecert {

/// Per-column scores of a Gram matrix.
///
/// nu(i)  = max_{j != i} |c_ij| / c_ii   (largest normalized off-diagonal)
/// rho(i) = nu(i) / (1 + nu(i))          (score, always in [0, 1))
/// order  = column indices sorted by rho, non-increasing, ties by index.
template <typename Scalar>
struct ScoreVector {
  Vector<Scalar> nu;
  Vector<Scalar> rho;
  std::vector<Index> order;

  Index size() const { return nu.size(); }
};

template <typename Derived>
ScoreVector<typename Derived::Scalar> scores(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  const auto& C = c.derived();
  const Index m = C.cols();
  if (C.rows() != m) throw DimensionError("scores: Gram matrix must be square");
  if (m < 2)
    throw DimensionError("scores: need at least two columns, nu is undefined for m = 1");

  ScoreVector<Scalar> sv;
  sv.nu.resize(m);
  sv.rho.resize(m);
  for (Index i = 0; i < m; ++i) {
    const Scalar diag = C(i, i);
    if (!(diag > Scalar(0))) throw ZeroColumnError(i);
    // C is symmetric, so row i equals column i; scan the contiguous column.
    Scalar max_off = Scalar(0);
    if (i > 0) max_off = C.col(i).head(i).cwiseAbs().maxCoeff();
    if (i + 1 < m)
      max_off = std::max(max_off, C.col(i).tail(m - i - 1).cwiseAbs().maxCoeff());
    sv.nu(i) = max_off / diag;
    sv.rho(i) = sv.nu(i) / (sv.nu(i) + Scalar(1));
  }

  sv.order.resize(static_cast<std::size_t>(m));
  std::iota(sv.order.begin(), sv.order.end(), Index{0});
  std::stable_sort(sv.order.begin(), sv.order.end(),
                   [&sv](Index a, Index b) { return sv.rho(a) > sv.rho(b); });
  return sv;
}

/// Sum of rho over a support set.
template <typename Scalar>
Scalar support_score(const ScoreVector<Scalar>& sv, const SupportSet& support) {
  support.require_within(sv.size());
  Scalar total = Scalar(0);
  for (Index i : support) total += sv.rho(i);
  return total;
}

/// Largest achievable support score among supports of size s: the sum of the
/// s largest scores.
template <typename Scalar>
Scalar asf_max(const ScoreVector<Scalar>& sv, Index s) {
  if (s < 0 || s > sv.size())
    throw DimensionError("asf_max: s out of range [0, m]");
  Scalar total = Scalar(0);
  for (Index k = 0; k < s; ++k) total += sv.rho(sv.order[static_cast<std::size_t>(k)]);
  return total;
}

/// Certified sparsity lower bound l*: one less than the smallest prefix of
/// the sorted scores whose sum reaches 1/2. If even the full sum stays below
/// 1/2, every support of every size keeps a strict certificate and the bound
/// extends to m.
///
/// The threshold comparison is a raw IEEE >=; `margin` tightens it to
/// sum >= 1/2 - margin for callers worried about accumulated rounding.
template <typename Scalar>
Index sparsity_lower_bound(const ScoreVector<Scalar>& sv, Scalar margin = Scalar(0)) {
  const Scalar threshold = Scalar(0.5) - margin;
  Scalar cumulative = Scalar(0);
  for (Index k = 0; k < sv.size(); ++k) {
    cumulative += sv.rho(sv.order[static_cast<std::size_t>(k)]);
    if (cumulative >= threshold) return k;  // crossing at prefix length k+1
  }
  return sv.size();
}

}  // namespace sparsecert
