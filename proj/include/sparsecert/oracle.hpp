#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sparsecert/bounds.hpp"
#include "sparsecert/generate.hpp"
#include "sparsecert/jacobi.hpp"
#include "sparsecert/lp.hpp"
#include "sparsecert/matrix.hpp"
#include "sparsecert/types.hpp"

namespace sparsecert {

/// Hard cap on enumeration work (LP solves or eigendecompositions).
/// Exceeding it throws BudgetError; results are never silently truncated.
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

namespace detail {

inline std::uint64_t binomial_or_max(Index m, Index s) {
  if (s < 0 || s > m) return 0;
  if (s > m - s) s = m - s;
  std::uint64_t result = 1;
  for (Index i = 1; i <= s; ++i) {
    const auto factor = static_cast<std::uint64_t>(m - s + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / factor)
      return std::numeric_limits<std::uint64_t>::max();
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

/// Calls fn on every size-s subset of [0, m) in lexicographic order.
template <typename Fn>
void for_each_support(Index m, Index s, Fn&& fn) {
  std::vector<Index> combo(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) combo[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(const_cast<const std::vector<Index>&>(combo));
    Index i = s - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - s + i) --i;
    if (i < 0) return;
    ++combo[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < s; ++j)
      combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

template <typename Scalar>
struct NspMargin {
  SupportSet support;
  Scalar margin = Scalar(0);
};

/// Worst-case mass the kernel of A can place on a support:
///   margin(S) = max { sum_{i in S} |v_i| : A v = 0, ||v||_1 <= 1 }.
/// The null space property holds for S exactly when margin(S) < 1/2.
///
/// Each absolute-value pattern becomes one LP over v = p - q with a slack
/// absorbing the norm budget; v and -v give equal values, so only half the
/// 2^|S| sign patterns are solved.
template <typename Derived>
NspMargin<typename Derived::Scalar> nsp_support_margin(
    const Eigen::MatrixBase<Derived>& a, const SupportSet& support) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const Index n = A.rows();
  const Index m = A.cols();
  if (support.empty())
    throw DimensionError("nsp_support_margin: support must be nonempty");
  support.require_within(m);
  if (support.size() >= 63)
    throw BudgetError(std::numeric_limits<std::uint64_t>::max(), kDefaultBudget);

  LinearProgram<Scalar> lp;
  lp.eq_matrix.resize(n + 1, 2 * m + 1);
  lp.eq_matrix.setZero();
  lp.eq_matrix.block(0, 0, n, m) = A;
  lp.eq_matrix.block(0, m, n, m) = -A;
  lp.eq_matrix.row(n).head(2 * m).setOnes();
  lp.eq_matrix(n, 2 * m) = Scalar(1);
  lp.eq_rhs = Vector<Scalar>::Zero(n + 1);
  lp.eq_rhs(n) = Scalar(1);

  const Index s = support.size();
  Scalar margin = Scalar(0);
  const std::uint64_t patterns = std::uint64_t{1} << (s - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    lp.objective = Vector<Scalar>::Zero(2 * m + 1);
    for (Index k = 0; k < s; ++k) {
      // First support index fixed to +1; remaining signs from the mask bits.
      const Scalar sign =
          (k > 0 && ((mask >> (k - 1)) & 1)) ? Scalar(-1) : Scalar(1);
      lp.objective(support[k]) = -sign;
      lp.objective(m + support[k]) = sign;
    }
    const LpOutcome<Scalar> outcome = solve(lp);
    if (outcome.status != LpStatus::Optimal)
      throw ConvergenceError(std::string("nsp_support_margin: LP came back ") +
                             to_string(outcome.status));
    margin = std::max(margin, -outcome.objective_value);
  }
  return {support, margin};
}

template <typename Scalar>
struct LevelSummary {
  Index s = 0;
  Scalar worst_margin = Scalar(0);
  SupportSet worst_support;
  bool passes = false;   ///< every size-s margin < 1/2 - 1e-9
  bool boundary = false; ///< some margin within 1e-9 of 1/2
};

template <typename Scalar>
struct SparsityOracleReport {
  Index level = 0;      ///< largest s whose every support passed (s_max = "at least")
  bool boundary = false; ///< the answer was capped by a boundary-band margin
  std::vector<LevelSummary<Scalar>> levels;
};

/// Exact recoverable sparsity level by exhaustive null-space-property check,
/// largest s <= s_max with margin(S) < 1/2 for every |S| = s. Strictness
/// band: a support only passes below 1/2 - 1e-9 and only definitively fails
/// above 1/2 + 1e-9; margins inside the band flag the report as boundary and
/// push the answer down, never up.
template <typename Derived>
SparsityOracleReport<typename Derived::Scalar> exact_sparsity_level(
    const Eigen::MatrixBase<Derived>& a, Index s_max,
    std::uint64_t budget = kDefaultBudget) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const Index m = A.cols();
  if (s_max < 1 || s_max > m)
    throw DimensionError("exact_sparsity_level: need 1 <= s_max <= cols");

  constexpr Scalar kBand = Scalar(1e-9);
  SparsityOracleReport<Scalar> report;
  std::uint64_t spent = 0;
  for (Index s = 1; s <= s_max; ++s) {
    const std::uint64_t supports = detail::binomial_or_max(m, s);
    const std::uint64_t lp_per_support = std::uint64_t{1} << (s - 1);
    if (supports > (budget - spent) / lp_per_support) {
      constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
      const std::uint64_t required =
          supports > kMax / lp_per_support ? kMax : supports * lp_per_support;
      throw BudgetError(required, budget - spent);
    }
    spent += supports * lp_per_support;

    LevelSummary<Scalar> level;
    level.s = s;
    bool first = true;
    detail::for_each_support(m, s, [&](const std::vector<Index>& combo) {
      const auto result = nsp_support_margin(A, SupportSet(combo));
      if (first || result.margin > level.worst_margin) {
        level.worst_margin = result.margin;
        level.worst_support = result.support;
        first = false;
      }
      if (std::abs(result.margin - Scalar(0.5)) <= kBand) level.boundary = true;
    });
    level.passes = level.worst_margin < Scalar(0.5) - kBand;
    report.levels.push_back(level);
    if (!level.passes) {
      // Conservative: a pure boundary failure means the true answer may be
      // higher, record that the band decided it.
      report.boundary = level.boundary && level.worst_margin <= Scalar(0.5) + kBand;
      break;
    }
    report.level = s;
  }
  return report;
}

template <typename Scalar>
struct RestrictedExtremes {
  Index s = 0;
  Scalar k_max = Scalar(0);
  Scalar k_min = Scalar(0);
  SupportSet argmax_support;
  SupportSet argmin_support;
};

/// Extreme eigenvalues of A_T^T A_T over all supports |T| = s: k_max is the
/// largest maximal eigenvalue, k_min the smallest minimal one. Submatrices
/// are sliced from one Gram computation; ties keep the lexicographically
/// smallest support.
template <typename Derived>
RestrictedExtremes<typename Derived::Scalar> restricted_extremes(
    const Eigen::MatrixBase<Derived>& a, Index s,
    std::uint64_t budget = kDefaultBudget) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const Index m = A.cols();
  if (s < 1 || s > m)
    throw DimensionError("restricted_extremes: need 1 <= s <= cols");
  const std::uint64_t supports = detail::binomial_or_max(m, s);
  if (supports > budget) throw BudgetError(supports, budget);

  const Matrix<Scalar> C = gram(A);
  RestrictedExtremes<Scalar> out;
  out.s = s;
  bool first = true;
  Matrix<Scalar> sub(s, s);
  detail::for_each_support(m, s, [&](const std::vector<Index>& combo) {
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j)
        sub(i, j) = C(combo[static_cast<std::size_t>(i)],
                      combo[static_cast<std::size_t>(j)]);
    const Vector<Scalar> eig = jacobi_eigenvalues(sub);
    if (first || eig(s - 1) > out.k_max) {
      out.k_max = eig(s - 1);
      out.argmax_support = SupportSet(combo);
    }
    if (first || eig(0) < out.k_min) {
      out.k_min = eig(0);
      out.argmin_support = SupportSet(combo);
    }
    first = false;
  });
  return out;
}

template <typename Scalar>
struct RatioCheck {
  Scalar lhs = Scalar(0);  ///< k_min / k_max
  Scalar rhs = Scalar(0);  ///< min diag ratio - 2(s-1) max nu
  bool holds = false;      ///< lhs >= rhs - 1e-12
};

/// Verifies that the restricted eigenvalue ratio stays above the bound built
/// from the diagonal ratio and the largest score:
///   k_min / k_max  >=  min_{i != j} c_ii/c_jj  -  2(s-1) max_i nu(i).
template <typename Derived>
RatioCheck<typename Derived::Scalar> restricted_ratio_check(
    const Eigen::MatrixBase<Derived>& a, Index s,
    std::uint64_t budget = kDefaultBudget) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const RestrictedExtremes<Scalar> ext = restricted_extremes(A, s, budget);
  if (!(ext.k_max > Scalar(0)))
    throw DimensionError("restricted_ratio_check: k_max must be positive");

  const Matrix<Scalar> C = gram(A);
  const ScoreVector<Scalar> sv = scores(C);
  RatioCheck<Scalar> out;
  out.lhs = ext.k_min / ext.k_max;
  out.rhs = detail::min_diag_ratio(C) -
            Scalar(2) * Scalar(s - 1) * sv.nu.maxCoeff();
  out.holds = out.lhs >= out.rhs - Scalar(1e-12);
  return out;
}

struct RecoveryStats {
  Index trials = 0;
  Index successes = 0;
  double max_error = 0.0;  ///< worst sup-norm error among successes
  std::uint64_t seed = 0;
  Index lp_failures = 0;   ///< trials where the LP did not come back optimal
};

/// Plants random s-sparse vectors, measures them, and recovers via l1
/// minimization. A trial succeeds when the recovered vector matches the
/// planted one to 1e-6 in sup norm.
template <typename Derived>
RecoveryStats recovery_trials(const Eigen::MatrixBase<Derived>& a, Index s,
                              Index trials, std::uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const Index m = A.cols();
  if (s < 0 || s > m)
    throw DimensionError("recovery_trials: need 0 <= s <= cols");
  if (trials < 0) throw DimensionError("recovery_trials: negative trial count");

  constexpr double kSuccessTol = 1e-6;
  RecoveryStats stats;
  stats.trials = trials;
  stats.seed = seed;

  NormalSampler sampler(seed);
  for (Index t = 0; t < trials; ++t) {
    const SupportSet support = sample_support(sampler.engine(), m, s);
    Vector<Scalar> x0 = Vector<Scalar>::Zero(m);
    for (Index i : support) x0(i) = static_cast<Scalar>(sampler());
    const Vector<Scalar> y = A * x0;

    const LpOutcome<Scalar> outcome = basis_pursuit(A, y);
    if (outcome.status != LpStatus::Optimal) {
      ++stats.lp_failures;
      continue;
    }
    const double err =
        static_cast<double>((outcome.solution - x0).template lpNorm<Eigen::Infinity>());
    if (err <= kSuccessTol) {
      ++stats.successes;
      stats.max_error = std::max(stats.max_error, err);
    }
  }
  return stats;
}

}  // namespace sparsecert
