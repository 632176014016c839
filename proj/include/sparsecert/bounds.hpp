#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "sparsecert/asf.hpp"
#include "sparsecert/matrix.hpp"
#include "sparsecert/types.hpp"

namespace sparsecert {

/// Everything `analyze` certifies about one sensing matrix.
///
/// `coherence_applies_as_given` is the unit-column check: the coherence bound
/// certifies the column-normalized matrix, and l1 recoverability is not
/// invariant under column rescaling, so for an unnormalized input the bound
/// speaks about a different matrix than the one analyzed.
template <typename Scalar>
struct BoundsReport {
  Index m = 0;
  Index n = 0;
  Index asf_bound = 0;
  Scalar coherence = Scalar(0);
  Index coherence_bound = 0;
  bool coherence_applies_as_given = false;
  Index ric_bound = 0;
  bool ric_bound_valid = false;
  Scalar min_diag_ratio = Scalar(1);
  Scalar max_nu = Scalar(0);
  Scalar total_score = Scalar(0);
};

/// Coherence in normalized form, mu = max_{i != j} |c_ij| / sqrt(c_ii c_jj).
/// Matches the usual definition on unit columns and is invariant to column
/// rescaling for everything else.
template <typename Derived>
typename Derived::Scalar coherence(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  const auto& C = c.derived();
  const Index m = C.cols();
  if (C.rows() != m) throw DimensionError("coherence: Gram matrix must be square");
  if (m < 2) throw DimensionError("coherence: need at least two columns");
  for (Index i = 0; i < m; ++i)
    if (!(C(i, i) > Scalar(0))) throw ZeroColumnError(i);

  Scalar mu = Scalar(0);
  for (Index j = 1; j < m; ++j)
    for (Index i = 0; i < j; ++i)
      mu = std::max(mu, abs(C(i, j)) / sqrt(C(i, i) * C(j, j)));
  // Cauchy-Schwarz caps the true value at 1; rounding in sqrt can overshoot
  // by an ulp for duplicate columns.
  return std::min(mu, Scalar(1));
}

/// Largest integer s with s < (1 + 1/mu) / 2, i.e. the classical coherence
/// bound in strict-inequality form. mu = 0 has no finite bound (orthogonal
/// columns); the caller maps nullopt to m.
template <typename Scalar>
std::optional<Index> coherence_bound(Scalar mu) {
  using std::floor;
  if (mu < Scalar(0) || mu > Scalar(1))
    throw DimensionError("coherence_bound: mu must lie in [0, 1]");
  if (mu == Scalar(0)) return std::nullopt;
  const Scalar x = Scalar(0.5) * (Scalar(1) + Scalar(1) / mu);
  if (x >= Scalar(std::numeric_limits<Index>::max()))
    return std::numeric_limits<Index>::max();
  const Scalar f = floor(x);
  // Exact-integer boundary resolves downward: the inequality is strict.
  const auto bound = static_cast<Index>(f) - (x == f ? 1 : 0);
  return std::max<Index>(bound, 0);
}

template <typename Scalar>
struct RicBound {
  Index bound = 0;
  bool valid = false;
};

namespace detail {

template <typename Derived>
typename Derived::Scalar min_diag_ratio(const Eigen::MatrixBase<Derived>& C) {
  // min over ordered pairs i != j of c_ii / c_jj; the minimum divides the
  // smallest diagonal entry by the largest.
  return C.derived().diagonal().minCoeff() / C.derived().diagonal().maxCoeff();
}

}  // namespace detail

/// Sparsity bound obtained from the restricted-eigenvalue ratio with the
/// sharp recovery threshold 1/3 folded in:
///   SL >= (1 / (2 max nu)) * (min_{i != j} c_ii/c_jj - 1/2).
/// Vacuous when the diagonal ratio is at most 1/2 (valid = false); orthogonal
/// columns (max nu = 0) certify everything, reported as (m, valid).
template <typename Derived>
RicBound<typename Derived::Scalar> ric_based_bound(
    const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  using std::floor;
  const auto& C = c.derived();
  const ScoreVector<Scalar> sv = scores(C);
  const Scalar max_nu = sv.nu.maxCoeff();
  const Index m = C.cols();
  if (max_nu == Scalar(0)) return {m, true};

  const Scalar r = detail::min_diag_ratio(C);
  RicBound<Scalar> out;
  out.valid = r > Scalar(0.5);
  const Scalar value = (r - Scalar(0.5)) / (Scalar(2) * max_nu);
  if (value >= Scalar(m))
    out.bound = m;
  else if (value > Scalar(0))
    out.bound = static_cast<Index>(floor(value));
  return out;
}

/// Upper estimate of the restricted isometry constant of order s,
///   sigma_s <= (1 - q) / (1 + q)  with  q = r - 2(s-1) max nu,
/// applicable only when q > 0.
template <typename Derived>
std::optional<typename Derived::Scalar> ric_constant_estimate(
    const Eigen::MatrixBase<Derived>& c, Index s) {
  using Scalar = typename Derived::Scalar;
  if (s < 1) throw DimensionError("ric_constant_estimate: s must be >= 1");
  const auto& C = c.derived();
  const ScoreVector<Scalar> sv = scores(C);
  const Scalar r = detail::min_diag_ratio(C);
  const Scalar q = r - Scalar(2) * Scalar(s - 1) * sv.nu.maxCoeff();
  if (!(q > Scalar(0))) return std::nullopt;
  return (Scalar(1) - q) / (Scalar(1) + q);
}

/// Computes the Gram matrix once and fills every bound in one pass.
template <typename Derived>
BoundsReport<typename Derived::Scalar> analyze(
    const Eigen::MatrixBase<Derived>& a,
    typename Derived::Scalar margin = typename Derived::Scalar(0)) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  if (!is_finite(A)) throw NumericError("analyze: matrix has NaN or infinite entries");
  const Matrix<Scalar> C = gram(A);

  BoundsReport<Scalar> report;
  report.n = A.rows();
  report.m = A.cols();

  const ScoreVector<Scalar> sv = scores(C);
  report.asf_bound = sparsity_lower_bound(sv, margin);
  report.max_nu = sv.nu.maxCoeff();
  report.total_score = sv.rho.sum();

  report.coherence = coherence(C);
  report.coherence_bound =
      std::min<Index>(coherence_bound(report.coherence).value_or(report.m), report.m);
  report.coherence_applies_as_given = has_unit_columns(A, Scalar(1e-9));

  const RicBound<Scalar> ric = ric_based_bound(C);
  report.ric_bound = ric.bound;
  report.ric_bound_valid = ric.valid;
  report.min_diag_ratio = detail::min_diag_ratio(C);
  return report;
}

namespace detail {

inline std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace detail

/// Stable JSON form of the report: fixed field set, fixed order, reals with
/// 17 significant digits.
template <typename Scalar>
std::string to_json(const BoundsReport<Scalar>& r) {
  std::string out = "{";
  auto field = [&out](const char* name, const std::string& value, bool last = false) {
    out += "\"";
    out += name;
    out += "\":";
    out += value;
    if (!last) out += ",";
  };
  field("m", std::to_string(r.m));
  field("n", std::to_string(r.n));
  field("asf_bound", std::to_string(r.asf_bound));
  field("coherence", detail::format_real(static_cast<double>(r.coherence)));
  field("coherence_bound", std::to_string(r.coherence_bound));
  field("coherence_applies_as_given", r.coherence_applies_as_given ? "true" : "false");
  field("ric_bound", std::to_string(r.ric_bound));
  field("ric_bound_valid", r.ric_bound_valid ? "true" : "false");
  field("min_diag_ratio", detail::format_real(static_cast<double>(r.min_diag_ratio)));
  field("max_nu", detail::format_real(static_cast<double>(r.max_nu)));
  field("total_score", detail::format_real(static_cast<double>(r.total_score)), true);
  out += "}";
  return out;
}

}  // namespace sparsecert
