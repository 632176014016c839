#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sparsecert/types.hpp"

namespace sparsecert {

/// Standard-form LP: minimize objective . x subject to eq_matrix x = eq_rhs
/// and x >= 0 componentwise.
template <typename Scalar>
struct LinearProgram {
  Vector<Scalar> objective;
  Matrix<Scalar> eq_matrix;
  Vector<Scalar> eq_rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <typename Scalar>
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vector<Scalar> solution;          // present iff optimal
  Scalar objective_value = Scalar(0);  // present iff optimal
};

inline const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace detail {

// Dense tableau simplex core. Bland's rule throughout: entering column is
// the smallest index with reduced cost below -pivot_tol, leaving row is the
// minimum ratio with ties broken by the smallest basic variable index. The
// combination cannot cycle, so every run terminates.
template <typename Scalar>
class SimplexTableau {
public:
  static constexpr Scalar kPivotTol = Scalar(1e-10);
  static constexpr Scalar kFeasTol = Scalar(1e-9);

  SimplexTableau(Matrix<Scalar> tableau, std::vector<Index> basis, Index rhs_col)
      : T_(std::move(tableau)), basis_(std::move(basis)), rhs_(rhs_col) {}

  enum class Step { Optimal, Unbounded };

  /// Runs Bland-rule pivots until the reduced costs over columns
  /// [0, enter_limit) are nonnegative or an unbounded ray appears.
  Step iterate(Vector<Scalar>& d, Scalar& z, Index enter_limit) {
    const long max_pivots = 1000 * static_cast<long>(T_.rows() + T_.cols() + 16);
    for (long pivots = 0; pivots < max_pivots; ++pivots) {
      Index pc = -1;
      for (Index j = 0; j < enter_limit; ++j) {
        if (d(j) < -kPivotTol) {
          pc = j;
          break;
        }
      }
      if (pc < 0) return Step::Optimal;

      Index pr = -1;
      Scalar best_ratio = Scalar(0);
      for (Index i = 0; i < T_.rows(); ++i) {
        if (T_(i, pc) <= kPivotTol) continue;
        const Scalar ratio = T_(i, rhs_) / T_(i, pc);
        if (pr < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] <
                                        basis_[static_cast<std::size_t>(pr)])) {
          pr = i;
          best_ratio = ratio;
        }
      }
      if (pr < 0) return Step::Unbounded;
      pivot(pr, pc, d, z);
    }
    throw ConvergenceError("simplex: pivot limit exceeded");
  }

  void pivot(Index pr, Index pc, Vector<Scalar>& d, Scalar& z) {
    T_.row(pr) /= T_(pr, pc);
    for (Index i = 0; i < T_.rows(); ++i) {
      if (i == pr) continue;
      const Scalar factor = T_(i, pc);
      if (factor != Scalar(0)) T_.row(i) -= factor * T_.row(pr);
    }
    z += d(pc) * T_(pr, rhs_);
    d -= d(pc) * T_.row(pr).head(d.size()).transpose();
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  Matrix<Scalar>& tableau() { return T_; }
  std::vector<Index>& basis() { return basis_; }
  Index rhs_col() const { return rhs_; }

private:
  Matrix<Scalar> T_;
  std::vector<Index> basis_;
  Index rhs_;
};

}  // namespace detail

/// Two-phase primal simplex. Deterministic: identical inputs walk identical
/// pivot sequences and return identical outcomes.
template <typename Scalar>
LpOutcome<Scalar> solve(const LinearProgram<Scalar>& lp) {
  using Tableau = detail::SimplexTableau<Scalar>;
  const Index rows = lp.eq_matrix.rows();
  const Index k = lp.eq_matrix.cols();
  if (k < 1 || rows < 1)
    throw DimensionError("solve: empty linear program");
  if (lp.objective.size() != k)
    throw DimensionError("solve: objective length must equal variable count");
  if (lp.eq_rhs.size() != rows)
    throw DimensionError("solve: rhs length must equal constraint count");

  // Phase 1: artificial variable per row, rhs made nonnegative first.
  Matrix<Scalar> T(rows, k + rows + 1);
  T.setZero();
  T.leftCols(k) = lp.eq_matrix;
  T.col(k + rows) = lp.eq_rhs;
  std::vector<Index> basis(static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i) {
    if (T(i, k + rows) < Scalar(0)) T.row(i) = -T.row(i);
    T(i, k + i) = Scalar(1);
    basis[static_cast<std::size_t>(i)] = k + i;
  }

  Tableau phase1(std::move(T), std::move(basis), k + rows);
  Vector<Scalar> d = -phase1.tableau().leftCols(k + rows).colwise().sum();
  d.tail(rows).setZero();  // artificial columns start basic with zero cost
  Scalar z = phase1.tableau().col(k + rows).sum();
  if (phase1.iterate(d, z, k) == Tableau::Step::Unbounded)
    throw ConvergenceError("simplex: phase 1 reported an unbounded ray");

  if (z > Tableau::kFeasTol) return {LpStatus::Infeasible, {}, Scalar(0)};

  // Pivot leftover artificials out; a row that offers no pivot is redundant.
  std::vector<Index> keep;
  for (Index i = 0; i < rows; ++i) {
    if (phase1.basis()[static_cast<std::size_t>(i)] < k) {
      keep.push_back(i);
      continue;
    }
    Index pc = -1;
    for (Index j = 0; j < k; ++j) {
      if (std::abs(phase1.tableau()(i, j)) > Tableau::kPivotTol) {
        pc = j;
        break;
      }
    }
    if (pc >= 0) {
      phase1.pivot(i, pc, d, z);
      keep.push_back(i);
    }
  }

  // Phase 2 tableau: surviving rows, original columns plus rhs.
  const Index rows2 = static_cast<Index>(keep.size());
  Matrix<Scalar> T2(rows2, k + 1);
  std::vector<Index> basis2(static_cast<std::size_t>(rows2));
  for (Index i = 0; i < rows2; ++i) {
    T2.row(i).head(k) = phase1.tableau().row(keep[static_cast<std::size_t>(i)]).head(k);
    T2(i, k) = phase1.tableau()(keep[static_cast<std::size_t>(i)], k + rows);
    basis2[static_cast<std::size_t>(i)] =
        phase1.basis()[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])];
  }

  Tableau phase2(std::move(T2), std::move(basis2), k);
  Vector<Scalar> d2 = lp.objective;
  Scalar z2 = Scalar(0);
  for (Index i = 0; i < rows2; ++i) {
    const Index b = phase2.basis()[static_cast<std::size_t>(i)];
    const Scalar cost = lp.objective(b);
    if (cost != Scalar(0)) {
      d2 -= cost * phase2.tableau().row(i).head(k).transpose();
      z2 += cost * phase2.tableau()(i, k);
    }
  }
  if (phase2.iterate(d2, z2, k) == Tableau::Step::Unbounded)
    return {LpStatus::Unbounded, {}, Scalar(0)};

  LpOutcome<Scalar> out;
  out.status = LpStatus::Optimal;
  out.solution = Vector<Scalar>::Zero(k);
  for (Index i = 0; i < rows2; ++i)
    out.solution(phase2.basis()[static_cast<std::size_t>(i)]) =
        phase2.tableau()(i, k);
  out.objective_value = lp.objective.dot(out.solution);
  return out;
}

/// l1 minimization  min ||x||_1  s.t.  A x = y  via the split x = p - q with
/// p, q >= 0 and objective sum(p) + sum(q). At any basic optimum p and q have
/// disjoint supports, so the LP objective equals ||p - q||_1.
template <typename Derived, typename RhsDerived>
LpOutcome<typename Derived::Scalar> basis_pursuit(
    const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<RhsDerived>& y) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  const Index n = A.rows();
  const Index m = A.cols();
  if (y.size() != n)
    throw DimensionError("basis_pursuit: y length must equal row count");

  LinearProgram<Scalar> lp;
  lp.objective = Vector<Scalar>::Ones(2 * m);
  lp.eq_matrix.resize(n, 2 * m);
  lp.eq_matrix.leftCols(m) = A;
  lp.eq_matrix.rightCols(m) = -A;
  lp.eq_rhs = y;

  LpOutcome<Scalar> split = solve(lp);
  if (split.status != LpStatus::Optimal) return {split.status, {}, Scalar(0)};

  LpOutcome<Scalar> out;
  out.status = LpStatus::Optimal;
  out.solution = split.solution.head(m) - split.solution.tail(m);
  out.objective_value = out.solution.template lpNorm<1>();
  return out;
}

}  // namespace sparsecert
