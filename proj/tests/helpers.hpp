#pragma once

// Test-only reference implementations, kept independent of the library code
// they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sparsecert/generate.hpp"
#include "sparsecert/types.hpp"

namespace testref {

using sparsecert::Index;
using sparsecert::Matrixd;
using sparsecert::Vectord;

/// Plain triple-loop Gram computation, entry by entry.
inline Matrixd naive_gram(const Matrixd& A) {
  Matrixd C(A.cols(), A.cols());
  for (Index i = 0; i < A.cols(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      double acc = 0.0;
      for (Index k = 0; k < A.rows(); ++k) acc += A(k, i) * A(k, j);
      C(i, j) = acc;
    }
  }
  return C;
}

/// Recursive subset enumeration, independent of the library's iterator.
inline void all_subsets_of_size(Index m, Index s,
                                const std::function<void(const std::vector<Index>&)>& fn) {
  std::vector<Index> current;
  std::function<void(Index)> recurse = [&](Index next) {
    if (static_cast<Index>(current.size()) == s) {
      fn(current);
      return;
    }
    if (next >= m) return;
    current.push_back(next);
    recurse(next + 1);
    current.pop_back();
    recurse(next + 1);
  };
  recurse(0);
}

/// Brute-force maximum of sum(rho over S) across all |S| = s.
inline double brute_force_max_score(const Vectord& rho, Index s) {
  double best = 0.0;
  bool first = true;
  all_subsets_of_size(rho.size(), s, [&](const std::vector<Index>& subset) {
    double total = 0.0;
    for (Index i : subset) total += rho(i);
    if (first || total > best) best = total;
    first = false;
  });
  return best;
}

/// Closed-form eigenvalues of [[a, b], [b, c]], ascending.
inline std::pair<double, double> symmetric_2x2_eigenvalues(double a, double b, double c) {
  const double mean = 0.5 * (a + c);
  const double radius = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return {mean - radius, mean + radius};
}

struct RefLp {
  Vectord c;
  Matrixd E;
  Vectord b;
};

/// Random standard-form LP with full row rank, mixing feasible right-hand
/// sides (built from a nonnegative point) with arbitrary ones.
inline RefLp random_lp(sparsecert::NormalSampler& sampler, Index k, Index r) {
  RefLp lp;
  while (true) {
    lp.E.resize(r, k);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < k; ++j) lp.E(i, j) = sampler();
    if (Eigen::FullPivLU<Matrixd>(lp.E).rank() == r) break;
  }
  lp.c.resize(k);
  for (Index j = 0; j < k; ++j) lp.c(j) = sampler();
  lp.b.resize(r);
  if (sparsecert::uniform_below(sampler.engine(), 2) == 0) {
    Vectord x0(k);
    for (Index j = 0; j < k; ++j) x0(j) = std::abs(sampler());
    lp.b = lp.E * x0;
  } else {
    for (Index i = 0; i < r; ++i) lp.b(i) = sampler();
  }
  return lp;
}

enum class RefLpStatus { Optimal, Infeasible, Unbounded };

struct RefLpResult {
  RefLpStatus status = RefLpStatus::Infeasible;
  double objective = 0.0;
};

/// Reference LP solve by brute force over basis sets: enumerate every square
/// column subset, keep basic feasible solutions for the minimum, and scan
/// basic directions for an improving feasible ray. Valid whenever E has full
/// row rank, which the callers guarantee.
inline RefLpResult reference_lp_solve(const Vectord& c, const Matrixd& E,
                                      const Vectord& b) {
  const Index r = E.rows();
  const Index k = E.cols();
  constexpr double kTol = 1e-9;

  RefLpResult result;
  bool any_vertex = false;
  double best = 0.0;
  bool improving_ray = false;

  all_subsets_of_size(k, r, [&](const std::vector<Index>& basis) {
    Matrixd B(r, r);
    for (Index j = 0; j < r; ++j) B.col(j) = E.col(basis[static_cast<std::size_t>(j)]);
    Eigen::FullPivLU<Matrixd> lu(B);
    if (!lu.isInvertible()) return;

    const Vectord xb = lu.solve(b);
    if ((xb.array() >= -kTol).all()) {
      double value = 0.0;
      for (Index j = 0; j < r; ++j) value += c(basis[static_cast<std::size_t>(j)]) * xb(j);
      if (!any_vertex || value < best) best = value;
      any_vertex = true;
    }

    // Basic directions: nonbasic j enters with weight 1.
    for (Index j = 0; j < k; ++j) {
      bool in_basis = false;
      for (Index idx : basis) in_basis |= (idx == j);
      if (in_basis) continue;
      const Vectord db = lu.solve(-E.col(j));
      if ((db.array() >= -kTol).all()) {
        double cost = c(j);
        for (Index t = 0; t < r; ++t) cost += c(basis[static_cast<std::size_t>(t)]) * db(t);
        if (cost < -kTol) improving_ray = true;
      }
    }
  });

  if (!any_vertex) {
    result.status = RefLpStatus::Infeasible;
  } else if (improving_ray) {
    result.status = RefLpStatus::Unbounded;
  } else {
    result.status = RefLpStatus::Optimal;
    result.objective = best;
  }
  return result;
}

}  // namespace testref
