#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsecert {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrixd = Matrix<double>;
using Vectord = Vector<double>;

/// Malformed input stream (bad header, row length mismatch, junk token).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A token parsed as a number but is NaN or infinite.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A column with zero norm where a positive norm is required.
class ZeroColumnError : public std::invalid_argument {
public:
  explicit ZeroColumnError(Index column)
      : std::invalid_argument("column " + std::to_string(column) +
                              " has zero norm"),
        column_(column) {}

  Index column() const { return column_; }

private:
  Index column_;
};

/// Combinatorial work would exceed the caller-supplied budget.
class BudgetError : public std::runtime_error {
public:
  BudgetError(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("enumeration requires " + std::to_string(required) +
                           " units but budget is " + std::to_string(budget)),
        required_(required), budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Strictly increasing set of column indices.
class SupportSet {
public:
  SupportSet() = default;

  SupportSet(std::initializer_list<Index> indices)
      : SupportSet(std::vector<Index>(indices)) {}

  explicit SupportSet(std::vector<Index> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
      throw std::invalid_argument("support set contains duplicate indices");
    if (!indices_.empty() && indices_.front() < 0)
      throw std::invalid_argument("support set contains negative index");
  }

  const std::vector<Index>& indices() const { return indices_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  Index operator[](Index k) const { return indices_[static_cast<std::size_t>(k)]; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(Index i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  /// Throws if any index falls outside [0, m).
  void require_within(Index m) const {
    if (!indices_.empty() && indices_.back() >= m)
      throw std::out_of_range("support index " + std::to_string(indices_.back()) +
                              " out of range for dimension " + std::to_string(m));
  }

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.indices_ == b.indices_;
  }
  friend bool operator<(const SupportSet& a, const SupportSet& b) {
    return a.indices_ < b.indices_;
  }

private:
  std::vector<Index> indices_;
};

}  // namespace sparsecert
