#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sparsecert/matrix.hpp"
#include "sparsecert/types.hpp"

namespace sparsecert {

// Seed portability: std::mt19937_64 is fully specified by the standard, and
// std::normal_distribution is not, so normal draws use an explicit
// Box-Muller transform on top of the raw 64-bit stream:
//   u = (x >> 11 + 1) * 2^-53   in (0, 1]
//   z0 = sqrt(-2 ln u1) * cos(2 pi u2)
//   z1 = sqrt(-2 ln u1) * sin(2 pi u2)
// Both z0 and z1 are consumed, in that order. Bounded integers come from
// rejection sampling on the top of the 64-bit range. The same seed therefore
// reproduces the same stream on any build of this library.

/// One uniform double in (0, 1] from a raw 64-bit draw.
inline double uniform_unit(std::mt19937_64& rng) {
  const std::uint64_t bits = rng() >> 11;  // 53 random bits
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

/// Standard normal sampler (Box-Muller, both branches used).
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
  explicit NormalSampler(std::mt19937_64 rng) : rng_(rng) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_unit(rng_);
    const double u2 = uniform_unit(rng_);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform integer in [0, k) by rejection; unbiased for any k >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % k;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % k;
}

/// Uniformly random size-s subset of [0, m), returned sorted.
/// Partial Fisher-Yates over the index array.
inline SupportSet sample_support(std::mt19937_64& rng, Index m, Index s) {
  if (s < 0 || s > m) throw DimensionError("sample_support: need 0 <= s <= m");
  std::vector<Index> pool(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < s; ++i) {
    const auto j =
        i + static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(m - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(s));
  return SupportSet(std::move(pool));
}

enum class GeneratorKind {
  Gaussian,        ///< i.i.d. standard normal entries
  IdentityPadded,  ///< [I_n | G] with G Gaussian, needs cols >= rows
  CustomKernel,    ///< Gaussian matrix projected to annihilate a random direction
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Gaussian;
  Index rows = 0;
  Index cols = 0;
  std::uint64_t seed = 0;
  bool normalize_columns = false;
};

/// Deterministic test-matrix supply: the same spec always yields the same
/// matrix. Gaussian entries are drawn row by row.
template <typename Scalar = double>
Matrix<Scalar> generate(const GeneratorSpec& spec) {
  const Index n = spec.rows;
  const Index m = spec.cols;
  if (n < 1 || m < 1)
    throw DimensionError("generate: rows and cols must be positive");

  NormalSampler normal(spec.seed);
  auto fill_gaussian = [&](auto&& block) {
    for (Index i = 0; i < block.rows(); ++i)
      for (Index j = 0; j < block.cols(); ++j)
        block(i, j) = static_cast<Scalar>(normal());
  };

  Matrix<Scalar> A(n, m);
  switch (spec.kind) {
    case GeneratorKind::Gaussian:
      fill_gaussian(A);
      break;
    case GeneratorKind::IdentityPadded: {
      if (m < n)
        throw DimensionError("generate: identity-padded needs cols >= rows");
      A.leftCols(n) = Matrix<Scalar>::Identity(n, n);
      if (m > n) fill_gaussian(A.rightCols(m - n));
      break;
    }
    case GeneratorKind::CustomKernel: {
      if (m <= n)
        throw DimensionError("generate: custom-kernel needs cols > rows");
      fill_gaussian(A);
      Vector<Scalar> v(m);
      for (Index i = 0; i < m; ++i) v(i) = static_cast<Scalar>(normal());
      // A <- A - (A v) v^T / (v^T v), so v lies in the kernel up to rounding.
      const Vector<Scalar> Av = A * v;
      A.noalias() -= Av * (v.transpose() / v.squaredNorm());
      break;
    }
  }
  if (spec.normalize_columns) A = normalize_columns(A);
  return A;
}

}  // namespace sparsecert
