#pragma once

#include <cstddef>
#include <cstdint>

namespace arbsample {

/// ceil(log2 n) for n >= 1.
std::uint32_t ceil_log2(std::uint64_t n);

/**
   Constants driving the edge sampler.

   theta is the leaf-degree threshold, ell the maximal walk length, beta the
   layering slack and rho = n * theta * (ell + 1) the per-ordered-edge
   probability ceiling reciprocal.
 */
struct SamplerParams {
  std::size_t n = 0;
  std::uint32_t alpha = 0;
  double eps = 0.0;
  std::uint64_t theta = 1;
  double beta = 0.0;
  std::uint32_t ell = 0;
  std::uint64_t rho = 0;

  /// Params with explicit theta/ell/beta; rho is derived.
  static SamplerParams custom(std::size_t n, std::uint64_t theta, std::uint32_t ell,
                              double beta = 0.0, double eps = 0.0, std::uint32_t alpha = 0);
};

/// theta = ceil(4 alpha ceil(log2 n) / eps), beta = eps / (2 ceil(log2 n)),
/// ell = ceil(log2 n). Requires n >= 2, alpha >= 1, 0 < eps < 1.
SamplerParams default_params(std::size_t n, std::uint32_t alpha, double eps);

} // namespace arbsample
