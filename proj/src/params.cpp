#include "arbsample/params.hpp"

#include "arbsample/errors.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace arbsample {

std::uint32_t ceil_log2(std::uint64_t n) {
  if (n <= 1)
    return 0;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

SamplerParams SamplerParams::custom(std::size_t n, std::uint64_t theta, std::uint32_t ell,
                                    double beta, double eps, std::uint32_t alpha) {
  if (theta == 0)
    throw InputError("theta must be positive");
  SamplerParams p;
  p.n = n;
  p.alpha = alpha;
  p.eps = eps;
  p.theta = theta;
  p.beta = beta;
  p.ell = ell;
  const auto width = static_cast<std::uint64_t>(ell) + 1;
  if (n != 0 && theta > std::numeric_limits<std::uint64_t>::max() / n / width)
    throw SizeError("rho = n * theta * (ell + 1) overflows 64 bits");
  p.rho = static_cast<std::uint64_t>(n) * theta * width;
  return p;
}

SamplerParams default_params(std::size_t n, std::uint32_t alpha, double eps) {
  if (n < 2)
    throw InputError("sampler parameters need n >= 2");
  if (alpha < 1)
    throw InputError("arboricity bound must be at least 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw InputError("eps must lie in (0, 1)");

  const std::uint32_t log_n = ceil_log2(n);
  // Snap quotients that land within floating-point noise above an integer
  // (e.g. 24 / 0.1) back onto it; the relative slack is far below any eps
  // a caller can meaningfully pass.
  const long double raw = 4.0L * alpha * log_n / static_cast<long double>(eps);
  const long double snapped = std::ceil(raw - raw * 1e-12L);
  if (snapped > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
    throw SizeError("theta overflows 64 bits");
  const auto theta = static_cast<std::uint64_t>(snapped);

  return SamplerParams::custom(n, theta, log_n, eps / (2.0 * log_n), eps, alpha);
}

} // namespace arbsample
