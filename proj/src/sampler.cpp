#include "arbsample/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace arbsample {

std::size_t default_max_attempts(const SamplerParams &params, std::optional<std::size_t> m_hint) {
  if (!m_hint)
    return 1'000'000;
  const double attempts = 100.0 * static_cast<double>(params.rho) /
                          static_cast<double>(std::max<std::size_t>(1, *m_hint));
  return static_cast<std::size_t>(std::ceil(std::max(attempts, 1.0)));
}

std::uint64_t tvd_degree_cap(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw InputError("eps must lie in (0, 1)");
  const long double raw = 1.0L / static_cast<long double>(eps);
  return static_cast<std::uint64_t>(std::ceil(raw - raw * 1e-12L));
}

} // namespace arbsample
