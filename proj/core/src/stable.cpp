#include "mevmix/stable.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mevmix/error.hpp"

namespace mevmix {

StableAlpha::StableAlpha(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " is outside (0, 1]";
    throw domain_error(msg.str());
  }
}

double sample_positive_stable(StableAlpha alpha, Rng& rng) {
  if (alpha.degenerate()) return 1.0;
  const double a = alpha.value();
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  const double log_s = std::log(std::sin(a * u)) - std::log(std::sin(u)) / a +
                       (1.0 - a) / a * (std::log(std::sin((1.0 - a) * u)) - std::log(e));
  return std::exp(log_s);
}

std::vector<LaplaceCheckRow> laplace_transform_check(StableAlpha alpha,
                                                     std::span<const double> t_values,
                                                     std::size_t n, Rng& rng) {
  if (n < kMinLaplaceSamples)
    throw config_error("laplace_transform_check needs n >= " + std::to_string(kMinLaplaceSamples) +
                       ", got " + std::to_string(n));
  for (double t : t_values)
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("t values must be positive and finite");

  const std::size_t m = t_values.size();
  // Welford accumulators, one per t; exact for constant input.
  std::vector<double> mean(m, 0.0), m2(m, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double s = sample_positive_stable(alpha, rng);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = std::exp(-t_values[i] * s);
      const double delta = v - mean[i];
      mean[i] += delta / static_cast<double>(k);
      m2[i] += delta * (v - mean[i]);
    }
  }

  std::vector<LaplaceCheckRow> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = rows[i];
    row.t = t_values[i];
    row.empirical = mean[i];
    row.exact = std::exp(-std::pow(t_values[i], alpha.value()));
    const double variance = m2[i] / static_cast<double>(n - 1);
    row.standard_error = std::sqrt(variance / static_cast<double>(n));
    row.pass = std::abs(row.empirical - row.exact) <= 3.0 * row.standard_error;
  }
  return rows;
}

}  // namespace mevmix
