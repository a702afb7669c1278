#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mevmix/rng.hpp"

namespace mevmix {

// Stability index of a positive stable law, 0 < alpha <= 1.
class StableAlpha {
 public:
  // Throws domain_error naming the value when alpha is outside (0, 1].
  explicit StableAlpha(double alpha);

  double value() const { return alpha_; }
  // alpha == 1: the law is the point mass at 1.
  bool degenerate() const { return alpha_ == 1.0; }

 private:
  double alpha_;
};

// One draw S > 0 with Laplace transform E exp(-t S) = exp(-t^alpha).
//
// Uses Kanter's representation: with U ~ Uniform(0, pi) and E ~ Exp(1),
//
//   S = sin(alpha U) / sin(U)^(1/alpha) * (sin((1 - alpha) U) / E)^((1 - alpha) / alpha)
//
// which has unit scale in the above sense. Two uniforms per draw, no
// rejection. Evaluated in log space; very large draws may overflow to +inf,
// which downstream code treats as a legitimate value. alpha == 1 returns
// exactly 1 without consuming randomness.
double sample_positive_stable(StableAlpha alpha, Rng& rng);

struct LaplaceCheckRow {
  double t = 0.0;
  double empirical = 0.0;  // mean of exp(-t S)
  double exact = 0.0;      // exp(-t^alpha)
  double standard_error = 0.0;
  bool pass = false;       // |empirical - exact| <= 3 standard errors
};

// Minimum sample count accepted by laplace_transform_check.
inline constexpr std::size_t kMinLaplaceSamples = 10'000;

// Monte Carlo check of the Laplace transform at each t from n shared draws.
// Throws config_error when n < kMinLaplaceSamples, domain_error for t <= 0.
std::vector<LaplaceCheckRow> laplace_transform_check(StableAlpha alpha,
                                                     std::span<const double> t_values,
                                                     std::size_t n, Rng& rng);

}  // namespace mevmix
