#pragma once

#include <cstddef>
#include <vector>

#include "mevmix/copula.hpp"
#include "mevmix/model.hpp"
#include "mevmix/rng.hpp"

namespace mevmix {

// Generators of random valid parameter sets, used by the property checks and
// benchmarks.

// lags x shifts x d coefficients; every column sums to 1 (to rounding) and
// each signal carries some zero entries at random.
M4Coefficients random_m4_coefficients(Rng& rng, std::size_t lags, std::size_t shifts,
                                      std::size_t dimension);

// q x d nonnegative weights with unit column sums. With `allow_zeros`, about
// one entry in five is zero (never a whole column).
std::vector<std::vector<double>> random_weights(Rng& rng, std::size_t q, std::size_t dimension,
                                                bool allow_zeros = true);

// Uniform on [lo, hi].
double random_alpha(Rng& rng, double lo = 0.1, double hi = 1.0);

MaxStableCopula random_copula(Rng& rng, std::size_t dimension, const std::vector<CopulaKind>& kinds);

struct RandomModelOptions {
  std::size_t dimension = 3;
  std::size_t components = 2;
  std::vector<CopulaKind> kinds{CopulaKind::independence, CopulaKind::comonotone,
                                CopulaKind::gumbel, CopulaKind::m4};
  // beta_ji = beta_j for all i.
  bool shared_weights = false;
  bool allow_zero_weights = true;
};

MevMixModel random_model(Rng& rng, const RandomModelOptions& options);

}  // namespace mevmix
