#include "mevmix/random_models.hpp"

#include <algorithm>

#include "mevmix/error.hpp"

namespace mevmix {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)) % n;
}

}  // namespace

M4Coefficients random_m4_coefficients(Rng& rng, std::size_t lags, std::size_t shifts,
                                      std::size_t dimension) {
  const std::size_t signals = lags * shifts;
  std::vector<double> values(signals * dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    double sum = 0.0;
    for (std::size_t s = 0; s < signals; ++s) {
      double v = rng.uniform() < 0.25 ? 0.0 : rng.exponential();
      values[s * dimension + i] = v;
      sum += v;
    }
    if (sum == 0.0) {
      values[pick(rng, signals) * dimension + i] = 1.0;
      sum = 1.0;
    }
    for (std::size_t s = 0; s < signals; ++s) values[s * dimension + i] /= sum;
  }
  return M4Coefficients(lags, shifts, dimension, std::move(values));
}

std::vector<std::vector<double>> random_weights(Rng& rng, std::size_t q, std::size_t dimension,
                                                bool allow_zeros) {
  std::vector<std::vector<double>> b(q, std::vector<double>(dimension));
  for (std::size_t i = 0; i < dimension; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      const double v = allow_zeros && q > 1 && rng.uniform() < 0.2 ? 0.0 : rng.exponential();
      b[j][i] = v;
      sum += v;
    }
    if (sum == 0.0) {
      b[pick(rng, q)][i] = 1.0;
      sum = 1.0;
    }
    for (std::size_t j = 0; j < q; ++j) b[j][i] /= sum;
  }
  return b;
}

double random_alpha(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

MaxStableCopula random_copula(Rng& rng, std::size_t dimension, const std::vector<CopulaKind>& kinds) {
  if (kinds.empty()) throw config_error("random_copula needs at least one copula kind");
  switch (kinds[pick(rng, kinds.size())]) {
    case CopulaKind::independence: return MaxStableCopula::independence(dimension);
    case CopulaKind::comonotone: return MaxStableCopula::comonotone(dimension);
    case CopulaKind::gumbel: return MaxStableCopula::gumbel(dimension, random_alpha(rng, 0.2, 1.0));
    case CopulaKind::m4:
      return MaxStableCopula::m4(
          random_m4_coefficients(rng, 1 + pick(rng, 3), 1 + pick(rng, 3), dimension));
  }
  throw config_error("unknown copula kind");
}

MevMixModel random_model(Rng& rng, const RandomModelOptions& options) {
  const std::size_t d = options.dimension;
  const std::size_t q = options.components;
  std::vector<MixtureComponent> comps(q);
  if (options.shared_weights) {
    auto w = random_weights(rng, q, 1, false);
    for (std::size_t j = 0; j < q; ++j) comps[j].beta.assign(d, w[j][0]);
  } else {
    auto w = random_weights(rng, q, d, options.allow_zero_weights);
    for (std::size_t j = 0; j < q; ++j) comps[j].beta = std::move(w[j]);
  }
  for (auto& c : comps) {
    // A quarter of the components are non-mixed (alpha = 1).
    c.alpha = rng.uniform() < 0.25 ? 1.0 : random_alpha(rng);
    c.copula = random_copula(rng, d, options.kinds);
  }
  return MevMixModel(d, std::move(comps));
}

}  // namespace mevmix
