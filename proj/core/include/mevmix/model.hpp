#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mevmix/copula.hpp"
#include "mevmix/subset.hpp"

namespace mevmix {

// One (alpha_j, beta_j, C_j) triple. alpha is stored raw so that an invalid
// value can be reported by validate_model() rather than thrown on.
struct MixtureComponent {
  double alpha = 1.0;
  std::vector<double> beta;
  MaxStableCopula copula = MaxStableCopula::independence(1);
};

// Max-stable mixture model with unit Frechet margins and exponent
//
//   l_Y(x) = sum_j l_j((beta_j1 x_1)^(1/alpha_j), ..., (beta_jd x_d)^(1/alpha_j))^alpha_j
//
// where component j is the copula C_j scaled by a positive alpha_j-stable
// variable. The margins are unit Frechet when every weight column sums to 1.
class MevMixModel {
 public:
  // Throws shape_error when a beta row or copula does not have `dimension`
  // entries, or when dimension is 0.
  MevMixModel(std::size_t dimension, std::vector<MixtureComponent> components);

  std::size_t dimension() const { return dimension_; }
  std::size_t component_count() const { return components_.size(); }
  const std::vector<MixtureComponent>& components() const { return components_; }
  const MixtureComponent& component(std::size_t j) const { return components_.at(j); }

  // True when every component copula has the given kind.
  bool all_copulas_are(CopulaKind kind) const;

 private:
  std::size_t dimension_;
  std::vector<MixtureComponent> components_;
};

// Tolerance on sum_j beta_ji = 1.
inline constexpr double kWeightSumTolerance = 1e-12;

// Violations of the model invariants, including those of each copula.
std::vector<std::string> validate_model(const MevMixModel& m);
// Throws domain_error listing the violations, if any.
void require_valid(const MevMixModel& m);

// l_Y(x) for x >= 0 (entries may be +inf). Throws shape_error / domain_error.
double model_exponent(const MevMixModel& m, std::span<const double> x);
// Extended precision, used by the tail dependence engine.
long double model_exponent(const MevMixModel& m, std::span<const long double> x);
// exp(-l_Y(-ln u)). Throws shape_error / domain_error.
double model_cdf(const MevMixModel& m, std::span<const double> u);

// n x d row-major matrix of draws.
struct SampleMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
};

// Draws per random stream when sampling in chunks. Part of the output
// contract: changing it changes the samples produced for a given seed.
inline constexpr std::size_t kSampleChunk = 4096;

struct SampleOptions {
  std::uint64_t seed = 42;
  // 0 = hardware concurrency. Never affects the result.
  std::size_t threads = 1;
};

// n draws of Y with unit Frechet margins. Chunk c of kSampleChunk draws uses
// Rng::for_stream(seed, c), so output is identical for any thread count.
// Throws domain_error if the model is invalid.
SampleMatrix sample_model(const MevMixModel& m, std::size_t n, const SampleOptions& options);

// One draw of Y using `rng` directly.
void sample_model_once(const MevMixModel& m, Rng& rng, std::span<double> y);

// u = exp(-1/y), elementwise.
SampleMatrix frechet_to_uniform(const SampleMatrix& y);

// q = 1 with weight 1 on every coordinate: C_Y(u) = exp(-l_1((-ln u)^(1/alpha))^alpha).
MevMixModel make_single_mixture(double alpha, MaxStableCopula copula);

// All copulas independent; betas is q rows of d weights.
MevMixModel make_asymmetric_logistic(const std::vector<double>& alphas,
                                     const std::vector<std::vector<double>>& betas);

// One term per subset A with its own alpha_A and weights beta_Ai for i in A
// (listed in increasing coordinate order). Weights outside A are zero.
struct TawnTerm {
  SubsetMask subset;
  double alpha;
  std::vector<double> beta;
  // Copula on the |A| coordinates of A, in increasing order; independence
  // when absent.
  std::optional<MaxStableCopula> copula;
};

// Components act on the coordinates of their subset only. Throws shape_error
// for weights that do not match the subset size.
MevMixModel make_tawn_model(std::size_t dimension, const std::vector<TawnTerm>& terms);

// beta_ji = weights[j] for every i.
MevMixModel make_geometric_mean(const std::vector<double>& weights,
                                const std::vector<double>& alphas,
                                const std::vector<MaxStableCopula>& copulas);

}  // namespace mevmix
