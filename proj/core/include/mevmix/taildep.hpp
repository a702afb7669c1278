#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mevmix/model.hpp"
#include "mevmix/subset.hpp"

namespace mevmix {

// Alternating inclusion-exclusion sum with its positive and negative parts
// kept apart, so that cancellation can be diagnosed.
struct AlternatingSum {
  double positive = 0.0;  // sum of terms with sign +1
  double negative = 0.0;  // sum of |terms| with sign -1

  double value() const { return positive - negative; }
  // log10((positive + negative) / |value|): decimal digits lost to
  // cancellation. +inf when the sum cancels to zero.
  double digits_lost() const;
};

// Results losing more digits than this are flagged as ill-conditioned.
inline constexpr double kMaxDigitsLost = 6.0;

enum class TailDepMethod { analytic_generic, analytic_closed_form, empirical };

std::string to_string(TailDepMethod method);

enum class MarginTransform {
  frechet,  // u = exp(-1/y), exact for unit Frechet samples
  ranks,    // u = rank / (n + 1) per column, for data with unknown margins
};

// Orthant tail dependence coefficient
//
//   lambda_J = lim_{u -> 1} P(all F_i(Y_i) > u | F_j(Y_j) > u for j in J)
//
// with the masses of the ratio it is computed from.
struct TailDepReport {
  std::size_t dimension = 0;
  SubsetMask conditioning{1};  // J
  double lambda = 0.0;
  double numerator_mass = 0.0;    // over all coordinates
  double denominator_mass = 0.0;  // over J
  TailDepMethod method = TailDepMethod::analytic_generic;
  // Set when the denominator is not positive (analytic) or the conditioning
  // event was never observed (empirical); lambda is NaN then.
  bool degenerate = false;
  // Cancellation diagnostic of the numerator sum (analytic methods).
  double digits_lost = 0.0;
  bool ill_conditioned = false;
  // Empirical only.
  std::optional<double> threshold;
  std::optional<std::size_t> sample_count;
  std::optional<std::size_t> joint_exceedances;
  std::optional<std::size_t> conditioning_exceedances;
  std::optional<double> standard_error;
};

// sum_{nonempty B subset of A} (-1)^(|B|-1) l_Y(1_B), where 1_B is the
// indicator vector of B. For a max-stable copula C_B(u, ..., u) = u^l_Y(1_B)
// exactly, so this is the limit of P(F_i(Y_i) > u, i in A) / (1 - u).
// Equal to 1 for singletons. Throws domain_error if A does not fit.
double orthant_mass(const MevMixModel& m, SubsetMask a);
AlternatingSum orthant_mass_terms(const MevMixModel& m, SubsetMask a);

// lambda_J = orthant_mass(D) / orthant_mass(J). Throws domain_error for an
// invalid model or a J that does not fit.
TailDepReport orthant_lambda(const MevMixModel& m, SubsetMask j);

// Closed form for all-independence components:
//   mass(A) = sum_j sum_{B subset A} (-1)^(|B|-1) (sum_{i in B} beta_ji^(1/alpha_j))^alpha_j
// Throws domain_error on invalid parameters.
TailDepReport orthant_lambda_logistic(const std::vector<double>& alphas,
                                      const std::vector<std::vector<double>>& betas,
                                      SubsetMask j);

// lambda_{s,t} = lim P(F_s(Y_s) > u | F_t(Y_t) > u), zero-based s != t.
// Uses a closed form when one applies (all independence components; all M4
// components; q = 1 via lambda = 2 - (2 - lambda_{s,t}(C_1))^alpha) and the
// generic engine otherwise. Throws domain_error for s == t.
double bivariate_lambda(const MevMixModel& m, std::size_t s, std::size_t t);

// The generic route for bivariate_lambda, without closed-form dispatch.
double bivariate_lambda_generic(const MevMixModel& m, std::size_t s, std::size_t t);

// M4 closed forms. All throw unsupported_error unless every component is M4.
//
//   mass(A) = sum_j sum_{B subset A} (-1)^(|B|-1) (sum_{l,k} max_{i in B} a_lki beta_ji^(1/alpha_j))^alpha_j
double m4_orthant_mass(const MevMixModel& m, SubsetMask a);
// m4_orthant_mass over all coordinates.
double m4_singleton_numerator(const MevMixModel& m);
TailDepReport m4_orthant_lambda(const MevMixModel& m, SubsetMask j);
//   lambda_{s,t} = 2 - sum_j (sum_{l,k} max(a_lks beta_js^(1/alpha_j), a_lkt beta_jt^(1/alpha_j)))^alpha_j
double m4_bivariate_lambda(const MevMixModel& m, std::size_t s, std::size_t t);

// Minimum sample count accepted by empirical_lambda.
inline constexpr std::size_t kMinEmpiricalSamples = 10'000;

// #{rows with every coordinate above u} / #{rows with the coordinates of J
// above u}, after mapping each column to the uniform scale. Standard error is
// sqrt(lambda (1 - lambda) / #conditioning). Throws config_error for fewer
// than kMinEmpiricalSamples rows, domain_error for u outside (0,1) or a J
// that does not fit.
TailDepReport empirical_lambda(const SampleMatrix& samples, SubsetMask j, double u,
                               MarginTransform transform = MarginTransform::frechet);

}  // namespace mevmix
