#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mevmix/model.hpp"

namespace mevmix::verify {

struct CheckResult {
  std::string id;     // short stable identifier, e.g. "bivariate-logistic"
  std::string title;
  bool passed = false;
  std::string detail;  // worst deviation or first failure
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 = none
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  std::size_t samples = 1'000'000;
};

// Closed-form value and Monte Carlo estimate of the bivariate tail
// dependence 2 - 2^alpha for the symmetric logistic model, alpha in
// {0.3, 0.5, 0.9}.
CheckResult bivariate_logistic(const SuiteOptions& options);
// Laplace transform of the positive stable sampler, alpha in {0.2, 0.5, 0.8},
// t in {0.5, 1, 2}.
CheckResult laplace_transform(const SuiteOptions& options);
// Max-stability and uniform margins on 1000 random (model, u, t) triples.
CheckResult max_stability_and_margins(const SuiteOptions& options);
// Generic inclusion-exclusion engine against the closed forms for
// independence and M4 components, every J.
CheckResult engine_closed_form(const SuiteOptions& options);
// q = 1, alpha = 1, M4: lambda_{s,t} = 2 - sum max(a_s, a_t).
CheckResult m4_single_component(const SuiteOptions& options);
// Single-mixture vs Gumbel, all-alpha = 1 collapse, Cuadras-Auge.
CheckResult case_reductions(const SuiteOptions& options);
// Equal weights per component: the tail mass is the weighted sum of the
// component masses.
CheckResult convex_combination(const SuiteOptions& options);
// Sampler joint law against the exact copula on five canonical models.
CheckResult sampler_joint_law(const SuiteOptions& options);
// Tail dependence of the logistic model depends on the mixing index.
CheckResult mixing_dependence(const SuiteOptions& options);

std::vector<CheckResult> run_suite(const SuiteOptions& options);

// Property checks for one model: margins, max-stability, Frechet bounds,
// closed forms vs engine where applicable, sampler CDF and empirical tail
// dependence against the analytic values.
std::vector<CheckResult> check_model(const MevMixModel& m, const std::string& name,
                                     const SuiteOptions& options);

struct NamedModel {
  std::string name;
  MevMixModel model;
};

// One model per construction: single mixture, asymmetric logistic, Tawn,
// geometric mean, and a mixture of M4 components.
std::vector<NamedModel> canonical_models();

// Fixed-width table, one line per check, plus a summary line.
std::string format_table(const std::vector<CheckResult>& results);

}  // namespace mevmix::verify
