#include "mevmix/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "mevmix/copula.hpp"
#include "mevmix/random_models.hpp"
#include "mevmix/stable.hpp"
#include "mevmix/taildep.hpp"

namespace mevmix::verify {

namespace {

constexpr double kIdentityTol = 1e-12;

// Tracks the worst deviation seen by a check.
struct Worst {
  double value = 0.0;
  std::string where = "exact everywhere";
  void update(double deviation, const std::string& location) {
    if (std::isnan(value)) return;
    if (!(deviation <= value)) {  // NaN counts as worst
      value = deviation;
      where = location;
    }
  }
};

// Both reports degenerate counts as agreement; only one is a mismatch.
double lambda_gap(const TailDepReport& a, const TailDepReport& b) {
  if (a.degenerate || b.degenerate) return a.degenerate == b.degenerate ? 0.0 : HUGE_VAL;
  return std::abs(a.lambda - b.lambda);
}

double relative_deviation(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) / scale;
}

CheckResult timed(std::string id, std::string title, double limit,
                  const std::function<bool(std::string&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.time_limit = limit;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  // Bodies append "; "-separated pieces.
  const auto first = r.detail.find_first_not_of(' ');
  const auto last = r.detail.find_last_not_of("; ");
  r.detail = first == std::string::npos ? std::string() : r.detail.substr(first, last - first + 1);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0.0 && r.seconds > limit) {
    r.passed = false;
    r.detail += fmt::format(" [runtime {:.1f}s exceeds {:.0f}s]", r.seconds, limit);
  }
  return r;
}

std::string vec_str(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{:.4g}", i ? "," : "", v[i]);
  return s + ")";
}

// Fraction of rows with y_i <= -1/ln(g_i) for all i, i.e. U_i <= g_i.
double empirical_cdf(const SampleMatrix& y, std::span<const double> g) {
  std::vector<double> bound(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) bound[i] = -1.0 / std::log(g[i]);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < y.rows; ++r) {
    const auto row = y.row(r);
    bool in = true;
    for (std::size_t i = 0; i < g.size() && in; ++i) in = row[i] <= bound[i];
    hits += in;
  }
  return static_cast<double>(hits) / static_cast<double>(y.rows);
}

std::vector<std::vector<double>> grid_points(std::size_t d) {
  const std::vector<std::vector<double>> base{{0.3, 0.3, 0.3, 0.3},
                                              {0.5, 0.6, 0.7, 0.55},
                                              {0.8, 0.8, 0.8, 0.8},
                                              {0.9, 0.95, 0.85, 0.9},
                                              {0.2, 0.9, 0.6, 0.75}};
  std::vector<std::vector<double>> out;
  for (const auto& p : base) {
    std::vector<double> q(d);
    for (std::size_t i = 0; i < d; ++i) q[i] = p[i % p.size()];
    out.push_back(q);
  }
  return out;
}

// Sampler CDF at the grid points within 3 binomial standard errors.
bool sampler_check(const MevMixModel& m, const SampleMatrix& y, const std::string& name,
                   std::string& detail, double& worst_z) {
  bool ok = true;
  for (const auto& g : grid_points(m.dimension())) {
    const double p = model_cdf(m, g);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(y.rows));
    const double emp = empirical_cdf(y, g);
    const double z = se > 0.0 ? std::abs(emp - p) / se : (emp == p ? 0.0 : INFINITY);
    if (z > worst_z) worst_z = z;
    if (!(z <= 3.0)) {
      ok = false;
      detail += fmt::format(" {} at {}: empirical {:.6f} vs exact {:.6f} ({:.2f} se);", name,
                            vec_str(g), emp, p, z);
    }
  }
  return ok;
}

}  // namespace

std::vector<NamedModel> canonical_models() {
  std::vector<NamedModel> out;
  out.push_back({"single-mixture", make_single_mixture(0.6, MaxStableCopula::gumbel(3, 0.7))});
  out.push_back({"asymmetric-logistic",
                 make_asymmetric_logistic({0.4, 0.8}, {{0.7, 0.2, 0.5}, {0.3, 0.8, 0.5}})});
  out.push_back({"tawn", make_tawn_model(3, {{SubsetMask::from_indices({0}), 1.0, {0.3}, std::nullopt},
                                             {SubsetMask::from_indices({1, 2}), 0.5, {0.6, 0.4}, std::nullopt},
                                             {SubsetMask::from_indices({0, 1, 2}), 0.3, {0.7, 0.4, 0.6}, std::nullopt}})});
  out.push_back({"geometric-mean",
                 make_geometric_mean({0.3, 0.7}, {0.5, 0.8},
                                     {MaxStableCopula::comonotone(3), MaxStableCopula::gumbel(3, 0.6)})});
  {
    M4Coefficients a1(2, 2, 3, {0.5, 0.2, 0.0, 0.5, 0.8, 0.3, 0.0, 0.0, 0.7, 0.0, 0.0, 0.0});
    M4Coefficients a2(1, 2, 3, {0.3, 0.6, 0.5, 0.7, 0.4, 0.5});
    std::vector<MixtureComponent> comps{
        {0.5, {0.6, 0.3, 0.5}, MaxStableCopula::m4(a1)},
        {0.8, {0.4, 0.7, 0.5}, MaxStableCopula::m4(a2)},
    };
    out.push_back({"m4-mixture", MevMixModel(3, std::move(comps))});
  }
  return out;
}

CheckResult bivariate_logistic(const SuiteOptions& options) {
  return timed("bivariate-logistic", "lambda_{1,2} = 2 - 2^alpha, analytic and empirical", 180.0,
               [&](std::string& detail) {
                 bool ok = true;
                 for (double alpha : {0.3, 0.5, 0.9}) {
                   const auto start = std::chrono::steady_clock::now();
                   const auto m = make_single_mixture(alpha, MaxStableCopula::independence(2));
                   const double expected = 2.0 - std::pow(2.0, alpha);
                   const double generic = orthant_lambda(m, SubsetMask::singleton(1)).lambda;
                   const double pairwise = bivariate_lambda(m, 0, 1);
                   const auto y = sample_model(m, options.samples,
                                               {options.seed + static_cast<std::uint64_t>(alpha * 1000), options.threads});
                   const auto emp = empirical_lambda(y, SubsetMask::singleton(1), 0.99);
                   const double secs =
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                   const bool this_ok = std::abs(generic - expected) <= kIdentityTol &&
                                        std::abs(pairwise - expected) <= kIdentityTol &&
                                        std::abs(emp.lambda - expected) <= 0.02 && secs <= 60.0;
                   ok = ok && this_ok;
                   detail += fmt::format("a={}: exact {:.6f} engine {:.2e} closed {:.2e} emp {:.4f} ({:.1f}s){}; ",
                                         alpha, expected, std::abs(generic - expected),
                                         std::abs(pairwise - expected), emp.lambda, secs,
                                         this_ok ? "" : " FAIL");
                 }
                 return ok;
               });
}

CheckResult laplace_transform(const SuiteOptions& options) {
  return timed("laplace-transform", "positive stable draws: E exp(-tS) = exp(-t^alpha) at 3 se", 30.0,
               [&](std::string& detail) {
                 bool ok = true;
                 const std::vector<double> ts{0.5, 1.0, 2.0};
                 double worst = 0.0;
                 std::uint64_t stream = 0;
                 for (double alpha : {0.2, 0.5, 0.8}) {
                   Rng rng = Rng::for_stream(options.seed, stream++);
                   for (const auto& row : laplace_transform_check(StableAlpha(alpha), ts, options.samples, rng)) {
                     const double z = std::abs(row.empirical - row.exact) / row.standard_error;
                     worst = std::max(worst, z);
                     if (!row.pass) {
                       ok = false;
                       detail += fmt::format("a={} t={}: {:.6f} vs {:.6f}; ", alpha, row.t, row.empirical, row.exact);
                     }
                   }
                 }
                 detail += fmt::format("worst |z| = {:.2f}", worst);
                 return ok;
               });
}

CheckResult max_stability_and_margins(const SuiteOptions& options) {
  return timed("max-stability-margins", "C(u^t) = C(u)^t and uniform margins, 1000 random triples", 10.0,
               [&](std::string& detail) {
                 Rng rng = Rng::for_stream(options.seed, 101);
                 Worst stab, marg;
                 for (int trial = 0; trial < 1000; ++trial) {
                   RandomModelOptions ro;
                   ro.dimension = 2 + trial % 3;
                   ro.components = 1 + (trial / 3) % 3;
                   const auto m = random_model(rng, ro);
                   std::vector<double> u(ro.dimension), ut(ro.dimension);
                   for (auto& v : u) v = rng.uniform();
                   const double t = 0.2 + 4.8 * rng.uniform();
                   for (std::size_t i = 0; i < u.size(); ++i) ut[i] = std::pow(u[i], t);
                   const double lhs = model_cdf(m, ut);
                   const double rhs = std::pow(model_cdf(m, u), t);
                   stab.update(relative_deviation(lhs, rhs), fmt::format("trial {} u={} t={:.3f}", trial, vec_str(u), t));
                   for (std::size_t i = 0; i < u.size(); ++i) {
                     std::vector<double> e(u.size(), 1.0);
                     e[i] = u[i];
                     marg.update(relative_deviation(model_cdf(m, e), u[i]), fmt::format("trial {} coordinate {}", trial, i + 1));
                   }
                 }
                 detail = fmt::format("max-stability worst rel {:.2e} ({}); margins worst rel {:.2e} ({})",
                                      stab.value, stab.where, marg.value, marg.where);
                 return stab.value <= kIdentityTol && marg.value <= kIdentityTol;
               });
}

CheckResult engine_closed_form(const SuiteOptions& options) {
  return timed("engine-closed-form", "inclusion-exclusion engine vs closed forms, every J", 30.0,
               [&](std::string& detail) {
                 Rng rng = Rng::for_stream(options.seed, 102);
                 Worst logistic, m4;
                 for (int trial = 0; trial < 100; ++trial) {
                   const std::size_t d = 2 + trial % 3, q = 1 + (trial / 3) % 3;
                   std::vector<double> alphas(q);
                   for (auto& a : alphas) a = rng.uniform() < 0.2 ? 1.0 : random_alpha(rng);
                   const auto betas = random_weights(rng, q, d);
                   const auto m = make_asymmetric_logistic(alphas, betas);
                   for_each_nonempty_subset(SubsetMask::full(d), [&](SubsetMask j) {
                     logistic.update(lambda_gap(orthant_lambda(m, j), orthant_lambda_logistic(alphas, betas, j)), fmt::format("trial {} J={}", trial, j.to_string()));
                   });
                 }
                 for (int trial = 0; trial < 20; ++trial) {
                   RandomModelOptions ro;
                   ro.dimension = 2 + trial % 3;
                   ro.components = 1 + (trial / 3) % 3;
                   ro.kinds = {CopulaKind::m4};
                   const auto m = random_model(rng, ro);
                   const auto full = SubsetMask::full(ro.dimension);
                   m4.update(std::abs(m4_singleton_numerator(m) - orthant_mass(m, full)),
                             fmt::format("m4 trial {} numerator", trial));
                   for_each_nonempty_subset(full, [&](SubsetMask j) {
                     m4.update(lambda_gap(orthant_lambda(m, j), m4_orthant_lambda(m, j)), fmt::format("m4 trial {} J={}", trial, j.to_string()));
                   });
                   for (std::size_t s = 0; s < ro.dimension; ++s)
                     for (std::size_t t = 0; t < ro.dimension; ++t)
                       if (s != t)
                         m4.update(std::abs(m4_bivariate_lambda(m, s, t) - bivariate_lambda_generic(m, s, t)),
                                   fmt::format("m4 trial {} pair ({},{})", trial, s + 1, t + 1));
                 }
                 detail = fmt::format("logistic worst {:.2e} ({}); m4 worst {:.2e} ({})", logistic.value,
                                      logistic.where, m4.value, m4.where);
                 return logistic.value <= kIdentityTol && m4.value <= kIdentityTol;
               });
}

CheckResult m4_single_component(const SuiteOptions& options) {
  return timed("m4-single-component", "q=1, alpha=1, M4: lambda = 2 - sum max(a_s, a_t)", 0.0,
               [&](std::string& detail) {
                 Rng rng = Rng::for_stream(options.seed, 103);
                 Worst w;
                 for (int trial = 0; trial < 20; ++trial) {
                   const std::size_t d = 2 + trial % 3;
                   const auto a = random_m4_coefficients(rng, 1 + trial % 2, 2 + trial % 3, d);
                   const auto m = make_single_mixture(1.0, MaxStableCopula::m4(a));
                   for (std::size_t s = 0; s < d; ++s)
                     for (std::size_t t = s + 1; t < d; ++t) {
                       double sum = 0.0;
                       for (std::size_t l = 0; l < a.lags(); ++l)
                         for (std::size_t k = 0; k < a.shifts(); ++k) sum += std::max(a.at(l, k, s), a.at(l, k, t));
                       const double expected = 2.0 - sum;
                       const auto where = fmt::format("trial {} pair ({},{})", trial, s + 1, t + 1);
                       w.update(std::abs(m4_bivariate_lambda(m, s, t) - expected), where + " closed form");
                       w.update(std::abs(bivariate_lambda(m, s, t) - expected), where + " dispatch");
                       w.update(std::abs(bivariate_lambda_generic(m, s, t) - expected), where + " engine");
                     }
                 }
                 detail = fmt::format("worst {:.2e} ({})", w.value, w.where);
                 return w.value <= kIdentityTol;
               });
}

CheckResult case_reductions(const SuiteOptions& options) {
  return timed("case-reductions", "single mixture = Gumbel; alpha=1 collapse; Cuadras-Auge", 0.0,
               [&](std::string& detail) {
                 Rng rng = Rng::for_stream(options.seed, 104);
                 Worst gumbel, collapse, cuadras;
                 for (int trial = 0; trial < 100; ++trial) {
                   const std::size_t d = 2 + trial % 3;
                   const double alpha = random_alpha(rng);
                   const auto m = make_single_mixture(alpha, MaxStableCopula::independence(d));
                   const auto g = MaxStableCopula::gumbel(d, alpha);
                   std::vector<double> u(d);
                   for (auto& v : u) v = rng.uniform();
                   gumbel.update(relative_deviation(model_cdf(m, u), cdf(g, u)),
                                 fmt::format("alpha={:.4f} u={}", alpha, vec_str(u)));
                 }
                 for (int trial = 0; trial < 100; ++trial) {
                   RandomModelOptions ro;
                   ro.dimension = 2 + trial % 3;
                   ro.components = 1 + (trial / 3) % 3;
                   auto m0 = random_model(rng, ro);
                   auto comps = m0.components();
                   for (auto& c : comps) c.alpha = 1.0;
                   const MevMixModel m(ro.dimension, comps);
                   std::vector<double> u(ro.dimension);
                   for (auto& v : u) v = rng.uniform();
                   double product = 1.0;
                   for (const auto& c : comps) {
                     std::vector<double> powered(u.size());
                     for (std::size_t i = 0; i < u.size(); ++i) powered[i] = std::pow(u[i], c.beta[i]);
                     product *= cdf(c.copula, powered);
                   }
                   collapse.update(relative_deviation(model_cdf(m, u), product),
                                   fmt::format("trial {} u={}", trial, vec_str(u)));
                 }
                 const double b1 = 0.3;
                 const auto ca = make_geometric_mean({b1, 1.0 - b1}, {0.5, 1.0},
                                                     {MaxStableCopula::comonotone(2), MaxStableCopula::independence(2)});
                 for (int a = 0; a < 10; ++a)
                   for (int b = 0; b < 10; ++b) {
                     const std::vector<double> u{(a + 0.5) / 10.0, (b + 0.5) / 10.0};
                     const double expected = std::pow(std::min(u[0], u[1]), b1) * std::pow(u[0] * u[1], 1.0 - b1);
                     cuadras.update(relative_deviation(model_cdf(ca, u), expected), fmt::format("u={}", vec_str(u)));
                   }
                 detail = fmt::format("gumbel worst {:.2e}; alpha=1 collapse worst {:.2e}; Cuadras-Auge worst {:.2e}",
                                      gumbel.value, collapse.value, cuadras.value);
                 return gumbel.value <= kIdentityTol && collapse.value <= kIdentityTol &&
                        cuadras.value <= kIdentityTol;
               });
}

CheckResult convex_combination(const SuiteOptions& options) {
  return timed("convex-combination", "equal weights: mass(A) = sum_j beta_j mass_j(A)", 0.0,
               [&](std::string& detail) {
                 Rng rng = Rng::for_stream(options.seed, 105);
                 Worst w;
                 for (int trial = 0; trial < 20; ++trial) {
                   RandomModelOptions ro;
                   ro.dimension = 2 + trial % 3;
                   ro.components = 1 + (trial / 3) % 3;
                   ro.shared_weights = true;
                   const auto m = random_model(rng, ro);
                   for_each_nonempty_subset(SubsetMask::full(ro.dimension), [&](SubsetMask a) {
                     double combined = 0.0;
                     for (const auto& c : m.components())
                       combined += c.beta[0] * orthant_mass(make_single_mixture(c.alpha, c.copula), a);
                     w.update(std::abs(orthant_mass(m, a) - combined), fmt::format("trial {} A={}", trial, a.to_string()));
                   });
                 }
                 detail = fmt::format("worst {:.2e} ({})", w.value, w.where);
                 return w.value <= kIdentityTol;
               });
}

CheckResult sampler_joint_law(const SuiteOptions& options) {
  return timed("sampler-joint-law", "sampler CDF vs exact copula, 5 models x 5 points, 3 binomial se", 300.0,
               [&](std::string& detail) {
                 bool ok = true;
                 double worst = 0.0;
                 std::uint64_t k = 0;
                 for (const auto& nm : canonical_models()) {
                   const auto y = sample_model(nm.model, options.samples, {options.seed + 1000 + k++, options.threads});
                   ok = sampler_check(nm.model, y, nm.name, detail, worst) && ok;
                 }
                 detail += fmt::format(" worst |z| = {:.2f}", worst);
                 return ok;
               });
}

CheckResult mixing_dependence(const SuiteOptions&) {
  return timed("mixing-dependence", "lambda_{1,2}(alpha=0.5) and (0.9) differ by > 0.1, both > 0", 0.0,
               [&](std::string& detail) {
                 const double a = bivariate_lambda(make_single_mixture(0.5, MaxStableCopula::independence(2)), 0, 1);
                 const double b = bivariate_lambda(make_single_mixture(0.9, MaxStableCopula::independence(2)), 0, 1);
                 detail = fmt::format("lambda(0.5) = {:.6f}, lambda(0.9) = {:.6f}", a, b);
                 return std::abs(a - b) > 0.1 && a > 0.0 && b > 0.0;
               });
}

std::vector<CheckResult> run_suite(const SuiteOptions& options) {
  return {bivariate_logistic(options), laplace_transform(options),  max_stability_and_margins(options),
          engine_closed_form(options), m4_single_component(options), case_reductions(options),
          convex_combination(options), sampler_joint_law(options),  mixing_dependence(options)};
}

std::vector<CheckResult> check_model(const MevMixModel& m, const std::string& name,
                                     const SuiteOptions& options) {
  std::vector<CheckResult> out;
  const std::size_t d = m.dimension();

  out.push_back(timed(name + ":valid", "model satisfies its constraints", 0.0, [&](std::string& detail) {
    const auto v = validate_model(m);
    for (const auto& s : v) detail += s + "; ";
    if (v.empty()) detail = fmt::format("d = {}, q = {}", m.dimension(), m.component_count());
    return v.empty();
  }));
  if (!out.back().passed) return out;

  out.push_back(timed(name + ":identities", "margins, max-stability, Frechet bounds on 200 points", 0.0,
                      [&](std::string& detail) {
                        Rng rng = Rng::for_stream(options.seed, 201);
                        Worst marg, stab, bounds;
                        for (int trial = 0; trial < 200; ++trial) {
                          std::vector<double> u(d), ut(d);
                          for (auto& v : u) v = rng.uniform();
                          const double t = 0.2 + 4.8 * rng.uniform();
                          for (std::size_t i = 0; i < d; ++i) ut[i] = std::pow(u[i], t);
                          const double c = model_cdf(m, u);
                          stab.update(relative_deviation(model_cdf(m, ut), std::pow(c, t)), vec_str(u));
                          double lower = 1.0, upper = 1.0;
                          for (double v : u) {
                            lower *= v;
                            upper = std::min(upper, v);
                          }
                          const double slack = 1e-12 * upper;
                          bounds.update(std::max({0.0, lower - c - slack, c - upper - slack}), vec_str(u));
                          for (std::size_t i = 0; i < d; ++i) {
                            std::vector<double> e(d, 1.0);
                            e[i] = u[i];
                            marg.update(relative_deviation(model_cdf(m, e), u[i]), vec_str(u));
                          }
                        }
                        detail = fmt::format("margins {:.2e}, max-stability {:.2e}, bounds {:.2e}", marg.value,
                                             stab.value, bounds.value);
                        return marg.value <= kIdentityTol && stab.value <= kIdentityTol && bounds.value == 0.0;
                      }));

  const bool logistic = m.all_copulas_are(CopulaKind::independence);
  const bool m4 = m.all_copulas_are(CopulaKind::m4);
  if (logistic || m4) {
    out.push_back(timed(name + ":closed-form", "engine vs closed form, every J", 0.0, [&](std::string& detail) {
      Worst w;
      std::vector<double> alphas;
      std::vector<std::vector<double>> betas;
      for (const auto& c : m.components()) {
        alphas.push_back(c.alpha);
        betas.push_back(c.beta);
      }
      for_each_nonempty_subset(SubsetMask::full(d), [&](SubsetMask j) {
        const auto b = logistic ? orthant_lambda_logistic(alphas, betas, j) : m4_orthant_lambda(m, j);
        w.update(lambda_gap(orthant_lambda(m, j), b), "J=" + j.to_string());
      });
      detail = fmt::format("worst {:.2e} ({})", w.value, w.where);
      return w.value <= kIdentityTol;
    }));
  }

  const bool samplable = std::none_of(m.components().begin(), m.components().end(),
                                      [](const MixtureComponent& c) { return c.copula.derived(); });
  if (samplable) {
    const auto y = sample_model(m, options.samples, {options.seed, options.threads});
    out.push_back(timed(name + ":sampler", "sampler CDF at 5 points within 3 binomial se", 0.0,
                        [&](std::string& detail) {
                          double worst = 0.0;
                          const bool ok = sampler_check(m, y, name, detail, worst);
                          detail += fmt::format(" worst |z| = {:.2f}", worst);
                          return ok;
                        }));
    out.push_back(timed(name + ":empirical-lambda", "empirical lambda_J (u=0.99) within 0.02 of analytic, singleton J",
                        0.0, [&](std::string& detail) {
                          Worst w;
                          for (std::size_t i = 0; i < d; ++i) {
                            const auto j = SubsetMask::singleton(i);
                            const double analytic = orthant_lambda(m, j).lambda;
                            const double emp = empirical_lambda(y, j, 0.99).lambda;
                            w.update(std::abs(emp - analytic),
                                     fmt::format("J={} analytic {:.4f} empirical {:.4f}", j.to_string(), analytic, emp));
                          }
                          detail = fmt::format("worst {:.4f} ({})", w.value, w.where);
                          return w.value <= 0.02;
                        }));
  }
  return out;
}

std::string format_table(const std::vector<CheckResult>& results) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.passed;
    out += fmt::format("{:<4} {:<40} {:>7.2f}s  {}\n     {}\n", r.passed ? "PASS" : "FAIL", r.id, r.seconds,
                       r.title, r.detail);
  }
  out += fmt::format("{} of {} checks passed\n", passed, results.size());
  return out;
}

}  // namespace mevmix::verify
