#include <doctest.h>

#include <cmath>

#include "mevmix/error.hpp"
#include "mevmix/random_models.hpp"
#include "mevmix/taildep.hpp"
#include "test_support.hpp"

using namespace mevmix;
using mevmix::testing::m4_example;

namespace {

// P(U_i > u for all i in A) from copula values alone, by inclusion-exclusion
// over subsets B of A with coordinates outside B set to 1.
double joint_survival(const MevMixModel& m, SubsetMask a, double u) {
  double p = 1.0;  // empty B
  for_each_nonempty_subset(a, [&](SubsetMask b) {
    std::vector<double> point(m.dimension(), 1.0);
    for (auto i : b.indices()) point[i] = u;
    p += (b.size() % 2 ? -1.0 : 1.0) * model_cdf(m, point);
  });
  return p;
}

// lambda_J straight from its definition as u -> 1: the conditional survival
// ratio at u = 1 - h and 1 - h/10, combined by Richardson extrapolation to
// cancel the O(h) term.
double brute_force_lambda(const MevMixModel& m, SubsetMask j, double h) {
  const auto full = SubsetMask::full(m.dimension());
  auto ratio = [&](double step) {
    return joint_survival(m, full, 1.0 - step) / joint_survival(m, j, 1.0 - step);
  };
  return (10.0 * ratio(h / 10.0) - ratio(h)) / 9.0;
}

}  // namespace

TEST_SUITE("taildep") {
  TEST_CASE("orthant_mass examples") {
    Rng rng(6);
    for (int k = 0; k < 20; ++k) {
      RandomModelOptions ro;
      ro.dimension = 3;
      ro.components = 1 + k % 3;
      const auto m = random_model(rng, ro);
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(orthant_mass(m, SubsetMask::singleton(i)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    const auto como = make_single_mixture(0.5, MaxStableCopula::comonotone(3));
    CHECK(orthant_mass(como, SubsetMask::full(3)) == doctest::Approx(1.0).epsilon(1e-14));

    const auto logistic = make_single_mixture(0.5, MaxStableCopula::independence(2));
    CHECK(orthant_mass(logistic, SubsetMask::full(2)) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(2.0 - std::sqrt(2.0) == doctest::Approx(0.585786).epsilon(1e-6));
    CHECK_THROWS_AS(orthant_mass(logistic, SubsetMask::singleton(2)), domain_error);
  }

  TEST_CASE("orthant_lambda examples") {
    const auto logistic = make_single_mixture(0.5, MaxStableCopula::independence(2));
    const auto r = orthant_lambda(logistic, SubsetMask::singleton(1));
    CHECK(std::abs(r.lambda - (2.0 - std::pow(2.0, 0.5))) <= 1e-12);
    CHECK(r.denominator_mass == doctest::Approx(1.0));
    CHECK(r.method == TailDepMethod::analytic_generic);
    CHECK_FALSE(r.degenerate);
    CHECK(orthant_lambda(logistic, SubsetMask::full(2)).lambda == 1.0);

    const auto indep = make_single_mixture(1.0, MaxStableCopula::independence(3));
    for (std::uint32_t bits : {1u, 2u, 4u}) CHECK(orthant_lambda(indep, SubsetMask(bits)).lambda == 0.0);
    // No pair is jointly extreme at first order, so the ratio has no first-order limit.
    for (std::uint32_t bits : {3u, 5u, 6u}) {
      const auto r = orthant_lambda(indep, SubsetMask(bits));
      CHECK(r.degenerate);
      CHECK(r.denominator_mass == 0.0);
      CHECK(std::isnan(r.lambda));
    }
    CHECK(orthant_lambda(indep, SubsetMask::full(3)).lambda == 1.0);

    CHECK_THROWS_AS(orthant_lambda(MevMixModel(2, {{0.5, {0.5, 1.0}, MaxStableCopula::independence(2)}}),
                                   SubsetMask::singleton(0)),
                    domain_error);
  }

  TEST_CASE("orthant_lambda agrees with the limit of the defining ratio") {
    Rng rng(314);
    for (int trial = 0; trial < 10; ++trial) {
      RandomModelOptions ro;
      ro.dimension = 3;
      ro.components = 2;
      ro.kinds = trial % 2 ? std::vector<CopulaKind>{CopulaKind::independence}
                           : std::vector<CopulaKind>{CopulaKind::independence, CopulaKind::comonotone,
                                                     CopulaKind::gumbel, CopulaKind::m4};
      const auto m = random_model(rng, ro);
      for (auto j : {SubsetMask::from_indices({0, 1}), SubsetMask::singleton(2)}) {
        const auto report = orthant_lambda(m, j);
        if (report.degenerate) continue;
        const double analytic = report.lambda;
        const double limit = brute_force_lambda(m, j, 1e-3);
        CAPTURE(trial);
        CHECK(std::abs(analytic - limit) <= 1e-5);
      }
    }
  }

  TEST_CASE("orthant_lambda_logistic examples") {
    const auto r = orthant_lambda_logistic({0.5}, {{1.0, 1.0}}, SubsetMask::singleton(1));
    CHECK(std::abs(r.lambda - (2.0 - std::sqrt(2.0))) <= 1e-12);
    CHECK(r.method == TailDepMethod::analytic_closed_form);

    const auto r2 = orthant_lambda_logistic({0.5, 0.5}, {{0.5, 0.5}, {0.5, 0.5}}, SubsetMask::singleton(1));
    CHECK(std::abs(r2.lambda - (2.0 - 2.0 * std::pow(0.25 + 0.25, 0.5))) <= 1e-12);
    CHECK(std::abs(r2.lambda - 0.585786) <= 1e-6);

    const auto r3 = orthant_lambda_logistic({0.3, 0.7}, {{1.0, 0.0, 0.5}, {0.0, 1.0, 0.5}}, SubsetMask::singleton(0));
    CHECK(std::isfinite(r3.lambda));
    CHECK(std::isfinite(r3.numerator_mass));

    CHECK_THROWS_AS(orthant_lambda_logistic({0.5}, {{0.9, 1.0}}, SubsetMask::singleton(0)), domain_error);
    CHECK_THROWS_AS(orthant_lambda_logistic({1.5}, {{1.0, 1.0}}, SubsetMask::singleton(0)), domain_error);
  }

  TEST_CASE("engine and logistic closed form agree on random parameters") {
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d = 2 + trial % 3, q = 1 + (trial / 3) % 3;
      std::vector<double> alphas(q);
      for (auto& a : alphas) a = random_alpha(rng);
      const auto betas = random_weights(rng, q, d);
      const auto m = make_asymmetric_logistic(alphas, betas);
      for_each_nonempty_subset(SubsetMask::full(d), [&](SubsetMask j) {
        const auto a = orthant_lambda(m, j);
        const auto b = orthant_lambda_logistic(alphas, betas, j);
        CHECK(a.degenerate == b.degenerate);
        if (a.degenerate) return;
        CHECK(std::abs(a.lambda - b.lambda) <= 1e-12);
        CHECK(a.lambda >= 0.0);
        CHECK(a.lambda <= 1.0);
        CHECK(a.numerator_mass <= a.denominator_mass + 1e-15);
      });
    }
  }

  TEST_CASE("bivariate_lambda routes") {
    const auto como = make_single_mixture(0.5, MaxStableCopula::comonotone(2));
    CHECK(std::abs(bivariate_lambda(como, 0, 1) - 1.0) <= 1e-12);

    for (double alpha : {0.2, 0.5, 0.9}) {
      const auto m = make_single_mixture(alpha, MaxStableCopula::independence(3));
      CHECK(std::abs(bivariate_lambda(m, 0, 2) - (2.0 - std::pow(2.0, alpha))) <= 1e-12);
      CHECK(std::abs(bivariate_lambda(m, 0, 2) - bivariate_lambda_generic(m, 0, 2)) <= 1e-12);
    }

    const auto m4 = make_single_mixture(1.0, MaxStableCopula::m4(m4_example()));
    CHECK(std::abs(bivariate_lambda(m4, 0, 1) - 0.6) <= 1e-12);

    // q = 1 with a non-independence copula: 2 - (2 - lambda_C)^alpha.
    const auto g = make_single_mixture(0.7, MaxStableCopula::gumbel(3, 0.4));
    const double lambda_c = 2.0 - std::pow(2.0, 0.4);
    CHECK(std::abs(bivariate_lambda(g, 1, 2) - (2.0 - std::pow(2.0 - lambda_c, 0.7))) <= 1e-12);
    CHECK(std::abs(bivariate_lambda(g, 1, 2) - bivariate_lambda_generic(g, 1, 2)) <= 1e-12);

    Rng rng(8);
    RandomModelOptions ro;
    ro.dimension = 4;
    ro.components = 3;
    for (int k = 0; k < 20; ++k) {
      const auto m = random_model(rng, ro);
      for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t)
          if (s != t) CHECK(std::abs(bivariate_lambda(m, s, t) - bivariate_lambda_generic(m, s, t)) <= 1e-12);
    }
    CHECK_THROWS_AS(bivariate_lambda(como, 1, 1), domain_error);
    CHECK_THROWS_AS(bivariate_lambda(como, 0, 2), domain_error);
  }

  TEST_CASE("M4 bivariate closed form") {
    const auto a1 = make_single_mixture(1.0, MaxStableCopula::m4(m4_example()));
    CHECK(std::abs(m4_bivariate_lambda(a1, 0, 1) - 0.6) <= 1e-12);

    // alpha = 0.5: 2 - (sum_{l,k} max(a_lk1, a_lk2))^0.5 = 2 - 1.4^0.5.
    const auto a05 = make_single_mixture(0.5, MaxStableCopula::m4(m4_example()));
    CHECK(std::abs(m4_bivariate_lambda(a05, 0, 1) - (2.0 - std::sqrt(1.4))) <= 1e-12);
    CHECK(std::abs(m4_bivariate_lambda(a05, 0, 1) - orthant_lambda(a05, SubsetMask::singleton(1)).lambda) <= 1e-12);

    // Disjoint supports with alpha = 1: no tail dependence.
    const auto disjoint = make_single_mixture(1.0, MaxStableCopula::m4(M4Coefficients(1, 2, 2, {1.0, 0.0, 0.0, 1.0})));
    CHECK(std::abs(m4_bivariate_lambda(disjoint, 0, 1)) <= 1e-12);

    CHECK_THROWS_AS(m4_bivariate_lambda(make_single_mixture(0.5, MaxStableCopula::independence(2)), 0, 1),
                    unsupported_error);
  }

  TEST_CASE("M4 closed form matches simulation with mixing") {
    // Sampling never touches the closed form, so this separates 2 - 1.4^0.5
    // from the variant with the outer sum taken after the power.
    const auto m = make_single_mixture(0.5, MaxStableCopula::m4(m4_example()));
    const auto y = sample_model(m, 1'000'000, {11, 1});
    const auto r = empirical_lambda(y, SubsetMask::singleton(1), 0.99);
    CHECK(std::abs(r.lambda - (2.0 - std::sqrt(1.4))) <= 0.02);
    CHECK(std::abs(r.lambda - (2.0 - std::sqrt(0.6) - std::sqrt(0.8))) > 0.3);
  }

  TEST_CASE("M4 singleton numerator") {
    const auto a1 = make_single_mixture(1.0, MaxStableCopula::m4(m4_example()));
    CHECK(std::abs(m4_singleton_numerator(a1) - 0.6) <= 1e-12);

    const auto same = make_single_mixture(1.0, MaxStableCopula::m4(M4Coefficients(1, 2, 2, {0.3, 0.3, 0.7, 0.7})));
    CHECK(std::abs(m4_singleton_numerator(same) - 1.0) <= 1e-12);

    Rng rng(21);
    for (int k = 0; k < 3; ++k) {
      RandomModelOptions ro;
      ro.dimension = 2 + k;
      ro.components = 1 + k;
      ro.kinds = {CopulaKind::m4};
      const auto m = random_model(rng, ro);
      CHECK(std::abs(m4_singleton_numerator(m) - orthant_mass(m, SubsetMask::full(ro.dimension))) <= 1e-12);
      for_each_nonempty_subset(SubsetMask::full(ro.dimension), [&](SubsetMask j) {
        CHECK(std::abs(m4_orthant_lambda(m, j).lambda - orthant_lambda(m, j).lambda) <= 1e-12);
      });
    }
    CHECK_THROWS_AS(m4_singleton_numerator(make_single_mixture(0.5, MaxStableCopula::comonotone(2))),
                    unsupported_error);
  }

  TEST_CASE("equal weights: mass is the weighted sum of component masses") {
    Rng rng(90);
    for (int trial = 0; trial < 20; ++trial) {
      RandomModelOptions ro;
      ro.dimension = 2 + trial % 3;
      ro.components = 1 + trial % 3;
      ro.shared_weights = true;
      const auto m = random_model(rng, ro);
      for_each_nonempty_subset(SubsetMask::full(ro.dimension), [&](SubsetMask a) {
        double combined = 0.0;
        for (const auto& c : m.components())
          combined += c.beta[0] * orthant_mass(make_single_mixture(c.alpha, c.copula), a);
        CHECK(std::abs(orthant_mass(m, a) - combined) <= 1e-12);
      });
    }
  }

  TEST_CASE("tail dependence depends on the mixing index") {
    const double a = bivariate_lambda(make_single_mixture(0.5, MaxStableCopula::independence(2)), 0, 1);
    const double b = bivariate_lambda(make_single_mixture(0.9, MaxStableCopula::independence(2)), 0, 1);
    CHECK(std::abs(a - b) > 0.1);
    CHECK(a > 0.0);
    CHECK(b > 0.0);
  }

  TEST_CASE("cancellation diagnostic") {
    AlternatingSum s{1.0, 1.0 - 1e-9};
    CHECK(s.digits_lost() == doctest::Approx(std::log10(2.0 / 1e-9)).epsilon(1e-6));
    AlternatingSum z{1.0, 1.0};
    CHECK(std::isinf(z.digits_lost()));
    const auto indep = make_single_mixture(1.0, MaxStableCopula::independence(3));
    const auto r = orthant_lambda(indep, SubsetMask::singleton(0));
    CHECK(r.ill_conditioned);  // numerator cancels to exactly 0
    CHECK(r.lambda == 0.0);
  }

  TEST_CASE("empirical: comonotone samples give 1") {
    const auto m = make_single_mixture(1.0, MaxStableCopula::comonotone(3));
    const auto y = sample_model(m, 20'000, {1, 1});
    for (double u : {0.5, 0.9, 0.99}) {
      const auto r = empirical_lambda(y, SubsetMask::singleton(1), u);
      CHECK(r.lambda == 1.0);
      CHECK(r.method == TailDepMethod::empirical);
      CHECK(*r.threshold == u);
      CHECK(*r.sample_count == 20'000);
    }
  }

  TEST_CASE("empirical: logistic alpha = 0.5 near 2 - sqrt 2") {
    const auto m = make_single_mixture(0.5, MaxStableCopula::independence(2));
    const auto y = sample_model(m, 1'000'000, {42, 1});
    const auto r = empirical_lambda(y, SubsetMask::singleton(1), 0.99);
    CHECK(std::abs(r.lambda - (2.0 - std::sqrt(2.0))) <= 0.02);
    CHECK(*r.standard_error == doctest::Approx(std::sqrt(r.lambda * (1 - r.lambda) / *r.conditioning_exceedances)));
    const auto ranks = empirical_lambda(y, SubsetMask::singleton(1), 0.99, MarginTransform::ranks);
    CHECK(std::abs(ranks.lambda - (2.0 - std::sqrt(2.0))) <= 0.02);
  }

  TEST_CASE("empirical: independence gives a small value") {
    const auto m = make_single_mixture(1.0, MaxStableCopula::independence(2));
    const auto y = sample_model(m, 1'000'000, {42, 1});
    CHECK(empirical_lambda(y, SubsetMask::singleton(1), 0.99).lambda < 0.03);
  }

  TEST_CASE("empirical: argument errors and undefined estimates") {
    const auto m = make_single_mixture(1.0, MaxStableCopula::independence(2));
    const auto small = sample_model(m, 9'999, {1, 1});
    CHECK_THROWS_AS(empirical_lambda(small, SubsetMask::singleton(0), 0.9), config_error);
    const auto y = sample_model(m, 10'000, {1, 1});
    CHECK_THROWS_AS(empirical_lambda(y, SubsetMask::singleton(0), 1.0), domain_error);
    CHECK_THROWS_AS(empirical_lambda(y, SubsetMask::singleton(2), 0.9), domain_error);
    // Ranks never exceed n / (n + 1).
    const auto r = empirical_lambda(y, SubsetMask::singleton(0), 0.99999, MarginTransform::ranks);
    CHECK(r.degenerate);
    CHECK(std::isnan(r.lambda));
  }
}
