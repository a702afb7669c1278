#include <doctest.h>

#include <cmath>

#include "mevmix/error.hpp"
#include "mevmix/stable.hpp"

using namespace mevmix;

namespace {

// Sample mean of exp(-t S) and its standard error, computed independently of
// laplace_transform_check.
struct MeanSe {
  double mean, se;
};

MeanSe laplace_mc(double alpha, double t, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = std::exp(-t * sample_positive_stable(StableAlpha(alpha), rng));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_SUITE("stable") {
  TEST_CASE("alpha outside (0,1] is a domain error naming the value") {
    for (double bad : {0.0, -0.5, 1.5, std::nan("")}) CHECK_THROWS_AS(StableAlpha{bad}, domain_error);
    try {
      StableAlpha(1.25);
    } catch (const domain_error& e) {
      CHECK(std::string(e.what()).find("1.25") != std::string::npos);
    }
  }

  TEST_CASE("alpha = 1 is the point mass at 1") {
    Rng rng(7);
    for (int k = 0; k < 100; ++k) CHECK(sample_positive_stable(StableAlpha(1.0), rng) == 1.0);
  }

  TEST_CASE("draws are deterministic per seed and positive") {
    for (double alpha : {0.1, 0.5, 0.95}) {
      Rng a(123), b(123);
      for (int k = 0; k < 10000; ++k) {
        const double x = sample_positive_stable(StableAlpha(alpha), a);
        const double y = sample_positive_stable(StableAlpha(alpha), b);
        CHECK(x == y);
        CHECK(x > 0.0);
      }
    }
  }

  TEST_CASE("alpha = 0.5, t = 1: mean of exp(-S) within 3 se of exp(-1)") {
    const auto r = laplace_mc(0.5, 1.0, 1'000'000, 42);
    CHECK(std::abs(r.mean - std::exp(-1.0)) <= 3.0 * r.se);
  }

  TEST_CASE("alpha = 0.3, t = 2: mean of exp(-2S) within 3 se of exp(-2^0.3)") {
    const auto r = laplace_mc(0.3, 2.0, 1'000'000, 43);
    CHECK(std::abs(r.mean - std::exp(-std::pow(2.0, 0.3))) <= 3.0 * r.se);
    CHECK(std::pow(2.0, 0.3) == doctest::Approx(1.23114).epsilon(1e-5));
  }

  TEST_CASE("Laplace property across alpha and t") {
    std::uint64_t seed = 1000;
    for (double alpha : {0.2, 0.5, 0.8})
      for (double t : {0.5, 1.0, 2.0}) {
        const auto r = laplace_mc(alpha, t, 1'000'000, seed++);
        CAPTURE(alpha);
        CAPTURE(t);
        CHECK(std::abs(r.mean - std::exp(-std::pow(t, alpha))) <= 3.0 * r.se);
      }
  }

  TEST_CASE("laplace_transform_check: degenerate case is exact") {
    Rng rng(5);
    const std::vector<double> ts{0.5, 1.0, 2.0};
    const auto rows = laplace_transform_check(StableAlpha(1.0), ts, 10'000, rng);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(rows[i].empirical == std::exp(-ts[i]));
      CHECK(rows[i].exact == std::exp(-ts[i]));
      CHECK(rows[i].standard_error == 0.0);
      CHECK(rows[i].pass);
    }
  }

  TEST_CASE("laplace_transform_check passes for alpha 0.5 and 0.9") {
    Rng rng(42);
    const std::vector<double> t1{1.0};
    auto rows = laplace_transform_check(StableAlpha(0.5), t1, 1'000'000, rng);
    CHECK(rows[0].exact == std::exp(-1.0));
    CHECK(rows[0].pass);
    const std::vector<double> t2{2.0};
    rows = laplace_transform_check(StableAlpha(0.9), t2, 1'000'000, rng);
    CHECK(rows[0].exact == std::exp(-std::pow(2.0, 0.9)));
    CHECK(rows[0].pass);
  }

  TEST_CASE("laplace_transform_check rejects small n and non-positive t") {
    Rng rng(1);
    const std::vector<double> ok{1.0}, bad{0.0};
    CHECK_THROWS_AS(laplace_transform_check(StableAlpha(0.5), ok, 9'999, rng), config_error);
    CHECK_THROWS_AS(laplace_transform_check(StableAlpha(0.5), bad, 10'000, rng), domain_error);
  }
}
