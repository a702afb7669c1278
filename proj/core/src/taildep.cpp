#include "mevmix/taildep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mevmix/error.hpp"

namespace mevmix {

double AlternatingSum::digits_lost() const {
  const double magnitude = positive + negative;
  const double v = std::abs(value());
  if (magnitude == 0.0) return 0.0;
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log10(magnitude / v));
}

std::string to_string(TailDepMethod method) {
  switch (method) {
    case TailDepMethod::analytic_generic: return "analytic-generic";
    case TailDepMethod::analytic_closed_form: return "analytic-closed-form";
    case TailDepMethod::empirical: return "empirical";
  }
  return "unknown";
}

namespace {

// Inclusion-exclusion accumulator in extended precision. The masses are
// differences of O(1) terms and can be many orders of magnitude smaller.
struct ExtSum {
  long double positive = 0;
  long double negative = 0;

  void add(SubsetMask b, long double term) {
    if (b.size() % 2 == 1)
      positive += term;
    else
      negative += term;
  }
  long double value() const { return positive - negative; }
  double digits_lost() const {
    const long double magnitude = positive + negative;
    const long double v = std::abs(value());
    if (magnitude == 0) return 0.0;
    if (v == 0) return std::numeric_limits<double>::infinity();
    return std::max(0.0, static_cast<double>(std::log10(magnitude / v)));
  }
};

constexpr long double kDenominatorFloor = 64 * std::numeric_limits<long double>::epsilon();

// Fills the report fields shared by the analytic methods.
TailDepReport ratio_report(std::size_t d, SubsetMask j, const ExtSum& num, const ExtSum& den,
                           TailDepMethod method) {
  TailDepReport r;
  r.dimension = d;
  r.conditioning = j;
  r.method = method;
  r.numerator_mass = static_cast<double>(num.value());
  r.denominator_mass = static_cast<double>(den.value());
  // Measured against double precision; the extended sums keep about three
  // more digits than that.
  r.digits_lost = std::max(num.digits_lost(), den.digits_lost());
  r.ill_conditioned = r.digits_lost > kMaxDigitsLost;
  if (j == SubsetMask::full(d)) {
    r.lambda = 1.0;
    return r;
  }
  // A denominator at rounding level relative to its terms is zero in exact arithmetic.
  if (!(den.value() > kDenominatorFloor * (den.positive + den.negative))) {
    r.degenerate = true;
    r.lambda = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  // Rounding can push an exact 0 or 1 just outside the unit interval.
  r.lambda = std::clamp(static_cast<double>(num.value() / den.value()), 0.0, 1.0);
  return r;
}

void check_pair(std::size_t d, std::size_t s, std::size_t t) {
  if (s == t) throw domain_error("bivariate tail dependence needs two distinct coordinates");
  if (s >= d || t >= d)
    throw domain_error("coordinates " + std::to_string(s + 1) + ", " + std::to_string(t + 1) +
                       " are not within dimension " + std::to_string(d));
}

// beta^(1/alpha) with 0 for zero weights.
long double weight_power(double beta, double alpha) {
  if (beta == 0.0) return 0;
  return alpha == 1.0 ? beta : std::pow(static_cast<long double>(beta), 1 / static_cast<long double>(alpha));
}

ExtSum generic_mass(const MevMixModel& m, SubsetMask a) {
  ExtSum sum;
  std::vector<long double> indicator(m.dimension(), 0);
  for_each_nonempty_subset(a, [&](SubsetMask b) {
    for (std::size_t i = 0; i < indicator.size(); ++i) indicator[i] = b.contains(i) ? 1 : 0;
    sum.add(b, model_exponent(m, std::span<const long double>(indicator)));
  });
  return sum;
}

ExtSum m4_mass(const MevMixModel& m, SubsetMask a) {
  const std::size_t d = m.dimension();
  ExtSum sum;
  for_each_nonempty_subset(a, [&](SubsetMask b) {
    long double term = 0;
    for (const auto& c : m.components()) {
      const auto& coef = c.copula.m4_coefficients();
      long double inner = 0;
      for (std::size_t sig = 0; sig < coef.signal_count(); ++sig) {
        long double best = 0;
        for (std::size_t i = 0; i < d; ++i)
          if (b.contains(i)) best = std::max(best, coef.signal(sig)[i] * weight_power(c.beta[i], c.alpha));
        inner += best;
      }
      term += std::pow(inner, static_cast<long double>(c.alpha));
    }
    sum.add(b, term);
  });
  return sum;
}

void require_m4(const MevMixModel& m) {
  if (!m.all_copulas_are(CopulaKind::m4))
    throw unsupported_error("M4 closed forms need every component copula to be M4");
}

}  // namespace

AlternatingSum orthant_mass_terms(const MevMixModel& m, SubsetMask a) {
  require_valid(m);
  check_subset(a, m.dimension());
  const auto sum = generic_mass(m, a);
  return {static_cast<double>(sum.positive), static_cast<double>(sum.negative)};
}

double orthant_mass(const MevMixModel& m, SubsetMask a) {
  require_valid(m);
  check_subset(a, m.dimension());
  return static_cast<double>(generic_mass(m, a).value());
}

TailDepReport orthant_lambda(const MevMixModel& m, SubsetMask j) {
  require_valid(m);
  check_subset(j, m.dimension());
  const auto full = SubsetMask::full(m.dimension());
  return ratio_report(m.dimension(), j, generic_mass(m, full), generic_mass(m, j),
                      TailDepMethod::analytic_generic);
}

TailDepReport orthant_lambda_logistic(const std::vector<double>& alphas,
                                      const std::vector<std::vector<double>>& betas,
                                      SubsetMask j) {
  if (alphas.empty() || alphas.size() != betas.size())
    throw domain_error("logistic tail dependence: need q >= 1 alphas and q weight rows");
  const std::size_t d = betas.front().size();
  check_subset(j, d);
  std::vector<double> column(d, 0.0);
  for (std::size_t r = 0; r < alphas.size(); ++r) {
    if (!(alphas[r] > 0.0 && alphas[r] <= 1.0)) {
      std::ostringstream msg;
      msg << "component " << r + 1 << ": alpha out of (0,1]: alpha = " << alphas[r];
      throw domain_error(msg.str());
    }
    if (betas[r].size() != d) throw domain_error("weight rows have different lengths");
    for (std::size_t i = 0; i < d; ++i) {
      if (!(betas[r][i] >= 0.0) || !std::isfinite(betas[r][i]))
        throw domain_error("weights must be finite and nonnegative");
      column[i] += betas[r][i];
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    if (!(std::abs(column[i] - 1.0) <= kWeightSumTolerance))
      throw domain_error("weights for coordinate " + std::to_string(i + 1) + " do not sum to 1");

  std::vector<std::vector<long double>> powered(alphas.size(), std::vector<long double>(d));
  for (std::size_t r = 0; r < alphas.size(); ++r)
    for (std::size_t i = 0; i < d; ++i) powered[r][i] = weight_power(betas[r][i], alphas[r]);

  auto mass = [&](SubsetMask a) {
    ExtSum sum;
    for_each_nonempty_subset(a, [&](SubsetMask b) {
      long double term = 0;
      for (std::size_t r = 0; r < alphas.size(); ++r) {
        long double inner = 0;
        for (std::size_t i = 0; i < d; ++i)
          if (b.contains(i)) inner += powered[r][i];
        term += alphas[r] == 1.0 ? inner : std::pow(inner, static_cast<long double>(alphas[r]));
      }
      sum.add(b, term);
    });
    return sum;
  };
  return ratio_report(d, j, mass(SubsetMask::full(d)), mass(j),
                      TailDepMethod::analytic_closed_form);
}

double bivariate_lambda_generic(const MevMixModel& m, std::size_t s, std::size_t t) {
  require_valid(m);
  check_pair(m.dimension(), s, t);
  const auto pair = SubsetMask::from_indices({s, t});
  return static_cast<double>(generic_mass(m, pair).value() / generic_mass(m, SubsetMask::singleton(t)).value());
}

double bivariate_lambda(const MevMixModel& m, std::size_t s, std::size_t t) {
  require_valid(m);
  check_pair(m.dimension(), s, t);

  if (m.all_copulas_are(CopulaKind::independence)) {
    long double sum = 0;
    for (const auto& c : m.components()) {
      const long double inner = weight_power(c.beta[s], c.alpha) + weight_power(c.beta[t], c.alpha);
      sum += inner == 0 ? 0 : std::pow(inner, static_cast<long double>(c.alpha));
    }
    return static_cast<double>(2 - sum);
  }
  if (m.all_copulas_are(CopulaKind::m4)) return m4_bivariate_lambda(m, s, t);
  if (m.component_count() == 1) {
    // Weights are all 1 for a valid single-component model.
    const auto& c = m.component(0);
    std::vector<long double> pair(m.dimension(), 0);
    pair[s] = pair[t] = 1;
    // 2 - (2 - lambda_C)^alpha, where 2 - lambda_C is the copula exponent at the pair.
    const long double pair_exponent = exponent(c.copula, std::span<const long double>(pair));
    return static_cast<double>(2 - std::pow(pair_exponent, static_cast<long double>(c.alpha)));
  }
  return bivariate_lambda_generic(m, s, t);
}

double m4_orthant_mass(const MevMixModel& m, SubsetMask a) {
  require_valid(m);
  require_m4(m);
  check_subset(a, m.dimension());
  return static_cast<double>(m4_mass(m, a).value());
}

double m4_singleton_numerator(const MevMixModel& m) {
  return m4_orthant_mass(m, SubsetMask::full(m.dimension()));
}

TailDepReport m4_orthant_lambda(const MevMixModel& m, SubsetMask j) {
  require_valid(m);
  require_m4(m);
  check_subset(j, m.dimension());
  return ratio_report(m.dimension(), j, m4_mass(m, SubsetMask::full(m.dimension())), m4_mass(m, j),
                      TailDepMethod::analytic_closed_form);
}

double m4_bivariate_lambda(const MevMixModel& m, std::size_t s, std::size_t t) {
  require_valid(m);
  require_m4(m);
  check_pair(m.dimension(), s, t);
  long double sum = 0;
  for (const auto& c : m.components()) {
    const auto& coef = c.copula.m4_coefficients();
    const long double ps = weight_power(c.beta[s], c.alpha);
    const long double pt = weight_power(c.beta[t], c.alpha);
    long double inner = 0;
    for (std::size_t sig = 0; sig < coef.signal_count(); ++sig)
      inner += std::max(coef.signal(sig)[s] * ps, coef.signal(sig)[t] * pt);
    sum += std::pow(inner, static_cast<long double>(c.alpha));
  }
  return static_cast<double>(2 - sum);
}

TailDepReport empirical_lambda(const SampleMatrix& samples, SubsetMask j, double u,
                               MarginTransform transform) {
  const std::size_t n = samples.rows;
  const std::size_t d = samples.cols;
  if (n < kMinEmpiricalSamples)
    throw config_error("empirical tail dependence needs at least " +
                       std::to_string(kMinEmpiricalSamples) + " samples, got " + std::to_string(n));
  if (!(u > 0.0 && u < 1.0)) throw domain_error("threshold u must lie in (0, 1)");
  check_subset(j, d);

  // exceed[r * d + i]: coordinate i of row r is above the threshold.
  std::vector<char> exceed(n * d, 0);
  if (transform == MarginTransform::frechet) {
    for (std::size_t k = 0; k < n * d; ++k) exceed[k] = std::exp(-1.0 / samples.values[k]) > u;
  } else {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < d; ++i) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples.values[a * d + i] < samples.values[b * d + i];
      });
      for (std::size_t rank = 0; rank < n; ++rank) {
        const double p = static_cast<double>(rank + 1) / static_cast<double>(n + 1);
        exceed[order[rank] * d + i] = p > u;
      }
    }
  }

  std::size_t joint = 0, conditioning = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const char* row = exceed.data() + r * d;
    bool in_j = true, all = true;
    for (std::size_t i = 0; i < d; ++i) {
      all = all && row[i];
      if (j.contains(i)) in_j = in_j && row[i];
    }
    conditioning += in_j;
    joint += all;
  }

  TailDepReport rep;
  rep.dimension = d;
  rep.conditioning = j;
  rep.method = TailDepMethod::empirical;
  rep.threshold = u;
  rep.sample_count = n;
  rep.joint_exceedances = joint;
  rep.conditioning_exceedances = conditioning;
  rep.numerator_mass = static_cast<double>(joint) / static_cast<double>(n) / (1.0 - u);
  rep.denominator_mass = static_cast<double>(conditioning) / static_cast<double>(n) / (1.0 - u);
  if (conditioning == 0) {
    rep.degenerate = true;
    rep.lambda = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  rep.lambda = static_cast<double>(joint) / static_cast<double>(conditioning);
  rep.standard_error = std::sqrt(rep.lambda * (1.0 - rep.lambda) / static_cast<double>(conditioning));
  return rep;
}

}  // namespace mevmix
