#include "mevmix/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "mevmix/error.hpp"
#include "mevmix/stable.hpp"

namespace mevmix {

MevMixModel::MevMixModel(std::size_t dimension, std::vector<MixtureComponent> components)
    : dimension_(dimension), components_(std::move(components)) {
  if (dimension == 0) throw shape_error("model dimension must be at least 1");
  for (std::size_t j = 0; j < components_.size(); ++j) {
    const auto& c = components_[j];
    if (c.beta.size() != dimension)
      throw shape_error("component " + std::to_string(j + 1) + " has " +
                        std::to_string(c.beta.size()) + " weights, model dimension is " +
                        std::to_string(dimension));
    if (c.copula.dimension() != dimension)
      throw shape_error("component " + std::to_string(j + 1) + " copula has dimension " +
                        std::to_string(c.copula.dimension()) + ", model dimension is " +
                        std::to_string(dimension));
  }
}

bool MevMixModel::all_copulas_are(CopulaKind kind) const {
  return std::all_of(components_.begin(), components_.end(),
                     [kind](const MixtureComponent& c) { return c.copula.kind() == kind; });
}

std::vector<std::string> validate_model(const MevMixModel& m) {
  std::vector<std::string> v;
  const std::size_t d = m.dimension();
  if (d > kMaxDimension)
    v.push_back("dimension " + std::to_string(d) + " exceeds the maximum " +
                std::to_string(kMaxDimension));
  if (m.component_count() == 0) v.emplace_back("model needs at least one component (q >= 1)");

  for (std::size_t j = 0; j < m.component_count(); ++j) {
    const auto& c = m.component(j);
    const std::string where = "component " + std::to_string(j + 1) + ": ";
    if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
      std::ostringstream msg;
      msg << where << "alpha out of (0,1]: alpha = " << c.alpha;
      v.push_back(msg.str());
    }
    for (std::size_t i = 0; i < d; ++i)
      if (!(c.beta[i] >= 0.0) || !std::isfinite(c.beta[i])) {
        std::ostringstream msg;
        msg << where << "beta[" << i + 1 << "] = " << c.beta[i] << " must be finite and nonnegative";
        v.push_back(msg.str());
      }
    for (auto& cv : validate(c.copula)) v.push_back(where + cv);
  }

  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    for (const auto& c : m.components()) sum += c.beta[i];
    if (!(std::abs(sum - 1.0) <= kWeightSumTolerance))
      v.push_back(fmt::format("weights for coordinate {} sum to {}, expected 1", i + 1, sum));
  }
  return v;
}

void require_valid(const MevMixModel& m) {
  const auto v = validate_model(m);
  if (v.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& s : v) msg += "\n  " + s;
  throw domain_error(msg);
}

namespace {

template <class T>
T model_exponent_impl(const MevMixModel& m, std::span<const T> x) {
  const std::size_t d = m.dimension();
  if (x.size() != d)
    throw shape_error("argument has " + std::to_string(x.size()) + " entries, model dimension is " +
                      std::to_string(d));
  for (std::size_t i = 0; i < d; ++i)
    if (!(x[i] >= 0))
      throw domain_error("exponent argument x_" + std::to_string(i + 1) + " must be >= 0");

  std::vector<T> scaled(d);
  T total = 0;
  for (const auto& c : m.components()) {
    // Zero weights are handled explicitly: the coordinate drops out even when
    // x_i is +inf.
    T peak = 0;
    for (std::size_t i = 0; i < d; ++i) {
      scaled[i] = c.beta[i] == 0.0 ? T(0) : static_cast<T>(c.beta[i]) * x[i];
      peak = std::max(peak, scaled[i]);
    }
    if (peak == 0) continue;
    if (std::isinf(peak)) return peak;
    if (c.alpha == 1.0) {
      total += exponent(c.copula, std::span<const T>(scaled));
      continue;
    }
    // l_j(y)^alpha with y_i = (beta_i x_i)^(1/alpha), using homogeneity of l_j
    // to factor out the peak: l_j(y)^alpha = peak * l_j((scaled/peak)^(1/alpha))^alpha.
    // Keeps y bounded by 1 so small alpha cannot overflow the powers.
    const T alpha = c.alpha;
    const T inv_alpha = 1 / alpha;
    for (auto& v : scaled)
      if (v > 0) v = std::pow(v / peak, inv_alpha);
    total += peak * std::pow(exponent(c.copula, std::span<const T>(scaled)), alpha);
  }
  return total;
}

}  // namespace

double model_exponent(const MevMixModel& m, std::span<const double> x) { return model_exponent_impl(m, x); }

long double model_exponent(const MevMixModel& m, std::span<const long double> x) {
  return model_exponent_impl(m, x);
}

double model_cdf(const MevMixModel& m, std::span<const double> u) {
  const std::size_t d = m.dimension();
  if (u.size() != d)
    throw shape_error("argument has " + std::to_string(u.size()) + " entries, model dimension is " +
                      std::to_string(d));
  bool any_zero = false;
  for (std::size_t i = 0; i < d; ++i) {
    if (!(u[i] >= 0.0 && u[i] <= 1.0))
      throw domain_error("copula argument u_" + std::to_string(i + 1) + " is outside [0, 1]");
    any_zero = any_zero || u[i] == 0.0;
  }
  if (any_zero) return 0.0;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = -std::log(u[i]);
  return std::exp(-model_exponent(m, x));
}

void sample_model_once(const MevMixModel& m, Rng& rng, std::span<double> y) {
  const std::size_t d = m.dimension();
  if (y.size() != d) throw shape_error("output row does not match the model dimension");
  std::fill(y.begin(), y.end(), 0.0);
  std::vector<double> w(d);
  for (const auto& c : m.components()) {
    const double s = sample_positive_stable(StableAlpha(c.alpha), rng);
    // w = 0 or 1 in a weighted coordinate has probability zero but would
    // give ln(0) or a division by zero below; draw the copula again.
    for (;;) {
      sample_into(c.copula, rng, w);
      bool ok = true;
      for (std::size_t i = 0; i < d; ++i)
        if (c.beta[i] > 0.0 && !(w[i] > 0.0 && w[i] < 1.0)) ok = false;
      if (ok) break;
    }
    // Given S = s, P(X_i <= x | s) = exp(-s (x / beta_i)^(-1/alpha)). Setting
    // this equal to the copula draw w_i and solving for x:
    //   x_i = beta_i (s / (-ln w_i))^alpha.
    // The map is increasing in w_i, so the X_i inherit the copula C_j.
    for (std::size_t i = 0; i < d; ++i) {
      if (c.beta[i] == 0.0) continue;
      const double ratio = s / -std::log(w[i]);
      const double x = c.alpha == 1.0 ? c.beta[i] * ratio : c.beta[i] * std::pow(ratio, c.alpha);
      if (x > y[i]) y[i] = x;
    }
  }
}

SampleMatrix sample_model(const MevMixModel& m, std::size_t n, const SampleOptions& options) {
  require_valid(m);
  for (const auto& c : m.components())
    if (c.copula.kind() == CopulaKind::m4 && c.copula.derived())
      throw unsupported_error("cannot sample a model with a derived M4 subcopula");

  SampleMatrix out;
  out.rows = n;
  out.cols = m.dimension();
  out.values.assign(n * out.cols, 0.0);
  if (n == 0) return out;

  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp<std::size_t>(threads, 1, chunks);

  auto run_chunk = [&](std::size_t chunk) {
    Rng rng = Rng::for_stream(options.seed, chunk);
    const std::size_t begin = chunk * kSampleChunk;
    const std::size_t end = std::min(n, begin + kSampleChunk);
    for (std::size_t r = begin; r < end; ++r) sample_model_once(m, rng, out.row(r));
  };

  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        try {
          for (std::size_t c = next++; c < chunks && !failed; c = next++) run_chunk(c);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

SampleMatrix frechet_to_uniform(const SampleMatrix& y) {
  SampleMatrix u = y;
  for (auto& v : u.values) v = std::exp(-1.0 / v);
  return u;
}

MevMixModel make_single_mixture(double alpha, MaxStableCopula copula) {
  const std::size_t d = copula.dimension();
  std::vector<MixtureComponent> comps;
  comps.push_back({alpha, std::vector<double>(d, 1.0), std::move(copula)});
  return MevMixModel(d, std::move(comps));
}

MevMixModel make_asymmetric_logistic(const std::vector<double>& alphas,
                                     const std::vector<std::vector<double>>& betas) {
  if (alphas.size() != betas.size())
    throw shape_error("asymmetric logistic model: " + std::to_string(alphas.size()) +
                      " alphas but " + std::to_string(betas.size()) + " weight rows");
  if (betas.empty()) throw shape_error("asymmetric logistic model needs at least one component");
  const std::size_t d = betas.front().size();
  std::vector<MixtureComponent> comps;
  for (std::size_t j = 0; j < alphas.size(); ++j)
    comps.push_back({alphas[j], betas[j], MaxStableCopula::independence(d == 0 ? 1 : d)});
  return MevMixModel(d, std::move(comps));
}

namespace {

// Extends a copula on the coordinates of `subset` to all `dimension`
// coordinates so that its exponent is unchanged whenever the arguments
// outside the subset are zero.
MaxStableCopula embed(const MaxStableCopula& c, SubsetMask subset, std::size_t dimension) {
  switch (c.kind()) {
    case CopulaKind::independence: return MaxStableCopula::independence(dimension);
    case CopulaKind::comonotone: return MaxStableCopula::comonotone(dimension);
    case CopulaKind::gumbel: return MaxStableCopula::gumbel(dimension, c.gumbel_r());
    case CopulaKind::m4: {
      // Coordinates outside the subset get one private signal each (an extra
      // lag row with weight 1 at shift 1), keeping every column sum at 1.
      const auto& a = c.m4_coefficients();
      const auto members = subset.indices();
      const std::size_t outside = dimension - members.size();
      const std::size_t lags = a.lags() + (outside > 0 ? outside : 0);
      std::vector<double> values(lags * a.shifts() * dimension, 0.0);
      for (std::size_t s = 0; s < a.signal_count(); ++s)
        for (std::size_t k = 0; k < members.size(); ++k)
          values[s * dimension + members[k]] = a.signal(s)[k];
      std::size_t lag = a.lags();
      for (std::size_t i = 0; i < dimension; ++i) {
        if (subset.contains(i)) continue;
        values[(lag * a.shifts()) * dimension + i] = 1.0;
        ++lag;
      }
      return MaxStableCopula::m4(M4Coefficients(lags, a.shifts(), dimension, std::move(values)));
    }
  }
  throw unsupported_error("unknown copula kind");
}

}  // namespace

MevMixModel make_tawn_model(std::size_t dimension, const std::vector<TawnTerm>& terms) {
  std::vector<MixtureComponent> comps;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& term = terms[t];
    check_subset(term.subset, dimension);
    const auto members = term.subset.indices();
    if (term.beta.size() != members.size())
      throw shape_error("term " + std::to_string(t + 1) + " on " + term.subset.to_string() + " has " +
                        std::to_string(term.beta.size()) + " weights, expected " +
                        std::to_string(members.size()));
    MixtureComponent comp;
    comp.alpha = term.alpha;
    comp.beta.assign(dimension, 0.0);
    for (std::size_t k = 0; k < members.size(); ++k) comp.beta[members[k]] = term.beta[k];
    if (term.copula) {
      if (term.copula->dimension() != members.size())
        throw shape_error("term " + std::to_string(t + 1) + " copula has dimension " +
                          std::to_string(term.copula->dimension()) + ", subset has " +
                          std::to_string(members.size()) + " coordinates");
      comp.copula = embed(*term.copula, term.subset, dimension);
    } else {
      comp.copula = MaxStableCopula::independence(dimension);
    }
    comps.push_back(std::move(comp));
  }
  return MevMixModel(dimension, std::move(comps));
}

MevMixModel make_geometric_mean(const std::vector<double>& weights,
                                const std::vector<double>& alphas,
                                const std::vector<MaxStableCopula>& copulas) {
  if (weights.size() != alphas.size() || weights.size() != copulas.size())
    throw shape_error("geometric mean model: weights, alphas and copulas must have equal length");
  if (copulas.empty()) throw shape_error("geometric mean model needs at least one component");
  const std::size_t d = copulas.front().dimension();
  std::vector<MixtureComponent> comps;
  for (std::size_t j = 0; j < weights.size(); ++j)
    comps.push_back({alphas[j], std::vector<double>(d, weights[j]), copulas[j]});
  return MevMixModel(d, std::move(comps));
}

}  // namespace mevmix
