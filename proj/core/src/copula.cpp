#include "mevmix/copula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "mevmix/error.hpp"
#include "mevmix/stable.hpp"

namespace mevmix {

M4Coefficients::M4Coefficients(std::size_t lags, std::size_t shifts, std::size_t dimension,
                               std::vector<double> values)
    : lags_(lags), shifts_(shifts), dimension_(dimension), values_(std::move(values)) {
  if (lags == 0 || shifts == 0 || dimension == 0)
    throw shape_error("M4 coefficient array needs at least one lag, shift and coordinate");
  if (values_.size() != lags * shifts * dimension)
    throw shape_error("M4 coefficient array has " + std::to_string(values_.size()) +
                      " entries, expected " + std::to_string(lags * shifts * dimension));
}

M4Coefficients M4Coefficients::from_nested(
    const std::vector<std::vector<std::vector<double>>>& a) {
  if (a.empty() || a.front().empty() || a.front().front().empty())
    throw shape_error("M4 coefficient array a[l][k][i] is empty");
  const std::size_t shifts = a.front().size();
  const std::size_t dim = a.front().front().size();
  std::vector<double> flat;
  flat.reserve(a.size() * shifts * dim);
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (a[l].size() != shifts)
      throw shape_error("M4 coefficient array is ragged at lag " + std::to_string(l + 1));
    for (std::size_t k = 0; k < shifts; ++k) {
      if (a[l][k].size() != dim)
        throw shape_error("M4 coefficient array is ragged at lag " + std::to_string(l + 1) +
                          ", shift " + std::to_string(k + 1));
      flat.insert(flat.end(), a[l][k].begin(), a[l][k].end());
    }
  }
  return M4Coefficients(a.size(), shifts, dim, std::move(flat));
}

double M4Coefficients::column_sum(std::size_t i) const {
  double sum = 0.0;
  for (std::size_t s = 0; s < signal_count(); ++s) sum += values_[s * dimension_ + i];
  return sum;
}

M4Coefficients M4Coefficients::restrict_to(SubsetMask mask) const {
  check_subset(mask, dimension_);
  const auto keep = mask.indices();
  std::vector<double> out;
  out.reserve(signal_count() * keep.size());
  for (std::size_t s = 0; s < signal_count(); ++s)
    for (auto i : keep) out.push_back(values_[s * dimension_ + i]);
  return M4Coefficients(lags_, shifts_, keep.size(), std::move(out));
}

std::vector<std::vector<std::vector<double>>> M4Coefficients::to_nested() const {
  std::vector<std::vector<std::vector<double>>> a(lags_, std::vector<std::vector<double>>(shifts_));
  for (std::size_t l = 0; l < lags_; ++l)
    for (std::size_t k = 0; k < shifts_; ++k) {
      auto sig = signal(l * shifts_ + k);
      a[l][k].assign(sig.begin(), sig.end());
    }
  return a;
}

std::string to_string(CopulaKind kind) {
  switch (kind) {
    case CopulaKind::independence: return "independence";
    case CopulaKind::comonotone: return "comonotone";
    case CopulaKind::gumbel: return "gumbel";
    case CopulaKind::m4: return "m4";
  }
  return "unknown";
}

namespace {

void require_dimension(std::size_t d) {
  if (d == 0) throw shape_error("copula dimension must be at least 1");
}

void require_shape(const MaxStableCopula& c, std::size_t n) {
  if (n != c.dimension())
    throw shape_error("argument has " + std::to_string(n) + " entries, copula dimension is " +
                      std::to_string(c.dimension()));
}

}  // namespace

MaxStableCopula MaxStableCopula::independence(std::size_t dimension) {
  require_dimension(dimension);
  return MaxStableCopula(CopulaKind::independence, dimension);
}

MaxStableCopula MaxStableCopula::comonotone(std::size_t dimension) {
  require_dimension(dimension);
  return MaxStableCopula(CopulaKind::comonotone, dimension);
}

MaxStableCopula MaxStableCopula::gumbel(std::size_t dimension, double r) {
  require_dimension(dimension);
  MaxStableCopula c(CopulaKind::gumbel, dimension);
  c.r_ = r;
  return c;
}

MaxStableCopula MaxStableCopula::m4(M4Coefficients coefficients) {
  MaxStableCopula c(CopulaKind::m4, coefficients.dimension());
  c.m4_ = std::move(coefficients);
  return c;
}

const M4Coefficients& MaxStableCopula::m4_coefficients() const {
  if (kind_ != CopulaKind::m4)
    throw unsupported_error(to_string(kind_) + " copula has no M4 coefficients");
  return m4_;
}

namespace {

template <class T>
T exponent_impl(const MaxStableCopula& c, std::span<const T> x) {
  require_shape(c, x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] >= 0))
      throw domain_error("exponent argument x_" + std::to_string(i + 1) + " must be >= 0");

  switch (c.kind()) {
    case CopulaKind::independence: {
      T sum = 0;
      for (T v : x) sum += v;
      return sum;
    }
    case CopulaKind::comonotone:
      return *std::max_element(x.begin(), x.end());
    case CopulaKind::gumbel: {
      const T r = c.gumbel_r();
      if (r == 1) {
        T sum = 0;
        for (T v : x) sum += v;
        return sum;
      }
      // Factor out the largest entry: (sum (x_i/m)^(1/r))^r * m.
      const T m = *std::max_element(x.begin(), x.end());
      if (m == 0 || std::isinf(m)) return m;
      T sum = 0;
      for (T v : x)
        if (v > 0) sum += std::pow(v / m, 1 / r);
      return m * std::pow(sum, r);
    }
    case CopulaKind::m4: {
      const auto& a = c.m4_coefficients();
      T total = 0;
      for (std::size_t s = 0; s < a.signal_count(); ++s) {
        const auto sig = a.signal(s);
        T best = 0;
        for (std::size_t i = 0; i < sig.size(); ++i)
          if (sig[i] > 0.0) best = std::max(best, static_cast<T>(sig[i]) * x[i]);
        total += best;
      }
      return total;
    }
  }
  return 0;
}

}  // namespace

double exponent(const MaxStableCopula& c, std::span<const double> x) { return exponent_impl(c, x); }

long double exponent(const MaxStableCopula& c, std::span<const long double> x) { return exponent_impl(c, x); }

double cdf(const MaxStableCopula& c, std::span<const double> u) {
  require_shape(c, u.size());
  bool any_zero = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] >= 0.0 && u[i] <= 1.0))
      throw domain_error("copula argument u_" + std::to_string(i + 1) + " is outside [0, 1]");
    any_zero = any_zero || u[i] == 0.0;
  }
  if (any_zero) return 0.0;
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = -std::log(u[i]);
  return std::exp(-exponent(c, x));
}

MaxStableCopula subcopula(const MaxStableCopula& c, SubsetMask a) {
  check_subset(a, c.dimension());
  const std::size_t n = a.size();
  switch (c.kind()) {
    case CopulaKind::independence: return MaxStableCopula::independence(n);
    case CopulaKind::comonotone: return MaxStableCopula::comonotone(n);
    case CopulaKind::gumbel: return MaxStableCopula::gumbel(n, c.gumbel_r());
    case CopulaKind::m4: {
      MaxStableCopula sub = MaxStableCopula::m4(c.m4_coefficients().restrict_to(a));
      sub.derived_ = c.derived() || n != c.dimension();
      return sub;
    }
  }
  throw unsupported_error("unknown copula kind");
}

void sample_into(const MaxStableCopula& c, Rng& rng, std::span<double> out) {
  require_shape(c, out.size());
  switch (c.kind()) {
    case CopulaKind::independence:
      for (auto& v : out) v = rng.uniform();
      return;
    case CopulaKind::comonotone: {
      const double v = rng.uniform();
      std::fill(out.begin(), out.end(), v);
      return;
    }
    case CopulaKind::gumbel: {
      // Frailty construction: given S, the coordinates are independent with
      // P(U_i <= u | S) = exp(-S (-ln u)^(1/r)); integrating out S gives the
      // Gumbel copula exp(-(sum (-ln u_i)^(1/r))^r).
      const double r = c.gumbel_r();
      const double s = sample_positive_stable(StableAlpha(r), rng);
      for (auto& v : out) v = std::exp(-std::pow(rng.exponential() / s, r));
      return;
    }
    case CopulaKind::m4: {
      if (c.derived())
        throw unsupported_error("cannot sample a derived M4 subcopula (column sums below 1)");
      const auto& a = c.m4_coefficients();
      std::fill(out.begin(), out.end(), 0.0);
      for (std::size_t s = 0; s < a.signal_count(); ++s) {
        const double z = 1.0 / rng.exponential();  // unit Frechet
        const auto sig = a.signal(s);
        for (std::size_t i = 0; i < sig.size(); ++i) out[i] = std::max(out[i], sig[i] * z);
      }
      for (auto& v : out) v = std::exp(-1.0 / v);
      return;
    }
  }
}

std::vector<double> sample(const MaxStableCopula& c, Rng& rng) {
  std::vector<double> out(c.dimension());
  sample_into(c, rng, out);
  return out;
}

std::vector<std::string> validate(const MaxStableCopula& c) {
  std::vector<std::string> v;
  if (c.dimension() < 1) v.emplace_back("dimension must be at least 1");
  if (c.dimension() > kMaxDimension)
    v.push_back("dimension " + std::to_string(c.dimension()) + " exceeds the maximum " +
                std::to_string(kMaxDimension));
  if (c.kind() == CopulaKind::gumbel) {
    const double r = c.gumbel_r();
    if (!(r > 0.0 && r <= 1.0)) {
      std::ostringstream msg;
      msg << "r out of (0,1]: r = " << r;
      v.push_back(msg.str());
    }
  }
  if (c.kind() == CopulaKind::m4) {
    const auto& a = c.m4_coefficients();
    for (std::size_t s = 0; s < a.signal_count(); ++s) {
      const auto sig = a.signal(s);
      for (std::size_t i = 0; i < sig.size(); ++i)
        if (!(sig[i] >= 0.0) || !std::isfinite(sig[i])) {
          std::ostringstream msg;
          msg << "M4 coefficient a[" << s / a.shifts() + 1 << "][" << s % a.shifts() + 1 << "]["
              << i + 1 << "] = " << sig[i] << " must be finite and nonnegative";
          v.push_back(msg.str());
        }
    }
    if (!c.derived()) {
      for (std::size_t i = 0; i < a.dimension(); ++i) {
        const double sum = a.column_sum(i);
        if (!(std::abs(sum - 1.0) <= kColumnSumTolerance)) {
          v.push_back(fmt::format("M4 column {} sums to {}, expected 1", i + 1, sum));
        }
      }
    }
  }
  return v;
}

}  // namespace mevmix
