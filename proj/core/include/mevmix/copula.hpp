#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mevmix/rng.hpp"
#include "mevmix/subset.hpp"

namespace mevmix {

// Dense M4 coefficient array a[l][k][i]: `lags` rows l, `shifts` columns k
// (the truncated moving-maxima index range), `dimension` coordinates i.
// A "signal" is one (l, k) pair.
class M4Coefficients {
 public:
  M4Coefficients() = default;
  // `values` holds lags * shifts * dimension entries, i fastest. Throws
  // shape_error on a size mismatch or a zero extent.
  M4Coefficients(std::size_t lags, std::size_t shifts, std::size_t dimension,
                 std::vector<double> values);
  // From a nested [l][k][i] array; throws shape_error if ragged.
  static M4Coefficients from_nested(const std::vector<std::vector<std::vector<double>>>& a);

  std::size_t lags() const { return lags_; }
  std::size_t shifts() const { return shifts_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t signal_count() const { return lags_ * shifts_; }

  double at(std::size_t l, std::size_t k, std::size_t i) const {
    return values_[(l * shifts_ + k) * dimension_ + i];
  }
  // Coefficients of signal s = l * shifts + k across coordinates.
  std::span<const double> signal(std::size_t s) const {
    return {values_.data() + s * dimension_, dimension_};
  }
  // Sum over all signals of coordinate i.
  double column_sum(std::size_t i) const;
  // Keeps the coordinates in `mask`, in increasing order.
  M4Coefficients restrict_to(SubsetMask mask) const;
  std::vector<std::vector<std::vector<double>>> to_nested() const;

 private:
  std::size_t lags_ = 0;
  std::size_t shifts_ = 0;
  std::size_t dimension_ = 0;
  std::vector<double> values_;
};

enum class CopulaKind { independence, comonotone, gumbel, m4 };

std::string to_string(CopulaKind kind);

// A max-stable copula C, represented through its exponent function
//
//   l(x) = -ln C(exp(-x_1), ..., exp(-x_d)),  x >= 0,
//
// which is homogeneous of order one. Immutable after construction.
//
// Factories check only shapes; parameter ranges are reported by validate()
// so that invalid descriptions can be diagnosed instead of rejected outright.
class MaxStableCopula {
 public:
  static MaxStableCopula independence(std::size_t dimension);
  static MaxStableCopula comonotone(std::size_t dimension);
  // Exponent (sum_i x_i^(1/r))^r.
  static MaxStableCopula gumbel(std::size_t dimension, double r);
  // Exponent sum_{l,k} max_i a[l][k][i] x_i.
  static MaxStableCopula m4(M4Coefficients coefficients);

  CopulaKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  // Gumbel parameter r; 1 for the other kinds.
  double gumbel_r() const { return r_; }
  // Throws unsupported_error unless kind() == m4.
  const M4Coefficients& m4_coefficients() const;
  // True for an M4 subcopula whose coefficient columns no longer sum to one.
  bool derived() const { return derived_; }

 private:
  MaxStableCopula(CopulaKind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {}

  friend MaxStableCopula subcopula(const MaxStableCopula& c, SubsetMask a);

  CopulaKind kind_;
  std::size_t dimension_;
  double r_ = 1.0;
  bool derived_ = false;
  M4Coefficients m4_;
};

// Tolerance on M4 coefficient column sums.
inline constexpr double kColumnSumTolerance = 1e-12;

// l(x). Entries may be +inf (argument 0 of the copula). Throws shape_error on
// a dimension mismatch, domain_error for negative or NaN entries.
double exponent(const MaxStableCopula& c, std::span<const double> x);
// Extended precision, for sums that cancel heavily.
long double exponent(const MaxStableCopula& c, std::span<const long double> x);

// C(u) = exp(-l(-ln u)); 0 as soon as some u_i is 0. Throws domain_error for
// u outside [0,1]^d, shape_error on a dimension mismatch.
double cdf(const MaxStableCopula& c, std::span<const double> u);

// Copula of the coordinates in `a`. Throws domain_error when `a` does not fit.
MaxStableCopula subcopula(const MaxStableCopula& c, SubsetMask a);

// One draw with uniform margins whose joint law is c.
//   independence: i.i.d. uniforms
//   comonotone:   one uniform repeated
//   gumbel(r):    positive r-stable frailty S, u_i = exp(-(E_i / S)^r)
//   m4:           unit Frechet Z per signal, Y_i = max a Z, u_i = exp(-1/Y_i)
// Throws unsupported_error for derived M4 subcopulas.
std::vector<double> sample(const MaxStableCopula& c, Rng& rng);
// Same, writing into `out` (size d).
void sample_into(const MaxStableCopula& c, Rng& rng, std::span<double> out);

// Violations of the copula invariants; empty when valid.
std::vector<std::string> validate(const MaxStableCopula& c);

}  // namespace mevmix
