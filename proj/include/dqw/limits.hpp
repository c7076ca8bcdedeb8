#pragma once

// Closed-form limit objects: the 2-state Konno density, the weak-limit
// measure of the Grover family (delta mass at the origin plus a density on
// (-|p|, |p|)), the exact periodic and ballistic states at the excluded
// parameters, limit moments in momentum space, and finite-time comparison
// metrics against a simulated distribution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "dqw/numerics.hpp"
#include "dqw/walk_state.hpp"

namespace dqw {

/// sqrt(1 - r^2) / (pi (1 - x^2) sqrt(r^2 - x^2)) on (-r, r); 0 elsewhere,
/// including the endpoints. Throws DomainError unless 0 < r < 1.
double konno_density(double r, double x);

/// |phi1|^2 - |phi2|^2 - (a phi1 conj(b phi2) + conj(a phi1) b phi2) / |a|^2.
/// Throws DomainError when a = 0.
double konno_drift_coeff(Complex a, Complex b, const Vector2& phi);

/// Limit density (1 - C x) f_K(x; r) of a 2-state walk.
struct KonnoLimit {
  double r = 0.0;
  double c_coeff = 0.0;

  double support_radius() const { return r; }
  double density(double x) const { return (1.0 - c_coeff * x) * konno_density(r, x); }
  /// density(x) * sqrt(r^2 - x^2), smooth on [-r, r].
  double regular_part(double x) const {
    return (1.0 - c_coeff * x) * std::sqrt(1.0 - r * r) / (std::numbers::pi * (1.0 - x * x));
  }
};

/// Limit of a 2-state walk with coin [[a, b], [c, d]]; requires 0 < |a| < 1.
KonnoLimit konno_limit(const ComplexMatrix2& coin, const Vector2& phi);

/// Weak-limit measure A·delta_0 + f(x) on (-|p|, |p|) of the Grover family.
struct GroverLimit {
  double delta = 0.0;
  double p = 0.0;
  double q = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double a_coeff = 0.0;
  /// Real initial vectors are lifts of 2-state decomposed walks.
  bool corresponds_to_dqw = false;

  double support_radius() const { return std::abs(p); }
  double density(double x) const;
  /// density(x) * sqrt(p^2 - x^2), smooth on [-|p|, |p|].
  double regular_part(double x) const;
};

/// True for delta = ±pi/4, ±3pi/4 (within 1e-12), where the measure
/// degenerates and the exact-state formulas apply instead.
bool is_excluded_delta(double delta);

/// Throws DomainError for excluded delta, ValidationError unless |phi| = 1.
GroverLimit grover_limit(double delta, const Vector4& phi, const Tolerance& tol = {});

/// f(x) = sqrt(1 - p^2) (p^2 d0 + p d1 x + d2 x^2) / (2 pi p^2 sqrt(p^2 - x^2) (1 - x^2))
/// for |x| < |p|, 0 otherwise.
double grover_density(const GroverLimit& limit, double x);

// Quadrature for densities of the form g(x) / sqrt(R^2 - x^2) with g smooth:
// the substitution x = R sin t removes the endpoint singularity and the
// composite trapezoid rule runs on t.

inline constexpr std::size_t kDensityQuadraturePoints = 4096;

template <typename Density>
double interval_mass(const Density& density, double a, double b,
                     std::size_t points = kDensityQuadraturePoints) {
  const double radius = density.support_radius();
  a = std::max(a, -radius);
  b = std::min(b, radius);
  if (!(a < b)) return 0.0;
  const double ta = std::asin(std::clamp(a / radius, -1.0, 1.0));
  const double tb = std::asin(std::clamp(b / radius, -1.0, 1.0));
  const double h = (tb - ta) / static_cast<double>(points);
  double sum = 0.5 * (density.regular_part(radius * std::sin(ta)) +
                      density.regular_part(radius * std::sin(tb)));
  for (std::size_t i = 1; i < points; ++i)
    sum += density.regular_part(radius * std::sin(ta + h * static_cast<double>(i)));
  return sum * h;
}

/// Integral of x^order times the density over its support.
template <typename Density>
double density_moment(const Density& density, int order,
                      std::size_t points = kDensityQuadraturePoints) {
  const double radius = density.support_radius();
  const double h = std::numbers::pi / static_cast<double>(points);
  double sum = 0.0;
  for (std::size_t i = 0; i <= points; ++i) {
    const double t = -std::numbers::pi / 2.0 + h * static_cast<double>(i);
    const double x = radius * std::sin(t);
    const double weight = (i == 0 || i == points) ? 0.5 : 1.0;
    sum += weight * density.regular_part(x) * std::pow(x, order);
  }
  return sum * h;
}

/// A·0^order + integral of x^order f(x): moments of the full limit measure.
double limit_measure_moment(const GroverLimit& limit, int order);

/// Exact state at time n for delta = pi/4 or -3pi/4 (period 4), on the
/// window [-n, n]. Throws DomainError for other delta.
WalkState4 exact_state_B(std::size_t n, double delta, const Vector4& phi);

/// Exact state at time n for delta = 3pi/4 or -pi/4, supported on
/// {-n, -1, 0, 1, n}. Throws DomainError for other delta.
WalkState4 exact_state_C(std::size_t n, double delta, const Vector4& phi);

inline constexpr std::size_t kMomentumQuadraturePoints = 2048;

/// lim E[(X_n/n)^order] = integral over k of
///   sum_j (D lambda_j / lambda_j)^order |<v_j|phi>|^2 dk / 2pi
/// by the trapezoid rule on a uniform k-grid. Throws NumericalError when
/// halving the grid changes the result by more than 1e-7.
double limit_moments(double delta, const Vector4& phi, int order,
                     std::size_t points = kMomentumQuadraturePoints);

/// sum_x mu(x) (x/n)^order
double empirical_moment(const Distribution& dist, std::size_t n, int order);

/// Mass on |x| <= eps·n, averaged over times n and n+1.
double localization_mass(const Distribution& at_n, std::size_t n, const Distribution& at_next,
                         double eps = 0.02);

struct BinnedComparison {
  double l1 = 0.0;
  double sup = 0.0;
  std::size_t bins = 0;
};

/// Bins x/n on [-1, 1] with the given width and compares bin masses with
/// the density integrated over each bin. Sites with |x| <= eps·n and the
/// interval [-eps, eps] are left out when eps > 0.
template <typename Density>
BinnedComparison compare_binned(const Distribution& dist, std::size_t n, const Density& density,
                                double bin_width = 0.02, double eps = 0.02) {
  if (!(bin_width > 0.0)) throw ValidationError("bin width must be positive");
  if (n == 0) throw ValidationError("comparison needs n > 0");
  const auto bins = static_cast<std::size_t>(std::ceil(2.0 / bin_width - 1e-9));
  std::vector<double> empirical(bins, 0.0);
  const double nd = static_cast<double>(n);
  for (auto x = dist.min_position(); x <= dist.max_position(); ++x) {
    const double y = static_cast<double>(x) / nd;
    if (eps > 0.0 && std::abs(static_cast<double>(x)) <= eps * nd) continue;
    if (y < -1.0 || y > 1.0) continue;
    auto bin = static_cast<std::size_t>(std::floor((y + 1.0) / bin_width + 1e-9));
    empirical[std::min(bin, bins - 1)] += dist.at(x);
  }
  BinnedComparison out;
  out.bins = bins;
  for (std::size_t b = 0; b < bins; ++b) {
    const double lo = -1.0 + bin_width * static_cast<double>(b);
    const double hi = std::min(1.0, lo + bin_width);
    double expected = 0.0;
    if (eps > 0.0) {
      expected += interval_mass(density, lo, std::min(hi, -eps), 64);
      expected += interval_mass(density, std::max(lo, eps), hi, 64);
    } else {
      expected = interval_mass(density, lo, hi, 64);
    }
    const double diff = std::abs(empirical[b] - expected);
    out.l1 += diff;
    out.sup = std::max(out.sup, diff);
  }
  return out;
}

}  // namespace dqw
