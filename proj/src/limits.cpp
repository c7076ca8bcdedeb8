#include "dqw/limits.hpp"

#include <string>

#include "dqw/decompose.hpp"
#include "dqw/spectral.hpp"

namespace dqw {

namespace {

constexpr double kExcludedTol = 1e-12;

bool near_angle(double delta, double target) { return angle_distance(delta, target) < 1e-9; }

void require_unit(const Vector4& phi, const Tolerance& tol) {
  if (std::abs(norm_squared(phi) - 1.0) > tol.prob_tol)
    throw ValidationError("initial vector must have unit norm");
}

class StateBuilder {
 public:
  explicit StateBuilder(std::size_t n) {
    const auto half = static_cast<std::int64_t>(n);
    state_.offset = -half;
    state_.amplitudes.assign(2 * n + 1, Vector4{});
  }

  void add(std::int64_t x, Complex scale, const Vector4& v) {
    auto& slot = state_.amplitudes[static_cast<std::size_t>(x - state_.offset)];
    slot = slot + scale * v;
  }

  WalkState4 take() { return std::move(state_); }

 private:
  WalkState4 state_;
};

}  // namespace

double konno_density(double r, double x) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("konno density needs 0 < r < 1");
  if (!(std::abs(x) < r)) return 0.0;
  return std::sqrt(1.0 - r * r) / (std::numbers::pi * (1.0 - x * x) * std::sqrt(r * r - x * x));
}

double konno_drift_coeff(Complex a, Complex b, const Vector2& phi) {
  if (a == Complex{}) throw DomainError("drift coefficient needs a != 0");
  const Complex cross = a * phi[0] * std::conj(b * phi[1]);
  return std::norm(phi[0]) - std::norm(phi[1]) - 2.0 * cross.real() / std::norm(a);
}

KonnoLimit konno_limit(const ComplexMatrix2& coin, const Vector2& phi) {
  const double r = std::abs(coin(0, 0));
  if (!(r > 0.0 && r < 1.0)) throw DomainError("2-state limit needs 0 < |a| < 1");
  return KonnoLimit{r, konno_drift_coeff(coin(0, 0), coin(0, 1), phi)};
}

double GroverLimit::regular_part(double x) const {
  return std::sqrt(1.0 - p * p) * (p * p * d0 + p * d1 * x + d2 * x * x) /
         (2.0 * std::numbers::pi * p * p * (1.0 - x * x));
}

double GroverLimit::density(double x) const {
  const double radius = std::abs(p);
  if (!(std::abs(x) < radius)) return 0.0;
  return regular_part(x) / std::sqrt(radius * radius - x * x);
}

double grover_density(const GroverLimit& limit, double x) { return limit.density(x); }

bool is_excluded_delta(double delta) {
  constexpr double q = std::numbers::pi / 4.0;
  for (double target : {q, -q, 3.0 * q, -3.0 * q})
    if (angle_distance(delta, target) < kExcludedTol) return true;
  return false;
}

GroverLimit grover_limit(double delta, const Vector4& phi, const Tolerance& tol) {
  if (is_excluded_delta(delta)) {
    throw DomainError("delta = ±pi/4, ±3pi/4 has no continuous limit density; use the exact-state "
                      "formulas (exact_state_B for pi/4, -3pi/4; exact_state_C for 3pi/4, -pi/4)");
  }
  require_unit(phi, tol);
  const auto& [f1, f2, f3, f4] = phi;

  GroverLimit g;
  g.delta = delta;
  g.p = (std::cos(delta) - std::sin(delta)) / std::numbers::sqrt2;
  g.q = (std::cos(delta) + std::sin(delta)) / std::numbers::sqrt2;
  const double p = g.p;
  const double q = g.q;
  g.d0 = std::norm(f1 - f2) + std::norm(f3 - f4);
  g.d1 = p * (std::norm(f2 - f4) - std::norm(f1 - f3)) + q * (std::norm(f2 + f3) - std::norm(f1 + f4));
  g.d2 = p * q * (std::norm(f1 + f2) - std::norm(f3 + f4)) +
         2.0 * p * p * (std::conj(f1 - f4) * (f2 - f3)).real() +
         2.0 * q * q * (std::conj(f1 + f3) * (f2 + f4)).real();
  g.a_coeff = 1.0 - g.d0 / 2.0 - (1.0 - std::sqrt(1.0 - p * p)) / (2.0 * p * p) * g.d2;
  g.corresponds_to_dqw = true;
  for (const auto& c : phi)
    if (std::abs(c.imag()) > tol.eq_tol) g.corresponds_to_dqw = false;
  return g;
}

double limit_measure_moment(const GroverLimit& limit, int order) {
  const double continuous = density_moment(limit, order);
  return order == 0 ? limit.a_coeff + continuous : continuous;
}

WalkState4 exact_state_B(std::size_t n, double delta, const Vector4& phi) {
  double sign = 0.0;
  if (near_angle(delta, std::numbers::pi / 4.0)) {
    sign = 1.0;
  } else if (near_angle(delta, -3.0 * std::numbers::pi / 4.0)) {
    sign = -1.0;
  } else {
    throw DomainError("exact_state_B needs delta = pi/4 or -3pi/4");
  }
  const auto& [f1, f2, f3, f4] = phi;
  StateBuilder b(n);
  const double h = 0.5 * sign;
  switch (n % 4) {
    case 0:
      b.add(0, 1.0, phi);
      break;
    case 1:
      b.add(-1, h, {f1 + f2 - f3 + f4, 0.0, f1 - f2 - f3 - f4, 0.0});
      b.add(1, h, {0.0, f1 + f2 + f3 - f4, 0.0, -f1 + f2 - f3 - f4});
      break;
    case 2:
      b.add(-2, 0.5, {f2 + f4, 0.0, f2 + f4, 0.0});
      b.add(0, 0.5, {f2 - f4, f1 - f3, f4 - f2, f3 - f1});
      b.add(2, 0.5, {0.0, f1 + f3, 0.0, f1 + f3});
      break;
    default:
      b.add(-1, h, {f2 - f4, f2 + f4, f2 - f4, -f2 - f4});
      b.add(1, h, {f1 + f3, f1 - f3, -f1 - f3, f1 - f3});
      break;
  }
  return b.take();
}

WalkState4 exact_state_C(std::size_t n, double delta, const Vector4& phi) {
  double sign = 0.0;
  if (near_angle(delta, -std::numbers::pi / 4.0)) {
    sign = 1.0;
  } else if (near_angle(delta, 3.0 * std::numbers::pi / 4.0)) {
    sign = -1.0;
  } else {
    throw DomainError("exact_state_C needs delta = 3pi/4 or -pi/4");
  }
  const auto& [f1, f2, f3, f4] = phi;
  const auto edge = static_cast<std::int64_t>(n);
  const Vector4 left{f1 - f3, 0.0, f3 - f1, 0.0};
  const Vector4 right{0.0, f2 - f4, 0.0, f4 - f2};
  StateBuilder b(n);
  if (n % 2 == 0) {
    b.add(-edge, 0.5, left);
    b.add(0, 0.5, {f1 + f3, f2 + f4, f1 + f3, f2 + f4});
    b.add(edge, 0.5, right);
  } else {
    const double h = 0.5 * sign;
    b.add(-edge, h, left);
    b.add(-1, -h, {f2 + f4, 0.0, f2 + f4, 0.0});
    b.add(1, -h, {0.0, f1 + f3, 0.0, f1 + f3});
    b.add(edge, h, right);
  }
  return b.take();
}

double limit_moments(double delta, const Vector4& phi, int order, std::size_t points) {
  if (order < 0) throw ValidationError("moment order must be non-negative");
  if (order == 0) return norm_squared(phi);
  if (points < 4 || points % 2 != 0) throw ValidationError("k-grid needs an even number of points");

  double full = 0.0;
  double half = 0.0;
  const auto ks = k_grid(points);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto sys = eigen_system_grover_family(delta, ks[i]);
    double value = 0.0;
    for (std::size_t j = 2; j < 4; ++j)
      value += std::pow(sys[j].log_derivative, order) * std::norm(inner(sys[j].vector, phi));
    full += value;
    if (i % 2 == 0) half += value;
  }
  full /= static_cast<double>(points);
  half /= static_cast<double>(points / 2);
  if (std::abs(full - half) > 1e-7)
    throw NumericalError("momentum quadrature did not converge (grid halving changed the moment by " +
                         std::to_string(std::abs(full - half)) + ")");
  return full;
}

double empirical_moment(const Distribution& dist, std::size_t n, int order) {
  const double nd = static_cast<double>(n);
  double s = 0.0;
  for (auto x = dist.min_position(); x <= dist.max_position(); ++x)
    s += dist.at(x) * std::pow(static_cast<double>(x) / nd, order);
  return s;
}

double localization_mass(const Distribution& at_n, std::size_t n, const Distribution& at_next,
                         double eps) {
  const auto window = [eps](const Distribution& d, std::size_t time) {
    const double limit = eps * static_cast<double>(time);
    double s = 0.0;
    for (auto x = d.min_position(); x <= d.max_position(); ++x)
      if (std::abs(static_cast<double>(x)) <= limit) s += d.at(x);
    return s;
  };
  return 0.5 * (window(at_n, n) + window(at_next, n + 1));
}

}  // namespace dqw
