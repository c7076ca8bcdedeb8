#include "dqw/spectral.hpp"

#include <algorithm>
#include <numbers>

namespace dqw {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kGaugeFloor = 1e-8;
constexpr std::array<double, 4> kShiftSigns{1.0, -1.0, 1.0, -1.0};

double residual(const ComplexMatrix4& u, Complex lambda, const Vector4& v) {
  return norm(u * v - lambda * v);
}

Vector4 normalized(Vector4 v) {
  const double n = norm(v);
  for (auto& c : v) c /= n;
  return v;
}

Vector4 project_out(Vector4 v, const std::vector<Vector4>& basis) {
  // two passes of Gram-Schmidt keep the complement clean after the
  // large amplification of an inverse-iteration step
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v = v - inner(b, v) * b;
  return v;
}

double fourier_log_derivative(const Vector4& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += kShiftSigns[i] * std::norm(v[i]);
  return -s;
}

}  // namespace

ComplexMatrix4 fourier_coin(const ComplexMatrix4& coin, double k) {
  const Complex left = std::polar(1.0, k);
  const Complex right = std::polar(1.0, -k);
  ComplexMatrix4 out = coin;
  for (std::size_t row = 0; row < 4; ++row) {
    const Complex factor = row % 2 == 0 ? left : right;
    for (auto& v : out.entries[row]) v *= factor;
  }
  return out;
}

std::vector<double> k_grid(std::size_t points) {
  std::vector<double> ks(points);
  for (std::size_t i = 0; i < points; ++i)
    ks[i] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(points);
  return ks;
}

Complex CharPolyCoeffs::evaluate(Complex x) const {
  Complex acc = 0.0;
  for (const auto& c : coeffs) acc = acc * x + c;
  return acc;
}

Complex CharPolyCoeffs::derivative(Complex x) const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc = acc * x + static_cast<double>(4 - i) * coeffs[i];
  return acc;
}

CharPolyCoeffs characteristic_polynomial(const ComplexMatrix4& m) {
  CharPolyCoeffs poly;
  poly.coeffs[0] = 1.0;
  ComplexMatrix4 acc;  // M_0 = 0
  for (std::size_t k = 1; k <= 4; ++k) {
    acc = m * acc + poly.coeffs[k - 1] * ComplexMatrix4::identity();
    const ComplexMatrix4 am = m * acc;
    Complex trace = 0.0;
    for (std::size_t i = 0; i < 4; ++i) trace += am(i, i);
    poly.coeffs[k] = -trace / static_cast<double>(k);
  }
  return poly;
}

CharPolyCoeffs char_poly_closed_form(const PairParams& params, double k) {
  const double ra = std::abs(params.alpha);
  const double rb = std::abs(params.beta);
  const double th = params.theta();
  const double ph = params.phi();
  const double e = params.e;
  const double f = params.f;
  const double cd = std::cos(params.delta);
  const double sd = std::sin(params.delta);

  const double real_part = ra * (cd * std::cos(th) - e * sd * std::sin(th)) -
                           f * rb * sd * std::sin(ph);
  const double imag_part = ra * (e * cd * std::cos(th) - sd * std::sin(th)) +
                           f * rb * cd * std::cos(ph);
  const Complex a{-2.0 * std::cos(k) * real_part, -2.0 * std::sin(k) * imag_part};

  CharPolyCoeffs poly;
  poly.coeffs[0] = 1.0;
  poly.coeffs[1] = a;
  poly.coeffs[2] = 2.0 * kI * ra * std::sin(2.0 * k) * (e * ra + f * rb * std::cos(th - ph));
  poly.coeffs[3] = -std::conj(a);
  poly.coeffs[4] = -1.0;
  return poly;
}

std::array<Complex, 4> polynomial_roots(const CharPolyCoeffs& poly) {
  if (poly.leading() == Complex{}) throw NumericalError("polynomial is not quartic");
  CharPolyCoeffs monic = poly;
  for (auto& c : monic.coeffs) c /= poly.leading();

  // Start on a circle of radius (|c0|)^(1/4), rotated off the real axis.
  const double radius = std::max(1e-3, std::pow(std::abs(monic.coeffs[4]), 0.25));
  std::array<Complex, 4> z;
  for (std::size_t i = 0; i < 4; ++i)
    z[i] = std::polar(radius, 0.4 + std::numbers::pi * static_cast<double>(i) / 2.0);

  for (int iter = 0; iter < 500; ++iter) {
    double largest_step = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const Complex value = monic.evaluate(z[i]);
      if (value == Complex{}) continue;
      const Complex ratio = value / monic.derivative(z[i]);
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      largest_step = std::max(largest_step, std::abs(step));
    }
    if (largest_step < 1e-16) break;
  }

  // Newton polishing for simple roots
  for (auto& root : z) {
    for (int iter = 0; iter < 3; ++iter) {
      const Complex d = monic.derivative(root);
      if (std::abs(d) < 1e-8) break;
      root -= monic.evaluate(root) / d;
    }
  }
  return z;
}

void fix_gauge(Vector4& v) {
  v = normalized(v);
  for (const auto& c : v) {
    if (std::abs(c) > kGaugeFloor) {
      const Complex phase = std::conj(c) / std::abs(c);
      for (auto& x : v) x *= phase;
      return;
    }
  }
}

std::array<std::pair<Complex, Vector4>, 4> eigensolve_unitary(const ComplexMatrix4& u) {
  auto roots = polynomial_roots(characteristic_polynomial(u));
  std::sort(roots.begin(), roots.end(),
            [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });

  std::vector<Vector4> found;
  std::array<std::pair<Complex, Vector4>, 4> out;
  for (std::size_t r = 0; r < 4; ++r) {
    // generic start vector, falling back to coordinate vectors when it is
    // nearly inside the span of the vectors already found
    const std::array<Vector4, 5> starts{
        Vector4{1.0, Complex{0.7, 0.3}, Complex{-0.4, 0.9}, Complex{0.2, -0.6}},
        Vector4{1.0, 0.0, 0.0, 0.0}, Vector4{0.0, 1.0, 0.0, 0.0},
        Vector4{0.0, 0.0, 1.0, 0.0}, Vector4{0.0, 0.0, 0.0, 1.0}};
    Vector4 x{};
    double best = -1.0;
    for (const auto& start : starts) {
      const Vector4 candidate = project_out(normalized(start), found);
      if (norm(candidate) > best) {
        best = norm(candidate);
        x = candidate;
      }
      if (best > 0.1) break;
    }
    x = normalized(x);

    Complex shift = roots[r];
    for (int iter = 0; iter < 6; ++iter) {
      x = normalized(project_out(solve(u - shift * ComplexMatrix4::identity(), x), found));
      if (iter >= 3) shift = inner(x, u * x);  // Rayleigh refinement
    }
    const Complex lambda = inner(x, u * x);
    if (residual(u, lambda, x) > kResidualTol)
      throw NumericalError("eigensolver residual check failed");
    fix_gauge(x);
    found.push_back(x);
    out[r] = {lambda, x};
  }
  return out;
}

EigenSystem numeric_eigen_system(const ComplexMatrix4& coin, double k) {
  const auto u = fourier_coin(coin, k);
  const auto solved = eigensolve_unitary(u);
  EigenSystem sys;
  for (std::size_t j = 0; j < 4; ++j) {
    sys[j].value = solved[j].first;
    sys[j].vector = solved[j].second;
    sys[j].log_derivative = fourier_log_derivative(solved[j].second);
  }
  return sys;
}

namespace {

// Reorders a numeric eigensystem into (1, -1, lambda_3, lambda_4) order.
EigenSystem grover_family_numeric(double delta, double k, Complex lambda3, double log_derivative3) {
  const auto u = fourier_coin(grover_family_matrix(delta), k);
  const auto solved = eigensolve_unitary(u);
  std::array<bool, 4> used{};
  const std::array<Complex, 4> targets{1.0, -1.0, lambda3, std::conj(lambda3)};
  EigenSystem sys;
  for (std::size_t j = 0; j < 4; ++j) {
    std::size_t pick = 4;
    for (std::size_t i = 0; i < 4; ++i) {
      if (used[i]) continue;
      if (pick == 4 ||
          std::abs(solved[i].first - targets[j]) < std::abs(solved[pick].first - targets[j]))
        pick = i;
    }
    used[pick] = true;
    sys[j].value = solved[pick].first;
    sys[j].vector = solved[pick].second;
  }
  sys[2].log_derivative = log_derivative3;
  sys[3].log_derivative = -log_derivative3;
  return sys;
}

}  // namespace

EigenSystem eigen_system_grover_family(double delta, double k) {
  const GroverFamily family{delta};
  const double p = family.p();
  const double pc = p * std::cos(k);
  const double root = std::sqrt(std::max(0.0, 1.0 - pc * pc));
  const Complex lambda3{pc, root};
  const double log_derivative3 = root > 0.0 ? -p * std::sin(k) / root : 0.0;

  if (std::abs(std::abs(p) - 1.0) < 1e-9) {
    return grover_family_numeric(delta, k, lambda3, log_derivative3);
  }

  const auto u = fourier_coin(family.matrix(), k);
  const double s2 = std::numbers::sqrt2;
  const Complex ek = std::polar(1.0, k);
  const Complex emk = std::conj(ek);

  EigenSystem sys;
  sys[0].value = 1.0;
  sys[1].value = -1.0;
  sys[2] = {lambda3, {}, log_derivative3};
  sys[3] = {std::conj(lambda3), {}, -log_derivative3};

  for (std::size_t j = 2; j < 4; ++j) {
    const Complex lam = sys[j].value;
    const Complex inv = 1.0 / lam;
    const Complex x1 = lam * ek + s2 * std::sin(delta);
    const Complex x2 = inv * emk - s2 * std::cos(delta);
    const Complex x3 = inv * ek + s2 * std::sin(delta);
    const Complex x4 = lam * emk - s2 * std::cos(delta);
    Vector4 v{x1 * x2 * x3, std::conj(x1) * x3 * x4, x1 * x2 * std::conj(x4), x2 * x3 * x4};
    if (norm(v) < 1e-6) return grover_family_numeric(delta, k, lambda3, log_derivative3);
    fix_gauge(v);
    sys[j].vector = v;
  }

  // Eigenvectors for +1 and -1 from the projector onto the complement of v3, v4,
  // on which U(k) squares to the identity.
  ComplexMatrix4 complement = ComplexMatrix4::identity();
  for (std::size_t j = 2; j < 4; ++j) {
    const auto& v = sys[j].vector;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) complement(r, c) -= v[r] * std::conj(v[c]);
  }
  const ComplexMatrix4 u_complement = u * complement;
  for (std::size_t j = 0; j < 2; ++j) {
    const double sign = j == 0 ? 1.0 : -1.0;
    const ComplexMatrix4 projector = 0.5 * (complement + Complex{sign} * u_complement);
    Vector4 best{};
    for (std::size_t c = 0; c < 4; ++c) {
      Vector4 column{projector(0, c), projector(1, c), projector(2, c), projector(3, c)};
      if (norm(column) > norm(best)) best = column;
    }
    fix_gauge(best);
    sys[j].vector = best;
  }

  for (std::size_t j = 0; j < 4; ++j) {
    if (residual(u, sys[j].value, sys[j].vector) > kResidualTol)
      throw NumericalError("closed-form eigenpair failed its residual check");
  }
  return sys;
}

std::string_view to_string(Lemma2Case c) {
  switch (c) {
    case Lemma2Case::case1: return "case1";
    case Lemma2Case::case2: return "case2";
    case Lemma2Case::case3: return "case3";
    case Lemma2Case::case4: return "case4";
    case Lemma2Case::none: return "none";
  }
  return "none";
}

Lemma2Conditions lemma2_conditions(const PairParams& params, double tol) {
  const double ra = std::abs(params.alpha);
  const double rb = std::abs(params.beta);
  const double th = params.theta();
  const double ph = params.phi();
  const double cd = std::cos(params.delta);
  const double sd = std::sin(params.delta);
  Lemma2Conditions c;
  c.x2_factor = ra * (params.e * ra + params.f * rb * std::cos(th - ph));
  c.imag_factor = ra * (params.e * cd * std::cos(th) - sd * std::sin(th)) +
                  params.f * rb * cd * std::cos(ph);
  c.holds = std::abs(c.x2_factor) <= tol && std::abs(c.imag_factor) <= tol;
  return c;
}

Lemma2Case classify_lemma2(const PairParams& params, double tol) {
  const auto zero = [tol](double v) { return std::abs(v) <= tol; };
  const double ra = std::abs(params.alpha);
  const double rb = std::abs(params.beta);
  const double th = params.theta();
  const double ph = params.phi();
  const double e = params.e;
  const double f = params.f;
  const double cd = std::cos(params.delta);
  const double sd = std::sin(params.delta);

  if (zero(ra) && zero(f * std::cos(ph) * cd)) return Lemma2Case::case1;
  if (zero(rb) && zero(e) && zero(std::sin(th) * sd)) return Lemma2Case::case2;
  if (!zero(ra) && !zero(rb) && !zero(f)) {
    // cos(theta - phi) = -e|alpha| / (f|beta|), multiplied through
    const bool phase_match = zero(e * ra + f * rb * std::cos(th - ph));
    if (phase_match && zero(std::sin(th))) return Lemma2Case::case3;
    // tan delta = (|alpha| e cos theta + f|beta| cos phi) / (|alpha| sin theta), multiplied through
    if (phase_match && !zero(cd) &&
        zero(ra * std::sin(th) * sd - cd * (ra * e * std::cos(th) + f * rb * std::cos(ph))))
      return Lemma2Case::case4;
  }
  return Lemma2Case::none;
}

SpectrumCheck check_pm_one_spectrum(const ComplexMatrix4& coin, std::size_t grid, double tol) {
  SpectrumCheck check;
  check.grid_points = grid;
  for (double k : k_grid(grid)) {
    const auto solved = eigensolve_unitary(fourier_coin(coin, k));
    double to_plus = 1e300;
    double to_minus = 1e300;
    for (const auto& [lambda, v] : solved) {
      to_plus = std::min(to_plus, std::abs(lambda - 1.0));
      to_minus = std::min(to_minus, std::abs(lambda + 1.0));
    }
    check.worst_plus = std::max(check.worst_plus, to_plus);
    check.worst_minus = std::max(check.worst_minus, to_minus);
  }
  check.plus_one_everywhere = check.worst_plus <= tol;
  check.minus_one_everywhere = check.worst_minus <= tol;
  return check;
}

}  // namespace dqw
