#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numbers>

#include "dqw/decompose.hpp"
#include "dqw/spectral.hpp"
#include "support.hpp"

using namespace dqw;

namespace {

const double kPi = std::numbers::pi;
const double kS = 1.0 / std::numbers::sqrt2;

Complex det_oracle(const ComplexMatrix4& u, Complex x) {
  ComplexMatrix4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = (r == c ? x : Complex{}) - u(r, c);
  return test::laplace_det(m);
}

// Five-point agreement pins down a quartic.
double poly_vs_det(const CharPolyCoeffs& poly, const ComplexMatrix4& u) {
  double worst = 0.0;
  for (Complex x : {Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0.3, -0.8), Complex(2, 1)})
    worst = std::max(worst, std::abs(poly.evaluate(x) - det_oracle(u, x)));
  return worst;
}

Complex nearest(const std::array<std::pair<Complex, Vector4>, 4>& spec, Complex target) {
  Complex best = spec[0].first;
  for (const auto& [l, v] : spec)
    if (std::abs(l - target) < std::abs(best - target)) best = l;
  return best;
}

void check_eigensystem(const EigenSystem& sys, const ComplexMatrix4& u) {
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(std::abs(std::abs(sys[j].value) - 1.0) <= 1e-12);
    CHECK(norm(u * sys[j].vector - sys[j].value * sys[j].vector) <= 1e-9);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(inner(sys[i].vector, sys[j].vector) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  }
}

}  // namespace

TEST_CASE("fourier_coin") {
  test::Rng rng(1);
  const auto m = rng.unitary4();
  CHECK(max_abs_diff(fourier_coin(m, 0.0), m) == 0.0);
  CHECK(max_abs_diff(fourier_coin(m, kPi), -1.0 * m) < 1e-15);
  const double k = 0.4;
  const auto u = fourier_coin(m, k);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(std::abs(u(r, c) - std::polar(1.0, r % 2 == 0 ? k : -k) * m(r, c)) < 1e-15);
  CHECK(is_unitary(u));
}

TEST_CASE("k_grid") {
  const auto ks = k_grid(64);
  REQUIRE(ks.size() == 64);
  CHECK(ks.front() == -kPi);
  CHECK(ks.back() < kPi);
  CHECK(ks[1] - ks[0] == doctest::Approx(2.0 * kPi / 64.0));
}

TEST_CASE("characteristic polynomial against cofactor determinants") {
  test::Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto u = rng.unitary4();
    const auto poly = characteristic_polynomial(u);
    CHECK(poly.leading() == Complex(1.0, 0.0));
    CHECK(poly_vs_det(poly, u) < 1e-12);
  }
}

TEST_CASE("closed-form characteristic polynomial") {
  SUBCASE("x^2 coefficient vanishes at k = 0") {
    test::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) CHECK(std::abs(char_poly_closed_form(rng.params(), 0.0).coeffs[2]) < 1e-15);
  }
  SUBCASE("x^2 coefficient vanishes for the Grover family") {
    for (double k : k_grid(32)) CHECK(std::abs(char_poly_closed_form(GroverFamily{0.3}.params(), k).coeffs[2]) < 1e-15);
  }
  SUBCASE("matches det(xI - U(k)) for random parameters") {
    test::Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      const auto params = rng.params();
      const auto coin = lift_coin(pair_from_params(params));
      for (int s = 0; s < 32; ++s) {
        const double k = trial == 0 && s == 0 ? 0.7 : rng.angle();
        const auto closed = char_poly_closed_form(params, k);
        const auto u = fourier_coin(coin, k);
        const auto numeric = characteristic_polynomial(u);
        for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(closed.coeffs[i] - numeric.coeffs[i]) <= 1e-9);
        CHECK(poly_vs_det(closed, u) <= 1e-9);
        CHECK(std::abs(closed.constant() + 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("polynomial_roots") {
  const std::array<Complex, 4> roots{Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0.6, -0.8)};
  CharPolyCoeffs poly{{Complex(1, 0), 0, 0, 0, 0}};
  // expand prod (x - r)
  std::array<Complex, 5> c{1, 0, 0, 0, 0};
  std::size_t degree = 0;
  for (const auto& r : roots) {
    for (std::size_t i = degree + 1; i > 0; --i) c[i] -= r * c[i - 1];
    ++degree;
  }
  poly.coeffs = c;
  const auto found = polynomial_roots(poly);
  for (const auto& r : roots) {
    double best = 1e300;
    for (const auto& f : found) best = std::min(best, std::abs(f - r));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("eigensolve_unitary on random unitaries") {
  test::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = rng.unitary4();
    const auto spec = eigensolve_unitary(u);
    EigenSystem sys;
    for (std::size_t j = 0; j < 4; ++j) sys[j] = {spec[j].first, spec[j].second, 0.0};
    check_eigensystem(sys, u);
  }
  SUBCASE("degenerate spectrum") {
    const auto u = fourier_coin(grover_family_matrix(std::numbers::pi / 4.0), 0.0);
    const auto spec = eigensolve_unitary(u);
    EigenSystem sys;
    for (std::size_t j = 0; j < 4; ++j) sys[j] = {spec[j].first, spec[j].second, 0.0};
    check_eigensystem(sys, u);
  }
}

TEST_CASE("fix_gauge") {
  Vector4 v{0.0, Complex(0, 2), 1.0, 0.0};
  fix_gauge(v);
  CHECK(norm(v) == doctest::Approx(1.0));
  CHECK(v[1].imag() == 0.0);
  CHECK(v[1].real() > 0.0);
}

TEST_CASE("numeric log-derivatives against finite differences") {
  test::Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto coin = lift_coin(pair_from_params(rng.params()));
    const double k = rng.angle();
    const double h = 1e-5;
    const auto sys = numeric_eigen_system(coin, k);
    const auto plus = eigensolve_unitary(fourier_coin(coin, k + h));
    const auto minus = eigensolve_unitary(fourier_coin(coin, k - h));
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex l = sys[j].value;
      const Complex dl = (nearest(plus, l) - nearest(minus, l)) / (2.0 * h);
      const Complex expected = kI * dl / l;
      CHECK(std::abs(expected.imag()) < 1e-6);
      CHECK(sys[j].log_derivative == doctest::Approx(expected.real()).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("Grover-family eigensystem") {
  SUBCASE("delta = pi/2, k = 0") {
    const auto sys = eigen_system_grover_family(kPi / 2.0, 0.0);
    CHECK(std::abs(sys[0].value - 1.0) < 1e-12);
    CHECK(std::abs(sys[1].value + 1.0) < 1e-12);
    CHECK(std::abs(sys[2].value - Complex(-kS, kS)) < 1e-12);
    CHECK(std::abs(sys[3].value - Complex(-kS, -kS)) < 1e-12);
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(sys[j].log_derivative) < 1e-12);
  }
  SUBCASE("delta = pi/2, k = pi/2 against a numeric eigensolve") {
    const auto u = fourier_coin(grover_family_matrix(kPi / 2.0), kPi / 2.0);
    const auto spec = eigensolve_unitary(u);
    const auto sys = eigen_system_grover_family(kPi / 2.0, kPi / 2.0);
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(nearest(spec, sys[j].value) - sys[j].value) < 1e-12);
    CHECK(std::abs(sys[2].value - Complex(0, 1)) < 1e-12);
  }
  SUBCASE("delta = pi/4 is degenerate with zero drift") {
    for (double k : k_grid(16)) {
      const auto sys = eigen_system_grover_family(kPi / 4.0, k);
      CHECK(std::abs(sys[2].value - kI) < 1e-12);
      CHECK(std::abs(sys[3].value + kI) < 1e-12);
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(sys[j].log_derivative) < 1e-12);
      check_eigensystem(sys, fourier_coin(grover_family_matrix(kPi / 4.0), k));
    }
  }
  SUBCASE("residuals, orthonormality and symmetry over delta and k") {
    test::Rng rng(7);
    std::vector<double> deltas{kPi / 2.0, 0.0, -kPi, 3.0 * kPi / 4.0, -kPi / 4.0, -3.0 * kPi / 4.0};
    for (int i = 0; i < 30; ++i) deltas.push_back(rng.angle());
    for (double delta : deltas) {
      const GroverFamily g{delta};
      const double p = g.p();
      for (double k : k_grid(64)) {
        const auto sys = eigen_system_grover_family(delta, k);
        check_eigensystem(sys, fourier_coin(g.matrix(), k));
        const double root = std::sqrt(1.0 - p * p * std::cos(k) * std::cos(k));
        // squared imaginary part: the square root is ill-conditioned where it vanishes
        CHECK(std::abs(sys[2].value.real() - p * std::cos(k)) < 1e-12);
        CHECK(std::abs(sys[2].value.imag() * sys[2].value.imag() - root * root) < 1e-12);
        CHECK(sys[2].value.imag() >= 0.0);
        CHECK(std::abs(sys[3].value - std::conj(sys[2].value)) < 1e-12);
        if (root > 1e-6) {
          CHECK(sys[2].log_derivative == doctest::Approx(-p * std::sin(k) / root).epsilon(1e-9).scale(1.0));
        }
        CHECK(std::abs(sys[2].log_derivative + sys[3].log_derivative) < 1e-9);
        CHECK(sys[0].log_derivative == 0.0);
        CHECK(sys[1].log_derivative == 0.0);
      }
    }
  }
}

TEST_CASE("fourth power is the identity at delta = pi/4") {
  for (double k : k_grid(64)) {
    const auto u = fourier_coin(grover_family_matrix(kPi / 4.0), k);
    CHECK(max_abs_diff(u * u * u * u, ComplexMatrix4::identity()) <= 1e-12);
  }
}

TEST_CASE("spectrum lies on the unit circle") {
  test::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto coin = trial % 2 == 0 ? rng.unitary4() : lift_coin(pair_from_params(rng.params()));
    for (const auto& [l, v] : eigensolve_unitary(fourier_coin(coin, rng.angle())))
      CHECK(std::abs(std::abs(l) - 1.0) <= 1e-12);
  }
}

TEST_CASE("classify_lemma2 examples") {
  const auto grover = GroverFamily{0.9}.params();
  CHECK(classify_lemma2(grover) != Lemma2Case::none);
  CHECK(lemma2_conditions(grover).holds);
  CHECK(check_pm_one_spectrum(lift_coin(pair_from_params(grover))).both_everywhere());

  PairParams p;
  p.alpha = 0.0;
  p.beta = std::polar(1.0, 0.3);
  p.delta = kPi / 2.0;
  p.e = 0.6;
  p.f = 0.8;
  CHECK(classify_lemma2(p) == Lemma2Case::case1);
  CHECK(to_string(Lemma2Case::case1) == "case1");

  test::Rng rng(9);
  const auto generic = rng.params();
  CHECK(classify_lemma2(generic) == Lemma2Case::none);
  const auto check = check_pm_one_spectrum(lift_coin(pair_from_params(generic)));
  CHECK_FALSE(check.plus_one_everywhere);
  CHECK_FALSE(check.minus_one_everywhere);
}

TEST_CASE("printed cases agree with the proof conditions") {
  test::Rng rng(10);
  for (int trial = 0; trial < 400; ++trial) {
    const auto params = test::lemma2_draw(rng, static_cast<std::size_t>(trial));
    const bool tagged = classify_lemma2(params) != Lemma2Case::none;
    CHECK(tagged == lemma2_conditions(params).holds);
  }
}

TEST_CASE("classification agrees with the numeric spectrum") {
  test::Rng rng(11);
  int tagged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto params = test::lemma2_draw(rng, static_cast<std::size_t>(trial));
    const auto tag = classify_lemma2(params);
    const auto check = check_pm_one_spectrum(lift_coin(pair_from_params(params)));
    CHECK_MESSAGE((tag != Lemma2Case::none) == check.both_everywhere(),
                  "trial " << trial << " tag " << to_string(tag) << " worst " << check.worst_plus << ", "
                           << check.worst_minus);
    if (tag != Lemma2Case::none) ++tagged;
  }
  CHECK(tagged >= 60);
}
