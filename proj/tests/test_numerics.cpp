#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "dqw/decompose.hpp"
#include "dqw/numerics.hpp"
#include "support.hpp"

using namespace dqw;
using dqw::test::hadamard;
using dqw::test::pauli_x;

TEST_CASE("mat_mul on small fixed matrices") {
  CHECK(mat_mul(ComplexMatrix2::identity(), ComplexMatrix2::identity()) == ComplexMatrix2::identity());
  CHECK(mat_mul(pauli_x(), pauli_x()) == ComplexMatrix2::identity());
  // hand arithmetic: (1/2)[[1+1, 1-1], [1-1, 1+1]]
  CHECK(max_abs_diff(mat_mul(hadamard(), hadamard()), ComplexMatrix2::identity()) < 1e-15);

  ComplexMatrix2 a;
  a(0, 0) = {1, 2};
  a(0, 1) = 3;
  a(1, 0) = {0, -1};
  a(1, 1) = 4;
  ComplexMatrix2 b;
  b(0, 0) = 2;
  b(0, 1) = {0, 1};
  b(1, 0) = -1;
  b(1, 1) = {1, 1};
  const auto c = mat_mul(a, b);
  CHECK(c(0, 0) == Complex(-1, 4));
  CHECK(c(0, 1) == Complex(1, 4));
  CHECK(c(1, 0) == Complex(-4, -2));
  CHECK(c(1, 1) == Complex(5, 4));
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(hadamard()));
  ComplexMatrix2 shear = ComplexMatrix2::identity();
  shear(0, 1) = 1.0;
  CHECK_FALSE(is_unitary(shear));
  CHECK(is_unitary(grover_matrix()));

  ComplexMatrix2 bad = ComplexMatrix2::identity();
  bad(1, 1) = std::nan("");
  CHECK_FALSE(is_unitary(bad));
}

TEST_CASE("is_real_matrix") {
  CHECK(is_real_matrix(ComplexMatrix2::identity()));
  CHECK_FALSE(is_real_matrix(kI * ComplexMatrix2::identity()));
  const auto prod = adjoint(hadamard()) * (kI * hadamard());
  CHECK(max_abs_diff(prod, kI * ComplexMatrix2::identity()) < 1e-15);
  CHECK_FALSE(is_real_matrix(prod));
}

TEST_CASE("tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS(Tolerance({0.0, 1e-10}).validate(), ValidationError);
  CHECK_THROWS_AS(Tolerance({1e-12, -1.0}).validate(), ValidationError);
}

TEST_CASE("unitary products stay unitary and multiplication is associative") {
  test::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = rng.unitary4();
    const auto b = rng.unitary4();
    const auto c = rng.unitary4();
    REQUIRE(is_unitary(a));
    CHECK(is_unitary(a * b));
    CHECK(max_abs_diff((a * b) * c, a * (b * c)) <= 1e-12);

    const auto u = rng.unitary2();
    const auto v = rng.unitary2();
    CHECK(is_unitary(u * v));
  }
}

TEST_CASE("adjoint and vector helpers") {
  test::Rng rng(5);
  const auto m = rng.unitary4();
  const auto x = rng.unit_vector<4>();
  const auto y = rng.unit_vector<4>();
  CHECK(std::abs(inner(m * x, y) - inner(x, adjoint(m) * y)) < 1e-14);
  CHECK(norm(m * x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_abs_diff(real_part(m) + kI * imag_part(m), m) < 1e-15);
}

TEST_CASE("solve against multiplication") {
  test::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = rng.unitary4();
    m(0, 0) += 0.5;
    const auto x = rng.unit_vector<4>();
    CHECK(max_abs_diff(solve(m, m * x), x) < 1e-12);
  }
}

TEST_CASE("angle helpers") {
  const double pi = std::numbers::pi;
  CHECK(wrap_angle(pi) == doctest::Approx(-pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(-pi));
  CHECK(wrap_angle(3.0 * pi / 2.0) == doctest::Approx(-pi / 2.0));
  CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_angle(a);
    CHECK(w >= -pi);
    CHECK(w < pi);
    CHECK(std::abs(std::remainder(a - w, 2.0 * pi)) < 1e-12);
  }
  CHECK(angle_distance(pi - 1e-3, -pi + 1e-3) == doctest::Approx(2e-3));
}
