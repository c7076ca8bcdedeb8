#pragma once

// Momentum-space analysis of 4-state walks: U(k) = diag(e^{ik}, e^{-ik},
// e^{ik}, e^{-ik})·M, its characteristic polynomial, a small eigensolver
// for unitary 4×4 matrices, and the eigenvalue-±1 classification.

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "dqw/decompose.hpp"
#include "dqw/numerics.hpp"

namespace dqw {

ComplexMatrix4 fourier_coin(const ComplexMatrix4& coin, double k);

/// Uniform grid of `points` momenta on [-pi, pi).
std::vector<double> k_grid(std::size_t points);

/// Coefficients of x^4, x^3, x^2, x^1, x^0 in that order.
struct CharPolyCoeffs {
  std::array<Complex, 5> coeffs{};

  Complex leading() const { return coeffs[0]; }
  Complex constant() const { return coeffs[4]; }
  Complex evaluate(Complex x) const;
  Complex derivative(Complex x) const;
};

/// det(xI - m) by the Faddeev-LeVerrier recursion.
CharPolyCoeffs characteristic_polynomial(const ComplexMatrix4& m);

/// Closed form of det(xI - U(k)) for the lifted coin of pair_from_params(p):
///   x^4 + A x^3 + 2i|alpha| sin 2k (e|alpha| + f|beta| cos(theta - phi)) x^2 - conj(A) x - 1
///   A = -2 cos k (|alpha|(cos delta cos theta - e sin delta sin theta) - f|beta| sin delta sin phi)
///       -2i sin k (|alpha|(e cos delta cos theta - sin delta sin theta) + f|beta| cos delta cos phi)
CharPolyCoeffs char_poly_closed_form(const PairParams& params, double k);

/// All four roots (with multiplicity) of a quartic, by Aberth-Ehrlich
/// iteration followed by Newton polishing.
std::array<Complex, 4> polynomial_roots(const CharPolyCoeffs& poly);

struct EigenPair {
  Complex value;
  Vector4 vector{};
  /// (i d/dk lambda)/lambda; real for unitary U(k).
  double log_derivative = 0.0;
};

struct EigenSystem {
  std::array<EigenPair, 4> pairs{};

  const EigenPair& operator[](std::size_t j) const { return pairs[j]; }
  EigenPair& operator[](std::size_t j) { return pairs[j]; }
};

/// Unit norm with the first component above 1e-8 in modulus made real positive.
void fix_gauge(Vector4& v);

/// Eigenpairs of a unitary matrix: characteristic quartic roots, then
/// inverse iteration restricted to the orthogonal complement of the
/// vectors found so far, then a Rayleigh-quotient eigenvalue. Throws
/// NumericalError if any residual exceeds 1e-9.
std::array<std::pair<Complex, Vector4>, 4> eigensolve_unitary(const ComplexMatrix4& u);

/// Numeric eigensystem of U(k). Log-derivatives follow from first-order
/// perturbation: D lambda / lambda = -<v|diag(1,-1,1,-1)|v>.
EigenSystem numeric_eigen_system(const ComplexMatrix4& coin, double k);

/// Eigensystem of the Grover family at momentum k, ordered
/// lambda_1 = 1, lambda_2 = -1, lambda_{3,4} = p cos k ± i sqrt(1 - p^2 cos^2 k).
/// Eigenvectors 3, 4 use the closed form
///   (x1 x2 x3, conj(x1) x3 x4, x1 x2 conj(x4), x2 x3 x4)
/// and 1, 2 are projected out of the complement. Falls back to the numeric
/// solver where the closed form degenerates (|p| = 1, vanishing factors).
EigenSystem eigen_system_grover_family(double delta, double k);

enum class Lemma2Case { case1, case2, case3, case4, none };

std::string_view to_string(Lemma2Case c);

inline constexpr double kLemma2Tol = 1e-10;

/// Both factors must vanish for U(k) to have eigenvalues 1 and -1 at all k:
///   x2_factor   = |alpha| (e|alpha| + f|beta| cos(theta - phi))
///   imag_factor = |alpha| (e cos delta cos theta - sin delta sin theta) + f|beta| cos delta cos phi
struct Lemma2Conditions {
  double x2_factor = 0.0;
  double imag_factor = 0.0;
  bool holds = false;
};

Lemma2Conditions lemma2_conditions(const PairParams& params, double tol = kLemma2Tol);

/// First matching case 1..4, with the symbols a, b of the printed cases read
/// as e, f (and |a| sin theta in case 4 read as |alpha| sin theta).
Lemma2Case classify_lemma2(const PairParams& params, double tol = kLemma2Tol);

struct SpectrumCheck {
  std::size_t grid_points = 0;
  bool plus_one_everywhere = false;
  bool minus_one_everywhere = false;
  /// Largest over k of the distance from +1 (resp. -1) to the spectrum.
  double worst_plus = 0.0;
  double worst_minus = 0.0;

  bool both_everywhere() const { return plus_one_everywhere && minus_one_everywhere; }
};

/// Numeric check that +1 and -1 lie in the spectrum of U(k) at every grid k.
SpectrumCheck check_pm_one_spectrum(const ComplexMatrix4& coin, std::size_t grid = 64,
                                    double tol = 1e-8);

}  // namespace dqw
