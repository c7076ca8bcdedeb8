#pragma once

// Coin pairs for decomposed-type walks: isometry checking, the
// (delta, alpha, beta, e, f) parametrization, and the lift to a real
// 4-state walk.

#include "dqw/numerics.hpp"
#include "dqw/walk_state.hpp"

namespace dqw {

struct IsometryDiagnostic {
  bool unitary_r = false;
  bool unitary_i = false;
  bool product_real = false;
  bool is_isometry = false;
};

/// The decomposed coin is an isometry iff both matrices are unitary and
/// m_r*·m_i is real.
IsometryDiagnostic check_isometry(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i,
                                  const Tolerance& tol = {});

/// Single-site decomposed coin: m_r·Re(psi) + i·m_i·Im(psi). No validation.
Vector2 apply_decomposed_coin(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i,
                              const Vector2& psi);

/// A (m_r, m_i) pair that passed check_isometry.
class CoinPair {
 public:
  /// Throws ValidationError naming the failed condition(s).
  static CoinPair make(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i,
                       const Tolerance& tol = {});

  const ComplexMatrix2& m_r() const { return m_r_; }
  const ComplexMatrix2& m_i() const { return m_i_; }
  const IsometryDiagnostic& diagnostic() const { return diagnostic_; }

  Vector2 apply(const Vector2& psi) const { return apply_decomposed_coin(m_r_, m_i_, psi); }

 private:
  CoinPair(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i, IsometryDiagnostic d)
      : m_r_(m_r), m_i_(m_i), diagnostic_(d) {}

  ComplexMatrix2 m_r_;
  ComplexMatrix2 m_i_;
  IsometryDiagnostic diagnostic_;
};

/// Parameters of pairs whose product m_r*·m_i equals [[e, f], [f, -e]]:
///   m_r = e^{i delta} [[alpha, beta], [-conj(beta), conj(alpha)]]
///   m_i = e^{i delta} [[e alpha + f beta, f alpha - e beta],
///                      [-e conj(beta) + f conj(alpha), -f conj(beta) - e conj(alpha)]]
struct PairParams {
  double delta = 0.0;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  double e = 1.0;
  double f = 0.0;

  /// arg(alpha), or 0 when alpha = 0.
  double theta() const;
  /// arg(beta), or 0 when beta = 0.
  double phi() const;

  /// |alpha|^2 + |beta|^2 = 1 and e^2 + f^2 = 1 within eq_tol.
  void validate(const Tolerance& tol = {}) const;
};

CoinPair pair_from_params(const PairParams& params, const Tolerance& tol = {});

/// Stacks (Re psi1, Re psi2, Im psi1, Im psi2).
Vector4 lift_vector(const Vector2& v);
/// Adjoint of lift_vector: (v1 + i v3, v2 + i v4).
Vector2 unlift_vector(const Vector4& v);

WalkState4 lift_state(const WalkState2& state);
WalkState2 unlift_state(const WalkState4& state);

/// Real orthogonal 4×4 coin [[Re m_r, -Im m_i], [Im m_r, Re m_i]].
ComplexMatrix4 lift_coin(const CoinPair& pair);

/// The one-parameter family with theta = 0, e = 0, f = -1, phi = -pi/2 and
/// |alpha| = |beta| = 1/sqrt(2).
struct GroverFamily {
  double delta = 0.0;

  PairParams params() const;
  /// (1/sqrt 2)·[[c, s, -c, s], [s, c, s, -c], [s, -c, -s, -c], [-c, s, -c, -s]]
  ComplexMatrix4 matrix() const;
  /// (cos delta - sin delta)/sqrt 2
  double p() const;
  /// (cos delta + sin delta)/sqrt 2
  double q() const;
};

ComplexMatrix4 grover_family_matrix(double delta);

/// The 4×4 Grover matrix: -1/2 on the diagonal, 1/2 elsewhere.
ComplexMatrix4 grover_matrix();

}  // namespace dqw
