#include "dqw/decompose.hpp"

#include <numbers>
#include <string>

namespace dqw {

IsometryDiagnostic check_isometry(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i,
                                  const Tolerance& tol) {
  IsometryDiagnostic d;
  d.unitary_r = is_unitary(m_r, tol);
  d.unitary_i = is_unitary(m_i, tol);
  d.product_real = is_finite(m_r) && is_finite(m_i) && is_real_matrix(adjoint(m_r) * m_i, tol);
  d.is_isometry = d.unitary_r && d.unitary_i && d.product_real;
  return d;
}

Vector2 apply_decomposed_coin(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i,
                              const Vector2& psi) {
  const Vector2 re{psi[0].real(), psi[1].real()};
  const Vector2 im{psi[0].imag(), psi[1].imag()};
  const Vector2 a = m_r * re;
  const Vector2 b = m_i * im;
  return {a[0] + kI * b[0], a[1] + kI * b[1]};
}

CoinPair CoinPair::make(const ComplexMatrix2& m_r, const ComplexMatrix2& m_i,
                        const Tolerance& tol) {
  tol.validate();
  const auto d = check_isometry(m_r, m_i, tol);
  if (!d.is_isometry) {
    std::string why;
    if (!d.unitary_r) why += " m_r is not unitary;";
    if (!d.unitary_i) why += " m_i is not unitary;";
    if (!d.product_real) why += " m_r*·m_i is not real;";
    throw ValidationError("coin pair is not an isometry:" + why);
  }
  return CoinPair(m_r, m_i, d);
}

double PairParams::theta() const { return alpha == Complex{} ? 0.0 : std::arg(alpha); }

double PairParams::phi() const { return beta == Complex{} ? 0.0 : std::arg(beta); }

void PairParams::validate(const Tolerance& tol) const {
  tol.validate();
  const bool finite = std::isfinite(delta) && std::isfinite(alpha.real()) &&
                      std::isfinite(alpha.imag()) && std::isfinite(beta.real()) &&
                      std::isfinite(beta.imag()) && std::isfinite(e) && std::isfinite(f);
  if (!finite) throw ValidationError("pair parameters must be finite");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol.eq_tol)
    throw ValidationError("|alpha|^2 + |beta|^2 must equal 1");
  if (std::abs(e * e + f * f - 1.0) > tol.eq_tol)
    throw ValidationError("e^2 + f^2 must equal 1");
}

CoinPair pair_from_params(const PairParams& params, const Tolerance& tol) {
  params.validate(tol);
  const Complex phase = std::polar(1.0, params.delta);
  const Complex a = params.alpha;
  const Complex b = params.beta;
  const double e = params.e;
  const double f = params.f;

  ComplexMatrix2 m_r;
  m_r(0, 0) = phase * a;
  m_r(0, 1) = phase * b;
  m_r(1, 0) = -phase * std::conj(b);
  m_r(1, 1) = phase * std::conj(a);

  ComplexMatrix2 m_i;
  m_i(0, 0) = phase * (e * a + f * b);
  m_i(0, 1) = phase * (f * a - e * b);
  m_i(1, 0) = phase * (-e * std::conj(b) + f * std::conj(a));
  m_i(1, 1) = phase * (-f * std::conj(b) - e * std::conj(a));

  return CoinPair::make(m_r, m_i, tol);
}

Vector4 lift_vector(const Vector2& v) {
  return {v[0].real(), v[1].real(), v[0].imag(), v[1].imag()};
}

Vector2 unlift_vector(const Vector4& v) {
  return {v[0] + kI * v[2], v[1] + kI * v[3]};
}

WalkState4 lift_state(const WalkState2& state) {
  WalkState4 out{state.offset, {}};
  out.amplitudes.reserve(state.amplitudes.size());
  for (const auto& v : state.amplitudes) out.amplitudes.push_back(lift_vector(v));
  return out;
}

WalkState2 unlift_state(const WalkState4& state) {
  WalkState2 out{state.offset, {}};
  out.amplitudes.reserve(state.amplitudes.size());
  for (const auto& v : state.amplitudes) out.amplitudes.push_back(unlift_vector(v));
  return out;
}

ComplexMatrix4 lift_coin(const CoinPair& pair) {
  const auto& r = pair.m_r();
  const auto& i = pair.m_i();
  ComplexMatrix4 m;
  for (std::size_t row = 0; row < 2; ++row) {
    for (std::size_t col = 0; col < 2; ++col) {
      m(row, col) = r(row, col).real();
      m(row, col + 2) = -i(row, col).imag();
      m(row + 2, col) = r(row, col).imag();
      m(row + 2, col + 2) = i(row, col).real();
    }
  }
  return m;
}

PairParams GroverFamily::params() const {
  const double h = std::numbers::sqrt2 / 2.0;
  return PairParams{delta, Complex{h, 0.0}, Complex{0.0, -h}, 0.0, -1.0};
}

ComplexMatrix4 GroverFamily::matrix() const {
  const double c = std::cos(delta) / std::numbers::sqrt2;
  const double s = std::sin(delta) / std::numbers::sqrt2;
  ComplexMatrix4 m;
  m.entries = {{{c, s, -c, s}, {s, c, s, -c}, {s, -c, -s, -c}, {-c, s, -c, -s}}};
  return m;
}

double GroverFamily::p() const { return (std::cos(delta) - std::sin(delta)) / std::numbers::sqrt2; }

double GroverFamily::q() const { return (std::cos(delta) + std::sin(delta)) / std::numbers::sqrt2; }

ComplexMatrix4 grover_family_matrix(double delta) { return GroverFamily{delta}.matrix(); }

ComplexMatrix4 grover_matrix() {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = i == j ? -0.5 : 0.5;
  return m;
}

}  // namespace dqw
