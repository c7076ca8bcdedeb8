#pragma once

// Fixed-size complex linear algebra for 2- and 4-state walks.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace dqw {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

template <std::size_t N>
using Vector = std::array<Complex, N>;

using Vector2 = Vector<2>;
using Vector4 = Vector<4>;

/// Raised when an input violates a documented precondition
/// (non-unitary coin, non-normalized state, malformed config).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a parameter lies outside the domain of a closed form.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical routine fails its own residual check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double eq_tol = 1e-12;
  double prob_tol = 1e-10;

  /// Throws ValidationError unless both tolerances are strictly positive.
  void validate() const {
    if (!(eq_tol > 0.0) || !(prob_tol > 0.0)) {
      throw ValidationError("tolerances must be strictly positive");
    }
  }
};

/// Dense N×N complex matrix stored row-major by value.
template <std::size_t N>
struct SquareMatrix {
  std::array<std::array<Complex, N>, N> entries{};

  static constexpr std::size_t size() { return N; }

  constexpr Complex& operator()(std::size_t row, std::size_t col) {
    return entries[row][col];
  }
  constexpr const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries[row][col];
  }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using ComplexMatrix2 = SquareMatrix<2>;
using ComplexMatrix4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> operator*(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

template <std::size_t N>
SquareMatrix<N> operator*(Complex s, SquareMatrix<N> m) {
  for (auto& row : m.entries)
    for (auto& v : row) v *= s;
  return m;
}

template <std::size_t N>
SquareMatrix<N> operator+(SquareMatrix<N> a, const SquareMatrix<N>& b) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a(i, j) += b(i, j);
  return a;
}

template <std::size_t N>
SquareMatrix<N> operator-(SquareMatrix<N> a, const SquareMatrix<N>& b) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a(i, j) -= b(i, j);
  return a;
}

template <std::size_t N>
Vector<N> operator*(const SquareMatrix<N>& m, const Vector<N>& v) {
  Vector<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// Standard matrix product; named alias of operator*.
template <std::size_t N>
SquareMatrix<N> mat_mul(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b;
}

/// Conjugate transpose.
template <std::size_t N>
SquareMatrix<N> adjoint(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

template <std::size_t N>
bool is_finite(const SquareMatrix<N>& m) {
  for (const auto& row : m.entries)
    for (const auto& v : row)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

/// Max-entry deviation of m*·m from the identity.
template <std::size_t N>
double unitarity_defect(const SquareMatrix<N>& m) {
  return max_abs_diff(adjoint(m) * m, SquareMatrix<N>::identity());
}

template <std::size_t N>
bool is_unitary(const SquareMatrix<N>& m, const Tolerance& tol = {}) {
  return is_finite(m) && unitarity_defect(m) <= tol.eq_tol;
}

template <std::size_t N>
bool is_real_matrix(const SquareMatrix<N>& m, const Tolerance& tol = {}) {
  for (const auto& row : m.entries)
    for (const auto& v : row)
      if (std::abs(v.imag()) > tol.eq_tol) return false;
  return true;
}

template <std::size_t N>
SquareMatrix<N> real_part(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = m(i, j).real();
  return out;
}

template <std::size_t N>
SquareMatrix<N> imag_part(const SquareMatrix<N>& m) {
  SquareMatrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = m(i, j).imag();
  return out;
}

template <std::size_t N>
Complex inner(const Vector<N>& a, const Vector<N>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double norm_squared(const Vector<N>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

template <std::size_t N>
double norm(const Vector<N>& v) {
  return std::sqrt(norm_squared(v));
}

template <std::size_t N>
Vector<N> operator*(Complex s, Vector<N> v) {
  for (auto& c : v) c *= s;
  return v;
}

template <std::size_t N>
Vector<N> operator+(Vector<N> a, const Vector<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
Vector<N> operator-(Vector<N> a, const Vector<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
  return a;
}

template <std::size_t N>
double max_abs_diff(const Vector<N>& a, const Vector<N>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Solves m·x = rhs by Gaussian elimination with partial pivoting.
/// Pivots smaller than 1e-14 are clamped to 1e-14 (entries are O(1) for
/// every matrix in this library), so a shift that hits an eigenvalue
/// exactly still yields a large, finite inverse-iteration step.
template <std::size_t N>
Vector<N> solve(SquareMatrix<N> m, Vector<N> rhs) {
  constexpr double kTinyPivot = 1e-14;
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    std::swap(m.entries[col], m.entries[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (std::abs(m(col, col)) < kTinyPivot) m(col, col) = kTinyPivot;
    for (std::size_t r = col + 1; r < N; ++r) {
      const Complex factor = m(r, col) / m(col, col);
      if (factor == Complex{}) continue;
      for (std::size_t c = col; c < N; ++c) m(r, c) -= factor * m(col, c);
      rhs[r] -= factor * rhs[col];
    }
  }
  Vector<N> x{};
  for (std::size_t i = N; i-- > 0;) {
    Complex s = rhs[i];
    for (std::size_t c = i + 1; c < N; ++c) s -= m(i, c) * x[c];
    x[i] = s / m(i, i);
  }
  return x;
}

/// Wraps an angle into [-pi, pi).
double wrap_angle(double radians);

/// Distance between two angles on the circle.
double angle_distance(double a, double b);

}  // namespace dqw
