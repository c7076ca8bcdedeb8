#pragma once

// Finitely supported walk states on the integer line and their
// probability measures.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dqw/numerics.hpp"

namespace dqw {

/// Amplitudes over the contiguous window [offset, offset + size).
template <std::size_t N>
struct WalkState {
  std::int64_t offset = 0;
  std::vector<Vector<N>> amplitudes;

  static constexpr std::size_t components() { return N; }

  std::int64_t min_position() const { return offset; }
  std::int64_t max_position() const {
    return offset + static_cast<std::int64_t>(amplitudes.size()) - 1;
  }

  /// Amplitude at x; zero outside the stored window.
  Vector<N> at(std::int64_t x) const {
    if (x < min_position() || x > max_position()) return Vector<N>{};
    return amplitudes[static_cast<std::size_t>(x - offset)];
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& v : amplitudes) s += dqw::norm_squared(v);
    return s;
  }
};

using WalkState2 = WalkState<2>;
using WalkState4 = WalkState<4>;

/// Probability mass per lattice site over [offset, offset + size).
struct Distribution {
  std::int64_t offset = 0;
  std::vector<double> masses;

  std::int64_t min_position() const { return offset; }
  std::int64_t max_position() const {
    return offset + static_cast<std::int64_t>(masses.size()) - 1;
  }

  double at(std::int64_t x) const {
    if (x < min_position() || x > max_position()) return 0.0;
    return masses[static_cast<std::size_t>(x - offset)];
  }

  double total() const {
    double s = 0.0;
    for (double m : masses) s += m;
    return s;
  }
};

/// Largest entrywise |a(x) - b(x)| over the union of both supports.
double max_abs_diff(const Distribution& a, const Distribution& b);

template <std::size_t N>
double max_abs_diff(const WalkState<N>& a, const WalkState<N>& b) {
  const auto lo = std::min(a.min_position(), b.min_position());
  const auto hi = std::max(a.max_position(), b.max_position());
  double worst = 0.0;
  for (auto x = lo; x <= hi; ++x) worst = std::max(worst, max_abs_diff(a.at(x), b.at(x)));
  return worst;
}

/// State with amplitude phi at the origin. Rejects phi unless its norm is 1
/// within tol.prob_tol; inputs are never renormalized.
template <std::size_t N>
WalkState<N> initial_state(const Vector<N>& phi, const Tolerance& tol = {}) {
  tol.validate();
  for (const auto& c : phi) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ValidationError("initial state has non-finite components");
  }
  const double n2 = norm_squared(phi);
  if (std::abs(n2 - 1.0) > tol.prob_tol) {
    throw ValidationError("initial state must have unit norm (squared norm " +
                          std::to_string(n2) + ")");
  }
  return WalkState<N>{0, {phi}};
}

/// Per-site squared norms.
template <std::size_t N>
Distribution measure(const WalkState<N>& state) {
  Distribution d{state.offset, {}};
  d.masses.reserve(state.amplitudes.size());
  for (const auto& v : state.amplitudes) d.masses.push_back(norm_squared(v));
  return d;
}

}  // namespace dqw
