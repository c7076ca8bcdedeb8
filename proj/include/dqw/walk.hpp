#pragma once

// Time evolution of 2-state linear walks, 2-state decomposed walks and
// 4-state linear walks. One step applies the coin at every site, then moves
// even-indexed components one site left and odd-indexed components one
// site right, i.e. (U psi)(x) = P psi(x+1) + Q psi(x-1).

#include <cstddef>
#include <utility>

#include "dqw/decompose.hpp"
#include "dqw/numerics.hpp"
#include "dqw/walk_state.hpp"

namespace dqw {

namespace detail {

template <std::size_t N, typename CoinFn>
WalkState<N> coin_then_shift(const WalkState<N>& state, CoinFn&& coin) {
  WalkState<N> out;
  out.offset = state.offset - 1;
  out.amplitudes.assign(state.amplitudes.size() + 2, Vector<N>{});
  for (std::size_t site = 0; site < state.amplitudes.size(); ++site) {
    const Vector<N> c = coin(state.amplitudes[site]);
    // out index of old site is site + 1
    for (std::size_t comp = 0; comp < N; comp += 2) out.amplitudes[site][comp] += c[comp];
    for (std::size_t comp = 1; comp < N; comp += 2) out.amplitudes[site + 2][comp] += c[comp];
  }
  return out;
}

template <std::size_t N>
void require_unitary(const SquareMatrix<N>& coin, const Tolerance& tol) {
  if (!is_unitary(coin, tol)) throw ValidationError("coin matrix is not unitary");
}

}  // namespace detail

WalkState2 step_lqw2(const WalkState2& state, const ComplexMatrix2& coin,
                     const Tolerance& tol = {});

/// Applies m_r to the real part and m_i to the imaginary part before the
/// shift. The pair was validated at construction.
WalkState2 step_dqw(const WalkState2& state, const CoinPair& pair);

WalkState4 step_lqw4(const WalkState4& state, const ComplexMatrix4& coin,
                     const Tolerance& tol = {});

/// Runs `steps` steps, calling observer(step, state) for step = 0..steps.
template <std::size_t N, typename CoinFn, typename Observer>
WalkState<N> evolve_with(WalkState<N> state, CoinFn&& coin, std::size_t steps,
                         Observer&& observer) {
  observer(std::size_t{0}, std::as_const(state));
  for (std::size_t t = 1; t <= steps; ++t) {
    state = detail::coin_then_shift(state, coin);
    observer(t, std::as_const(state));
  }
  return state;
}

template <typename Observer>
WalkState2 evolve_lqw2(WalkState2 initial, const ComplexMatrix2& coin, std::size_t steps,
                       Observer&& observer, const Tolerance& tol = {}) {
  detail::require_unitary(coin, tol);
  return evolve_with(std::move(initial), [&coin](const Vector2& v) { return coin * v; }, steps,
                     observer);
}

template <typename Observer>
WalkState2 evolve_dqw(WalkState2 initial, const CoinPair& pair, std::size_t steps,
                      Observer&& observer) {
  return evolve_with(std::move(initial), [&pair](const Vector2& v) { return pair.apply(v); },
                     steps, observer);
}

template <typename Observer>
WalkState4 evolve_lqw4(WalkState4 initial, const ComplexMatrix4& coin, std::size_t steps,
                       Observer&& observer, const Tolerance& tol = {}) {
  detail::require_unitary(coin, tol);
  return evolve_with(std::move(initial), [&coin](const Vector4& v) { return coin * v; }, steps,
                     observer);
}

WalkState2 evolve_lqw2(WalkState2 initial, const ComplexMatrix2& coin, std::size_t steps,
                       const Tolerance& tol = {});
WalkState2 evolve_dqw(WalkState2 initial, const CoinPair& pair, std::size_t steps);
WalkState4 evolve_lqw4(WalkState4 initial, const ComplexMatrix4& coin, std::size_t steps,
                       const Tolerance& tol = {});

}  // namespace dqw
