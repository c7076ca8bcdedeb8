#include "dqw/walk.hpp"

#include <algorithm>

namespace dqw {

namespace {
constexpr auto kNoObserver = [](std::size_t, const auto&) {};
}  // namespace

double max_abs_diff(const Distribution& a, const Distribution& b) {
  const auto lo = std::min(a.min_position(), b.min_position());
  const auto hi = std::max(a.max_position(), b.max_position());
  double worst = 0.0;
  for (auto x = lo; x <= hi; ++x) worst = std::max(worst, std::abs(a.at(x) - b.at(x)));
  return worst;
}

WalkState2 step_lqw2(const WalkState2& state, const ComplexMatrix2& coin, const Tolerance& tol) {
  detail::require_unitary(coin, tol);
  return detail::coin_then_shift(state, [&coin](const Vector2& v) { return coin * v; });
}

WalkState2 step_dqw(const WalkState2& state, const CoinPair& pair) {
  return detail::coin_then_shift(state, [&pair](const Vector2& v) { return pair.apply(v); });
}

WalkState4 step_lqw4(const WalkState4& state, const ComplexMatrix4& coin, const Tolerance& tol) {
  detail::require_unitary(coin, tol);
  return detail::coin_then_shift(state, [&coin](const Vector4& v) { return coin * v; });
}

WalkState2 evolve_lqw2(WalkState2 initial, const ComplexMatrix2& coin, std::size_t steps,
                       const Tolerance& tol) {
  return evolve_lqw2(std::move(initial), coin, steps, kNoObserver, tol);
}

WalkState2 evolve_dqw(WalkState2 initial, const CoinPair& pair, std::size_t steps) {
  return evolve_dqw(std::move(initial), pair, steps, kNoObserver);
}

WalkState4 evolve_lqw4(WalkState4 initial, const ComplexMatrix4& coin, std::size_t steps,
                       const Tolerance& tol) {
  return evolve_lqw4(std::move(initial), coin, steps, kNoObserver, tol);
}

}  // namespace dqw
