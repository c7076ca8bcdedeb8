#include "dqw/numerics.hpp"

#include <numbers>

namespace dqw {

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double w = std::fmod(radians + std::numbers::pi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  w -= std::numbers::pi;
  // fmod rounding can land exactly on +pi
  if (w >= std::numbers::pi) w -= kTwoPi;
  return w;
}

double angle_distance(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

}  // namespace dqw
