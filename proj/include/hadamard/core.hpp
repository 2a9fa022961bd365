#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hadamard {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

// ---------------------------------------------------------------------------
// Error types. Construction/validation problems throw; outcomes that are a
// legitimate result of an analysis (divergent integral, poor tail fit, ...)
// are returned as values instead, see ConvergenceVerdict.
// ---------------------------------------------------------------------------

struct InvalidParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PositiveCurvature : std::domain_error {
  using std::domain_error::domain_error;
};

struct CoverageGap : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StiffnessFailure : std::runtime_error {
  double r_reached;
  explicit StiffnessFailure(double r, const std::string& what)
      : std::runtime_error(what), r_reached(r) {}
};

struct UnsupportedFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WindowTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OrderingUnverified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InnerDivergent : std::runtime_error {
  double theta;
  explicit InnerDivergent(double th, const std::string& what)
      : std::runtime_error(what), theta(th) {}
};

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotTransient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RadiusTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonFiniteState : std::runtime_error {
  double last_r, last_theta, t;
  NonFiniteState(double r, double th, double time, const std::string& what)
      : std::runtime_error(what), last_r(r), last_theta(th), t(time) {}
};

struct InsufficientSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Small numeric helpers shared across modules.
// ---------------------------------------------------------------------------

// C^1 smoothstep on [0,1]; flat tangents at both ends.
inline double smoothstep01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can return exactly 2*pi after the correction when theta is a tiny
  // negative number.
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

// Distance on the circle, in [0, pi].
inline double circle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > kPi ? kTwoPi - d : d;
}

}  // namespace hadamard
