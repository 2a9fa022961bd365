#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hadamard/core.hpp"

namespace hadamard {

// ---------------------------------------------------------------------------
// Radial curvature profiles K*(r).
//
// Each family has an asymptotic formula active for r > R. On the compact core
// [0, R] the profile takes the constant value K*(R+), and the two pieces are
// joined C^1 over [R, R + inner_blend_width] by a smoothstep in the mixing
// weight. The core value is a convention (reports echo it); the asymptotic
// criteria downstream only see r > R.
// ---------------------------------------------------------------------------

enum class ProfileFamily {
  Flat,             // K = 0
  ConstantNegative, // K = -a, a > 0
  PowerLaw,         // K = -alpha(alpha-1)/r^2 for r > R, alpha > 1
  LogLaw,           // K = -c/(r^2 log r) for r > R, c > 0, R > 1
  LogLawModified,   // exact curvature of the basis r (log r)^{1+eps/2}, R > 1
  Exponential,      // K = -C e^{lambda r} for r > R
  Tabulated,        // piecewise-linear samples, clamped outside
};

class RadialProfile {
 public:
  static RadialProfile flat() { return RadialProfile(ProfileFamily::Flat); }

  static RadialProfile constant_negative(double a) {
    if (!(a > 0.0)) throw InvalidParameters("ConstantNegative requires a > 0");
    RadialProfile p(ProfileFamily::ConstantNegative);
    p.a_ = a;
    return p;
  }

  static RadialProfile power_law(double alpha, double R) {
    if (!(alpha > 1.0)) throw InvalidParameters("PowerLaw requires alpha > 1");
    if (!(R > 0.0)) throw InvalidParameters("PowerLaw requires R > 0");
    RadialProfile p(ProfileFamily::PowerLaw);
    p.alpha_ = alpha;
    p.R_ = R;
    return p;
  }

  // Convenience: choose alpha so that the r^{-2} coefficient is `coeff`,
  // i.e. K = -coeff/r^2 with coeff = alpha(alpha-1).
  static RadialProfile power_law_coefficient(double coeff, double R) {
    if (!(coeff > 0.0))
      throw InvalidParameters("power_law_coefficient requires coeff > 0");
    const double alpha = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * coeff));
    return power_law(alpha, R);
  }

  static RadialProfile log_law(double c, double R) {
    if (!(c > 0.0)) throw InvalidParameters("LogLaw requires c > 0");
    if (!(R > 1.0)) throw InvalidParameters("LogLaw requires R > 1");
    RadialProfile p(ProfileFamily::LogLaw);
    p.c_ = c;
    p.R_ = R;
    return p;
  }

  static RadialProfile log_law_modified(double eps, double R) {
    if (!(eps > 0.0))
      throw InvalidParameters("LogLawModified requires eps > 0");
    if (!(R > 1.0)) throw InvalidParameters("LogLawModified requires R > 1");
    RadialProfile p(ProfileFamily::LogLawModified);
    p.eps_ = eps;
    p.R_ = R;
    return p;
  }

  static RadialProfile exponential(double C, double lambda, double R = 0.0) {
    if (!(C > 0.0)) throw InvalidParameters("Exponential requires C > 0");
    if (!(lambda > 0.0))
      throw InvalidParameters("Exponential requires lambda > 0");
    if (R < 0.0) throw InvalidParameters("Exponential requires R >= 0");
    RadialProfile p(ProfileFamily::Exponential);
    p.C_ = C;
    p.lambda_ = lambda;
    p.R_ = R;
    return p;
  }

  static RadialProfile tabulated(std::vector<std::pair<double, double>> rk) {
    if (rk.size() < 2)
      throw InvalidParameters("Tabulated requires at least two samples");
    std::sort(rk.begin(), rk.end());
    for (std::size_t i = 0; i < rk.size(); ++i) {
      if (!(rk[i].first >= 0.0))
        throw InvalidParameters("Tabulated radii must be >= 0");
      if (rk[i].second > 0.0)
        throw PositiveCurvature("Tabulated curvature sample > 0");
      if (i > 0 && !(rk[i].first > rk[i - 1].first))
        throw InvalidParameters("Tabulated radii must be strictly increasing");
    }
    RadialProfile p(ProfileFamily::Tabulated);
    p.samples_ = std::move(rk);
    return p;
  }

  ProfileFamily family() const { return family_; }
  double param_a() const { return a_; }
  double param_alpha() const { return alpha_; }
  double param_c() const { return c_; }
  double param_eps() const { return eps_; }
  double param_C() const { return C_; }
  double param_lambda() const { return lambda_; }
  double activation_radius() const { return R_; }
  double inner_blend_width() const { return inner_blend_width_; }
  void set_inner_blend_width(double w) {
    if (!(w >= 0.0)) throw InvalidParameters("blend width must be >= 0");
    inner_blend_width_ = w;
  }
  const std::vector<std::pair<double, double>>& samples() const {
    return samples_;
  }

  // K*(r), total on r >= 0.
  double operator()(double r) const {
    switch (family_) {
      case ProfileFamily::Flat:
        return 0.0;
      case ProfileFamily::ConstantNegative:
        return -a_;
      case ProfileFamily::Tabulated:
        return tabulated_at(r);
      default:
        break;
    }
    // Families with an activation radius.
    const double R = R_;
    const double w = inner_blend_width_;
    if (R <= 0.0) return formula(r);
    if (r <= R) return formula(R);
    if (r >= R + w || w == 0.0) return formula(r);
    const double s = smoothstep01((r - R) / w);
    return (1.0 - s) * formula(R) + s * formula(r);
  }

  // Largest radius at which the profile still deviates from its asymptotic
  // formula (end of the core + blend region).
  double asymptotic_from() const {
    switch (family_) {
      case ProfileFamily::Flat:
      case ProfileFamily::ConstantNegative:
        return 0.0;
      case ProfileFamily::Tabulated:
        return samples_.back().first;
      default:
        return R_ + inner_blend_width_;
    }
  }

 private:
  explicit RadialProfile(ProfileFamily f) : family_(f) {}

  double formula(double r) const {
    switch (family_) {
      case ProfileFamily::PowerLaw:
        return -alpha_ * (alpha_ - 1.0) / (r * r);
      case ProfileFamily::LogLaw:
        return -c_ / (r * r * std::log(r));
      case ProfileFamily::LogLawModified: {
        // The curvature for which r (log r)^{1+eps/2} solves the Jacobi
        // equation exactly; see closed_form_basis.
        const double q = 1.0 + 0.5 * eps_;
        const double lr = std::log(r);
        return -q * (1.0 + (q - 1.0) / lr) / (r * r * lr);
      }
      case ProfileFamily::Exponential:
        return -C_ * std::exp(lambda_ * r);
      default:
        return 0.0;
    }
  }

  double tabulated_at(double r) const {
    if (r <= samples_.front().first) return samples_.front().second;
    if (r >= samples_.back().first) return samples_.back().second;
    auto it = std::upper_bound(
        samples_.begin(), samples_.end(), r,
        [](double x, const std::pair<double, double>& s) { return x < s.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (r - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
  }

  ProfileFamily family_;
  double a_ = 0.0;
  double alpha_ = 0.0;
  double c_ = 0.0;
  double eps_ = 0.0;
  double C_ = 0.0;
  double lambda_ = 0.0;
  double R_ = 0.0;
  double inner_blend_width_ = 0.5;
  std::vector<std::pair<double, double>> samples_;
};

// ---------------------------------------------------------------------------
// Angular sectors and flat strips.
// ---------------------------------------------------------------------------

struct Sector {
  double theta_min = 0.0;
  double theta_max = 0.0;  // theta_max > theta_min, width <= 2*pi
  RadialProfile profile = RadialProfile::flat();
};

// A region isometric to a Euclidean strip [-a, a] x R through the pole; the
// axis ray has direction `axis`. In polar coordinates the strip occupies
// { r |sin(theta - axis)| <= half_width }, overriding the sector curvature
// with K = 0 there.
struct FlatStrip {
  double axis = 0.0;
  double half_width = 1.0;
  double exit_blend = 0.5;  // radial C^0 blend width past the strip boundary
};

struct ModelSpec {
  std::vector<Sector> sectors;
  double blend_width = 0.05;  // angular smoothing between sectors, radians
  std::vector<FlatStrip> flat_strips;
  std::optional<RadialProfile> upper_bound;  // default: flat (K <= 0)
  std::optional<RadialProfile> lower_bound;
};

// Immutable after build; safe for concurrent reads.
class CurvatureModel {
 public:
  friend CurvatureModel build_model(const ModelSpec& spec);

  double curvature(double r, double theta) const {
    if (!(r >= 0.0)) throw InvalidParameters("curvature requires r >= 0");
    double k = sector_curvature(r, theta);
    for (const auto& strip : strips_) {
      const double dist = r * std::fabs(std::sin(theta - strip.axis));
      if (dist <= strip.half_width) {
        return 0.0;
      }
      // Blend the strip exit along the ray so K is continuous in r.
      const double s = std::fabs(std::sin(theta - strip.axis));
      if (s > 0.0 && strip.exit_blend > 0.0) {
        const double exit_r = strip.half_width / s;
        if (r < exit_r + strip.exit_blend) {
          const double t = smoothstep01((r - exit_r) / strip.exit_blend);
          k *= t;
        }
      }
    }
    return k;
  }

  const std::vector<Sector>& sectors() const { return sectors_; }
  double blend_width() const { return blend_width_; }
  const std::vector<FlatStrip>& flat_strips() const { return strips_; }
  const RadialProfile& upper_bound() const { return upper_; }
  const std::optional<RadialProfile>& lower_bound() const { return lower_; }

  bool radially_symmetric() const {
    return sectors_.size() == 1 && strips_.empty();
  }

  bool has_flat_content() const {
    if (!strips_.empty()) return true;
    for (const auto& s : sectors_)
      if (s.profile.family() == ProfileFamily::Flat) return true;
    return false;
  }

  // True when rays in a neighborhood of theta see identical curvature at all
  // radii (sector interior, outside angular blend zones, no strips). The
  // Jacobi field then has no theta-derivative at this angle.
  bool locally_radial(double theta) const {
    if (!strips_.empty()) return false;
    if (sectors_.size() == 1) return true;
    const double th = wrap_angle(theta - origin_);
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
      const double lo = starts_[i];
      const double hi = starts_[i] + widths_[i];
      if (th >= lo + 0.5 * blend_width_ && th <= hi - 0.5 * blend_width_) {
        return true;
      }
    }
    return false;
  }

  // The radial profile seen along the ray `theta` when the model is radial
  // there (single sector, or deep inside a sector).
  const RadialProfile& profile_at(double theta) const {
    const double th = wrap_angle(theta - origin_);
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
      if (th >= starts_[i] && th < starts_[i] + widths_[i]) {
        return sectors_[i].profile;
      }
    }
    return sectors_.back().profile;
  }

 private:
  CurvatureModel() = default;

  double sector_curvature(double r, double theta) const {
    if (sectors_.size() == 1) return sectors_[0].profile(r);
    const double th = wrap_angle(theta - origin_);
    // Locate the sector containing th.
    std::size_t idx = sectors_.size() - 1;
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
      if (th >= starts_[i] && th < starts_[i] + widths_[i]) {
        idx = i;
        break;
      }
    }
    const double w = 0.5 * blend_width_;
    if (w <= 0.0) return sectors_[idx].profile(r);
    const double lo = starts_[idx];
    const double hi = starts_[idx] + widths_[idx];
    if (th < lo + w) {
      const std::size_t prev = (idx + sectors_.size() - 1) % sectors_.size();
      const double s = smoothstep01(0.5 + 0.5 * (th - lo) / w);
      return (1.0 - s) * sectors_[prev].profile(r) +
             s * sectors_[idx].profile(r);
    }
    if (th > hi - w) {
      const std::size_t next = (idx + 1) % sectors_.size();
      const double s = smoothstep01(0.5 + 0.5 * (hi - th) / w);
      return (1.0 - s) * sectors_[next].profile(r) +
             s * sectors_[idx].profile(r);
    }
    return sectors_[idx].profile(r);
  }

  std::vector<Sector> sectors_;
  std::vector<double> starts_;  // sector start angles relative to origin_
  std::vector<double> widths_;
  double origin_ = 0.0;  // first sector's theta_min
  double blend_width_ = 0.05;
  std::vector<FlatStrip> strips_;
  RadialProfile upper_ = RadialProfile::flat();
  std::optional<RadialProfile> lower_;
};

// Validates a model spec and bakes an immutable CurvatureModel.
// Throws CoverageGap when the sectors do not partition the circle,
// PositiveCurvature when any sampled value is positive, and
// InvalidParameters for bad family parameters or bound violations.
inline CurvatureModel build_model(const ModelSpec& spec) {
  if (spec.sectors.empty()) throw CoverageGap("no sectors given");
  if (!(spec.blend_width >= 0.0) || spec.blend_width >= kPi) {
    throw InvalidParameters("blend_width must be in [0, pi)");
  }

  CurvatureModel m;
  m.sectors_ = spec.sectors;
  std::sort(m.sectors_.begin(), m.sectors_.end(),
            [](const Sector& a, const Sector& b) {
              return wrap_angle(a.theta_min) < wrap_angle(b.theta_min);
            });
  m.origin_ = wrap_angle(m.sectors_.front().theta_min);

  constexpr double kGapTol = 1e-9;
  double cursor = 0.0;
  for (const auto& s : m.sectors_) {
    const double width = s.theta_max - s.theta_min;
    if (!(width > 0.0) || width > kTwoPi + kGapTol) {
      throw CoverageGap("sector width must be in (0, 2*pi]");
    }
    const double start = wrap_angle(s.theta_min - m.origin_);
    if (std::fabs(start - cursor) > kGapTol) {
      throw CoverageGap(start > cursor ? "gap between sectors"
                                       : "overlapping sectors");
    }
    m.starts_.push_back(cursor);
    m.widths_.push_back(width);
    cursor += width;
  }
  if (std::fabs(cursor - kTwoPi) > 1e-8) {
    throw CoverageGap("sectors do not cover the circle");
  }

  m.blend_width_ = spec.blend_width;
  m.strips_ = spec.flat_strips;
  for (const auto& strip : m.strips_) {
    if (!(strip.half_width > 0.0)) {
      throw InvalidParameters("flat strip half_width must be > 0");
    }
  }
  m.upper_ = spec.upper_bound.value_or(RadialProfile::flat());
  m.lower_ = spec.lower_bound;

  // Verify nonpositivity and the declared bounds on a sampling grid.
  constexpr int kRadialSamples = 64;
  constexpr int kAngularSamples = 96;
  for (int i = 0; i < kRadialSamples; ++i) {
    // Geometric radii cover both the core and the asymptotic regime.
    const double r = 1e-3 * std::pow(10.0 / 1e-3, i / double(kRadialSamples - 1));
    const double ku = m.upper_(r);
    if (ku > 0.0) throw PositiveCurvature("upper bound positive at sampled r");
    for (int j = 0; j < kAngularSamples; ++j) {
      const double th = kTwoPi * j / kAngularSamples;
      const double k = m.curvature(r, th);
      if (k > 0.0) throw PositiveCurvature("sampled curvature positive");
      if (k > ku + 1e-12) {
        throw InvalidParameters("sampled curvature exceeds declared upper bound");
      }
      if (m.lower_ && k < (*m.lower_)(r)-1e-12) {
        throw InvalidParameters("sampled curvature below declared lower bound");
      }
    }
  }
  return m;
}

// Single radially symmetric profile as a full model.
inline CurvatureModel radial_model(const RadialProfile& profile,
                                   std::optional<RadialProfile> lower = {}) {
  ModelSpec spec;
  spec.sectors.push_back({0.0, kTwoPi, profile});
  spec.upper_bound = profile;
  spec.lower_bound = std::move(lower);
  return build_model(spec);
}

inline double curvature_at(const CurvatureModel& model, double r,
                           double theta) {
  return model.curvature(r, theta);
}

}  // namespace hadamard
