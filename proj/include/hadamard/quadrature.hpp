#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hadamard/core.hpp"

namespace hadamard {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss, positive half of the rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <typename F>
QuadResult gauss_kronrod_15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fl = f(mid - dx);
    const double fr = (i == 7) ? fl : f(mid + dx);
    const double pair = (i == 7) ? fl : fl + fr;
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  QuadResult r;
  r.value = kronrod * half;
  // Standard QUADPACK-style error sharpening.
  const double diff = std::fabs(kronrod - gauss) * half;
  r.error = std::pow(200.0 * diff, 1.5);
  if (r.error > diff) r.error = diff;
  r.error = std::max(r.error, std::fabs(r.value) * 1e-15);
  return r;
}

}  // namespace detail

// Adaptive bisection on top of Gauss-Kronrod 7/15. Throws QuadratureFailure
// if the requested tolerance cannot be met within the depth budget.
template <typename F>
QuadResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                              double rel_tol = 1e-12, int max_depth = 48) {
  if (!(b > a)) return {0.0, 0.0};
  struct Segment {
    double a, b;
    QuadResult est;
    int depth;
  };
  QuadResult total;
  std::array<Segment, 2048> stack;
  int top = 0;
  stack[top++] = {a, b, detail::gauss_kronrod_15(f, a, b), 0};
  int work = 0;
  while (top > 0) {
    Segment seg = stack[--top];
    const double local_tol =
        std::max(abs_tol * (seg.b - seg.a) / (b - a),
                 rel_tol * std::fabs(seg.est.value));
    if (seg.est.error <= local_tol || seg.depth >= max_depth) {
      if (seg.depth >= max_depth && seg.est.error > 64.0 * local_tol) {
        throw QuadratureFailure("adaptive quadrature did not converge on [" +
                                std::to_string(seg.a) + ", " +
                                std::to_string(seg.b) + "]");
      }
      total.value += seg.est.value;
      total.error += seg.est.error;
      continue;
    }
    if (++work > 2000000 || top + 2 >= static_cast<int>(stack.size())) {
      throw QuadratureFailure("adaptive quadrature work budget exhausted");
    }
    const double mid = 0.5 * (seg.a + seg.b);
    stack[top++] = {seg.a, mid, detail::gauss_kronrod_15(f, seg.a, mid),
                    seg.depth + 1};
    stack[top++] = {mid, seg.b, detail::gauss_kronrod_15(f, mid, seg.b),
                    seg.depth + 1};
  }
  return total;
}

// tail integral of r^{-a} (log r)^{-b} over [x, infinity) for a > 1, x > 1.
// Repeated integration by parts gives an asymptotic series in 1/log(x);
// truncated when terms stop shrinking, with the first omitted term as the
// error estimate.
inline QuadResult power_log_tail(double x, double a, double b) {
  if (!(a > 1.0) || !(x > 1.0)) {
    throw InvalidParameters("power_log_tail requires a > 1 and x > 1");
  }
  const double lx = std::log(x);
  const double lead = std::pow(x, 1.0 - a) / (a - 1.0) * std::pow(lx, -b);
  if (b == 0.0) return {lead, std::fabs(lead) * 1e-14};
  double term = lead;
  double sum = 0.0;
  for (int k = 0; k < 40; ++k) {
    sum += term;
    const double next = -term * (b + k) / ((a - 1.0) * lx);
    if (std::fabs(next) >= std::fabs(term)) {
      // Asymptotic regime ended; bound the remainder by the last kept term.
      return {sum, std::fabs(term)};
    }
    if (std::fabs(next) < 1e-14 * std::fabs(sum)) {
      sum += next;
      return {sum, std::fabs(next)};
    }
    term = next;
  }
  return {sum, std::fabs(term)};
}

// tail integral of e^{-mu r} over [x, infinity).
inline double exponential_tail(double x, double mu) {
  if (!(mu > 0.0)) throw InvalidParameters("exponential_tail requires mu > 0");
  return std::exp(-mu * x) / mu;
}

}  // namespace hadamard
