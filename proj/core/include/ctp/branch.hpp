#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ctp/catalog.hpp"
#include "ctp/errors.hpp"

namespace ctp {

/// Continuous-argument tracker for a nonvanishing complex path.
///
/// Fractional powers and logarithms of time-dependent quantities must be
/// continued along the evaluation path, never recomputed on the principal
/// branch: the monodromy picked up when the path winds around a branch
/// point is exactly what separates the different periods. The tracker
/// keeps the accumulated argument; each step must turn by less than pi/2,
/// which callers guarantee by refining their path.
class ArgTracker {
 public:
  /// Starts on the principal branch: arg in (-pi, pi].
  explicit ArgTracker(Complex start) : value_(start), arg_(std::arg(start)) {
    if (start == Complex{}) {
      throw SingularEvaluation("branch tracking started at zero");
    }
  }
  ArgTracker(Complex start, double start_arg)
      : value_(start), arg_(start_arg) {}

  /// Advances to the next path point, accumulating the turn. Throws
  /// SingularEvaluation when the path hits zero or turns too sharply to
  /// resolve (caller should refine the step).
  void advance(Complex next) {
    if (next == Complex{}) {
      throw SingularEvaluation("branch point hit: path reached zero");
    }
    const double d = std::arg(next / value_);
    if (std::abs(d) > 1.7) {
      throw SingularEvaluation("branch tracking step too coarse");
    }
    arg_ += d;
    value_ = next;
  }

  Complex value() const { return value_; }
  double continuous_arg() const { return arg_; }
  double log_abs() const { return std::log(std::abs(value_)); }

  /// value^e on the tracked sheet.
  Complex power(double e) const {
    return std::exp(Complex(e * log_abs(), e * arg_));
  }
  /// log(value) on the tracked sheet.
  Complex log() const { return {log_abs(), arg_}; }

 private:
  Complex value_;
  double arg_;
};

namespace detail {

/// Walks g over [t0, t1], bisecting any step where g turns by more than
/// ~pi/3 or changes magnitude by more than half. Used by every closed-form
/// evaluator that continues a power or logarithm in time.
template <typename G>
void continue_path(G&& g, double t0, double t1, ArgTracker& tracker,
                   int init_steps = 32, int max_depth = 48) {
  if (t1 == t0) return;
  const double dt = (t1 - t0) / init_steps;
  double t = t0;
  Complex prev = tracker.value();
  for (int i = 0; i < init_steps; ++i) {
    const double target = (i + 1 == init_steps) ? t1 : t0 + (i + 1) * dt;
    // Recursive bisection on this segment.
    struct Seg {
      double a, b;
      int depth;
    };
    std::vector<Seg> stack{{t, target, 0}};
    while (!stack.empty()) {
      const Seg s = stack.back();
      stack.pop_back();
      const Complex gb = g(s.b);
      const Complex ga = tracker.value();
      const double turn = std::abs(std::arg(gb / ga));
      const double mag = std::abs(gb) / std::abs(ga);
      if ((turn > 1.0 || mag > 2.0 || mag < 0.5) && s.depth < max_depth) {
        const double mid = 0.5 * (s.a + s.b);
        if (mid > s.a && mid < s.b) {
          stack.push_back({mid, s.b, s.depth + 1});
          stack.push_back({s.a, mid, s.depth + 1});
          continue;
        }
      }
      if (s.depth >= max_depth && (turn > 1.6 || !(std::abs(gb) > 0.0))) {
        throw SingularEvaluation(
            "branch point on the evaluation path near t = " +
                std::to_string(s.b),
            s.b);
      }
      tracker.advance(gb);
    }
    t = target;
    prev = tracker.value();
    (void)prev;
  }
}

}  // namespace detail

/// Continues g(t)^exponent from t0 to t1 starting on the sheet recorded in
/// `start`; returns the tracker at t1 (value, accumulated argument).
template <typename G>
ArgTracker track_power_path(G&& g, double t0, double t1, ArgTracker start,
                            int init_steps = 32) {
  detail::continue_path(g, t0, t1, start, init_steps);
  return start;
}

}  // namespace ctp
