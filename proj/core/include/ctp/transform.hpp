#pragma once

#include <utility>

#include "ctp/catalog.hpp"
#include "ctp/rational.hpp"

namespace ctp {

/// Shape of the complex-time path tau(t).
enum class TauMap {
  Circle,       // tau = [e^{i w t} - 1]/(i w): circle through the origin
  Exponential,  // tau = -(i/w) e^{i w t}:      circle around the origin
};

/// Data of one change of variables tying a base equation in tau to its
/// modified avatar in real time: w(t) = e^{i lambda omega t} phi(tau(t)),
/// plus the space rescale xi = x e^{i mu omega t} for PDEs.
///
/// omega is kept positive by convention; the sign freedom lives in
/// Omega = lambda * omega. lambda and mu are exact rationals so the two
/// period scales t_p = 2*pi/omega and T = 2*pi/|Omega| never drift apart.
struct TrickParams {
  double omega = 1.0;
  Rational lambda{1};
  Rational mu{0};
  double omega_cap = 1.0;  // always equal to lambda * omega
  TauMap map = TauMap::Circle;

  static TrickParams make(double omega, Rational lambda, Rational mu,
                          TauMap map = TauMap::Circle);

  double t_p() const { return period_T(omega); }
  double period() const { return period_T(omega_cap); }
};

/// tau(t) = [exp(i omega t) - 1]/(i omega); periodic with t_p = 2*pi/omega.
/// Works for either sign of omega (the circle flips to the lower half
/// plane for omega < 0); the positive-omega convention is enforced only
/// at the TrickParams boundary.
Complex tau_circle(double t, double omega);

/// Velocity d(tau)/dt = exp(i omega t), shared by both maps.
Complex tau_velocity(double t, double omega);

/// Center i/omega and radius 1/|omega| of the contour traced by tau_circle.
std::pair<Complex, double> tau_circle_geometry(double omega);

/// tau(t) = -(i/omega) exp(i omega t); |tau| = 1/omega for all t.
Complex tau_exponential(double t, double omega);

Complex tau_point(double t, const TrickParams& params);
Complex tau_point_velocity(double t, const TrickParams& params);

/// Phase lift w = exp(i lambda omega t) * phi. At t = 0 returns phi.
Complex lift(Complex phi_value, double t, const TrickParams& params);

/// lambda = q/(p - q), Omega = lambda * omega; turns phi' = alpha phi^{p/q}
/// into the autonomous w' - i Omega w = alpha w^{p/q}.
TrickParams params_first_order(int p, int q, double omega);

/// lambda = q/p, Omega = (q/p) omega; shock PDE map.
TrickParams params_shock(int p, int q, double omega);

/// lambda = mu = 1/2, omega = 2 Omega; Burgers map. Requires Omega > 0
/// (omega must stay positive).
TrickParams params_burgers(double omega_cap);

/// mu = 1/3, lambda = 2p/(3q), omega = 3 Omega; KdV-family map.
TrickParams params_kdv(int p, int q, double omega_cap);

/// lambda = -q1 (2 q2 - p2) / (q1 q2 - p1 q2 - p2 q1), omega = Omega/lambda;
/// map of the two-exponent second-order family.
TrickParams params_second_order(int p1, int q1, int p2, int q2,
                                double omega_cap);

/// Maps a complex catalog equation to its coupled real system (w = u + iv).
/// The avatar keeps the complex constants; its right-hand side reads
/// a1 = Re(alpha), a2 = Im(alpha), b1 = Re(beta), ...
EquationSpec realify(const EquationSpec& spec);

}  // namespace ctp
