#include "ctp/transform.hpp"

#include <cmath>

namespace ctp {

TrickParams TrickParams::make(double omega, Rational lambda, Rational mu,
                              TauMap map) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be a positive finite number");
  }
  TrickParams p;
  p.omega = omega;
  p.lambda = lambda;
  p.mu = mu;
  p.omega_cap = lambda.as_double() * omega;
  p.map = map;
  return p;
}

Complex tau_circle(double t, double omega) {
  if (omega == 0.0) throw DomainError("tau_circle requires omega != 0");
  return (std::exp(kImagUnit * (omega * t)) - 1.0) / (kImagUnit * omega);
}

Complex tau_velocity(double t, double omega) {
  return std::exp(kImagUnit * (omega * t));
}

std::pair<Complex, double> tau_circle_geometry(double omega) {
  if (omega == 0.0) throw DomainError("tau_circle requires omega != 0");
  return {kImagUnit / omega, 1.0 / std::abs(omega)};
}

Complex tau_exponential(double t, double omega) {
  if (omega == 0.0) throw DomainError("tau_exponential requires omega != 0");
  return -(kImagUnit / omega) * std::exp(kImagUnit * (omega * t));
}

Complex tau_point(double t, const TrickParams& params) {
  return params.map == TauMap::Circle ? tau_circle(t, params.omega)
                                      : tau_exponential(t, params.omega);
}

Complex tau_point_velocity(double t, const TrickParams& params) {
  return tau_velocity(t, params.omega);
}

Complex lift(Complex phi_value, double t, const TrickParams& params) {
  return std::exp(kImagUnit * (params.lambda.as_double() * params.omega * t)) *
         phi_value;
}

TrickParams params_first_order(int p, int q, double omega) {
  if (q <= 0) throw DomainError("q must be positive");
  if (p == q) throw DomainError("p = q is the excluded linear case");
  return TrickParams::make(omega, Rational(q, p - q), Rational(0),
                           TauMap::Circle);
}

TrickParams params_shock(int p, int q, double omega) {
  if (q <= 0) throw DomainError("q must be positive");
  if (p == 0) throw DomainError("shock map requires p != 0");
  return TrickParams::make(omega, Rational(q, p), Rational(0), TauMap::Circle);
}

TrickParams params_burgers(double omega_cap) {
  if (!(omega_cap > 0.0)) {
    throw DomainError("Burgers map requires Omega > 0 (omega = 2 Omega)");
  }
  return TrickParams::make(2.0 * omega_cap, Rational(1, 2), Rational(1, 2),
                           TauMap::Circle);
}

TrickParams params_kdv(int p, int q, double omega_cap) {
  if (q <= 0) throw DomainError("q must be positive");
  if (!(omega_cap > 0.0)) {
    throw DomainError("KdV map requires Omega > 0 (omega = 3 Omega)");
  }
  return TrickParams::make(3.0 * omega_cap, Rational(2 * p, 3 * q),
                           Rational(1, 3), TauMap::Circle);
}

TrickParams params_second_order(int p1, int q1, int p2, int q2,
                                double omega_cap) {
  if (q1 <= 0 || q2 <= 0) throw DomainError("q1, q2 must be positive");
  const std::int64_t den =
      std::int64_t(q1) * q2 - std::int64_t(p1) * q2 - std::int64_t(p2) * q1;
  if (den == 0) {
    throw DomainError("q1 q2 - p1 q2 - p2 q1 = 0: map is degenerate");
  }
  const Rational lambda(-std::int64_t(q1) * (2 * std::int64_t(q2) - p2), den);
  if (lambda.is_zero()) throw DomainError("lambda = 0: map is degenerate");
  double omega = omega_cap / lambda.as_double();
  Rational lam = lambda;
  if (omega < 0.0) {
    // Keep omega positive; the sign moves into lambda so that
    // lambda * omega still equals Omega.
    omega = -omega;
    lam = -lam;
  }
  return TrickParams::make(omega, lam, Rational(0), TauMap::Circle);
}

EquationSpec realify(const EquationSpec& spec) {
  EquationSpec out = spec;
  switch (spec.id) {
    case EquationId::Eq1_1:
      if (spec.q != 1 || spec.p <= 1) {
        throw DomainError("real avatar of 1.1 requires q = 1, p > 1");
      }
      out.id = spec.p == 2 ? EquationId::Eq1_3 : EquationId::Eq1_2;
      break;
    case EquationId::Eq1_5: out.id = EquationId::Eq1_9; break;
    case EquationId::Eq1_6: out.id = EquationId::Eq1_10; break;
    case EquationId::Eq1_7: out.id = EquationId::Eq1_11; break;
    case EquationId::Eq1_8: out.id = EquationId::Eq1_12; break;
    case EquationId::Eq1_13: out.id = EquationId::Eq1_16; break;
    case EquationId::Eq1_14a: out.id = EquationId::Eq1_17; break;
    case EquationId::Eq1_14b: out.id = EquationId::Eq1_18; break;
    case EquationId::Eq1_15: out.id = EquationId::Eq1_19; break;
    case EquationId::Eq1_24: out.id = EquationId::Eq1_27; break;
    case EquationId::Eq1_29: out.id = EquationId::Eq1_33; break;
    case EquationId::Eq1_30: out.id = EquationId::Eq1_34; break;
    case EquationId::Eq1_35:
      if (spec.q != 1 || (spec.p != 1 && spec.p != 2)) {
        throw DomainError("real avatar of 1.35 exists for p/q = 1 or 2");
      }
      out.id = spec.p == 1 ? EquationId::Eq1_36 : EquationId::Eq1_37;
      break;
    case EquationId::Eq1_38: out.id = EquationId::Eq1_39; break;
    case EquationId::Eq1_41: out.id = EquationId::Eq1_42; break;
    case EquationId::Eq1_43: out.id = EquationId::Eq1_44; break;
    case EquationId::Eq1_45: out.id = EquationId::Eq1_46; break;
    default:
      throw DomainError(std::string("equation ") +
                        std::string(to_string(spec.id)) +
                        " has no real avatar in the catalog");
  }
  out.validate();
  return out;
}

}  // namespace ctp
