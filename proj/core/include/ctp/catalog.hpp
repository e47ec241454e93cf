#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "ctp/rational.hpp"

namespace ctp {

using Complex = std::complex<double>;

inline constexpr Complex kImagUnit{0.0, 1.0};

/// Catalog of evolution equations handled by this library.
///
/// Numeric labels are stable catalog ids (also accepted by the CLI as
/// strings like "1.1" or "1.14a"). Eq1_* are the modified equations with
/// many periodic solutions; Eq2_5/Eq2_22/Eq2_38 and Eq3_* are the base
/// equations the modified ones are conjugate to under the complex-time
/// substitution.
enum class EquationId {
  // First-order algebraic complex ODE and its real avatars.
  Eq1_1,   // w' - i*Om*w = alpha * w^(p/q)
  Eq1_2,   // real avatar of 1.1 (q = 1, integer p > 1)
  Eq1_3,   // 1.2 with p = 2
  Eq1_4,   // x'' + (Om/2)^2 x = a^2 x^-3   (real oscillator)
  // Painleve-derived nonautonomous second-order ODEs.
  Eq1_5,   // w'' + Om^2 w = (alpha w^2 + gamma) e^{5 i Om t}
  Eq1_6,   // w'' - 5 i Om w' - 6 Om^2 w = alpha w^2 + gamma e^{5 i Om t}
  Eq1_7,   // w'' + 5 i Om w' - 6 Om^2 w = alpha w^2 e^{5 i Om t} + gamma
  Eq1_8,   // w'' - 3 i Om w' - 2 Om^2 w = alpha w^3 + (gamma w + delta) e^{3 i Om t}
  Eq1_9,   // real avatar of 1.5
  Eq1_10,  // real avatar of 1.6
  Eq1_11,  // real avatar of 1.7
  Eq1_12,  // real avatar of 1.8
  // Autonomous second-order ODEs.
  Eq1_13,  // w'' - (5/2) i Om w' - (3/2) Om^2 w = alpha w^2
  Eq1_14a, // w'' - i Om w' - 2 Om^2 = alpha e^w
  Eq1_14b, // w'' - i Om w' + 2 Om^2 w = (w' - i Om w) w
  Eq1_15,  // w'' - 3 i Om w' - 2 Om^2 w = (w' - i Om w) w
  Eq1_16,  // real avatar of 1.13
  Eq1_17,  // real avatar of 1.14a
  Eq1_18,  // real avatar of 1.14b
  Eq1_19,  // real avatar of 1.15
  Eq1_20,  // two-exponent family, see params_second_order
  Eq1_21,  // w'' - 3 i Om w' - 2 Om^2 w = alpha (w' - i Om w)^3 w^-3
  Eq1_22,  // w'' + i(nm+n-1) Om w' + n(m+1) Om^2 w = alpha (w'-i Om w)^{(2n+1)/n} w^m
  Eq1_23,  // w'' - i(2nm+1) Om w' - 2nm Om^2 w = alpha (w'-i Om w)^{(2n+1)/n} w^{-(2m+1)}
  Eq1_24,  // w'' - 3 i Om w' - 2 Om^2 w = alpha w (w' - i Om w) + beta w^3
  Eq1_25,  // 1.24 with beta = -(alpha/3)^2
  Eq1_26,  // 1.24 with beta = 0
  Eq1_27,  // real avatar of 1.24
  // Autonomous third-order ODEs.
  Eq1_29,  // avatar of 1.6 (gamma eliminated)
  Eq1_30,  // avatar of 1.29 shifted by a constant, see 3.44
  Eq1_31,  // avatar of 1.7 (alpha eliminated; keeps gamma)
  Eq1_32,  // avatar of 3.45 (alpha eliminated; keeps eta)
  Eq1_33,  // real avatar of 1.29
  Eq1_34,  // real avatar of 1.30
  // PDEs.
  Eq1_35,  // w_t - i Om w = alpha w_x w^{p/q}   (shock type; = 2.26)
  Eq1_36,  // real avatar of 1.35, p = q = 1
  Eq1_37,  // real avatar of 1.35, p = 2, q = 1
  Eq1_38,  // w_t = (i Om x w + beta w_x + alpha w^2)_x   (Burgers type; = 2.45)
  Eq1_39,  // real avatar of 1.38
  Eq1_40,  // generalized KdV, exponents p/q
  Eq1_41,  // KdV type (1.40 with p = q = 1)
  Eq1_42,  // real avatar of 1.41
  Eq1_43,  // modified KdV type (1.40 with p = 2, q = 1)
  Eq1_44,  // real avatar of 1.43
  Eq1_45,  // KP type
  Eq1_46,  // real avatar of 1.45
  // Base equations (complex independent variable tau).
  Eq2_5,   // phi' = alpha phi^{p/q}
  Eq2_22,  // phi_tau = alpha phi_x phi^{p/q}
  Eq2_38,  // phi_tau - beta phi_xx = 2 alpha phi_x phi    (Burgers)
  Eq3_1,   // phi'' = alpha phi^2 + beta tau                (Painleve I form)
  Eq3_5,   // phi'' = alpha phi^3 + beta tau phi + delta    (Painleve II form)
  Eq3_7,   // phi'' = alpha phi^2
  Eq3_13,  // phi'' = alpha e^phi
  Eq3_18,  // phi'' = alpha (phi')^{p2/q2} phi^{p1/q1}
  Eq3_31,  // phi'' = alpha phi' phi + beta phi^3
  Eq3_44,  // 1.29 shifted: w = z + c, c stored in `shift`
  Eq3_45,  // w'' + Om^2 w = alpha (w^2 + eta) e^{5 i Om t}
  Eq3_46,  // phi_tau = beta phi_xxx + alpha phi_x phi^{p/q}
  Eq3_49,  // (phi_tau + beta phi_xxx + alpha phi_x phi)_xi + gamma phi_etaeta = 0 (KP)
};

std::string_view to_string(EquationId id);

/// Parses "1.1", "1.14a", "2.26" (alias of 1.35), "2.45" (alias of 1.38), ...
/// Throws DomainError for unknown labels.
EquationId parse_equation_id(std::string_view label);

bool is_pde(EquationId id);

/// True for the real coupled systems obtained by w = u + i v.
bool is_real_avatar(EquationId id);

/// One catalog entry: an equation id plus every constant it may use.
///
/// Unused fields are ignored by the equation's right-hand side. The real
/// avatars read a1 = Re(alpha), a2 = Im(alpha) and so on, which keeps a
/// realified spec byte-compatible with its complex parent.
struct EquationSpec {
  EquationId id = EquationId::Eq1_1;

  Complex alpha{};   // also the oscillator constant `a` for 1.4
  Complex beta{};
  Complex gamma{};
  Complex delta{};
  Complex eta{};
  Complex shift{};   // constant c of 3.44

  double omega_cap = 1.0;  // Omega, real and nonvanishing

  int p = 0, q = 1;                    // exponent p/q (1.1, 1.35, 1.40, bases)
  int p1 = 0, q1 = 1, p2 = 0, q2 = 1;  // exponents of 1.20 / 3.18
  int n = 1, m = 0;                    // integers of 1.22 / 1.23

  /// T = 2*pi/|Omega|.
  double period() const { return period_T(omega_cap); }

  /// Throws DomainError on any violated catalog invariant.
  void validate() const;
};

}  // namespace ctp
