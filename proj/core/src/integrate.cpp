#include "ctp/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "ctp/errors.hpp"

namespace ctp {
namespace {

Complex cpow_int(Complex w, int k) {
  if (k == 0) return Complex(1.0, 0.0);
  if (k < 0) {
    if (w == Complex{}) {
      throw SingularEvaluation("negative power of a vanishing state");
    }
    return 1.0 / cpow_int(w, -k);
  }
  Complex acc(1.0, 0.0);
  Complex base = w;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

/// w^{p/q} on the sheet selected by the continuous argument theta of w.
Complex frac_pow(Complex w, double theta, int p, int q) {
  const double r = std::abs(w);
  if (r == 0.0) {
    if (p > 0) return Complex{};
    throw SingularEvaluation("fractional power of a vanishing state");
  }
  const double e = static_cast<double>(p) / q;
  return std::exp(Complex(e * std::log(r), e * theta));
}

double binom(int nn, int kk) {
  double r = 1.0;
  for (int i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
  return r;
}

struct Build {
  int physical = 1;
  // One entry per threaded phase: extracts the branch quantity from the
  // physical state, plus the exponent fraction it feeds.
  struct Phase {
    std::function<Complex(std::span<const Complex>)> base;
    double fraction = 1.0;
  };
  std::vector<Phase> phases;
  std::function<void(double, std::span<const Complex>, std::span<Complex>)>
      rhs;
  bool vanish_on_zero_w = false;  // branch point at w = 0 (p < q cases)
};

Build build_modified(const EquationSpec& s) {
  s.validate();
  const double Om = s.omega_cap;
  const Complex i = kImagUnit;
  const Complex al = s.alpha, be = s.beta, ga = s.gamma, de = s.delta,
                et = s.eta;
  const double a1 = s.alpha.real(), a2 = s.alpha.imag();
  const double b1 = s.beta.real(), b2 = s.beta.imag();
  const double c1 = s.gamma.real(), c2 = s.gamma.imag();
  const double d1 = s.delta.real(), d2 = s.delta.imag();

  Build b;
  switch (s.id) {
    case EquationId::Eq1_1: {
      b.physical = 1;
      const int p = s.p, q = s.q;
      if (q > 1) {
        b.phases.push_back(
            {[](std::span<const Complex> y) { return y[0]; },
             static_cast<double>(p) / q});
        b.rhs = [=](double, std::span<const Complex> y,
                    std::span<Complex> dy) {
          const Complex w = y[0];
          const Complex dw = i * Om * w + al * frac_pow(w, y[1].real(), p, q);
          dy[0] = dw;
          dy[1] = (w == Complex{})
                      ? throw SingularEvaluation("phase of vanishing state")
                      : Complex(std::imag(dw / w), 0.0);
        };
      } else {
        b.rhs = [=](double, std::span<const Complex> y,
                    std::span<Complex> dy) {
          dy[0] = i * Om * y[0] + al * cpow_int(y[0], p);
        };
      }
      b.vanish_on_zero_w = (p < q);
      break;
    }
    case EquationId::Eq1_2:
    case EquationId::Eq1_3: {
      b.physical = 2;
      const int p = s.id == EquationId::Eq1_3 ? 2 : s.p;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        double U = 0.0, V = 0.0;
        for (int mm = 0; 2 * mm <= p; ++mm) {
          U += ((mm & 1) ? -1.0 : 1.0) * binom(p, 2 * mm) *
               std::pow(u, p - 2 * mm) * std::pow(v, 2 * mm);
        }
        for (int mm = 0; 2 * mm + 1 <= p; ++mm) {
          V += ((mm & 1) ? -1.0 : 1.0) * binom(p, 2 * mm + 1) *
               std::pow(u, p - 2 * mm - 1) * std::pow(v, 2 * mm + 1);
        }
        dy[0] = -Om * v + a1 * U - a2 * V;
        dy[1] = Om * u + a1 * V + a2 * U;
      };
      break;
    }
    case EquationId::Eq1_4: {
      b.physical = 2;
      const double a = s.alpha.real();
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double x = y[0].real();
        if (x == 0.0) throw SingularEvaluation("oscillator at x = 0");
        dy[0] = y[1];
        dy[1] = -(Om / 2) * (Om / 2) * x + a * a / (x * x * x);
      };
      break;
    }
    case EquationId::Eq1_5:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = -Om * Om * y[0] +
                (al * y[0] * y[0] + ga) * std::exp(i * (5.0 * Om * t));
      };
      break;
    case EquationId::Eq1_6:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = 5.0 * i * Om * y[1] + 6.0 * Om * Om * y[0] + al * y[0] * y[0] +
                ga * std::exp(i * (5.0 * Om * t));
      };
      break;
    case EquationId::Eq1_7:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = -5.0 * i * Om * y[1] + 6.0 * Om * Om * y[0] +
                al * y[0] * y[0] * std::exp(i * (5.0 * Om * t)) + ga;
      };
      break;
    case EquationId::Eq1_8:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = 3.0 * i * Om * y[1] + 2.0 * Om * Om * y[0] +
                al * y[0] * y[0] * y[0] +
                (ga * y[0] + de) * std::exp(i * (3.0 * Om * t));
      };
      break;
    case EquationId::Eq1_9:
      b.physical = 4;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double P = a1 * (u * u - v * v) - 2 * a2 * u * v + c1;
        const double Q = a2 * (u * u - v * v) + 2 * a1 * u * v + c2;
        const double co = std::cos(5 * Om * t), si = std::sin(5 * Om * t);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -Om * Om * u + co * P - si * Q;
        dy[3] = -Om * Om * v + si * P + co * Q;
      };
      break;
    case EquationId::Eq1_10:
      b.physical = 4;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double du = y[2].real(), dv = y[3].real();
        const double co = std::cos(5 * Om * t), si = std::sin(5 * Om * t);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -5 * Om * dv + 6 * Om * Om * u + a1 * (u * u - v * v) -
                2 * a2 * u * v + c1 * co - c2 * si;
        dy[3] = 5 * Om * du + 6 * Om * Om * v + a2 * (u * u - v * v) +
                2 * a1 * u * v + c2 * co + c1 * si;
      };
      break;
    case EquationId::Eq1_11:
      b.physical = 4;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double du = y[2].real(), dv = y[3].real();
        const double P = a1 * (u * u - v * v) - 2 * a2 * u * v;
        const double Q = a2 * (u * u - v * v) + 2 * a1 * u * v;
        const double co = std::cos(5 * Om * t), si = std::sin(5 * Om * t);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = 5 * Om * dv + 6 * Om * Om * u + P * co - Q * si + c1;
        dy[3] = -5 * Om * du + 6 * Om * Om * v + P * si + Q * co + c2;
      };
      break;
    case EquationId::Eq1_12:
      b.physical = 4;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double P = c1 * u - c2 * v + d1;
        const double Q = c2 * u + c1 * v + d2;
        const double co = std::cos(3 * Om * t), si = std::sin(3 * Om * t);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -3 * Om * y[3].real() + 2 * Om * Om * u +
                a1 * u * (u * u - 3 * v * v) - a2 * v * (3 * u * u - v * v) +
                P * co - Q * si;
        dy[3] = 3 * Om * y[2].real() + 2 * Om * Om * v +
                a2 * u * (u * u - 3 * v * v) + a1 * v * (3 * u * u - v * v) +
                P * si + Q * co;
      };
      break;
    case EquationId::Eq1_13:
      b.physical = 2;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = 2.5 * i * Om * y[1] + 1.5 * Om * Om * y[0] + al * y[0] * y[0];
      };
      break;
    case EquationId::Eq1_14a:
      b.physical = 2;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = i * Om * y[1] + 2.0 * Om * Om + al * std::exp(y[0]);
      };
      break;
    case EquationId::Eq1_14b:
      b.physical = 2;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = i * Om * y[1] - 2.0 * Om * Om * y[0] +
                (y[1] - i * Om * y[0]) * y[0];
      };
      break;
    case EquationId::Eq1_15:
      b.physical = 2;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = 3.0 * i * Om * y[1] + 2.0 * Om * Om * y[0] +
                (y[1] - i * Om * y[0]) * y[0];
      };
      break;
    case EquationId::Eq1_16:
      b.physical = 4;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -2.5 * Om * y[3].real() + 1.5 * Om * Om * u +
                a1 * (u * u - v * v) - 2 * a2 * u * v;
        dy[3] = 2.5 * Om * y[2].real() + 1.5 * Om * Om * v +
                a2 * (u * u - v * v) + 2 * a1 * u * v;
      };
      break;
    case EquationId::Eq1_17:
      b.physical = 4;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double eu = std::exp(u);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -Om * y[3].real() + 2 * Om * Om +
                eu * (a1 * std::cos(v) - a2 * std::sin(v));
        dy[3] = Om * y[2].real() + eu * (a2 * std::cos(v) + a1 * std::sin(v));
      };
      break;
    case EquationId::Eq1_18:
      b.physical = 4;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double du = y[2].real(), dv = y[3].real();
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -Om * dv - 2 * Om * Om * u + du * u - dv * v + 2 * Om * u * v;
        dy[3] = Om * du - 2 * Om * Om * v + du * v + u * dv -
                Om * (u * u - v * v);
      };
      break;
    case EquationId::Eq1_19:
      b.physical = 4;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double du = y[2].real(), dv = y[3].real();
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -3 * Om * dv + 2 * Om * Om * u + du * u - dv * v +
                2 * Om * u * v;
        dy[3] = 3 * Om * du + 2 * Om * Om * v + du * v + u * dv -
                Om * (u * u - v * v);
      };
      break;
    case EquationId::Eq1_20: {
      b.physical = 2;
      const int p1 = s.p1, q1 = s.q1, p2 = s.p2, q2 = s.q2;
      const double cw = Rational(3LL * q1 * q2 + std::int64_t(p1) * q2 -
                                     std::int64_t(p2) * q1,
                                 std::int64_t(q1) * (p2 - 2 * q2))
                            .as_double();
      const double cz =
          Rational(std::int64_t(q2) * (p1 + q1),
                   std::int64_t(q1) * (p2 - 2 * q2))
              .as_double();
      const bool phase_w = (q1 > 1 && p1 != 0);
      const bool phase_v = (q2 > 1 && p2 != 0);
      int idx = 2;
      const int iw = phase_w ? idx++ : -1;
      const int iv = phase_v ? idx : -1;
      if (phase_w) {
        b.phases.push_back({[](std::span<const Complex> y) { return y[0]; },
                            static_cast<double>(p1) / q1});
      }
      if (phase_v) {
        b.phases.push_back(
            {[=](std::span<const Complex> y) { return y[1] - i * Om * y[0]; },
             static_cast<double>(p2) / q2});
      }
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex w = y[0], dw = y[1];
        const Complex v = dw - i * Om * w;
        const Complex wp = phase_w ? frac_pow(w, y[iw].real(), p1, q1)
                                   : cpow_int(w, p1);
        const Complex vp = phase_v ? frac_pow(v, y[iv].real(), p2, q2)
                                   : cpow_int(v, p2);
        const Complex ddw = -i * cw * Om * dw - cz * Om * Om * w + al * vp * wp;
        dy[0] = dw;
        dy[1] = ddw;
        if (phase_w) dy[iw] = Complex(std::imag(dw / w), 0.0);
        if (phase_v) {
          dy[iv] = Complex(std::imag((ddw - i * Om * dw) / v), 0.0);
        }
      };
      break;
    }
    case EquationId::Eq1_21:
      b.physical = 2;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex w = y[0], dw = y[1];
        const Complex v = dw - i * Om * w;
        dy[0] = dw;
        dy[1] = 3.0 * i * Om * dw + 2.0 * Om * Om * w +
                al * v * v * v / (w * w * w);
      };
      break;
    case EquationId::Eq1_22:
    case EquationId::Eq1_23: {
      b.physical = 2;
      const int n = s.n, m = s.m;
      const bool is22 = s.id == EquationId::Eq1_22;
      const double cw = is22 ? (double(n) * m + n - 1) : -(2.0 * n * m + 1);
      const double cz = is22 ? double(n) * (m + 1) : -2.0 * n * m;
      const int wexp = is22 ? m : -(2 * m + 1);
      const bool phase_v = n > 1;
      if (phase_v) {
        b.phases.push_back(
            {[=](std::span<const Complex> y) { return y[1] - i * Om * y[0]; },
             (2.0 * n + 1) / n});
      }
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex w = y[0], dw = y[1];
        const Complex v = dw - i * Om * w;
        const Complex vp = phase_v ? frac_pow(v, y[2].real(), 2 * n + 1, n)
                                   : cpow_int(v, 2 * n + 1);
        const Complex ddw =
            -i * cw * Om * dw - cz * Om * Om * w + al * vp * cpow_int(w, wexp);
        dy[0] = dw;
        dy[1] = ddw;
        if (phase_v) dy[2] = Complex(std::imag((ddw - i * Om * dw) / v), 0.0);
      };
      break;
    }
    case EquationId::Eq1_24:
    case EquationId::Eq1_25:
    case EquationId::Eq1_26: {
      b.physical = 2;
      const Complex beff = s.id == EquationId::Eq1_24
                               ? be
                               : (s.id == EquationId::Eq1_25
                                      ? -(al / 3.0) * (al / 3.0)
                                      : Complex{});
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex w = y[0], dw = y[1];
        dy[0] = dw;
        dy[1] = 3.0 * i * Om * dw + 2.0 * Om * Om * w +
                al * w * (dw - i * Om * w) + beff * w * w * w;
      };
      break;
    }
    case EquationId::Eq1_27:
      b.physical = 4;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double du = y[2].real(), dv = y[3].real();
        const double P = u * du - v * dv + 2 * Om * u * v;
        const double Q = du * v + u * dv - Om * (u * u - v * v);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -3 * Om * dv + 2 * Om * Om * u + a1 * P - a2 * Q +
                b1 * u * (u * u - 3 * v * v) - b2 * v * (3 * u * u - v * v);
        dy[3] = 3 * Om * du + 2 * Om * Om * v + a2 * P + a1 * Q +
                b2 * u * (u * u - 3 * v * v) + b1 * v * (3 * u * u - v * v);
      };
      break;
    case EquationId::Eq1_29:
      b.physical = 3;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = 10.0 * i * Om * y[2] + 31.0 * Om * Om * y[1] -
                30.0 * i * Om * Om * Om * y[0] +
                al * (2.0 * y[1] - 5.0 * i * Om * y[0]) * y[0];
      };
      break;
    case EquationId::Eq1_30:
      b.physical = 3;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = 10.0 * i * Om * y[2] + 19.0 * Om * Om * y[1] +
                30.0 * i * Om * Om * Om * y[0] +
                al * (2.0 * y[1] - 5.0 * i * Om * y[0]) * y[0];
      };
      break;
    case EquationId::Eq1_31:
      b.physical = 3;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex w = y[0];
        if (w == Complex{}) throw SingularEvaluation("1.31 at w = 0");
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = -31.0 * Om * Om * y[1] - 30.0 * i * Om * Om * Om * w -
                5.0 * i * Om * ga +
                2.0 * (y[2] + 5.0 * i * Om * y[1] - ga) * y[1] / w;
      };
      break;
    case EquationId::Eq1_32:
      b.physical = 3;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex den = y[0] * y[0] + et;
        if (den == Complex{}) {
          throw SingularEvaluation("1.32 at w^2 + eta = 0");
        }
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = 5.0 * i * Om * y[2] - Om * Om * y[1] +
                5.0 * i * Om * Om * Om * y[0] +
                2.0 * y[0] * y[1] * (y[2] + Om * Om * y[0]) / den;
      };
      break;
    case EquationId::Eq1_33:
    case EquationId::Eq1_34: {
      b.physical = 6;
      const double cd = s.id == EquationId::Eq1_33 ? 31.0 : 19.0;
      const double cz = s.id == EquationId::Eq1_33 ? 30.0 : -30.0;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        const double u = y[0].real(), v = y[1].real();
        const double du = y[2].real(), dv = y[3].real();
        const double P = 2 * (du * u - dv * v + 5 * Om * u * v);
        const double Q = 2 * (du * v + dv * u) - 5 * Om * (u * u - v * v);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = y[4];
        dy[3] = y[5];
        dy[4] = -10 * Om * y[5].real() + cd * Om * Om * du +
                cz * Om * Om * Om * v + a1 * P - a2 * Q;
        dy[5] = 10 * Om * y[4].real() + cd * Om * Om * dv -
                cz * Om * Om * Om * u + a2 * P + a1 * Q;
      };
      break;
    }
    case EquationId::Eq3_44: {
      b.physical = 3;
      const Complex c = s.shift;
      b.rhs = [=](double, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = 10.0 * i * Om * y[2] +
                (31.0 * Om * Om + 2.0 * al * c) * y[1] -
                10.0 * i * (3.0 * Om * Om + al * c) * Om * y[0] -
                5.0 * i * (6.0 * Om * Om + al * c) * Om * c +
                al * (2.0 * y[1] - 5.0 * i * Om * y[0]) * y[0];
      };
      break;
    }
    case EquationId::Eq3_45:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = y[1];
        dy[1] = -Om * Om * y[0] +
                al * (y[0] * y[0] + et) * std::exp(i * (5.0 * Om * t));
      };
      break;
    default:
      throw DomainError(std::string("no ODE right-hand side for equation ") +
                        std::string(to_string(s.id)));
  }
  return b;
}

Build build_base(const EquationSpec& s, const TrickParams& params) {
  s.validate();
  const Complex al = s.alpha, be = s.beta, de = s.delta;
  const TrickParams pr = params;

  auto tau = [pr](double t) { return tau_point(t, pr); };
  auto vel = [pr](double t) { return tau_point_velocity(t, pr); };

  Build b;
  switch (s.id) {
    case EquationId::Eq2_5: {
      b.physical = 1;
      const int p = s.p, q = s.q;
      if (q > 1) {
        b.phases.push_back({[](std::span<const Complex> y) { return y[0]; },
                            static_cast<double>(p) / q});
        b.rhs = [=](double t, std::span<const Complex> y,
                    std::span<Complex> dy) {
          const Complex f = y[0];
          const Complex df = vel(t) * al * frac_pow(f, y[1].real(), p, q);
          dy[0] = df;
          if (f == Complex{}) {
            throw SingularEvaluation("phase of vanishing state");
          }
          dy[1] = Complex(std::imag(df / f), 0.0);
        };
      } else {
        b.rhs = [=](double t, std::span<const Complex> y,
                    std::span<Complex> dy) {
          dy[0] = vel(t) * al * cpow_int(y[0], p);
        };
      }
      b.vanish_on_zero_w = (s.p < s.q);
      break;
    }
    case EquationId::Eq3_1:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex v = vel(t);
        dy[0] = v * y[1];
        dy[1] = v * (al * y[0] * y[0] + be * tau(t));
      };
      break;
    case EquationId::Eq3_5:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex v = vel(t);
        dy[0] = v * y[1];
        dy[1] = v * (al * y[0] * y[0] * y[0] + be * tau(t) * y[0] + de);
      };
      break;
    case EquationId::Eq3_7:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex v = vel(t);
        dy[0] = v * y[1];
        dy[1] = v * al * y[0] * y[0];
      };
      break;
    case EquationId::Eq3_13:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex v = vel(t);
        dy[0] = v * y[1];
        dy[1] = v * al * std::exp(y[0]);
      };
      break;
    case EquationId::Eq3_18: {
      b.physical = 2;
      const int p1 = s.p1, q1 = s.q1, p2 = s.p2, q2 = s.q2;
      const bool phase_f = (q1 > 1 && p1 != 0);
      const bool phase_g = (q2 > 1 && p2 != 0);
      int idx = 2;
      const int iF = phase_f ? idx++ : -1;
      const int iG = phase_g ? idx : -1;
      if (phase_f) {
        b.phases.push_back({[](std::span<const Complex> y) { return y[0]; },
                            static_cast<double>(p1) / q1});
      }
      if (phase_g) {
        b.phases.push_back({[](std::span<const Complex> y) { return y[1]; },
                            static_cast<double>(p2) / q2});
      }
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex v = vel(t);
        const Complex f = y[0], g = y[1];
        const Complex fp =
            phase_f ? frac_pow(f, y[iF].real(), p1, q1) : cpow_int(f, p1);
        const Complex gp =
            phase_g ? frac_pow(g, y[iG].real(), p2, q2) : cpow_int(g, p2);
        const Complex dg = v * al * gp * fp;
        dy[0] = v * g;
        dy[1] = dg;
        if (phase_f) dy[iF] = Complex(std::imag(v * g / f), 0.0);
        if (phase_g) dy[iG] = Complex(std::imag(dg / g), 0.0);
      };
      break;
    }
    case EquationId::Eq3_31:
      b.physical = 2;
      b.rhs = [=](double t, std::span<const Complex> y, std::span<Complex> dy) {
        const Complex v = vel(t);
        dy[0] = v * y[1];
        dy[1] = v * (al * y[1] * y[0] + be * y[0] * y[0] * y[0]);
      };
      break;
    default:
      throw DomainError(std::string("equation ") +
                        std::string(to_string(s.id)) +
                        " is not a base (tau-variable) ODE");
  }
  return b;
}

OdeSystem finish(const EquationSpec& spec, Build b) {
  OdeSystem sys;
  sys.spec = spec;
  sys.physical_dim = b.physical;
  sys.dim = b.physical + static_cast<int>(b.phases.size());
  sys.rhs = std::move(b.rhs);

  const int phys = b.physical;
  auto phases = b.phases;
  sys.comparable = [phys, phases](std::span<const Complex> y) {
    std::vector<Complex> out(y.begin(), y.begin() + phys);
    for (std::size_t k = 0; k < phases.size(); ++k) {
      // The unit branch factor is what the right-hand side actually sees;
      // matching it (not the raw accumulated angle) is required for the
      // dynamics to repeat.
      out.push_back(std::exp(
          Complex(0.0, phases[k].fraction * y[phys + k].real())));
    }
    return out;
  };

  if (b.vanish_on_zero_w) {
    sys.vanish_event = [](std::span<const Complex> y, double scale) {
      return std::abs(y[0]) < 1e-9 * scale;
    };
  }

  // Stashed so initial_state can seed the continuous arguments.
  sys.phase_seed = [phases](std::span<const Complex> physical) {
    std::vector<double> args;
    args.reserve(phases.size());
    for (const auto& ph : phases) {
      const Complex base = ph.base(physical);
      if (base == Complex{}) {
        throw SingularEvaluation("initial datum sits on a branch point");
      }
      args.push_back(std::arg(base));
    }
    return args;
  };
  return sys;
}

double phys_norm(std::span<const Complex> y, int physical) {
  double m = 0.0;
  for (int k = 0; k < physical; ++k) m = std::max(m, std::abs(y[k]));
  return m;
}

}  // namespace

OdeSystem make_system(const EquationSpec& spec) {
  return finish(spec, build_modified(spec));
}

OdeSystem make_base_system(const EquationSpec& spec,
                           const TrickParams& params) {
  return finish(spec, build_base(spec, params));
}

std::vector<Complex> initial_state(const OdeSystem& system,
                                   std::span<const Complex> physical) {
  if (static_cast<int>(physical.size()) != system.physical_dim) {
    throw DomainError("initial data size does not match the system");
  }
  std::vector<Complex> y(physical.begin(), physical.end());
  for (double a : system.phase_seed(physical)) y.emplace_back(a, 0.0);
  return y;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
// b5 - b4, applied to k1..k7 for the embedded error estimate.
constexpr double kE[7] = {71.0 / 57600,  0.0,          -71.0 / 16695,
                          71.0 / 1920,   -17253.0 / 339200,
                          22.0 / 525,    -1.0 / 40};

}  // namespace

Trajectory integrate_adaptive(const OdeSystem& system,
                              std::vector<Complex> y0, double t0, double t1,
                              const IntegrateOptions& opts) {
  if (!(t1 > t0)) throw DomainError("integration requires t1 > t0");
  if (!(opts.rel_tol > 1e-14 && opts.rel_tol < 1e-2) ||
      !(opts.abs_tol > 1e-16 && opts.abs_tol < 1e-2)) {
    throw DomainError("tolerances out of the supported range");
  }
  if (static_cast<int>(y0.size()) != system.dim) {
    throw DomainError("state size does not match the system");
  }

  const int dim = system.dim;
  const double scale0 = 1.0 + phys_norm(y0, system.physical_dim);
  const double h_floor = 1e-13 * (t1 - t0);

  Trajectory traj;
  traj.equation = system.spec.id;

  const bool explicit_samples = !opts.sample_times.empty();
  std::size_t next_sample = 0;
  auto record = [&](double t, const std::vector<Complex>& y) {
    traj.samples.push_back({t, y});
  };

  std::vector<Complex> y = std::move(y0);
  std::vector<Complex> k[7];
  for (auto& kk : k) kk.resize(dim);
  std::vector<Complex> ytmp(dim), ynew(dim);

  double t = t0;
  double h_ctrl = opts.initial_step > 0 ? opts.initial_step
                                        : (t1 - t0) * 1e-3;

  if (explicit_samples) {
    while (next_sample < opts.sample_times.size() &&
           opts.sample_times[next_sample] <= t + 1e-300) {
      record(opts.sample_times[next_sample++], y);
    }
  } else {
    record(t, y);
  }

  system.rhs(t, y, k[0]);  // FSAL seed
  bool have_k0 = true;

  auto finish_blowup = [&](double tb) {
    traj.status = Trajectory::Status::BlowUp;
    traj.blow_up_time = tb;
    return traj;
  };

  for (long step = 0; step < opts.max_steps; ++step) {
    if (t >= t1) {
      traj.status = Trajectory::Status::Completed;
      return traj;
    }
    double h = std::min(h_ctrl, t1 - t);
    if (explicit_samples && next_sample < opts.sample_times.size()) {
      h = std::min(h, opts.sample_times[next_sample] - t);
      h = std::max(h, 1e-300);
    }

    if (!have_k0) {
      system.rhs(t, y, k[0]);
      have_k0 = true;
    }

    bool rejected = false;
    try {
      for (int st = 1; st < 7; ++st) {
        for (int d = 0; d < dim; ++d) {
          Complex acc{};
          for (int j = 0; j < st; ++j) acc += kA[st][j] * k[j][d];
          ytmp[d] = y[d] + h * acc;
        }
        if (st == 6) {
          ynew = ytmp;  // 5th-order solution (row 6 holds the b coefficients)
        }
        system.rhs(t + kC[st] * h, ytmp, k[st]);
      }
    } catch (const SingularEvaluation&) {
      // RHS hit a pole inside the step; retry smaller, or give up as a
      // singular event when the step has already collapsed.
      if (h_ctrl <= h_floor) {
        return finish_blowup(t + 0.5 * h);
      }
      h_ctrl = std::max(h_ctrl * 0.25, h_floor * 0.5);
      have_k0 = true;
      continue;
    }

    double err = 0.0;
    for (int d = 0; d < dim; ++d) {
      Complex e{};
      for (int j = 0; j < 7; ++j) e += kE[j] * k[j][d];
      const double sc = opts.abs_tol +
                        opts.rel_tol * std::max(std::abs(y[d]),
                                                std::abs(ynew[d]));
      err = std::max(err, std::abs(h * e) / sc);
    }

    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      k[0].swap(k[6]);  // FSAL

      const double pn = phys_norm(y, system.physical_dim);
      if (pn > opts.blow_up_norm ||
          (system.vanish_event && system.vanish_event(y, scale0))) {
        return finish_blowup(t + 0.5 * h);
      }

      if (explicit_samples) {
        while (next_sample < opts.sample_times.size() &&
               opts.sample_times[next_sample] <= t + 1e-12 * (t1 - t0)) {
          record(opts.sample_times[next_sample++], y);
        }
      } else {
        record(t, y);
      }

      const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h_ctrl = h * std::clamp(grow, 0.2, 5.0);
    } else {
      rejected = true;
      const double shrink = std::max(0.9 * std::pow(err, -0.2), 0.1);
      h_ctrl = h * shrink;
      have_k0 = true;  // k[0] still valid at (t, y)
    }

    if (h_ctrl < h_floor) {
      const double pn = phys_norm(y, system.physical_dim);
      if (pn > 1e5 * scale0) {
        return finish_blowup(t + 0.5 * h_ctrl);
      }
      throw StiffnessError("step size collapsed without norm growth at t = " +
                           std::to_string(t));
    }
    (void)rejected;
  }
  throw StiffnessError("step budget exhausted before reaching t1");
}

std::vector<Complex> integrate_to(const OdeSystem& system,
                                  std::vector<Complex> y0, double t0,
                                  double t1, const IntegrateOptions& opts) {
  IntegrateOptions o = opts;
  o.sample_times = {t1};
  Trajectory tr = integrate_adaptive(system, std::move(y0), t0, t1, o);
  if (tr.blew_up() || tr.samples.empty()) {
    throw SingularEvaluation("trajectory blew up before t1", tr.blow_up_time);
  }
  return tr.samples.back().state;
}

double third_order_consistency(const EquationSpec& second, Complex w0,
                               Complex wdot0, const IntegrateOptions& opts) {
  EquationId third_id;
  switch (second.id) {
    case EquationId::Eq1_6: third_id = EquationId::Eq1_29; break;
    case EquationId::Eq1_7: third_id = EquationId::Eq1_31; break;
    case EquationId::Eq3_45: third_id = EquationId::Eq1_32; break;
    default:
      throw DomainError("third-order avatars exist for 1.6, 1.7 and 3.45");
  }
  EquationSpec third = second;
  third.id = third_id;

  const OdeSystem sys2 = make_system(second);
  const OdeSystem sys3 = make_system(third);

  // Seed the third-order system with the second derivative the parent
  // equation prescribes at t = 0.
  std::vector<Complex> y2{w0, wdot0};
  std::vector<Complex> d2(2);
  sys2.rhs(0.0, y2, d2);
  std::vector<Complex> y3{w0, wdot0, d2[1]};

  const double T = second.period();
  IntegrateOptions o = opts;
  o.sample_times.clear();
  const int nsamp = 200;
  for (int j = 1; j <= nsamp; ++j) {
    o.sample_times.push_back(2.0 * T * j / nsamp);
  }

  Trajectory t2 = integrate_adaptive(sys2, y2, 0.0, 2.0 * T, o);
  Trajectory t3 = integrate_adaptive(sys3, y3, 0.0, 2.0 * T, o);

  const std::size_t nn = std::min(t2.samples.size(), t3.samples.size());
  double dev = 0.0;
  for (std::size_t j = 0; j < nn; ++j) {
    dev = std::max(dev,
                   std::abs(t2.samples[j].state[0] - t3.samples[j].state[0]));
  }
  return dev;
}

}  // namespace ctp
