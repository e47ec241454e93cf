#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctp/catalog.hpp"
#include "ctp/rational.hpp"

namespace ctp {

/// A numerically realized solution: sampled times and complex states.
/// Times are strictly increasing. On blow-up the last sample is the last
/// accepted state and blow_up_time estimates where the norm diverged
/// (or where a vanishing-type branch point was hit).
struct Trajectory {
  enum class Status { Completed, BlowUp };

  struct Sample {
    double t = 0.0;
    std::vector<Complex> state;
  };

  EquationId equation = EquationId::Eq1_1;
  std::vector<Sample> samples;
  Status status = Status::Completed;
  double blow_up_time = 0.0;  // meaningful only when status == BlowUp

  bool blew_up() const { return status == Status::BlowUp; }
};

/// Outcome of a periodicity analysis for one initial datum.
struct PeriodClassification {
  enum class Kind { Periodic, Singular, Unresolved };

  Kind kind = Kind::Unresolved;
  Rational period_over_T{0};  // Periodic: measured period as multiple of T
  double t_b = 0.0;           // Singular: blow-up time, reduced mod t_p
  std::string note;           // Unresolved: diagnostic

  // Analytic prediction, when a classifier provided one.
  std::optional<Rational> predicted_T1;
  std::optional<Rational> predicted_T2;
  std::optional<double> predicted_t_b;

  static PeriodClassification periodic(Rational k_over_T) {
    PeriodClassification c;
    c.kind = Kind::Periodic;
    c.period_over_T = k_over_T;
    return c;
  }
  static PeriodClassification singular(double t_b) {
    PeriodClassification c;
    c.kind = Kind::Singular;
    c.t_b = t_b;
    return c;
  }
  static PeriodClassification unresolved(std::string why) {
    PeriodClassification c;
    c.kind = Kind::Unresolved;
    c.note = std::move(why);
    return c;
  }
};

/// Rectangular grid over complex initial data, one verdict per cell.
/// Cells are stored row-major: index = iy * nx + ix, cell centers at
/// re_min + (ix + 1/2) dre, im_min + (iy + 1/2) dim.
struct BasinGrid {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 1.0;
  int nx = 0, ny = 0;
  std::vector<PeriodClassification> cells;

  int cell_count() const { return nx * ny; }
  Complex center(int ix, int iy) const {
    const double dre = (re_max - re_min) / nx;
    const double dim = (im_max - im_min) / ny;
    return {re_min + (ix + 0.5) * dre, im_min + (iy + 0.5) * dim};
  }
};

}  // namespace ctp
