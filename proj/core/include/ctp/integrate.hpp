#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ctp/catalog.hpp"
#include "ctp/trajectory.hpp"
#include "ctp/transform.hpp"

namespace ctp {

/// One integrable system: a deterministic, side-effect-free right-hand
/// side over a complex state vector.
///
/// Fractional powers are threaded as extra state: for each w^{p/q} with
/// q > 1 the state carries the continuous argument of the base quantity,
/// so trajectories keep their branch sheet when crossing the negative real
/// axis. Those phase slots live after the physical components
/// (dim >= physical_dim); period detection compares `comparable`, which is
/// the physical state plus the unit branch factors.
struct OdeSystem {
  EquationSpec spec;
  int physical_dim = 1;
  int dim = 1;

  std::function<void(double t, std::span<const Complex> y,
                     std::span<Complex> dy)>
      rhs;

  /// Quantities that must all match for the dynamics to repeat.
  std::function<std::vector<Complex>(std::span<const Complex> y)> comparable;

  /// Optional vanishing-type singular event (branch point at w = 0 for
  /// exponents with p < q): returns true when the state has collapsed
  /// onto the branch point. `scale` is 1 + |y0|.
  std::function<bool(std::span<const Complex> y, double scale)> vanish_event;

  /// Initial continuous arguments of the threaded branch quantities,
  /// computed from the physical initial data. Used by initial_state.
  std::function<std::vector<double>(std::span<const Complex>)> phase_seed;
};

/// Builds the system for a modified (real-time) catalog equation.
OdeSystem make_system(const EquationSpec& spec);

/// Builds a base equation integrated along the complex-time path tau(t)
/// prescribed by `params` (state derivative picks up the factor dtau/dt).
OdeSystem make_base_system(const EquationSpec& spec,
                           const TrickParams& params);

/// Initial state vector for a system: the physical data plus the initial
/// continuous arguments for any threaded phases.
std::vector<Complex> initial_state(const OdeSystem& system,
                                   std::span<const Complex> physical);

struct IntegrateOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// When nonempty: record exactly these times (must be increasing and
  /// inside [t0, t1]). When empty: record every accepted step.
  std::vector<double> sample_times;
  long max_steps = 4'000'000;
  double blow_up_norm = 1e8;
  double initial_step = 0.0;  // 0: choose automatically
};

/// Embedded Dormand-Prince 5(4) integrator on the complexified state.
///
/// Terminates with BlowUp status when the state norm exceeds
/// blow_up_norm, when the step collapses below 1e-13*(t1-t0) while the
/// norm is growing, or when the system's vanish_event fires; the recorded
/// blow-up time is the last accepted time plus half the final step.
/// A collapsing step without norm growth throws StiffnessError.
Trajectory integrate_adaptive(const OdeSystem& system,
                              std::vector<Complex> y0, double t0, double t1,
                              const IntegrateOptions& opts = {});

/// Convenience: state value at time t1 (single integration, no samples).
std::vector<Complex> integrate_to(const OdeSystem& system,
                                  std::vector<Complex> y0, double t0,
                                  double t1, const IntegrateOptions& opts = {});

/// Integrates a third-order avatar against its second-order parent over
/// [0, 2T] from matched data and returns max |w_third - w_second|.
///
/// `second` must be 1.6, 1.7 or 3.45; the paired third-order equation
/// (1.29, 1.31, 1.32) is derived from it, seeded with the second
/// derivative the parent prescribes at t = 0. On blow-up of either system
/// the comparison is truncated at the earlier stop time.
double third_order_consistency(const EquationSpec& second, Complex w0,
                               Complex wdot0,
                               const IntegrateOptions& opts = {});

}  // namespace ctp
