#pragma once

// Fixed-step classical 4th-order integration of Lie-Poisson trajectories and
// the dynamical diagnostics built on it: conservation drift and ray motion.

#include <cmath>
#include <string>
#include <vector>

#include "liepoisson/errors.hpp"
#include "liepoisson/linalg.hpp"
#include "liepoisson/poisson.hpp"

namespace lp::dynamics {

inline constexpr double kEscapeThreshold = 1e12;

struct Trajectory {
  std::vector<double> times;   // strictly increasing
  std::vector<Vec> states;
  std::string method = "rk4";
  double step = 0.0;
  bool escaped = false;        // truncated at the escape threshold
};

/// Integrates xdot = Pi(x) grad H(x) from x0 to t_end with fixed step dt; the
/// final partial step is shortened to land exactly on t_end. A state beyond
/// the escape threshold truncates the trajectory and sets the `escaped` flag
/// instead of raising: CRE rays genuinely escape.
inline Trajectory integrate(const poisson::PoissonStructure& p, const poisson::Hamiltonian& h,
                            const Vec& x0, double t_end, double dt,
                            double escape_threshold = kEscapeThreshold) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw SchemaError("integrate needs dt > 0 and t_end > 0");
  if (!finite(x0)) throw SchemaError("integrate needs a finite initial state");

  auto rhs = [&](const Vec& x) { return poisson::hamiltonian_field(p, h, x); };

  Trajectory traj;
  traj.step = dt;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  Vec x = x0;
  double t = 0.0;
  long long k = 0;
  while (t < t_end) {
    // Grid times from the step index; the final partial step lands on t_end.
    double t_next = dt * static_cast<double>(k + 1);
    if (t_next > t_end - 1e-9 * dt) t_next = t_end;
    double step = t_next - t;
    if (!(step > 0.0)) break;
    Vec k1 = rhs(x);
    Vec k2 = rhs(x + (0.5 * step) * k1);
    Vec k3 = rhs(x + (0.5 * step) * k2);
    Vec k4 = rhs(x + step * k3);
    Vec xn(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      xn[i] = x[i] + (step / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t = t_next;
    ++k;
    if (!finite(xn) || norm(xn) > escape_threshold) {
      traj.escaped = true;
      break;
    }
    x = std::move(xn);
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

struct DriftReport {
  double energy_drift = 0.0;
  double casimir_drift = 0.0;
};

/// Relative drift max_t |F(x(t)) - F(x0)| / max(1, |F(x0)|) for F in {H, C}.
inline DriftReport drift_report(const Trajectory& traj, const poisson::Hamiltonian& h,
                                const poisson::ScalarField& c) {
  if (traj.states.empty()) throw SchemaError("drift_report needs a nonempty trajectory");
  const Vec& x0 = traj.states.front();
  const double h0 = h.value(x0);
  const double c0 = c(x0);
  DriftReport rep;
  for (const auto& x : traj.states) {
    rep.energy_drift = std::max(rep.energy_drift, std::abs(h.value(x) - h0) / std::max(1.0, std::abs(h0)));
    rep.casimir_drift = std::max(rep.casimir_drift, std::abs(c(x) - c0) / std::max(1.0, std::abs(c0)));
  }
  return rep;
}

/// max_t ||x(t) - e^(xi t) x0|| / ||e^(xi t) x0|| against the exponential ray
/// through a certified CRE. Exact ray motion is exponential for linear
/// Hamiltonians; degree-2 Hamiltonians leave the exponential law immediately.
inline double ray_motion_check(const Trajectory& traj, const Vec& x0, double xi) {
  double dev = 0.0;
  const double n0 = norm(x0);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    double g = std::exp(xi * traj.times[k]);
    Vec expect = g * x0;
    dev = std::max(dev, norm(traj.states[k] - expect) / (g * n0));
  }
  return dev;
}

} // namespace lp::dynamics
