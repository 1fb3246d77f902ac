// Free rigid body on so(3)*: integrate an orbit and watch the invariants.

#include <cstdio>

#include "liepoisson/bianchi.hpp"
#include "liepoisson/dynamics.hpp"

int main() {
  using namespace lp;
  auto entry = bianchi::catalog({bianchi::Tag::IX});
  auto p = poisson::PoissonStructure::lie_poisson(entry.constants);
  auto h = poisson::Hamiltonian::diagonal(1.0, 2.0, 3.0);

  Vec x0{0.8, 0.55, 0.45};
  auto traj = dynamics::integrate(p, h, x0, 10.0, 1e-3);
  auto drift = dynamics::drift_report(traj, h, entry.casimirs.front());

  std::printf("steps: %zu\n", traj.times.size() - 1);
  std::printf("energy drift:  %.3e\n", drift.energy_drift);
  std::printf("casimir drift: %.3e\n", drift.casimir_drift);
  return 0;
}
