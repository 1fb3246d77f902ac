// Nontrivial conformal relative equilibria of the so(2,1) rigid body:
// closed-form rays cross-checked against the Newton search.

#include <cstdio>

#include "liepoisson/bianchi.hpp"
#include "liepoisson/cre.hpp"

int main() {
  using namespace lp;
  const double alpha = 1.0, beta = 3.0, gamma = -2.0;

  auto cf = cre::closed_form_so21(alpha, beta, gamma);
  std::printf("p = %.12f, q = %.12f, |xi|/t = %.12f\n", cf.p, cf.q, cf.xi_magnitude);
  for (const auto& ray : cf.rays)
    std::printf("ray (1, %+d p, %+d q): xi/t = %+.6f, H = %.1e, C = %.1e\n", ray.sigma2,
                ray.sigma3, ray.xi_per_t, ray.h_residual, ray.c_residual);

  auto entry = bianchi::catalog({bianchi::Tag::VIII});
  auto p = poisson::PoissonStructure::lie_poisson(entry.constants);
  auto h = poisson::Hamiltonian::diagonal(alpha, beta, gamma);
  auto result = cre::find_cre(p, h, poisson::ScalingAction::standard(3));

  std::printf("solver found %zu unit-sphere solutions (%d seeds converged)\n",
              result.solutions.size(), result.seeds_converged);
  for (const auto& s : result.solutions)
    if (!s.trivial)
      std::printf("  x = (%+.6f, %+.6f, %+.6f), xi = %+.6f, residual = %.1e\n", s.x[0], s.x[1],
                  s.x[2], s.xi, s.residual);
  return 0;
}
