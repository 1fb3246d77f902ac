#pragma once

// Conformal relative equilibria: the augmented conformal field, a multi-start
// damped-Newton solver on the unit sphere, the closed-form so(2,1) rays, the
// eigenpair construction for linear Hamiltonians, and conformal-momentum-map
// verification.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "liepoisson/algebra.hpp"
#include "liepoisson/errors.hpp"
#include "liepoisson/linalg.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/rng.hpp"

namespace lp::cre {

inline constexpr double kTrivialXi = 1e-8;
inline constexpr double kCertifyTol = 1e-10;

struct ConformalRelativeEquilibrium {
  Vec x;                 // reported at unit Euclidean norm
  double xi = 0.0;       // velocity
  double residual = 0.0; // ||X_H(x) - xi D(x)||
  bool trivial = false;  // |xi| < kTrivialXi
  bool ray_pair = false; // (-x,-xi) is also among the returned solutions
};

/// Augmented conformal Hamiltonian field Pi(x) grad H(x) - c xi D(x). For the
/// Lie-Poisson scaling action the momentum map is a Casimir, so it drops out
/// of the field analytically; the result does not depend on which Casimir is
/// chosen (and this routine never evaluates one).
inline Vec conformal_field(const poisson::PoissonStructure& p, const poisson::Hamiltonian& h,
                           double xi, const poisson::ScalingAction& action, const Vec& x) {
  Vec f = poisson::hamiltonian_field(p, h, x);
  Vec d = action.liouville(x);
  const double cxi = action.degree_c * xi;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= cxi * d[i];
  return f;
}

struct SearchConfig {
  int seeds = 512;
  std::uint64_t rng_seed = kDefaultSeed;
  double certify_tol = kCertifyTol;
  int max_iterations = 100;
  int max_backtracks = 30;
  double residual_tol = 1e-12;
  double step_tol = 1e-14;
  double dedup_angle = 1e-6;
  double dedup_xi = 1e-6;
  int continuum_threshold = 50;
  bool include_trivial = true;
};

struct SearchResult {
  std::vector<ConformalRelativeEquilibrium> solutions;
  int seeds_tried = 0;
  int seeds_converged = 0;
  bool continuum_suspected = false;
};

namespace detail {

/// Jacobian of X_H at x for the two Hamiltonian kinds on a linear structure.
inline Mat field_jacobian(const poisson::PoissonStructure& p, const poisson::Hamiltonian& h,
                          const Vec& x) {
  const auto& alg = *p.constants;
  Mat j = algebra::coadjoint_matrix(alg, h.gradient(x));
  if (h.kind == poisson::Hamiltonian::Kind::Quadratic) j = j + p.eval(x) * h.q;
  return j;
}

// Chord-based angle between directions; accurate near 0 where acos is not.
inline double angular_distance(const Vec& a, const Vec& b) {
  Vec ua = normalized(a), ub = normalized(b);
  double chord = 0.5 * norm(ua - ub);
  return 2.0 * std::asin(std::min(1.0, chord));
}

} // namespace detail

/// Multi-start damped Newton on F(x, xi) = (Pi(x) grad H - xi x, |x|^2 - 1).
/// Seeds are drawn on the unit sphere with xi = 0; converged points are
/// certified against `certify_tol`, deduplicated by angular distance and
/// velocity, sorted lexicographically by rounded coordinates. Antipodal
/// partners are kept and marked. More than `continuum_threshold` distinct
/// points flags a suspected solution continuum. NoConvergence only when no
/// seed converges at all.
inline SearchResult find_cre(const poisson::PoissonStructure& p, const poisson::Hamiltonian& h,
                             const poisson::ScalingAction& action, const SearchConfig& config = {}) {
  if (p.kind != poisson::PoissonStructure::Kind::Linear)
    throw SchemaError("find_cre expects a Lie-Poisson (linear) structure");
  if (action.kind != poisson::ScalingAction::Kind::Standard)
    throw SchemaError("find_cre expects the standard scaling action");
  const int n = p.dim;

  Rng rng(config.rng_seed);
  SearchResult result;
  result.seeds_tried = config.seeds;
  std::vector<std::pair<Vec, double>> found;

  for (int seed_index = 0; seed_index < config.seeds; ++seed_index) {
    Vec x = rng.unit_vector(n);
    double xi = 0.0;

    bool converged = false;
    for (int it = 0; it < config.max_iterations; ++it) {
      Vec fx = poisson::hamiltonian_field(p, h, x);
      Vec F(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i < n; ++i)
        F[static_cast<std::size_t>(i)] = fx[static_cast<std::size_t>(i)] - xi * x[static_cast<std::size_t>(i)];
      F[static_cast<std::size_t>(n)] = dot(x, x) - 1.0;
      double fnorm = norm(F);
      if (fnorm < config.residual_tol) {
        converged = true;
        break;
      }

      Mat J(n + 1, n + 1);
      Mat df = detail::field_jacobian(p, h, x);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) J(i, j) = df(i, j);
        J(i, i) -= xi;
        J(i, n) = -x[static_cast<std::size_t>(i)];
        J(n, i) = 2.0 * x[static_cast<std::size_t>(i)];
      }

      Vec step;
      if (!solve_inplace(J, F, step)) break;

      // Backtracking on the residual norm.
      double t = 1.0;
      for (int bt = 0; bt <= config.max_backtracks; ++bt) {
        Vec xn(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          xn[static_cast<std::size_t>(i)] =
              x[static_cast<std::size_t>(i)] - t * step[static_cast<std::size_t>(i)];
        double xin = xi - t * step[static_cast<std::size_t>(n)];
        Vec fn = poisson::hamiltonian_field(p, h, xn);
        Vec Fn(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i < n; ++i)
          Fn[static_cast<std::size_t>(i)] =
              fn[static_cast<std::size_t>(i)] - xin * xn[static_cast<std::size_t>(i)];
        Fn[static_cast<std::size_t>(n)] = dot(xn, xn) - 1.0;
        if (norm(Fn) < fnorm || bt == config.max_backtracks) {
          x = std::move(xn);
          xi = xin;
          break;
        }
        t *= 0.5;
      }
      if (t * norm(step) < config.step_tol) {
        Vec fx2 = poisson::hamiltonian_field(p, h, x);
        Vec F2(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i < n; ++i)
          F2[static_cast<std::size_t>(i)] =
              fx2[static_cast<std::size_t>(i)] - xi * x[static_cast<std::size_t>(i)];
        F2[static_cast<std::size_t>(n)] = dot(x, x) - 1.0;
        converged = norm(F2) < 10.0 * config.residual_tol;
        break;
      }
    }
    if (!converged) {
      // Accept a seed that already sits on a solution (residual check).
      Vec fx = poisson::hamiltonian_field(p, h, x);
      Vec F(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i < n; ++i)
        F[static_cast<std::size_t>(i)] = fx[static_cast<std::size_t>(i)] - xi * x[static_cast<std::size_t>(i)];
      F[static_cast<std::size_t>(n)] = dot(x, x) - 1.0;
      converged = norm(F) < config.residual_tol;
    }
    if (!converged || !finite(x) || !std::isfinite(xi)) continue;

    Vec xu = normalized(x);
    Vec r = poisson::hamiltonian_field(p, h, xu);
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= xi * xu[static_cast<std::size_t>(i)];
    if (norm(r) > config.certify_tol) continue;

    ++result.seeds_converged;
    bool duplicate = false;
    for (const auto& [px, pxi] : found)
      if (detail::angular_distance(px, xu) < config.dedup_angle &&
          std::abs(pxi - xi) < config.dedup_xi) {
        duplicate = true;
        break;
      }
    if (!duplicate) found.emplace_back(xu, xi);
  }

  if (result.seeds_converged == 0) {
    throw NoConvergence("no Newton seed converged (" + std::to_string(config.seeds) + " tried)");
  }

  for (const auto& [x, xi] : found) {
    ConformalRelativeEquilibrium s;
    s.x = x;
    s.xi = xi;
    Vec r = poisson::hamiltonian_field(p, h, x);
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= xi * x[static_cast<std::size_t>(i)];
    s.residual = norm(r);
    s.trivial = std::abs(xi) < kTrivialXi;
    result.solutions.push_back(std::move(s));
  }

  // Mark antipodal ray pairs; (x,xi) -> (-x,-xi) maps solutions to solutions
  // for even-degree Hamiltonians.
  if (h.degree == 2) {
    for (auto& s : result.solutions)
      for (const auto& o : result.solutions) {
        if (&s == &o) continue;
        if (detail::angular_distance(s.x, -o.x) < config.dedup_angle &&
            std::abs(s.xi + o.xi) < config.dedup_xi) {
          s.ray_pair = true;
          break;
        }
      }
  }

  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const ConformalRelativeEquilibrium& a, const ConformalRelativeEquilibrium& b) {
              auto key = [](const ConformalRelativeEquilibrium& s) {
                std::vector<long long> k;
                for (double v : s.x) k.push_back(std::llround(v * 1e9));
                k.push_back(std::llround(s.xi * 1e9));
                return k;
              };
              return key(a) < key(b);
            });

  result.continuum_suspected =
      static_cast<int>(result.solutions.size()) > config.continuum_threshold;
  if (!config.include_trivial) {
    auto& v = result.solutions;
    v.erase(std::remove_if(v.begin(), v.end(),
                           [](const ConformalRelativeEquilibrium& s) { return s.trivial; }),
            v.end());
  }
  return result;
}

struct So21Ray {
  int sigma2 = 1, sigma3 = 1;
  Vec direction;      // (1, sigma2 p, sigma3 q), not normalized
  double xi_per_t = 0.0;
  double h_residual = 0.0;  // |H| at the t=1 point
  double c_residual = 0.0;  // |C| at the t=1 point
};

struct So21ClosedForm {
  double p = 0.0, q = 0.0;
  double xi_magnitude = 0.0;  // sqrt(-(alpha+gamma)(alpha+beta))
  std::array<So21Ray, 4> rays;
};

/// Closed-form nontrivial CRE rays of the so(2,1) rigid body with
/// H = (alpha x1^2 + beta x2^2 + gamma x3^2)/2 under -beta < alpha < -gamma:
/// rays t (1, s2 p, s3 q) with xi = s2 s3 sqrt(-(alpha+gamma)(alpha+beta)) t,
/// lying on the light cone H = 0, C = 0.
inline So21ClosedForm closed_form_so21(double alpha, double beta, double gamma) {
  if (!(-beta < alpha && alpha < -gamma))
    throw HypothesisViolation("closed_form_so21 needs -beta < alpha < -gamma (strict)");
  So21ClosedForm out;
  const double bg = beta - gamma;
  out.p = std::sqrt(-(alpha + gamma) / bg);
  out.q = std::sqrt((alpha + beta) / bg);
  out.xi_magnitude = std::sqrt(-(alpha + gamma) * (alpha + beta));

  int k = 0;
  for (int s2 : {1, -1})
    for (int s3 : {1, -1}) {
      So21Ray ray;
      ray.sigma2 = s2;
      ray.sigma3 = s3;
      ray.direction = {1.0, s2 * out.p, s3 * out.q};
      ray.xi_per_t = s2 * s3 * out.xi_magnitude;
      const Vec& x = ray.direction;
      ray.h_residual =
          std::abs(0.5 * (alpha * x[0] * x[0] + beta * x[1] * x[1] + gamma * x[2] * x[2]));
      ray.c_residual = std::abs(-x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      out.rays[static_cast<std::size_t>(k++)] = std::move(ray);
    }
  return out;
}

/// Constructive direction of the algebraic criterion: every real eigenpair
/// (lambda, mu) of the coadjoint operator of zeta with |lambda| > kEpsReal is
/// a CRE of the linear Hamiltonian <x, zeta>, velocity lambda. The pairing
/// <mu, zeta> vanishes on each returned point (certified).
inline std::vector<ConformalRelativeEquilibrium> linear_hamiltonian_cre(
    const algebra::StructureConstants& alg, const Vec& zeta) {
  const int n = alg.dim();
  Mat a = algebra::coadjoint_matrix(alg, zeta);
  auto rep = algebra::spectrum(a);

  std::vector<double> lambdas;
  for (const auto& z : rep.eigenvalues) {
    if (std::abs(z.imag()) >= algebra::kEpsImag || std::abs(z.real()) <= algebra::kEpsReal)
      continue;
    bool dup = false;
    for (double l : lambdas)
      if (std::abs(l - z.real()) < 1e-9) dup = true;
    if (!dup) lambdas.push_back(z.real());
  }

  std::vector<ConformalRelativeEquilibrium> out;
  for (double lambda : lambdas) {
    Vec v = algebra::real_eigenvector(a, lambda);
    ConformalRelativeEquilibrium s;
    s.x = v;
    s.xi = lambda;
    Vec r = a * v;
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= lambda * v[static_cast<std::size_t>(i)];
    s.residual = norm(r);
    s.trivial = std::abs(lambda) < kTrivialXi;
    if (std::abs(dot(v, zeta)) > 1e-10)
      throw NumericalFailure("linear Hamiltonian does not vanish on the equilibrium");
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const ConformalRelativeEquilibrium& a_, const ConformalRelativeEquilibrium& b_) {
              return a_.xi > b_.xi;
            });
  return out;
}

struct MomentumMapCheck {
  double defining_residual = 0.0;  // max ||xi_M - xi Pi grad J - c xi D|| at xi = 1
  double casimir_residual = 0.0;
  bool is_casimir = false;
};

/// Checks the conformal-momentum-map identity xi_M = Pi grad(J_xi) + c xi D
/// at xi = 1 over seeded samples, and whether J is a Casimir.
inline MomentumMapCheck verify_momentum_map(const poisson::PoissonStructure& p,
                                            const poisson::ScalingAction& action,
                                            const poisson::ScalarField& j, double c,
                                            int sample_count = 200,
                                            std::uint64_t seed = kDefaultSeed) {
  auto pts = poisson::sample_points(p.dim, sample_count, seed, j.domain);
  MomentumMapCheck out;
  for (const auto& x : pts) {
    Vec gen = action.generator(x);
    Vec pij = p.eval(x) * j.gradient(x);
    Vec d = action.liouville(x);
    Vec r(gen.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = gen[i] - pij[i] - c * d[i];
    out.defining_residual = std::max(out.defining_residual, norm(r));
    out.casimir_residual = std::max(out.casimir_residual, norm(pij));
  }
  out.is_casimir = out.casimir_residual < 1e-10;
  return out;
}

} // namespace lp::cre
