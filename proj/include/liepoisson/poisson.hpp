#pragma once

// Poisson structures on R^n, Hamiltonians, scaling actions, and the numerical
// verification of the conformal-invariance / exactness / Casimir identities.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liepoisson/algebra.hpp"
#include "liepoisson/errors.hpp"
#include "liepoisson/linalg.hpp"
#include "liepoisson/rng.hpp"

namespace lp::poisson {

/// Either the linear (Lie-Poisson) tensor Pi_{ij}(x) = c^k_{ij} x_k of an
/// algebra, or a constant antisymmetric matrix.
struct PoissonStructure {
  enum class Kind { Linear, Constant };

  Kind kind = Kind::Linear;
  int dim = 0;
  std::optional<algebra::StructureConstants> constants;  // Linear
  Mat matrix;                                            // Constant

  static PoissonStructure lie_poisson(algebra::StructureConstants alg) {
    PoissonStructure p;
    p.kind = Kind::Linear;
    p.dim = alg.dim();
    p.constants = std::move(alg);
    return p;
  }

  static PoissonStructure constant(Mat m) {
    if (m.rows != m.cols) throw SchemaError("constant Poisson matrix must be square");
    for (int i = 0; i < m.rows; ++i)
      for (int j = i; j < m.cols; ++j)
        if (m(i, j) != -m(j, i)) throw SchemaError("constant Poisson matrix must be antisymmetric");
    PoissonStructure p;
    p.kind = Kind::Constant;
    p.dim = m.rows;
    p.matrix = std::move(m);
    return p;
  }

  /// Pi from the degenerate counterexample: rows (0,1,0; -1,0,0; 0,0,0).
  static PoissonStructure counterexample() {
    return constant(Mat(3, 3, {0, 1, 0, -1, 0, 0, 0, 0, 0}));
  }

  Mat eval(const Vec& x) const {
    if (kind == Kind::Constant) return matrix;
    const auto& alg = *constants;
    Mat p(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        double s = 0.0;
        for (int k = 0; k < dim; ++k) s += alg.c(k, i, j) * x[static_cast<std::size_t>(k)];
        p(i, j) = s;
        p(j, i) = -s;
      }
    return p;
  }
};

/// Quadratic (H = x'qx/2, degree 2) or linear (H = <x, zeta>, degree 1)
/// Hamiltonian with analytic gradient.
struct Hamiltonian {
  enum class Kind { Quadratic, Linear };

  Kind kind = Kind::Quadratic;
  Mat q;     // Quadratic: symmetric
  Vec zeta;  // Linear
  int degree = 2;

  static Hamiltonian quadratic(Mat q_in) {
    if (q_in.rows != q_in.cols) throw SchemaError("quadratic form must be square");
    for (int i = 0; i < q_in.rows; ++i)
      for (int j = i; j < q_in.cols; ++j)
        if (q_in(i, j) != q_in(j, i)) throw SchemaError("quadratic form must be symmetric");
    Hamiltonian h;
    h.kind = Kind::Quadratic;
    h.q = std::move(q_in);
    h.degree = 2;
    return h;
  }

  static Hamiltonian diagonal(double a, double b, double c) {
    return quadratic(Mat::diag({a, b, c}));
  }

  static Hamiltonian linear(Vec zeta_in) {
    Hamiltonian h;
    h.kind = Kind::Linear;
    h.zeta = std::move(zeta_in);
    h.degree = 1;
    return h;
  }

  int dim() const { return kind == Kind::Quadratic ? q.rows : static_cast<int>(zeta.size()); }

  double value(const Vec& x) const {
    if (kind == Kind::Linear) return dot(x, zeta);
    return 0.5 * dot(x, q * x);
  }

  Vec gradient(const Vec& x) const {
    if (kind == Kind::Linear) return zeta;
    return q * x;
  }
};

/// Multiplicative R+ actions used here. `generator` is d/dt Phi_{e^t}(x) at
/// t=0; `liouville` is the field D with L_D Pi = -Pi. They coincide for the
/// standard scaling but not for the shifted one, whose generator is
/// D + (1,0,0).
struct ScalingAction {
  enum class Kind { Standard, Shifted };

  Kind kind = Kind::Standard;
  int dim = 3;
  double degree_c = 1.0;

  static ScalingAction standard(int dim) { return ScalingAction{Kind::Standard, dim, 1.0}; }
  static ScalingAction shifted() { return ScalingAction{Kind::Shifted, 3, 1.0}; }

  Vec map(double s, const Vec& x) const {
    if (kind == Kind::Standard) return s * x;
    return {s * (x[0] + 1.0) - 1.0, x[1], s * x[2]};
  }

  Mat jacobian(double s, const Vec& /*x*/) const {
    if (kind == Kind::Standard) return s * Mat::identity(dim);
    return Mat::diag({s, 1.0, s});
  }

  Vec generator(const Vec& x) const {
    if (kind == Kind::Standard) return x;
    return {x[0] + 1.0, 0.0, x[2]};
  }

  Vec liouville(const Vec& x) const {
    if (kind == Kind::Standard) return x;
    return {x[0], 0.0, x[2]};
  }

  /// Jacobian of the Liouville field (constant for both variants).
  Mat liouville_jacobian() const {
    if (kind == Kind::Standard) return Mat::identity(dim);
    return Mat::diag({1.0, 0.0, 1.0});
  }
};

/// A scalar function with optional analytic gradient and domain guard.
/// Evaluation outside the domain raises DomainViolation instead of feeding
/// singular expressions.
struct ScalarField {
  std::string name;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;       // nullable: central differences
  std::function<bool(const Vec&)> domain;    // nullable: everywhere

  static ScalarField zero(int n) {
    return {"0", [](const Vec&) { return 0.0; },
            [n](const Vec&) { return Vec(static_cast<std::size_t>(n), 0.0); }, nullptr};
  }

  bool in_domain(const Vec& x) const { return !domain || domain(x); }

  double operator()(const Vec& x) const {
    if (!in_domain(x)) throw DomainViolation("sample outside domain of " + name);
    return value(x);
  }

  bool has_analytic_gradient() const { return static_cast<bool>(grad); }

  Vec gradient(const Vec& x) const {
    if (!in_domain(x)) throw DomainViolation("sample outside domain of " + name);
    if (grad) return grad(x);
    return fd_gradient(x);
  }

  Vec fd_gradient(const Vec& x) const {
    const double h = 1e-6 * std::max(1.0, norm(x));
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      if (!in_domain(xp) || !in_domain(xm))
        throw DomainViolation("finite-difference stencil leaves domain of " + name);
      g[i] = (value(xp) - value(xm)) / (2.0 * h);
    }
    return g;
  }
};

/// X_H(x) = Pi(x) grad H(x).
inline Vec hamiltonian_field(const PoissonStructure& p, const Hamiltonian& h, const Vec& x) {
  return p.eval(x) * h.gradient(x);
}

struct CheckReport {
  std::string check;
  double residual = 0.0;
  std::string path;  // "analytic" or "finite-difference"
  int samples = 0;
};

/// Seeded samples from the cube [-2,2]^n; with a domain guard, resamples up
/// to 100 times per point.
inline std::vector<Vec> sample_points(int dim, int count, std::uint64_t seed,
                                      const std::function<bool(const Vec&)>& domain = nullptr) {
  Rng rng(seed);
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vec x;
    int attempts = 0;
    do {
      x = rng.cube_point(dim);
      if (++attempts > 100)
        throw DomainViolation("no in-domain sample found in 100 attempts");
    } while (domain && !domain(x));
    pts.push_back(std::move(x));
  }
  return pts;
}

/// max over samples and s of || J Pi(x) J' - s^c Pi(Phi_s(x)) ||_F, the
/// pushforward identity for the bivector under the action.
inline CheckReport check_conformal_poisson(const PoissonStructure& p, const ScalingAction& action,
                                           double c, int sample_count = 100,
                                           const std::vector<double>& s_values = {0.5, 2.0, 10.0},
                                           std::uint64_t seed = kDefaultSeed) {
  auto pts = sample_points(p.dim, sample_count, seed);
  double res = 0.0;
  for (const auto& x : pts)
    for (double s : s_values) {
      Mat j = action.jacobian(s, x);
      Mat lhs = j * p.eval(x) * transpose(j);
      Mat rhs = std::pow(s, c) * p.eval(action.map(s, x));
      res = std::max(res, frobenius_norm(lhs - rhs));
    }
  return {"conformal_poisson", res, "analytic", sample_count};
}

/// max over samples of || L_D Pi + Pi ||_F. Analytic when the Liouville field
/// has a constant Jacobian (both shipped actions); finite differences
/// otherwise.
inline CheckReport check_exactness(const PoissonStructure& p, const ScalingAction& action,
                                   int sample_count = 100, std::uint64_t seed = kDefaultSeed) {
  auto pts = sample_points(p.dim, sample_count, seed);
  const Mat g = action.liouville_jacobian();
  double res = 0.0;
  for (const auto& x : pts) {
    const Vec d = action.liouville(x);
    Mat advect(p.dim, p.dim);
    if (p.kind == PoissonStructure::Kind::Linear) {
      advect = p.eval(d);  // D^k d_k Pi_{ij} = Pi_{ij}(D(x)) for linear Pi
    }
    Mat pi = p.eval(x);
    Mat lie = advect - g * pi - pi * transpose(g);
    res = std::max(res, frobenius_norm(lie + pi));
  }
  return {"exactness", res, "analytic", sample_count};
}

/// max over samples and s of || J(s,x) X_H(x) - s^(c-b) X_H(Phi_s(x)) ||.
inline CheckReport check_field_conformal(const PoissonStructure& p, const Hamiltonian& h,
                                         const ScalingAction& action, double c, double b,
                                         const std::vector<double>& s_values = {0.5, 2.0, 10.0},
                                         int sample_count = 100,
                                         std::uint64_t seed = kDefaultSeed) {
  auto pts = sample_points(p.dim, sample_count, seed);
  double res = 0.0;
  for (const auto& x : pts)
    for (double s : s_values) {
      Vec lhs = action.jacobian(s, x) * hamiltonian_field(p, h, x);
      Vec rhs = std::pow(s, c - b) * hamiltonian_field(p, h, action.map(s, x));
      res = std::max(res, norm(lhs - rhs));
    }
  return {"field_conformal", res, "analytic", sample_count};
}

/// max over the given samples of || Pi(x) grad C(x) ||. DomainViolation if a
/// sample leaves the domain guard of C.
inline double casimir_residual(const PoissonStructure& p, const ScalarField& c,
                               const std::vector<Vec>& samples) {
  double res = 0.0;
  for (const auto& x : samples) res = std::max(res, norm(p.eval(x) * c.gradient(x)));
  return res;
}

inline CheckReport casimir_report(const PoissonStructure& p, const ScalarField& c,
                                  int sample_count = 100, std::uint64_t seed = kDefaultSeed) {
  auto pts = sample_points(p.dim, sample_count, seed, c.domain);
  return {"casimir:" + c.name, casimir_residual(p, c, pts),
          c.has_analytic_gradient() ? "analytic" : "finite-difference", sample_count};
}

} // namespace lp::poisson
