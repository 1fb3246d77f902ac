#pragma once

// Finite-dimensional real Lie algebras given by structure constants, the
// adjoint/coadjoint operators they induce on the dual, spectra of those
// operators, and the hyperbolic-element search.

#include <array>
#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "liepoisson/errors.hpp"
#include "liepoisson/linalg.hpp"
#include "liepoisson/rng.hpp"
#include "liepoisson/roots.hpp"

namespace lp::algebra {

inline constexpr int kMaxDim = 8;

// Eigenvalue acceptance thresholds for hyperbolicity. Realness is an open
// condition and catalog eigenvalues are O(1), so the separation is wide.
inline constexpr double kEpsReal = 1e-6;
inline constexpr double kEpsImag = 1e-9;

inline constexpr double kAntisymmetryTol = 1e-12;
inline constexpr double kJacobiTol = 1e-10;

/// Structure constants c^k_{ij} of a real Lie algebra, [e_i, e_j] = c^k_{ij} e_k.
/// Antisymmetry in (i,j) is exact after construction; the Jacobi residual is
/// validated against kJacobiTol and kept for inspection.
class StructureConstants {
public:
  /// Validates and stores a dense n*n*n coefficient array, index order
  /// c[k][i][j] with k the output component. Throws AntisymmetryViolation or
  /// JacobiViolation; the latter means the input is not a Lie algebra.
  static StructureConstants from_array(const std::vector<double>& c, int dim) {
    if (dim < 1 || dim > kMaxDim) throw SchemaError("dim must be in 1..8");
    const auto n = static_cast<std::size_t>(dim);
    if (c.size() != n * n * n) throw SchemaError("coefficient array must have dim^3 entries");
    for (double v : c)
      if (!std::isfinite(v)) throw SchemaError("coefficient array has non-finite entries");

    double defect = 0.0;
    for (int k = 0; k < dim; ++k)
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
          defect = std::max(defect, std::abs(c[idx(dim, k, i, j)] + c[idx(dim, k, j, i)]));
    if (defect > kAntisymmetryTol) {
      std::ostringstream os;
      os << "antisymmetry defect " << defect << " exceeds " << kAntisymmetryTol;
      throw AntisymmetryViolation(os.str());
    }

    StructureConstants out;
    out.dim_ = dim;
    out.c_.assign(n * n * n, 0.0);
    // Exact antisymmetrization: copy the i<j triangle, mirror with a sign.
    for (int k = 0; k < dim; ++k)
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
          double v = c[idx(dim, k, i, j)];
          out.c_[idx(dim, k, i, j)] = v;
          out.c_[idx(dim, k, j, i)] = -v;
        }

    out.jacobi_residual_ = out.compute_jacobi_residual();
    if (out.jacobi_residual_ > kJacobiTol) {
      std::ostringstream os;
      os << "Jacobi residual " << out.jacobi_residual_ << " exceeds " << kJacobiTol
         << "; not a Lie algebra";
      throw JacobiViolation(os.str());
    }
    return out;
  }

  static StructureConstants zero(int dim) {
    std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
    return from_array(c, dim);
  }

  int dim() const { return dim_; }
  double c(int k, int i, int j) const { return c_[idx(dim_, k, i, j)]; }
  double jacobi_residual() const { return jacobi_residual_; }
  const std::vector<double>& raw() const { return c_; }

  bool operator==(const StructureConstants& o) const {
    return dim_ == o.dim_ && c_ == o.c_;
  }

private:
  static std::size_t idx(int n, int k, int i, int j) {
    return (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i)) * n +
           static_cast<std::size_t>(j);
  }

  // max over (i,j,k,l) of |sum_m c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj}|
  double compute_jacobi_residual() const {
    double r = 0.0;
    const int n = dim_;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (int m = 0; m < n; ++m)
              s += c(m, i, j) * c(l, m, k) + c(m, j, k) * c(l, m, i) + c(m, k, i) * c(l, m, j);
            r = std::max(r, std::abs(s));
          }
    return r;
  }

  int dim_ = 0;
  std::vector<double> c_;
  double jacobi_residual_ = 0.0;
};

/// Ellis-MacCallum data (m, a) for a 3-dimensional algebra:
/// c^i_{jk} = eps_{jks} m^{si} + delta^i_k a_j - delta^i_j a_k.
struct EllisMacCallumData {
  Mat m;  // 3x3, exactly symmetric
  Vec a;  // 3-covector

  EllisMacCallumData(Mat m_in, Vec a_in) : m(std::move(m_in)), a(std::move(a_in)) {
    if (m.rows != 3 || m.cols != 3 || a.size() != 3)
      throw SchemaError("Ellis-MacCallum data is a 3x3 matrix and a 3-covector");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (m(i, j) != m(j, i)) throw SchemaError("m must be exactly symmetric");
  }

  bool class_a() const { return a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0; }
  char klass() const { return class_a() ? 'A' : 'B'; }
};

inline double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((j - i) * (k - i) * (k - j) > 0) ? 1.0 : -1.0;
}

/// Expands (m, a) into structure constants. The construction validates the
/// Jacobi identity, so incompatible data (m a != 0) raises JacobiViolation.
inline StructureConstants from_ellis_maccallum(const EllisMacCallumData& d) {
  std::vector<double> c(27, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double v = 0.0;
        for (int s = 0; s < 3; ++s) v += levi_civita(j, k, s) * d.m(s, i);
        if (i == k) v += d.a[static_cast<std::size_t>(j)];
        if (i == j) v -= d.a[static_cast<std::size_t>(k)];
        c[(static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(j)) * 3 +
          static_cast<std::size_t>(k)] = v;
      }
  return StructureConstants::from_array(c, 3);
}

/// Matrix of the right-bracket action eta -> [eta, zeta]. This is the
/// transpose of coadjoint_matrix, so the two operators share one
/// characteristic polynomial; a nonzero real eigenvalue here is exactly the
/// hyperbolicity condition on zeta.
inline Mat adjoint_matrix(const StructureConstants& alg, const Vec& zeta) {
  const int n = alg.dim();
  Mat A(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += alg.c(k, i, j) * zeta[static_cast<std::size_t>(j)];
      A(k, i) = s;
    }
  return A;
}

/// Matrix of x -> Pi(x) zeta, where Pi_{ij}(x) = c^k_{ij} x_k. Its real
/// eigenpairs are conformal relative equilibria of the linear Hamiltonian
/// <x, zeta> with the eigenvalue as velocity.
inline Mat coadjoint_matrix(const StructureConstants& alg, const Vec& zeta) {
  const int n = alg.dim();
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += alg.c(k, i, j) * zeta[static_cast<std::size_t>(j)];
      A(i, k) = s;
    }
  return A;
}

struct SpectrumReport {
  Mat operator_matrix;
  std::vector<Complex> eigenvalues;        // length n, with multiplicity
  std::optional<double> max_real_nonzero;  // |Im| < kEpsImag, |Re| > kEpsReal
  double residual = 0.0;                   // char-poly residual, relative
};

/// All eigenvalues of a real n x n matrix (n <= 8). n <= 3 goes through the
/// closed-form quadratic/cubic path; larger n uses the characteristic
/// polynomial and Durand-Kerner iteration. Each eigenvalue is checked against
/// the characteristic polynomial; NumericalFailure above 1e-7 relative.
inline SpectrumReport spectrum(const Mat& A) {
  const int n = A.rows;
  if (n < 1 || n > kMaxDim || A.cols != n) throw SchemaError("spectrum needs square n<=8");
  for (double v : A.a)
    if (!std::isfinite(v)) throw SchemaError("matrix has non-finite entries");

  SpectrumReport rep;
  rep.operator_matrix = A;

  std::vector<double> coeffs;  // monic, low-to-high
  if (n == 1) {
    rep.eigenvalues = {Complex(A(0, 0), 0.0)};
    coeffs = {-A(0, 0)};
  } else if (n == 2) {
    double tr = A(0, 0) + A(1, 1);
    double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    auto r = solve_quadratic_monic(-tr, det);
    rep.eigenvalues = {r[0], r[1]};
    coeffs = {det, -tr};
  } else if (n == 3) {
    double tr = A(0, 0) + A(1, 1) + A(2, 2);
    double m01 = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    double m02 = A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0);
    double m12 = A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
    double det = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
                 A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                 A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    double c2 = -tr, c1 = m01 + m02 + m12, c0 = -det;
    auto r = solve_cubic_monic(c2, c1, c0);
    rep.eigenvalues = {r[0], r[1], r[2]};
    coeffs = {c0, c1, c2};
  } else {
    coeffs = characteristic_polynomial(A);
    rep.eigenvalues = durand_kerner(coeffs);
  }

  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });

  double scale = std::max(1.0, frobenius_norm(A));
  double scale_n = std::pow(scale, n);
  for (const auto& z : rep.eigenvalues)
    rep.residual = std::max(rep.residual, std::abs(poly_eval(coeffs, z)) / scale_n);
  if (rep.residual > 1e-7) {
    std::ostringstream os;
    os << "eigenvalue residual " << rep.residual << " exceeds 1e-7";
    throw NumericalFailure(os.str());
  }

  double best = 0.0;
  for (const auto& z : rep.eigenvalues)
    if (std::abs(z.imag()) < kEpsImag && std::abs(z.real()) > kEpsReal) {
      if (std::abs(z.real()) > std::abs(best) ||
          (std::abs(z.real()) == std::abs(best) && z.real() > best))
        best = z.real();
    }
  if (best != 0.0) rep.max_real_nonzero = best;
  return rep;
}

/// Unit eigenvector for a real eigenvalue, from the nullspace of A - lambda I.
/// The sign is fixed so the largest-magnitude component (first such, on ties)
/// is positive.
inline Vec real_eigenvector(const Mat& A, double lambda) {
  const int n = A.rows;
  Mat S = A;
  for (int i = 0; i < n; ++i) S(i, i) -= lambda;
  Vec v = nullspace_vector(S);
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v[static_cast<std::size_t>(i)]) > std::abs(v[static_cast<std::size_t>(imax)]) + 1e-12)
      imax = i;
  if (v[static_cast<std::size_t>(imax)] < 0.0) v = -v;
  return v;
}

struct HyperbolicElement {
  Vec zeta;
  double lambda = 0.0;
};

struct HyperbolicSearchConfig {
  int random_candidates = 256;
  std::uint64_t rng_seed = kDefaultSeed;
  double eps_real = kEpsReal;
  double eps_imag = kEpsImag;
};

/// Looks for zeta whose adjoint operator has a nonzero real eigenvalue.
/// Candidates in order: basis vectors, all +-e_i +- e_j sums, then seeded
/// random unit vectors. Sound but incomplete: a miss on a non-catalog algebra
/// does not prove absence.
inline std::optional<HyperbolicElement> find_hyperbolic_element(
    const StructureConstants& alg, const HyperbolicSearchConfig& config = {}) {
  const int n = alg.dim();
  std::vector<Vec> candidates;
  for (int i = 0; i < n; ++i) candidates.push_back(unit(n, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
          Vec v(static_cast<std::size_t>(n), 0.0);
          v[static_cast<std::size_t>(i)] = si;
          v[static_cast<std::size_t>(j)] = sj;
          candidates.push_back(v);
        }
  Rng rng(config.rng_seed);
  for (int k = 0; k < config.random_candidates; ++k) candidates.push_back(rng.unit_vector(n));

  for (const auto& zeta : candidates) {
    auto rep = spectrum(adjoint_matrix(alg, zeta));
    double best = 0.0;
    for (const auto& z : rep.eigenvalues)
      if (std::abs(z.imag()) < config.eps_imag && std::abs(z.real()) > config.eps_real) {
        if (std::abs(z.real()) > std::abs(best) ||
            (std::abs(z.real()) == std::abs(best) && z.real() > best))
          best = z.real();
      }
    if (best != 0.0) return HyperbolicElement{zeta, best};
  }
  return std::nullopt;
}

} // namespace lp::algebra
