#pragma once

// Polynomial root finding for the small spectra that show up here: a real
// cubic solver (trigonometric Cardano with Newton polish) for the 3x3 case
// and Durand-Kerner iteration for degrees 4..8.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "liepoisson/linalg.hpp"

namespace lp {

using Complex = std::complex<double>;

/// Roots of z^2 + b z + c, cancellation-safe.
inline std::array<Complex, 2> solve_quadratic_monic(double b, double c) {
  double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    double sq = std::sqrt(disc);
    // Avoid subtracting nearly equal quantities.
    double q = (b >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    double r1 = q;
    double r2 = (q != 0.0) ? c / q : -b - q;
    if (r1 > r2) std::swap(r1, r2);
    return {Complex(r1, 0.0), Complex(r2, 0.0)};
  }
  double re = -0.5 * b, im = 0.5 * std::sqrt(-disc);
  return {Complex(re, -im), Complex(re, im)};
}

namespace detail {

inline double cubic_eval(double c2, double c1, double c0, double x) {
  return ((x + c2) * x + c1) * x + c0;
}

inline double cubic_newton_polish(double c2, double c1, double c0, double x) {
  for (int it = 0; it < 8; ++it) {
    double f = cubic_eval(c2, c1, c0, x);
    double df = (3.0 * x + 2.0 * c2) * x + c1;
    if (df == 0.0) break;
    double step = f / df;
    double xn = x - step;
    if (std::abs(cubic_eval(c2, c1, c0, xn)) < std::abs(f))
      x = xn;
    else
      break;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

} // namespace detail

/// Roots of z^3 + c2 z^2 + c1 z + c0. An exactly-zero constant term deflates
/// the zero root first, which keeps integer-coefficient double roots exact.
inline std::array<Complex, 3> solve_cubic_monic(double c2, double c1, double c0) {
  if (c0 == 0.0) {
    auto q = solve_quadratic_monic(c2, c1);
    return {Complex(0.0, 0.0), q[0], q[1]};
  }
  // Depress: z = t - c2/3.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = c0 - c1 * shift + 2.0 * shift * shift * shift;

  std::array<double, 3> realroots{};
  int nreal = 0;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (p == 0.0 && q == 0.0) {
    realroots = {-shift, -shift, -shift};
    nreal = 3;
  } else if (disc >= 0.0) {
    // Three real roots; p < 0 here.
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k)
      realroots[static_cast<std::size_t>(k)] =
          m * std::cos((phi - 2.0 * M_PI * k) / 3.0) - shift;
    nreal = 3;
  } else {
    // One real root via Cardano on the depressed cubic.
    double half_q = 0.5 * q;
    double rad = std::sqrt(half_q * half_q + p * p * p / 27.0);
    double u = std::cbrt(-half_q + (half_q <= 0.0 ? rad : -rad));
    // Pick the branch that avoids cancellation, then recover the partner.
    double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    realroots[0] = u + v - shift;
    nreal = 1;
  }

  for (int k = 0; k < nreal; ++k)
    realroots[static_cast<std::size_t>(k)] =
        detail::cubic_newton_polish(c2, c1, c0, realroots[static_cast<std::size_t>(k)]);

  if (nreal == 3) {
    std::sort(realroots.begin(), realroots.end());
    return {Complex(realroots[0], 0.0), Complex(realroots[1], 0.0), Complex(realroots[2], 0.0)};
  }
  // Deflate the real root; the remaining quadratic is z^2 + b z + c.
  double r = realroots[0];
  double b = c2 + r;
  double c = c1 + r * b;
  auto pair = solve_quadratic_monic(b, c);
  return {Complex(r, 0.0), pair[0], pair[1]};
}

/// Characteristic polynomial coefficients of A via Faddeev-LeVerrier:
/// returns c so that det(zI - A) = z^n + c[n-1] z^(n-1) + ... + c[0].
inline std::vector<double> characteristic_polynomial(const Mat& A) {
  const int n = A.rows;
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  Mat M = Mat::identity(n);
  double coeff = 1.0;
  for (int k = 1; k <= n; ++k) {
    Mat AM = A * M;
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += AM(i, i);
    coeff = -tr / k;
    c[static_cast<std::size_t>(n - k)] = coeff;
    M = AM;
    for (int i = 0; i < n; ++i) M(i, i) += coeff;
  }
  return c;
}

inline Complex poly_eval(const std::vector<double>& c, Complex z) {
  // Monic: z^n + c[n-1] z^(n-1) + ... + c[0].
  Complex v(1.0, 0.0);
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    v = v * z + c[static_cast<std::size_t>(k)];
  return v;
}

/// All roots of a monic polynomial with real coefficients (low-to-high order,
/// degree = c.size()) by Durand-Kerner iteration with Newton polish.
inline std::vector<Complex> durand_kerner(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size());
  double radius = 1.0;
  for (double v : c) radius = std::max(radius, std::abs(v));
  radius = 1.0 + radius;

  std::vector<Complex> z(static_cast<std::size_t>(n));
  Complex w = radius * std::polar(1.0, 0.4);
  Complex rot = std::polar(1.0, 2.0 * M_PI / n + 0.2);
  for (int k = 0; k < n; ++k) {
    z[static_cast<std::size_t>(k)] = w;
    w *= rot;
  }

  for (int it = 0; it < 600; ++it) {
    double moved = 0.0;
    for (int k = 0; k < n; ++k) {
      Complex num = poly_eval(c, z[static_cast<std::size_t>(k)]);
      Complex den(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != k) den *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
      if (den == 0.0) den = Complex(1e-30, 0.0);
      Complex step = num / den;
      z[static_cast<std::size_t>(k)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14 * radius) break;
  }

  // Newton polish; collapse residual imaginary dust onto the real axis.
  std::vector<double> dc(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k)
    dc[static_cast<std::size_t>(k - 1)] = c[static_cast<std::size_t>(k)] * k;
  for (auto& root : z) {
    for (int it = 0; it < 6; ++it) {
      Complex f = poly_eval(c, root);
      Complex dpoly(static_cast<double>(n), 0.0);
      for (int k = n - 2; k >= 0; --k)
        dpoly = dpoly * root + dc[static_cast<std::size_t>(k)];
      if (dpoly == 0.0) break;
      Complex step = f / dpoly;
      if (std::abs(step) > 0.5 * radius) break;
      root -= step;
      if (std::abs(step) < 1e-16 * radius) break;
    }
    if (std::abs(root.imag()) < 1e-13 * std::max(1.0, std::abs(root.real())))
      root = Complex(root.real(), 0.0);
  }
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

} // namespace lp
