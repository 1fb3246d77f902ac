#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "liepoisson/rng.hpp"
#include "liepoisson/roots.hpp"

using namespace lp;

namespace {

// Independent oracle: brute-force evaluation of the monic polynomial.
double cubic_abs(double c2, double c1, double c0, Complex z) {
  return std::abs(((z + c2) * z + c1) * z + c0);
}

std::vector<double> sorted_reals(const std::array<Complex, 3>& roots) {
  std::vector<double> out;
  for (const auto& z : roots) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("quadratic: distinct, double, complex") {
  auto r = solve_quadratic_monic(-5.0, 6.0);  // (z-2)(z-3)
  CHECK(r[0].real() == Catch::Approx(2.0).margin(1e-14));
  CHECK(r[1].real() == Catch::Approx(3.0).margin(1e-14));

  auto d = solve_quadratic_monic(-2.0, 1.0);  // (z-1)^2
  CHECK(d[0] == Complex(1.0, 0.0));
  CHECK(d[1] == Complex(1.0, 0.0));

  auto c = solve_quadratic_monic(0.0, 1.0);  // z^2 + 1
  CHECK(c[0].imag() == Catch::Approx(-1.0));
  CHECK(c[1].imag() == Catch::Approx(1.0));
  CHECK(c[0].real() == 0.0);
}

TEST_CASE("cubic: three distinct real roots") {
  // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
  auto r = solve_cubic_monic(-6.0, 11.0, -6.0);
  auto v = sorted_reals(r);
  CHECK(v[0] == Catch::Approx(1.0).margin(1e-13));
  CHECK(v[1] == Catch::Approx(2.0).margin(1e-13));
  CHECK(v[2] == Catch::Approx(3.0).margin(1e-13));
}

TEST_CASE("cubic: exact zero root deflation keeps double roots exact") {
  // z (z-1)^2 = z^3 - 2z^2 + z
  auto r = solve_cubic_monic(-2.0, 1.0, 0.0);
  auto v = sorted_reals(r);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 1.0);
  CHECK(v[2] == 1.0);
}

TEST_CASE("cubic: golden-ratio pair from z(z^2-3z+1)") {
  // Quadratic-formula oracle for z^2 - 3z + 1, cross-checked by direct
  // polynomial evaluation.
  const double lo = (3.0 - std::sqrt(5.0)) / 2.0;
  const double hi = (3.0 + std::sqrt(5.0)) / 2.0;
  REQUIRE(cubic_abs(-3.0, 1.0, 0.0, Complex(lo, 0)) < 1e-14);
  REQUIRE(cubic_abs(-3.0, 1.0, 0.0, Complex(hi, 0)) < 1e-14);

  auto r = solve_cubic_monic(-3.0, 1.0, 0.0);
  auto v = sorted_reals(r);
  CHECK(v[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(v[1] == Catch::Approx(lo).margin(1e-14));
  CHECK(v[2] == Catch::Approx(hi).margin(1e-14));
}

TEST_CASE("cubic: complex pair") {
  // z^3 + z = z(z^2 + 1)
  auto r = solve_cubic_monic(0.0, 1.0, 0.0);
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
  CHECK(r[0] == Complex(0.0, -1.0));
  CHECK(r[1] == Complex(0.0, 0.0));
  CHECK(r[2] == Complex(0.0, 1.0));
}

TEST_CASE("cubic: triple root") {
  // (z+2)^3 = z^3 + 6z^2 + 12z + 8
  auto r = solve_cubic_monic(6.0, 12.0, 8.0);
  for (const auto& z : r) {
    CHECK(std::abs(z.imag()) < 1e-7);
    CHECK(z.real() == Catch::Approx(-2.0).margin(1e-5));  // triple roots wear sqrt3(eps)
  }
}

TEST_CASE("cubic property: reconstructed from random roots") {
  Rng rng(900);
  for (int trial = 0; trial < 2000; ++trial) {
    double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-3, 3);
    double c2 = -(a + b + c);
    double c1 = a * b + a * c + b * c;
    double c0 = -a * b * c;
    auto r = solve_cubic_monic(c2, c1, c0);
    auto got = sorted_reals(r);
    std::vector<double> want{a, b, c};
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(r[static_cast<std::size_t>(i)].imag()) < 1e-6);
      CHECK(got[static_cast<std::size_t>(i)] ==
            Catch::Approx(want[static_cast<std::size_t>(i)]).margin(2e-7));
      CHECK(cubic_abs(c2, c1, c0, r[static_cast<std::size_t>(i)]) < 1e-10);
    }
  }
}

TEST_CASE("cubic stress: clustered and scaled roots stay residual-clean") {
  Rng rng(4242);
  for (int trial = 0; trial < 3000; ++trial) {
    double a = rng.uniform(-2, 2);
    double b = a + rng.uniform(0, 1) * std::pow(10.0, rng.uniform(-10, 0));  // near a
    double c = rng.uniform(-2, 2);
    double s = std::pow(10.0, rng.uniform(-3, 3));
    a *= s;
    b *= s;
    c *= s;
    double c2 = -(a + b + c), c1 = a * b + a * c + b * c, c0 = -a * b * c;
    auto r = solve_cubic_monic(c2, c1, c0);
    double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    for (const auto& z : r)
      CHECK(cubic_abs(c2, c1, c0, z) < 1e-9 * scale * scale * scale);
  }
}

TEST_CASE("durand-kerner: degree five with known roots") {
  // (z-1)(z+1)(z-2)(z+3)(z-0.5)
  std::vector<double> roots{1.0, -1.0, 2.0, -3.0, 0.5};
  std::vector<double> c{1.0};  // high-to-low scratch
  // Multiply out (z - r) factors; keep coefficients low-to-high at the end.
  std::vector<double> poly{1.0};
  for (double r : roots) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= r * poly[i];
    }
    poly = next;
  }
  // poly is low-to-high with leading 1; durand_kerner takes the n lowest.
  std::vector<double> coeffs(poly.begin(), poly.end() - 1);
  auto z = durand_kerner(coeffs);
  std::sort(roots.begin(), roots.end());
  REQUIRE(z.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(z[i].imag()) < 1e-10);
    CHECK(z[i].real() == Catch::Approx(roots[i]).margin(1e-9));
  }
  (void)c;
}

TEST_CASE("characteristic polynomial via Faddeev-LeVerrier") {
  Mat a(4, 4, {2, 0, 0, 0, 0, -1, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0.5});
  auto c = characteristic_polynomial(a);
  // det(zI - A) = (z-2)(z+1)(z-3)(z-0.5)
  auto z = durand_kerner(c);
  std::vector<double> want{-1.0, 0.5, 2.0, 3.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(z[i].real() == Catch::Approx(want[i]).margin(1e-10));
}
