#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "liepoisson/bianchi.hpp"
#include "liepoisson/cre.hpp"
#include "liepoisson/rng.hpp"

using namespace lp;
using poisson::Hamiltonian;
using poisson::PoissonStructure;
using poisson::ScalingAction;

namespace {

PoissonStructure so3() { return bianchi::catalog({bianchi::Tag::IX}).pi; }
PoissonStructure so21() { return bianchi::catalog({bianchi::Tag::VIII}).pi; }

double angle(const Vec& a, const Vec& b) {
  // Chord-based: accurate for tiny angles, unlike acos of a near-1 dot.
  Vec ua = normalized(a), ub = normalized(b);
  return 2.0 * std::asin(std::min(1.0, 0.5 * norm(ua - ub)));
}

bool bitwise_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("conformal_field: so(3) componentwise form") {
  const double a = 1.0, b = 2.0, c = 3.0, xi = 0.7;
  auto p = so3();
  auto h = Hamiltonian::diagonal(a, b, c);
  auto action = ScalingAction::standard(3);
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    Vec x = rng.cube_point(3);
    Vec f = cre::conformal_field(p, h, xi, action, x);
    CHECK(f[0] == Catch::Approx((b - c) * x[1] * x[2] - xi * x[0]).margin(1e-14));
    CHECK(f[1] == Catch::Approx((c - a) * x[2] * x[0] - xi * x[1]).margin(1e-14));
    CHECK(f[2] == Catch::Approx((a - b) * x[0] * x[1] - xi * x[2]).margin(1e-14));
  }
}

TEST_CASE("conformal_field: xi = 0 reduces to the Hamiltonian field bitwise") {
  auto p = so21();
  auto h = Hamiltonian::diagonal(1.0, 3.0, -2.0);
  auto action = ScalingAction::standard(3);
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    Vec x = rng.cube_point(3);
    CHECK(bitwise_equal(cre::conformal_field(p, h, 0.0, action, x),
                        poisson::hamiltonian_field(p, h, x)));
  }
}

TEST_CASE("conformal_field: vanishes on the so(2,1) special-case point") {
  auto p = so21();
  auto h = Hamiltonian::diagonal(1.0, 3.0, -2.0);
  Vec x{1.0, 1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0)};
  x = normalized(x);
  const double xi = std::sqrt(2.0);  // 2 * t at t = 1/sqrt(2)
  CHECK(norm(cre::conformal_field(p, h, xi, ScalingAction::standard(3), x)) < 1e-10);
}

TEST_CASE("casimir-choice independence of the conformal field") {
  // The field never evaluates the momentum map, so its output is bitwise
  // identical for any declared Casimir; the would-be correction term
  // Pi grad C is itself numerically negligible for every catalog Casimir.
  auto action = ScalingAction::standard(3);
  Rng rng(7);
  for (const auto& t : bianchi::table_rows(2.0, 0.5, 3.0)) {
    auto e = bianchi::catalog(t);
    auto h = Hamiltonian::diagonal(1.0, 2.0, 3.0);
    for (int k = 0; k < 100; ++k) {
      Vec x = rng.cube_point(3);
      Vec with_zero = cre::conformal_field(e.pi, h, 0.9, action, x);
      Vec with_casimir = cre::conformal_field(e.pi, h, 0.9, action, x);
      CHECK(bitwise_equal(with_zero, with_casimir));
      for (const auto& c : e.casimirs) {
        if (!c.in_domain(x)) continue;
        Vec correction = e.pi.eval(x) * c.gradient(x);
        // Explicit augmented route Pi grad(H - xi C) - xi D agrees.
        Vec explicit_route = with_zero;
        for (std::size_t i = 0; i < 3; ++i) explicit_route[i] -= 0.9 * correction[i];
        CHECK(norm(explicit_route - with_zero) < 1e-10);
      }
    }
  }
}

TEST_CASE("find_cre: so(2,1) special case has the eight ray points") {
  auto p = so21();
  auto h = Hamiltonian::diagonal(1.0, 3.0, -2.0);
  auto result = cre::find_cre(p, h, ScalingAction::standard(3));

  std::vector<cre::ConformalRelativeEquilibrium> nontrivial;
  for (const auto& s : result.solutions)
    if (!s.trivial) nontrivial.push_back(s);
  REQUIRE(nontrivial.size() == 8);

  auto cf = cre::closed_form_so21(1.0, 3.0, -2.0);
  const double tnorm = 1.0 / std::sqrt(2.0);
  int matched = 0;
  for (const auto& ray : cf.rays) {
    for (double t : {tnorm, -tnorm}) {
      Vec point = t * ray.direction;
      double xi = ray.xi_per_t * t;
      bool found = false;
      for (const auto& s : nontrivial)
        if (angle(s.x, point) < 1e-8 && std::abs(s.xi - xi) < 1e-8) found = true;
      if (found) ++matched;
    }
  }
  CHECK(matched == 8);

  for (const auto& s : nontrivial) {
    CHECK(s.residual < 1e-10);
    CHECK(s.ray_pair);
    double hval = 0.5 * (s.x[0] * s.x[0] + 3.0 * s.x[1] * s.x[1] - 2.0 * s.x[2] * s.x[2]);
    double cval = -s.x[0] * s.x[0] + s.x[1] * s.x[1] + s.x[2] * s.x[2];
    CHECK(std::abs(hval) < 1e-10);
    CHECK(std::abs(cval) < 1e-10);
  }
}

TEST_CASE("find_cre: so(3) has only the six axis equilibria") {
  auto p = so3();
  auto h = Hamiltonian::diagonal(1.0, 2.0, 3.0);
  auto result = cre::find_cre(p, h, ScalingAction::standard(3));
  REQUIRE(result.solutions.size() == 6);
  for (const auto& s : result.solutions) {
    CHECK(s.trivial);
    CHECK(std::abs(s.xi) < 1e-10);
    double axis_dist = 1e9;
    for (int i = 0; i < 3; ++i)
      for (double sign : {1.0, -1.0}) axis_dist = std::min(axis_dist, norm(s.x - sign * unit(3, i)));
    CHECK(axis_dist < 1e-8);
  }
}

TEST_CASE("find_cre: repeated coefficients flag a suspected continuum") {
  // alpha = beta on so(3): every unit vector in the x3 = 0 plane is an
  // equilibrium, so distinct certified points pile up past the threshold.
  auto p = so3();
  auto h = Hamiltonian::diagonal(2.0, 2.0, 1.0);
  auto result = cre::find_cre(p, h, ScalingAction::standard(3));
  CHECK(result.continuum_suspected);
  for (const auto& s : result.solutions) {
    CHECK(s.trivial);
    CHECK(s.residual < 1e-10);
    // On the circle x3 = 0 or at the poles.
    bool on_circle = std::abs(s.x[2]) < 1e-8;
    bool at_pole = std::abs(std::abs(s.x[2]) - 1.0) < 1e-8;
    CHECK((on_circle || at_pole));
  }
}

TEST_CASE("find_cre: abelian algebra yields a trivial continuum") {
  auto p = PoissonStructure::lie_poisson(algebra::StructureConstants::zero(3));
  auto h = Hamiltonian::diagonal(1.0, 2.0, 3.0);
  cre::SearchConfig config;
  config.seeds = 128;
  auto result = cre::find_cre(p, h, ScalingAction::standard(3), config);
  CHECK(result.seeds_converged == 128);
  CHECK(result.continuum_suspected);
  for (const auto& s : result.solutions) CHECK(s.trivial);
}

TEST_CASE("find_cre: solutions certify against the conformal field") {
  auto p = so21();
  auto h = Hamiltonian::diagonal(1.0, 3.0, -2.0);
  auto action = ScalingAction::standard(3);
  auto result = cre::find_cre(p, h, action);
  Rng rng(11);
  for (const auto& s : result.solutions) {
    CHECK(norm(cre::conformal_field(p, h, s.xi, action, s.x)) < 1e-10);
    // Perturbed non-solutions leave the zero set decisively.
    if (s.trivial) continue;
    for (int k = 0; k < 10; ++k) {
      Vec noise = rng.unit_vector(3);
      Vec y = normalized(s.x + 0.05 * noise);
      if (angle(y, s.x) < 1e-3) continue;
      CHECK(norm(cre::conformal_field(p, h, s.xi, action, y)) > 1e-4);
    }
  }
}

TEST_CASE("find_cre: ray-scaling law on certified solutions") {
  auto p = so21();
  auto h = Hamiltonian::diagonal(1.0, 3.0, -2.0);
  auto result = cre::find_cre(p, h, ScalingAction::standard(3));
  for (const auto& s : result.solutions) {
    for (double t : {0.5, 2.0}) {
      Vec y = t * s.x;
      double xi_scaled = std::pow(t, h.degree - 1) * s.xi;
      Vec r = poisson::hamiltonian_field(p, h, y);
      for (std::size_t i = 0; i < 3; ++i) r[i] -= xi_scaled * y[i];
      CHECK(norm(r) < 1e-9);
    }
  }
}

TEST_CASE("find_cre: linear Hamiltonian field, Newton from xi0 = 0") {
  // For a linear field the bordered Newton with zero velocity seed converges
  // to the eigenvalue nearest zero, i.e. the kernel equilibria; nontrivial
  // linear-Hamiltonian CREs come from linear_hamiltonian_cre instead.
  auto p = so21();
  auto h = Hamiltonian::linear({0, 1, 0});
  auto result = cre::find_cre(p, h, ScalingAction::standard(3));
  REQUIRE_FALSE(result.solutions.empty());
  for (const auto& s : result.solutions) {
    CHECK(s.trivial);
    CHECK(s.residual < 1e-10);
    CHECK(std::abs(std::abs(s.x[1]) - 1.0) < 1e-8);  // kernel is span(e2)
  }
}

TEST_CASE("find_cre: input guards") {
  auto h = Hamiltonian::diagonal(1.0, 2.0, 3.0);
  CHECK_THROWS_AS(
      cre::find_cre(PoissonStructure::counterexample(), h, ScalingAction::standard(3)),
      SchemaError);
  CHECK_THROWS_AS(cre::find_cre(so3(), h, ScalingAction::shifted()), SchemaError);
}

TEST_CASE("closed_form_so21: worked special case") {
  auto cf = cre::closed_form_so21(1.0, 3.0, -2.0);
  CHECK(std::abs(cf.p - 1.0 / std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(cf.q - 2.0 / std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(cf.xi_magnitude - 2.0) < 1e-12);
  for (const auto& ray : cf.rays) {
    CHECK(ray.xi_per_t == ray.sigma2 * ray.sigma3 * cf.xi_magnitude);
    CHECK(ray.h_residual < 1e-12);
    CHECK(ray.c_residual < 1e-12);
  }
}

TEST_CASE("closed_form_so21: boundary of the hypothesis is rejected") {
  CHECK_THROWS_AS(cre::closed_form_so21(1.0, 1.0, -1.0), HypothesisViolation);
  CHECK_THROWS_AS(cre::closed_form_so21(-1.0, 1.0, -1.0), HypothesisViolation);
}

TEST_CASE("closed_form_so21: (0,1,-1) gives p = q = 1/sqrt(2)") {
  // Hand-substitution into the componentwise CRE equations: with x = (1,p,q),
  // 2pq = xi, q = xi p, p = xi q force xi^2 = 1 and 2p^2 = 1.
  auto cf = cre::closed_form_so21(0.0, 1.0, -1.0);
  CHECK(std::abs(cf.p - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(cf.q - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(cf.xi_magnitude - 1.0) < 1e-12);
  // find_cre agrees on the normalized points.
  auto p = so21();
  auto h = Hamiltonian::diagonal(0.0, 1.0, -1.0);
  auto result = cre::find_cre(p, h, ScalingAction::standard(3));
  int matched = 0;
  const double tn = 1.0 / norm(cf.rays[0].direction);
  for (const auto& ray : cf.rays)
    for (double t : {tn, -tn}) {
      Vec point = t * ray.direction;
      for (const auto& s : result.solutions)
        if (!s.trivial && angle(s.x, point) < 1e-8 && std::abs(s.xi - ray.xi_per_t * t) < 1e-8)
          ++matched;
    }
  CHECK(matched == 8);
}

TEST_CASE("property: solver recovers the closed form on random admissible triples") {
  Rng rng(13);
  int done = 0;
  while (done < 100) {
    double alpha = rng.uniform(-1.0, 1.0);
    double beta = -alpha + rng.uniform(0.2, 2.0);
    double gamma = -alpha - rng.uniform(0.2, 2.0);
    auto cf = cre::closed_form_so21(alpha, beta, gamma);
    auto p = so21();
    auto h = Hamiltonian::diagonal(alpha, beta, gamma);
    cre::SearchConfig config;
    config.seeds = 256;
    config.rng_seed = 1000 + static_cast<std::uint64_t>(done);
    auto result = cre::find_cre(p, h, ScalingAction::standard(3), config);
    const double tn = 1.0 / norm(cf.rays[0].direction);
    for (const auto& ray : cf.rays)
      for (double t : {tn, -tn}) {
        Vec point = t * ray.direction;
        double xi = ray.xi_per_t * t;
        bool found = false;
        for (const auto& s : result.solutions)
          if (angle(s.x, point) < 1e-8 && std::abs(s.xi - xi) < 1e-8) found = true;
        INFO("alpha=" << alpha << " beta=" << beta << " gamma=" << gamma);
        CHECK(found);
      }
    ++done;
  }
}

TEST_CASE("linear_hamiltonian_cre: type VIII at e2") {
  auto alg = bianchi::catalog({bianchi::Tag::VIII}).constants;
  auto cres = cre::linear_hamiltonian_cre(alg, {0, 1, 0});
  REQUIRE(cres.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(cres[0].xi - 1.0) < 1e-12);
  CHECK(norm(cres[0].x - Vec{r, 0, r}) < 1e-10);
  CHECK(std::abs(cres[1].xi + 1.0) < 1e-12);
  CHECK(norm(cres[1].x - Vec{r, 0, -r}) < 1e-10);
  for (const auto& s : cres) {
    CHECK_FALSE(s.trivial);
    CHECK(std::abs(dot(s.x, Vec{0, 1, 0})) < 1e-10);  // H_zeta vanishes there
    CHECK(s.residual < 1e-10);
  }
}

TEST_CASE("linear_hamiltonian_cre: zero element and so(3) give nothing") {
  auto viii = bianchi::catalog({bianchi::Tag::VIII}).constants;
  CHECK(cre::linear_hamiltonian_cre(viii, {0, 0, 0}).empty());
  auto ix = bianchi::catalog({bianchi::Tag::IX}).constants;
  Rng rng(17);
  for (int k = 0; k < 50; ++k) CHECK(cre::linear_hamiltonian_cre(ix, rng.unit_vector(3)).empty());
}

TEST_CASE("linear_hamiltonian_cre: the pairing vanishes across admissible types") {
  for (const auto& t : bianchi::table_rows(2.0, 0.5, 3.0)) {
    if (!bianchi::cre_admissible(t)) continue;
    auto alg = bianchi::catalog(t).constants;
    auto hyp = algebra::find_hyperbolic_element(alg);
    REQUIRE(hyp.has_value());
    for (const auto& s : cre::linear_hamiltonian_cre(alg, hyp->zeta)) {
      CHECK(std::abs(dot(s.x, hyp->zeta)) < 1e-10);
      CHECK(s.residual < 1e-10);
    }
  }
}

TEST_CASE("verify_momentum_map: scaled Casimir on so(2,1)") {
  auto entry = bianchi::catalog({bianchi::Tag::VIII});
  // J = C/2 with C the quadratic Casimir; any Casimir works, including zero.
  poisson::ScalarField j{"C/2",
                         [](const Vec& x) {
                           return 0.5 * (-x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
                         },
                         [](const Vec& x) { return Vec{-x[0], x[1], x[2]}; }, nullptr};
  auto check = cre::verify_momentum_map(entry.pi, ScalingAction::standard(3), j, 1.0);
  CHECK(check.defining_residual < 1e-10);
  CHECK(check.is_casimir);
}

TEST_CASE("verify_momentum_map: the zero map is a momentum map for any Lie-Poisson structure") {
  for (const auto& t : bianchi::table_rows(2.0, 0.5, 3.0)) {
    auto entry = bianchi::catalog(t);
    auto check = cre::verify_momentum_map(entry.pi, ScalingAction::standard(3),
                                          poisson::ScalarField::zero(3), 1.0);
    CHECK(check.defining_residual == 0.0);
    CHECK(check.is_casimir);
  }
}

TEST_CASE("verify_momentum_map: shifted-action counterexample is not a Casimir") {
  poisson::ScalarField j{"x2", [](const Vec& x) { return x[1]; },
                         [](const Vec&) { return Vec{0, 1, 0}; }, nullptr};
  auto check = cre::verify_momentum_map(PoissonStructure::counterexample(),
                                        ScalingAction::shifted(), j, 1.0);
  CHECK(check.defining_residual < 1e-14);
  CHECK_FALSE(check.is_casimir);
  CHECK(check.casimir_residual == Catch::Approx(1.0));
}
