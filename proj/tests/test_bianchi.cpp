#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "liepoisson/bianchi.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/rng.hpp"

using namespace lp;
using bianchi::BianchiType;
using bianchi::Tag;

namespace {

// Expected Pi coefficient tables: entry {i, j, k, coeff} means
// Pi_{ij}(x) contains coeff * x_k (1-based indices as in the table).
struct PiCoeff {
  int i, j, k;
  double coeff;
};

const std::map<std::string, std::vector<PiCoeff>> kExpectedPi = {
    {"I", {}},
    {"II", {{2, 3, 1, 1.0}}},
    {"VI_-1", {{1, 3, 1, 1.0}, {2, 3, 2, -1.0}}},
    {"VII_0", {{1, 3, 2, 1.0}, {2, 3, 1, -1.0}}},
    {"VIII", {{1, 2, 3, 1.0}, {1, 3, 2, -1.0}, {2, 3, 1, -1.0}}},
    {"IX", {{1, 2, 3, 1.0}, {1, 3, 2, -1.0}, {2, 3, 1, 1.0}}},
    {"III", {{1, 3, 1, 1.0}}},
    {"IV", {{1, 3, 1, 1.0}, {2, 3, 1, 1.0}, {2, 3, 2, 1.0}}},
    {"V", {{1, 3, 1, 1.0}, {2, 3, 2, 1.0}}},
};

std::vector<PiCoeff> expected_pi(const BianchiType& t) {
  if (t.tag == Tag::VI_H) return {{1, 3, 1, 1.0}, {2, 3, 2, t.h}};
  if (t.tag == Tag::VII_H) return {{1, 3, 2, 1.0}, {2, 3, 1, -1.0}, {2, 3, 2, t.h}};
  return kExpectedPi.at(t.name());
}

// Coefficient-level comparison: the linear tensor Pi_{ij}(x) = C^k_{ij} x_k
// must match the table entries exactly, coefficient by coefficient.
void check_pi_coefficients(const bianchi::CatalogEntry& e) {
  auto want = expected_pi(e.type);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double expect = 0.0;
        for (const auto& w : want) {
          if (w.i - 1 == i && w.j - 1 == j && w.k - 1 == k) expect += w.coeff;
          if (w.i - 1 == j && w.j - 1 == i && w.k - 1 == k) expect -= w.coeff;
        }
        INFO(e.type.name() << " Pi entry (" << i + 1 << "," << j + 1 << ") coeff of x" << k + 1);
        CHECK(e.constants.c(k, i, j) == expect);
      }
}

const std::vector<BianchiType> kRows = bianchi::table_rows(2.0, 0.5, 3.0);

} // namespace

TEST_CASE("catalog tensors match the table coefficients exactly") {
  for (const auto& t : kRows) check_pi_coefficients(bianchi::catalog(t));
  // Extra parameter values used elsewhere.
  for (double h : {-2.0, 0.5, 2.0}) check_pi_coefficients(bianchi::catalog({Tag::VI_H, h}));
  for (double h : {1.0, 1.9, 2.0, -2.0, -3.0}) check_pi_coefficients(bianchi::catalog({Tag::VII_H, h}));
}

TEST_CASE("catalog row VIII") {
  auto e = bianchi::catalog({Tag::VIII});
  Vec x{1.3, -0.4, 0.9};
  Mat pi = e.pi.eval(x);
  CHECK(pi(0, 1) == x[2]);
  CHECK(pi(0, 2) == -x[1]);
  CHECK(pi(1, 2) == -x[0]);
  REQUIRE(e.casimirs.size() == 1);
  CHECK(e.casimirs[0](x) == -x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  CHECK(e.cre);
  CHECK(e.klass == 'A');
}

TEST_CASE("catalog row I") {
  auto e = bianchi::catalog({Tag::I});
  CHECK(max_abs(e.pi.eval({1, 2, 3})) == 0.0);
  REQUIRE(e.casimirs.size() == 3);
  CHECK(e.casimirs[0]({4, 5, 6}) == 4.0);
  CHECK(e.casimirs[1]({4, 5, 6}) == 5.0);
  CHECK(e.casimirs[2]({4, 5, 6}) == 6.0);
  CHECK_FALSE(e.cre);
}

TEST_CASE("catalog row VI_h at h = 2") {
  auto e = bianchi::catalog({Tag::VI_H, 2.0});
  Vec x{0.7, -1.2, 0.3};
  Mat pi = e.pi.eval(x);
  CHECK(pi(0, 2) == x[0]);
  CHECK(pi(1, 2) == 2.0 * x[1]);
  REQUIRE(e.casimirs.size() == 1);
  Vec y{2.0, 3.0, 0.0};
  CHECK(e.casimirs[0](y) == 3.0 / 4.0);  // x2 * x1^-2
  CHECK(e.cre);
}

TEST_CASE("VII_h casimir branches") {
  // |h| < 2: spiral invariant reduces to x1^2 + x2^2 as h -> 0 shape.
  auto low = bianchi::catalog({Tag::VII_H, 0.5});
  REQUIRE(low.casimirs.size() == 1);
  CHECK(low.casimirs[0].name == "spiral_invariant");
  // |h| > 2: power invariant.
  auto high = bianchi::catalog({Tag::VII_H, 3.0});
  REQUIRE(high.casimirs.size() == 1);
  CHECK(high.casimirs[0].name == "power_invariant");
  // |h| = 2: no closed form shipped.
  CHECK(bianchi::catalog({Tag::VII_H, 2.0}).casimirs.empty());
  CHECK(bianchi::catalog({Tag::VII_H, -2.0}).casimirs.empty());
}

TEST_CASE("decompose_em: catalog row V") {
  auto e = bianchi::catalog({Tag::V});
  auto em = bianchi::decompose_em(e.constants);
  CHECK(max_abs(em.m) == 0.0);
  CHECK(em.a == Vec{0, 0, -1});
}

TEST_CASE("decompose_em: zero constants") {
  auto em = bianchi::decompose_em(algebra::StructureConstants::zero(3));
  CHECK(max_abs(em.m) == 0.0);
  CHECK(em.a == Vec{0, 0, 0});
}

TEST_CASE("decompose_em: so(2,1) constants") {
  auto em = bianchi::decompose_em(bianchi::catalog({Tag::VIII}).constants);
  CHECK(em.m == Mat::diag({-1, 1, 1}));
  CHECK(em.a == Vec{0, 0, 0});
}

TEST_CASE("classify: catalog examples") {
  CHECK(bianchi::classify(algebra::from_ellis_maccallum({Mat::diag({1, 1, 1}), Vec(3, 0.0)})) ==
        BianchiType{Tag::IX});
  CHECK(bianchi::classify(algebra::StructureConstants::zero(3)) == BianchiType{Tag::I});

  Mat m = Mat::diag({-1, -1, 0}) + 1.5 * Mat(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 0});
  auto alg = algebra::from_ellis_maccallum({m, {0, 0, -1.5}});
  auto t = bianchi::classify(alg);
  CHECK(t.tag == Tag::VII_H);
  CHECK(t.h == 3.0);
}

TEST_CASE("classify: round trip over all catalog rows") {
  for (const auto& t : kRows) {
    auto e = bianchi::catalog(t);
    CHECK(bianchi::classify(algebra::from_ellis_maccallum(e.em)) == t);
  }
}

TEST_CASE("classify: V wins the shared V / VI_h(1) normal form") {
  auto v = bianchi::catalog({Tag::V}).constants;
  auto vi1 = bianchi::catalog({Tag::VI_H, 1.0}).constants;
  CHECK(v == vi1);
  CHECK(bianchi::classify(vi1) == BianchiType{Tag::V});
}

TEST_CASE("classify: non-normal-form bases are refused") {
  // A VI_-1 in a rotated basis: m = diag(0,-1,1), a = 0 is not a table row.
  auto alg = algebra::from_ellis_maccallum({Mat::diag({0, -1, 1}), Vec(3, 0.0)});
  CHECK_THROWS_AS(bianchi::classify(alg), UnrecognizedForm);
  // Class B with a off the third axis.
  auto b = algebra::from_ellis_maccallum({Mat(3, 3), {0, -1, 0}});
  CHECK_THROWS_AS(bianchi::classify(b), UnrecognizedForm);
}

TEST_CASE("decompose_em refuses other dimensions") {
  CHECK_THROWS_AS(bianchi::decompose_em(algebra::StructureConstants::zero(4)), NotEMAdapted);
}

TEST_CASE("cre_admissible matches the table") {
  CHECK_FALSE(bianchi::cre_admissible({Tag::I}));
  CHECK_FALSE(bianchi::cre_admissible({Tag::II}));
  CHECK(bianchi::cre_admissible({Tag::VI_MINUS_1}));
  CHECK_FALSE(bianchi::cre_admissible({Tag::VII_0}));
  CHECK(bianchi::cre_admissible({Tag::VIII}));
  CHECK_FALSE(bianchi::cre_admissible({Tag::IX}));
  CHECK(bianchi::cre_admissible({Tag::III}));
  CHECK(bianchi::cre_admissible({Tag::IV}));
  CHECK(bianchi::cre_admissible({Tag::V}));
  for (double h : {-2.0, 0.5, 2.0}) CHECK(bianchi::cre_admissible({Tag::VI_H, h}));
  CHECK_FALSE(bianchi::cre_admissible({Tag::VII_H, 1.0}));
  CHECK_FALSE(bianchi::cre_admissible({Tag::VII_H, 1.9}));
  CHECK(bianchi::cre_admissible({Tag::VII_H, 2.0}));
  CHECK(bianchi::cre_admissible({Tag::VII_H, 3.0}));
  CHECK(bianchi::cre_admissible({Tag::VII_H, -2.0}));
}

TEST_CASE("cre_admissible equals hyperbolic-element existence per row") {
  std::vector<BianchiType> rows = kRows;
  for (double h : {-2.0, 0.5}) rows.push_back({Tag::VI_H, h});
  for (double h : {1.0, 1.9, 2.0, -2.0, -3.0}) rows.push_back({Tag::VII_H, h});
  for (const auto& t : rows) {
    auto alg = bianchi::catalog(t).constants;
    INFO("type " << t.name() << " h=" << t.h);
    CHECK(bianchi::cre_admissible(t) == algebra::find_hyperbolic_element(alg).has_value());
  }
}

TEST_CASE("property: catalog Casimirs kill the tensor on 10^4 domain points") {
  std::vector<BianchiType> rows = kRows;
  rows.push_back({Tag::VII_H, 1.9});
  rows.push_back({Tag::VII_H, -3.0});
  rows.push_back({Tag::VI_H, -2.0});
  for (const auto& t : rows) {
    auto e = bianchi::catalog(t);
    for (const auto& c : e.casimirs) {
      auto pts = poisson::sample_points(3, 10000, 2024, c.domain);
      INFO("type " << t.name() << " h=" << t.h << " casimir " << c.name);
      CHECK(poisson::casimir_residual(e.pi, c, pts) < 1e-10);
    }
  }
}

TEST_CASE("property: analytic Casimir gradients match finite differences") {
  for (const auto& t : kRows) {
    auto e = bianchi::catalog(t);
    for (const auto& c : e.casimirs) {
      auto pts = poisson::sample_points(3, 100, 77, c.domain);
      for (const auto& x : pts) {
        Vec g = c.gradient(x), fd = c.fd_gradient(x);
        CHECK(norm(g - fd) / std::max(1.0, norm(g)) < 1e-6);
      }
    }
  }
}

TEST_CASE("parameter constraints on the type tags") {
  CHECK_THROWS_AS(BianchiType(Tag::VI_H, 0.0), SchemaError);
  CHECK_THROWS_AS(BianchiType(Tag::VI_H, -1.0), SchemaError);
  CHECK_THROWS_AS(BianchiType(Tag::VII_H, 0.0), SchemaError);
  CHECK_NOTHROW(BianchiType(Tag::VII_H, 2.0));
  CHECK_THROWS_AS(bianchi::table_rows(2.0, 3.0, 3.0), SchemaError);
  CHECK_THROWS_AS(bianchi::table_rows(2.0, 0.5, 1.0), SchemaError);
}
