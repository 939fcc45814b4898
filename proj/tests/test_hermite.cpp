#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hme/errors.hpp"
#include "hme/hermite.hpp"
#include "hme/random.hpp"
#include "oracles.hpp"

using namespace hme;

TEST_CASE("hermite_eval small degrees") {
  CHECK(hermite::eval(0, 5.0) == 1.0);
  CHECK(hermite::eval(3, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hermite::eval(2, 0.0) == -1.0);
  CHECK_THROWS_AS(hermite::eval(-1, 0.0), ValidationError);
}

TEST_CASE("hermite_eval matches the explicit coefficient formula") {
  Rng rng(11);
  for (int k = 0; k <= 20; ++k) {
    for (int i = 0; i < 20; ++i) {
      const double x = rng.uniform(-5.0, 5.0);
      const double ref = oracle::hermite_explicit(k, x);
      CHECK(std::abs(hermite::eval(k, x) - ref) <= 1e-12 * hermite::eval_abs(k, x));
    }
  }
}

TEST_CASE("three-term recursion holds for k <= 20") {
  Rng rng(12);
  for (int k = 1; k <= 20; ++k) {
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(-5.0, 5.0);
      const double lhs = hermite::eval(k + 1, x);
      const double rhs = x * hermite::eval(k, x) - k * hermite::eval(k - 1, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("roots of low degree") {
  CHECK(hermite::roots(1) == std::vector<double>{0.0});
  const auto r2 = hermite::roots(2);
  CHECK(r2[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(r2[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto r4 = hermite::roots(4);
  const double big = std::sqrt(3.0 + std::sqrt(6.0));
  const double small = std::sqrt(3.0 - std::sqrt(6.0));
  CHECK(r4[0] == doctest::Approx(-big).epsilon(1e-14));
  CHECK(r4[1] == doctest::Approx(-small).epsilon(1e-14));
  CHECK(r4[2] == doctest::Approx(small).epsilon(1e-14));
  CHECK(r4[3] == doctest::Approx(big).epsilon(1e-14));
  CHECK_THROWS_AS(hermite::roots(0), ValidationError);
}

TEST_CASE("roots are sorted, symmetric and accurate up to k = 20") {
  for (int k = 1; k <= 20; ++k) {
    const auto r = hermite::roots(k);
    REQUIRE(r.size() == static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      if (j > 0) CHECK(r[static_cast<std::size_t>(j - 1)] < r[static_cast<std::size_t>(j)]);
      CHECK(r[static_cast<std::size_t>(j)] == -r[static_cast<std::size_t>(k - 1 - j)]);
      CHECK(hermite::root_backward_error(k, r[static_cast<std::size_t>(j)]) < 1e-10);
      if (k <= 8) CHECK(std::abs(hermite::eval(k, r[static_cast<std::size_t>(j)])) < 1e-10);
    }
  }
}

TEST_CASE("Gauss rule integrates He_i He_j to i! delta_ij") {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const auto rule = hermite::gauss_rule((i + j) / 2 + 1);
      double sum = 0.0;
      for (std::size_t n = 0; n < rule.nodes.size(); ++n)
        sum += rule.weights[n] * hermite::eval(i, rule.nodes[n]) * hermite::eval(j, rule.nodes[n]);
      const double expected = i == j ? std::tgamma(i + 1.0) : 0.0;
      CHECK(std::abs(sum - expected) <= 1e-13 * std::sqrt(std::tgamma(i + 1.0) * std::tgamma(j + 1.0)));
    }
  }
}

TEST_CASE("basis functions") {
  const double inv = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  CHECK(hermite::eval_basis(0, {1.0, 1.0, 0.0}, 0.0) == doctest::Approx(inv).epsilon(1e-15));
  CHECK(hermite::eval_basis(1, {1.0, 1.0, 0.0}, 0.0) == 0.0);
  CHECK(hermite::eval_basis(0, {4.0, 1.0, 2.0}, 2.0) == doctest::Approx(0.5 * inv).epsilon(1e-15));
  CHECK_THROWS_AS(hermite::eval_basis(0, {0.0, 1.0, 0.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(hermite::eval_basis(0, {1.0, -1.0, 0.0}, 0.0), ValidationError);
}

TEST_CASE("reconstruct_distribution") {
  const double inv = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto eq = MomentState1D::equilibrium(4, 2.0, 0.5, 3.0);
  const std::vector<double> peak{0.5};
  CHECK(hermite::reconstruct_distribution(eq, peak, 2.0)[0] ==
        doctest::Approx(2.0 / (2.0 * std::sqrt(2.0 * std::numbers::pi * 3.0))).epsilon(1e-14));
  CHECK(hermite::reconstruct_distribution(eq, std::vector<double>{}).empty());
  auto s = MomentState1D::equilibrium(3, 1.0, 0.0, 1.0);
  s.higher(3) = 0.1;
  CHECK(hermite::reconstruct_distribution(s, std::vector<double>{0.0})[0] == doctest::Approx(inv).epsilon(1e-15));
}

TEST_CASE("reconstructed distribution reproduces its moments") {
  // Gauss quadrature in the scaled variable recovers rho, rho u, rho (u^2 + theta).
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_state_1d(6, rng);
    const auto rule = hermite::gauss_rule(12);
    std::vector<double> xi;
    for (double c : rule.nodes) xi.push_back(s.u + std::sqrt(s.theta) * c);
    const auto f = hermite::reconstruct_distribution(s, xi);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (std::size_t n = 0; n < xi.size(); ++n) {
      // f = weight(xi) * polynomial; divide out the Gaussian used by the rule
      const double c = rule.nodes[n];
      const double g = f[n] * std::sqrt(2.0 * std::numbers::pi * s.theta) * std::exp(0.5 * c * c);
      const double w = rule.weights[n] * g;
      const double v = xi[n] - s.u;
      m0 += w;
      m1 += w * xi[n];
      m2 += w * v * v;
      m3 += w * v * v * v;
    }
    CHECK(m0 == doctest::Approx(s.rho).epsilon(1e-12));
    CHECK(m1 == doctest::Approx(s.rho * s.u).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(s.rho * s.theta).epsilon(1e-12));
    CHECK(m3 == doctest::Approx(6.0 * s.coeff(3)).epsilon(1e-10));
  }
}
