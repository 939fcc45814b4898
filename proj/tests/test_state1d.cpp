#include <doctest.h>

#include <cmath>
#include <limits>

#include "hme/errors.hpp"
#include "hme/random.hpp"
#include "hme/state1d.hpp"

using namespace hme;

namespace {
bool mentions(const std::vector<std::string>& list, const std::string& text) {
  for (const auto& s : list)
    if (s.find(text) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("validate reports every violation") {
  CHECK(validate(MomentState1D::equilibrium(3, 1.0, 0.0, 1.0)).empty());
  auto neg = MomentState1D::equilibrium(3, -1.0, 0.0, 1.0);
  CHECK(mentions(validate(neg), "density nonpositive"));
  auto cold = MomentState1D::equilibrium(4, 1.0, 0.0, 0.0);
  CHECK(mentions(validate(cold), "temperature nonpositive"));
  auto both = MomentState1D::equilibrium(4, 0.0, 0.0, -2.0);
  CHECK(validate(both).size() == 2);
  auto nan = MomentState1D::equilibrium(3, 1.0, std::nan(""), 1.0);
  CHECK(mentions(validate(nan), "non-finite"));
  auto short_f = MomentState1D::equilibrium(5, 1.0, 0.0, 1.0);
  short_f.f.pop_back();
  CHECK_FALSE(validate(short_f).empty());
  CHECK_THROWS_AS(require_valid(neg), ValidationError);
}

TEST_CASE("vector round trip and structural coefficients") {
  Rng rng(3);
  const auto s = random_state_1d(7, rng);
  const auto back = MomentState1D::from_vector(s.to_vector());
  CHECK(back.M == 7);
  CHECK(back.to_vector() == s.to_vector());
  CHECK(s.coeff(0) == s.rho);
  CHECK(s.coeff(1) == 0.0);
  CHECK(s.coeff(2) == 0.0);
  CHECK(s.coeff(8) == 0.0);
  CHECK_THROWS_AS(MomentState1D::from_vector(Vector::Zero(3)), ValidationError);
}

TEST_CASE("bgk_source") {
  CHECK(bgk_source(MomentState1D::equilibrium(5, 1.3, 0.2, 0.7), 0.1).isZero(0.0));
  auto s = MomentState1D::equilibrium(3, 1.0, 0.0, 1.0);
  s.higher(3) = 0.2;
  const Vector q = bgk_source(s, 2.0);
  CHECK(q.size() == 4);
  CHECK(q(0) == 0.0);
  CHECK(q(1) == 0.0);
  CHECK(q(2) == 0.0);
  CHECK(q(3) == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(bgk_source(s, std::numeric_limits<double>::infinity()).isZero(0.0));
  CHECK_THROWS_AS(bgk_source(s, 0.0), ValidationError);
  CHECK_THROWS_AS(bgk_source(s, -1.0), ValidationError);
}

TEST_CASE("bgk_source keeps collision invariants and is linear in the higher coefficients") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int M = 3 + trial % 6;
    auto a = random_state_1d(M, rng);
    auto b = a;
    for (auto& v : b.f) v = rng.uniform(-0.3, 0.3);
    auto sum = a;
    for (std::size_t i = 0; i < sum.f.size(); ++i) sum.f[i] = 2.0 * a.f[i] - 3.0 * b.f[i];
    const double tau = rng.uniform(0.01, 5.0);
    const Vector qa = bgk_source(a, tau);
    CHECK(qa.head(3).isZero(0.0));
    CHECK((bgk_source(sum, tau) - (2.0 * qa - 3.0 * bgk_source(b, tau))).cwiseAbs().maxCoeff() < 1e-14);
  }
}
