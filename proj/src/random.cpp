#include "hme/random.hpp"

#include <cmath>
#include <numbers>

namespace hme {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector Rng::unit_vector(int n) {
  Vector v(n);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (int i = 0; i < n; ++i) v(i) = normal();
    norm = v.norm();
  }
  return v / norm;
}

MomentState1D random_state_1d(int M, Rng& rng, double spread) {
  const double rho = rng.uniform(0.5, 2.0);
  const double u = rng.uniform(-1.0, 1.0);
  const double theta = rng.uniform(0.5, 2.0);
  MomentState1D s = MomentState1D::equilibrium(M, rho, u, theta);
  for (int a = 3; a <= M; ++a) s.higher(a) = rho * std::pow(theta, 0.5 * a) * rng.uniform(-spread, spread);
  return s;
}

}  // namespace hme
