#pragma once

#include <array>
#include <string>
#include <vector>

#include "hme/linalg.hpp"
#include "hme/quasilinear.hpp"
#include "hme/random.hpp"

// Slot order of the 13 unknowns (and of the 13 basis functions):
//   0 rho | 1-3 u_1..u_3 | 4-9 theta_11, theta_22, theta_33, theta_12, theta_13, theta_23 | 10-12 q_1..q_3
// Basis functions in the same order: w, H_i, H_11, H_22, H_33, H_12, H_13, H_23, H_kk1, H_kk2, H_kk3.

namespace hme::m13 {

inline constexpr int kDim = 13;

struct Moment13State {
  double rho = 1.0;
  std::array<double, 3> u{};
  std::array<double, 6> theta{1.0, 1.0, 1.0, 0.0, 0.0, 0.0};  // 11, 22, 33, 12, 13, 23
  std::array<double, 3> q{};

  /// theta = theta_kk / 3.
  double temperature() const { return (theta[0] + theta[1] + theta[2]) / 3.0; }
  double theta_ij(int i, int j) const;
  /// theta_<ij> = theta_ij - delta_ij theta.
  double deviatoric(int i, int j) const { return theta_ij(i, j) - (i == j ? temperature() : 0.0); }

  Vector to_vector() const;
  static Moment13State from_vector(const Vector& w);
  static Moment13State equilibrium(double rho, std::array<double, 3> u, double theta);
};

/// Slot of theta_ij (symmetric) in the 13-vector.
int theta_slot(int i, int j);

std::vector<std::string> validate(const Moment13State& state);
void require_valid(const Moment13State& state);

/// Lower-triangular D(w): projected derivative coefficients in the 13-function basis.
Matrix assemble_D(const Moment13State& state);

/// Convection matrix M_k (k = 1, 2, 3). M_1 is the closed-form matrix;
/// M_2 and M_3 conjugate it with the axis-swap permutation 1 <-> k.
Matrix assemble_M(const Moment13State& state, int k);

/// Slot permutation induced by swapping coordinate axes a and b (0-based).
std::array<int, kDim> axis_swap_permutation(int a, int b);

struct EigenSpeeds {
  std::array<double, 7> speeds{};  // ascending
  std::array<int, 7> multiplicity{};
};
/// Distinct eigenvalues of M_k: u_k, u_k +- sqrt(7 theta/5),
/// u_k +- sqrt((13 +- sqrt(94)) theta / 5); multiplicities sum to 13.
EigenSpeeds eigenspeeds(const Moment13State& state, int k);

/// p(M_1) for p(l) = (l-u)[5(l-u)^2 - 7 theta][5(l-u)^4 - 26 theta (l-u)^2 + 15 theta^2],
/// evaluated through N = M_1 - u I. Zero iff p annihilates M_1.
Matrix minimal_polynomial_residual(const Moment13State& state);

/// Maxwell-molecule collision term in the coefficient basis (right-hand side
/// q of D dw/dt + ... = q).
Vector collision_projected(const Moment13State& state, double chi23, double m_g = 1.0);

/// Collision term as it appears on the right of the explicit evolution
/// equations: -(3 rho/m_g) chi theta_<ij> on theta_ij, -(2 rho/m_g) chi q_j on q_j.
/// Equals D^{-1} collision_projected().
Vector collision(const Moment13State& state, double chi23, double m_g = 1.0);

/// Time derivative dw/dt from the explicit component-wise equations (material
/// derivative minus u_k d/dx_k). gradients(slot, k) = d w_slot / d x_k.
Vector rhs_explicit(const Moment13State& state, const Matrix& gradients, double chi23, double m_g = 1.0);

/// (D, {M_1, M_2, M_3}, q) for the 13-moment system.
QuasiLinearSystem build_system(const Moment13State& state, double chi23 = 0.0, double m_g = 1.0);

/// Random realizable state: rho in [0.5, 2], |u_i| <= 1, theta in [0.5, 2],
/// deviatoric part up to 0.3 theta, q_j up to 0.5 rho theta^{3/2}.
Moment13State random_state(Rng& rng);

}  // namespace hme::m13
