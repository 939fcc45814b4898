#pragma once

#include <limits>

#include "hme/linalg.hpp"
#include "hme/quasilinear.hpp"
#include "hme/state1d.hpp"

// Matrix layouts: rows and columns are ordered like the unknown vector
// (rho, u, theta, f_3, ..., f_M), index 0 = rho. The factorization matrices
// D and M act on Hermite coefficient vectors (G_0, ..., G_M).

namespace hme {

/// Grad's (M+1)-moment coefficient matrix A(w) for dw/dt + A dw/dx = S.
Matrix grad_matrix(const MomentState1D& state);

/// Last-row correction that makes A globally hyperbolic:
/// A_hat = A - (M+1) f_M E[M][1] - (M+1)/2 f_{M-1} E[M][2]  (0-based).
Matrix regularize(const Matrix& grad, const MomentState1D& state);
inline Matrix regularized_matrix(const MomentState1D& state) { return regularize(grad_matrix(state), state); }

/// Block lower-triangular D(w): diag(1, rho, rho/2, 1) on top, identity below,
/// rows (0, f_{a-1}, f_{a-2}/2, 0) coupling f_a (a >= 4) to (u, theta).
Matrix factor_D(const MomentState1D& state);

/// Tridiagonal multiply-by-xi-then-truncate operator: diagonal u,
/// subdiagonal theta, superdiagonal 1, 2, ..., M.
Matrix multiply_truncate(double u, double theta, int M);

/// Hermite coefficients G_alpha = dw f_alpha + du f_{alpha-1} + dtheta/2 f_{alpha-2},
/// alpha = 0..M, of the derivative of the truncated expansion along dw.
Vector derivative_coeffs_1d(const MomentState1D& state, const Vector& dw);

/// J_alpha = theta G_{alpha-1} + u G_alpha + (alpha+1) G_{alpha+1}, alpha = 0..M,
/// with G_{M+1} dropped.
Vector convection_coeffs_1d(double u, double theta, const Vector& G);

/// Builds (D, M, q) by probing the two coefficient maps with unit vectors,
/// never touching grad_matrix. D^{-1} M D reproduces regularized_matrix().
QuasiLinearSystem build_system_by_deduction(const MomentState1D& state,
                                            double tau = std::numeric_limits<double>::infinity());

}  // namespace hme
