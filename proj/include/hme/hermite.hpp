#pragma once

#include <span>
#include <vector>

#include "hme/state1d.hpp"

namespace hme::hermite {

/// Probabilists' Hermite polynomial He_k(x) by the three-term recursion.
/// Plain (unscaled) recursion: finite for k <= 50, |x| <= 10.
double eval(int k, double x);

/// He_k with all coefficients replaced by their absolute values, evaluated
/// at |x|. Used as the scale for backward-error residuals.
double eval_abs(int k, double x);

/// Backward error of x as a root of He_k: |He_k(x)| / eval_abs(k, x), and 0
/// where He_k(x) is exactly zero.
double root_backward_error(int k, double x);

/// The k simple roots of He_k, ascending and exactly antisymmetric.
/// Golub-Welsch (symmetric Jacobi matrix) followed by one Newton step.
/// Throws NumericalError if a root's backward error exceeds 1e-10.
std::vector<double> roots(int k);

/// Gauss rule for the normalized weight exp(-x^2/2)/sqrt(2 pi): exact for
/// polynomials of degree <= 2k-1, weights sum to 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_rule(int k);

struct BasisParams {
  double theta = 1.0;
  double m_g = 1.0;
  double u = 0.0;
};

/// Weighted basis function H_alpha^[theta] evaluated at velocity xi:
/// m_g^-1 (2 pi)^-1/2 theta^-(alpha+1)/2 He_alpha(v) exp(-v^2/2), v = (xi-u)/sqrt(theta).
double eval_basis(int alpha, const BasisParams& params, double xi);

/// f(xi) = sum_alpha f_alpha H_alpha^[theta]((xi-u)/sqrt(theta)) on each grid point.
std::vector<double> reconstruct_distribution(const MomentState1D& state, std::span<const double> xi_grid,
                                             double m_g = 1.0);

}  // namespace hme::hermite
