#include "hme/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hme/errors.hpp"
#include "hme/linalg.hpp"

namespace hme::hermite {

double eval(int k, double x) {
  if (k < 0) throw ValidationError("hermite degree must be nonnegative, got " + std::to_string(k));
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int n = 1; n < k; ++n) {
    const double next = x * cur - n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_abs(int k, double x) {
  if (k < 0) throw ValidationError("hermite degree must be nonnegative, got " + std::to_string(k));
  const double ax = std::abs(x);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = ax;
  for (int n = 1; n < k; ++n) {
    const double next = ax * cur + n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double root_backward_error(int k, double x) {
  const double r = std::abs(eval(k, x));
  return r == 0.0 ? 0.0 : r / eval_abs(k, x);
}

std::vector<double> roots(int k) {
  if (k < 1) throw ValidationError("hermite_roots needs k >= 1, got " + std::to_string(k));
  // Jacobi matrix of the monic recurrence He_{n+1} = x He_n - n He_{n-1}.
  Matrix jacobi = Matrix::Zero(k, k);
  for (int n = 1; n < k; ++n) {
    jacobi(n - 1, n) = std::sqrt(static_cast<double>(n));
    jacobi(n, n - 1) = jacobi(n - 1, n);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermite_roots: eigensolver failed");

  std::vector<double> c(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
  for (double& x : c) {
    const double deriv = k * eval(k - 1, x);
    if (deriv != 0.0) x -= eval(k, x) / deriv;
  }
  std::sort(c.begin(), c.end());
  for (int j = 0; j < k / 2; ++j) {
    const double mag = 0.5 * (c[static_cast<std::size_t>(k - 1 - j)] - c[static_cast<std::size_t>(j)]);
    c[static_cast<std::size_t>(j)] = -mag;
    c[static_cast<std::size_t>(k - 1 - j)] = mag;
  }
  if (k % 2 == 1) c[static_cast<std::size_t>(k / 2)] = 0.0;

  for (double x : c) {
    if (!(root_backward_error(k, x) < 1e-10))
      throw NumericalError("hermite_roots: root " + std::to_string(x) + " of He_" + std::to_string(k) +
                           " did not converge");
  }
  return c;
}

GaussRule gauss_rule(int k) {
  GaussRule rule;
  rule.nodes = roots(k);
  rule.weights.reserve(rule.nodes.size());
  // w_j = k! / (k^2 He_{k-1}(c_j)^2); the factorial is folded into the
  // normalized polynomial He_{k-1}/sqrt((k-1)!) to stay in range.
  double log_fact = std::lgamma(static_cast<double>(k));  // log((k-1)!)
  for (double x : rule.nodes) {
    const double he = eval(k - 1, x);
    const double normalized_sq = he * he * std::exp(-log_fact);
    rule.weights.push_back(1.0 / (k * normalized_sq));
  }
  return rule;
}

double eval_basis(int alpha, const BasisParams& params, double xi) {
  if (!(params.theta > 0.0)) throw ValidationError("basis temperature must be positive");
  if (!(params.m_g > 0.0)) throw ValidationError("molecule mass must be positive");
  const double v = (xi - params.u) / std::sqrt(params.theta);
  return std::pow(params.theta, -0.5 * (alpha + 1)) * eval(alpha, v) * std::exp(-0.5 * v * v) /
         (params.m_g * std::sqrt(2.0 * std::numbers::pi));
}

std::vector<double> reconstruct_distribution(const MomentState1D& state, std::span<const double> xi_grid,
                                             double m_g) {
  require_valid(state);
  const BasisParams params{state.theta, m_g, state.u};
  std::vector<double> out;
  out.reserve(xi_grid.size());
  for (double xi : xi_grid) {
    double value = 0.0;
    for (int alpha = 0; alpha <= state.M; ++alpha) {
      const double fa = state.coeff(alpha);
      if (fa != 0.0) value += fa * eval_basis(alpha, params, xi);
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace hme::hermite
