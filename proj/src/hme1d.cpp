#include "hme/hme1d.hpp"

#include <cmath>

#include "hme/errors.hpp"

namespace hme {

Matrix grad_matrix(const MomentState1D& s) {
  require_valid(s);
  const int M = s.M;
  const double rho = s.rho;
  const double u = s.u;
  const double theta = s.theta;
  auto f = [&s](int a) { return s.coeff(a); };

  Matrix A = Matrix::Zero(M + 1, M + 1);
  A(0, 0) = u;
  A(0, 1) = rho;
  A(1, 0) = theta / rho;
  A(1, 1) = u;
  A(1, 2) = 1.0;
  A(2, 1) = 2.0 * theta;
  A(2, 2) = u;
  A(2, 3) = 6.0 / rho;
  for (int a = 3; a <= M; ++a) {
    A(a, 0) = -theta * f(a - 1) / rho;
    A(a, 1) = (a + 1) * f(a);
    A(a, 2) = 0.5 * ((a - 1) * f(a - 1) + theta * f(a - 3));
    A(a, 3) += -3.0 * f(a - 2) / rho;
    if (a - 1 >= 3) A(a, a - 1) += theta;
    A(a, a) += u;
    if (a + 1 <= M) A(a, a + 1) += a + 1;
  }
  return A;
}

Matrix regularize(const Matrix& grad, const MomentState1D& s) {
  require_valid(s);
  if (grad.rows() != s.dim() || grad.cols() != s.dim())
    throw ValidationError("regularize: matrix size does not match the state");
  Matrix A = grad;
  const int M = s.M;
  A(M, 1) -= (M + 1) * s.coeff(M);
  A(M, 2) -= 0.5 * (M + 1) * s.coeff(M - 1);
  return A;
}

Matrix factor_D(const MomentState1D& s) {
  require_valid(s);
  const int M = s.M;
  Matrix D = Matrix::Identity(M + 1, M + 1);
  D(1, 1) = s.rho;
  D(2, 2) = 0.5 * s.rho;
  for (int a = 4; a <= M; ++a) {
    D(a, 1) = s.coeff(a - 1);
    D(a, 2) = 0.5 * s.coeff(a - 2);
  }
  return D;
}

Matrix multiply_truncate(double u, double theta, int M) {
  if (M < 1) throw ValidationError("multiply_truncate: M must be >= 1");
  Matrix T = Matrix::Zero(M + 1, M + 1);
  for (int a = 0; a <= M; ++a) {
    T(a, a) = u;
    if (a >= 1) T(a, a - 1) = theta;
    if (a + 1 <= M) T(a, a + 1) = a + 1;
  }
  return T;
}

Vector derivative_coeffs_1d(const MomentState1D& s, const Vector& dw) {
  if (dw.size() != s.dim()) throw ValidationError("derivative_coeffs_1d: wrong direction length");
  const int M = s.M;
  Vector G = Vector::Zero(M + 1);
  const double du = dw(1);
  const double dtheta = dw(2);
  for (int a = 0; a <= M; ++a) {
    double g = 0.0;
    if (a == 0) g += dw(0);
    else if (a >= 3) g += dw(a);
    if (a >= 1) g += du * s.coeff(a - 1);
    if (a >= 2) g += 0.5 * dtheta * s.coeff(a - 2);
    G(a) = g;
  }
  return G;
}

Vector convection_coeffs_1d(double u, double theta, const Vector& G) {
  const auto M = static_cast<int>(G.size()) - 1;
  Vector J(M + 1);
  for (int a = 0; a <= M; ++a) {
    double v = u * G(a);
    if (a >= 1) v += theta * G(a - 1);
    if (a + 1 <= M) v += (a + 1) * G(a + 1);
    J(a) = v;
  }
  return J;
}

QuasiLinearSystem build_system_by_deduction(const MomentState1D& s, double tau) {
  require_valid(s);
  const int n = s.dim();
  QuasiLinearSystem sys;
  sys.dim = n;
  sys.D = Matrix::Zero(n, n);
  Matrix T = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const Vector e = Vector::Unit(n, j);
    sys.D.col(j) = derivative_coeffs_1d(s, e);
    T.col(j) = convection_coeffs_1d(s.u, s.theta, e);
  }
  sys.Mk = {T};
  sys.q = bgk_source(s, tau);
  return sys;
}

}  // namespace hme
