#include "hme/moment13.hpp"

#include <algorithm>
#include <cmath>

#include "hme/errors.hpp"

namespace hme::m13 {

namespace {

constexpr int kRho = 0;
constexpr int kU = 1;
constexpr int kTheta = 4;
constexpr int kQ = 10;

double kron(int i, int j) { return i == j ? 1.0 : 0.0; }

void check_axis(int k) {
  if (k < 1 || k > 3) throw ValidationError("13-moment axis must be 1, 2 or 3, got " + std::to_string(k));
}

}  // namespace

int theta_slot(int i, int j) {
  if (i < 0 || i > 2 || j < 0 || j > 2) throw ValidationError("theta_slot: index out of range");
  if (i == j) return kTheta + i;
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  if (lo == 0) return hi == 1 ? kTheta + 3 : kTheta + 4;
  return kTheta + 5;
}

double Moment13State::theta_ij(int i, int j) const { return theta[static_cast<std::size_t>(theta_slot(i, j) - kTheta)]; }

Vector Moment13State::to_vector() const {
  Vector w(kDim);
  w(kRho) = rho;
  for (int i = 0; i < 3; ++i) w(kU + i) = u[static_cast<std::size_t>(i)];
  for (int i = 0; i < 6; ++i) w(kTheta + i) = theta[static_cast<std::size_t>(i)];
  for (int i = 0; i < 3; ++i) w(kQ + i) = q[static_cast<std::size_t>(i)];
  return w;
}

Moment13State Moment13State::from_vector(const Vector& w) {
  if (w.size() != kDim) throw ValidationError("13-moment vector must have 13 entries");
  Moment13State s;
  s.rho = w(kRho);
  for (int i = 0; i < 3; ++i) s.u[static_cast<std::size_t>(i)] = w(kU + i);
  for (int i = 0; i < 6; ++i) s.theta[static_cast<std::size_t>(i)] = w(kTheta + i);
  for (int i = 0; i < 3; ++i) s.q[static_cast<std::size_t>(i)] = w(kQ + i);
  return s;
}

Moment13State Moment13State::equilibrium(double rho, std::array<double, 3> u, double theta) {
  Moment13State s;
  s.rho = rho;
  s.u = u;
  s.theta = {theta, theta, theta, 0.0, 0.0, 0.0};
  return s;
}

std::vector<std::string> validate(const Moment13State& s) {
  std::vector<std::string> out;
  if (!s.to_vector().allFinite()) out.push_back("non-finite entry");
  if (!(s.rho > 0.0)) out.push_back("density nonpositive");
  if (!(s.temperature() > 0.0)) out.push_back("temperature nonpositive");
  return out;
}

void require_valid(const Moment13State& s) {
  const auto violations = validate(s);
  if (violations.empty()) return;
  std::string msg = "invalid 13-moment state:";
  for (const auto& v : violations) msg += " [" + v + "]";
  throw ValidationError(msg);
}

Matrix assemble_D(const Moment13State& s) {
  require_valid(s);
  const double rho = s.rho;
  Matrix D = Matrix::Zero(kDim, kDim);
  D(kRho, kRho) = 1.0;
  for (int i = 0; i < 3; ++i) D(kU + i, kU + i) = rho;
  for (int i = 0; i < 3; ++i) {
    D(kTheta + i, kRho) = 0.5 * s.deviatoric(i, i);
    D(kTheta + i, kTheta + i) = 0.5 * rho;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int slot = theta_slot(i, j);
      D(slot, kRho) = s.theta_ij(i, j);
      D(slot, slot) = rho;
    }
  }
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) D(kQ + j, kU + k) = rho * s.deviatoric(j, k) / 5.0;
    D(kQ + j, kQ + j) = 0.2;
  }
  return D;
}

std::array<int, kDim> axis_swap_permutation(int a, int b) {
  if (a < 0 || a > 2 || b < 0 || b > 2) throw ValidationError("axis_swap_permutation: axis out of range");
  auto swap_axis = [a, b](int i) { return i == a ? b : (i == b ? a : i); };
  std::array<int, kDim> perm{};
  perm[kRho] = kRho;
  for (int i = 0; i < 3; ++i) {
    perm[static_cast<std::size_t>(kU + i)] = kU + swap_axis(i);
    perm[static_cast<std::size_t>(kQ + i)] = kQ + swap_axis(i);
    for (int j = i; j < 3; ++j)
      perm[static_cast<std::size_t>(theta_slot(i, j))] = theta_slot(swap_axis(i), swap_axis(j));
  }
  return perm;
}

Matrix assemble_M(const Moment13State& s, int k) {
  check_axis(k);
  require_valid(s);
  const double th = s.temperature();
  // N = M_1 - u_1 I.
  Matrix N = Matrix::Zero(kDim, kDim);
  N(0, 1) = 1.0;
  N(1, 0) = th;
  N(1, 4) = 2.0;
  N(2, 7) = 1.0;
  N(3, 8) = 1.0;
  N(4, 1) = th;
  N(4, 10) = 3.0;
  N(5, 10) = 1.0;
  N(6, 10) = 1.0;
  N(7, 2) = th;
  N(7, 11) = 2.0;
  N(8, 3) = th;
  N(8, 12) = 2.0;
  N(10, 4) = 3.0 * th / 5.0;
  N(10, 5) = th / 5.0;
  N(10, 6) = th / 5.0;
  N(11, 7) = th / 5.0;
  N(12, 8) = th / 5.0;

  Matrix out = s.u[static_cast<std::size_t>(k - 1)] * Matrix::Identity(kDim, kDim);
  const auto perm = axis_swap_permutation(0, k - 1);
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) out(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) += N(r, c);
  return out;
}

EigenSpeeds eigenspeeds(const Moment13State& s, int k) {
  check_axis(k);
  const double th = s.temperature();
  if (!(th > 0.0)) throw ValidationError("eigenspeeds: temperature must be positive");
  const double uk = s.u[static_cast<std::size_t>(k - 1)];
  const double a = std::sqrt(7.0 * th / 5.0);
  const double hi = std::sqrt((13.0 + std::sqrt(94.0)) * th / 5.0);
  const double lo = std::sqrt((13.0 - std::sqrt(94.0)) * th / 5.0);
  EigenSpeeds out;
  out.speeds = {uk - hi, uk - a, uk - lo, uk, uk + lo, uk + a, uk + hi};
  out.multiplicity = {1, 2, 1, 5, 1, 2, 1};
  return out;
}

Matrix minimal_polynomial_residual(const Moment13State& s) {
  const Matrix m1 = assemble_M(s, 1);
  const double th = s.temperature();
  const Matrix I = Matrix::Identity(kDim, kDim);
  const Matrix N = m1 - s.u[0] * I;
  const Matrix N2 = N * N;
  const Matrix quadratic = 5.0 * N2 - 7.0 * th * I;
  const Matrix quartic = 5.0 * N2 * N2 - 26.0 * th * N2 + 15.0 * th * th * I;
  return N * quadratic * quartic;
}

Vector collision(const Moment13State& s, double chi23, double m_g) {
  require_valid(s);
  if (!(chi23 > 0.0)) throw ValidationError("collision: chi must be positive");
  if (!(m_g > 0.0)) throw ValidationError("collision: molecule mass must be positive");
  Vector out = Vector::Zero(kDim);
  const double rate = s.rho * chi23 / m_g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) out(theta_slot(i, j)) = -3.0 * rate * s.deviatoric(i, j);
  for (int j = 0; j < 3; ++j) out(kQ + j) = -2.0 * rate * s.q[static_cast<std::size_t>(j)];
  return out;
}

Vector collision_projected(const Moment13State& s, double chi23, double m_g) {
  return assemble_D(s) * collision(s, chi23, m_g);
}

Vector rhs_explicit(const Moment13State& s, const Matrix& g, double chi23, double m_g) {
  require_valid(s);
  if (g.rows() != kDim || g.cols() != 3) throw ValidationError("rhs_explicit: gradients must be 13x3");
  if (chi23 < 0.0) throw ValidationError("rhs_explicit: chi must be nonnegative");
  const double rho = s.rho;
  const double th = s.temperature();
  auto T = [&s](int i, int j) { return s.theta_ij(i, j); };
  auto dev = [&s](int i, int j) { return s.deviatoric(i, j); };
  auto drho = [&g](int k) { return g(kRho, k); };
  auto du = [&g](int i, int k) { return g(kU + i, k); };
  auto dT = [&g](int i, int j, int k) { return g(theta_slot(i, j), k); };
  auto dq = [&g](int i, int k) { return g(kQ + i, k); };

  Vector dt = Vector::Zero(kDim);
  double divu = 0.0;
  for (int k = 0; k < 3; ++k) divu += du(k, k);
  double divq = 0.0;
  for (int k = 0; k < 3; ++k) divq += dq(k, k);

  dt(kRho) = -rho * divu;
  for (int i = 0; i < 3; ++i) {
    double v = 0.0;
    for (int k = 0; k < 3; ++k) v += dT(i, k, k) + T(i, k) / rho * drho(k);
    dt(kU + i) = -v;
  }
  double theta_grad_u = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) theta_grad_u += T(k, l) * du(k, l);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double v = -T(i, j) * divu + 0.6 * th * (du(i, j) + du(j, i) + kron(i, j) * divu);
      double coupling = kron(i, j) * theta_grad_u;
      for (int k = 0; k < 3; ++k) coupling += T(i, k) * du(k, j) + T(j, k) * du(k, i);
      v += 0.4 * coupling;
      v += 2.0 / (5.0 * rho) * (dq(i, j) + dq(j, i) + kron(i, j) * divq);
      dt(theta_slot(i, j)) = -v;
    }
  }
  for (int j = 0; j < 3; ++j) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        v -= dev(i, j) * dev(i, k) * drho(k);
        v -= rho * T(i, j) * dT(i, k, k);
      }
      v += 2.0 * rho * th * dT(i, j, i);
    }
    for (int k = 0; k < 3; ++k) v += 0.5 * rho * th * dT(k, k, j);
    dt(kQ + j) = -v;
  }
  for (int slot = 0; slot < kDim; ++slot)
    for (int k = 0; k < 3; ++k) dt(slot) -= s.u[static_cast<std::size_t>(k)] * g(slot, k);
  if (chi23 > 0.0) dt += collision(s, chi23, m_g);
  return dt;
}

QuasiLinearSystem build_system(const Moment13State& s, double chi23, double m_g) {
  require_valid(s);
  if (chi23 < 0.0) throw ValidationError("build_system: chi must be nonnegative");
  QuasiLinearSystem sys;
  sys.dim = kDim;
  sys.D = assemble_D(s);
  for (int k = 1; k <= 3; ++k) sys.Mk.push_back(assemble_M(s, k));
  sys.q = chi23 > 0.0 ? collision_projected(s, chi23, m_g) : Vector::Zero(kDim);
  return sys;
}

Moment13State random_state(Rng& rng) {
  Moment13State s;
  s.rho = rng.uniform(0.5, 2.0);
  for (auto& v : s.u) v = rng.uniform(-1.0, 1.0);
  const double th = rng.uniform(0.5, 2.0);
  // Deviatoric part with zero trace, entries bounded by 0.3 theta.
  std::array<double, 3> diag{};
  for (auto& d : diag) d = rng.uniform(-0.2, 0.2) * th;
  const double mean = (diag[0] + diag[1] + diag[2]) / 3.0;
  for (int i = 0; i < 3; ++i) s.theta[static_cast<std::size_t>(i)] = th + diag[static_cast<std::size_t>(i)] - mean;
  for (int i = 3; i < 6; ++i) s.theta[static_cast<std::size_t>(i)] = rng.uniform(-0.1, 0.1) * th;
  const double qscale = 0.5 * s.rho * std::pow(th, 1.5);
  for (auto& v : s.q) v = rng.uniform(-qscale, qscale);
  return s;
}

}  // namespace hme::m13
