#include "hme/state1d.hpp"

#include <cmath>
#include <sstream>

#include "hme/errors.hpp"
#include "hme/quasilinear.hpp"

namespace hme {

MomentState1D MomentState1D::equilibrium(int M, double rho, double u, double theta) {
  MomentState1D s;
  s.M = M;
  s.rho = rho;
  s.u = u;
  s.theta = theta;
  s.f.assign(static_cast<std::size_t>(std::max(M - 2, 0)), 0.0);
  return s;
}

MomentState1D MomentState1D::from_vector(const Vector& w) {
  if (w.size() < 4) throw ValidationError("moment vector needs at least 4 entries (M >= 3)");
  MomentState1D s = equilibrium(static_cast<int>(w.size()) - 1, w(0), w(1), w(2));
  for (int a = 3; a <= s.M; ++a) s.higher(a) = w(a);
  return s;
}

double MomentState1D::coeff(int alpha) const {
  if (alpha == 0) return rho;
  if (alpha < 3 || alpha > M) return 0.0;
  return f[static_cast<std::size_t>(alpha - 3)];
}

Vector MomentState1D::to_vector() const {
  Vector w(M + 1);
  w(0) = rho;
  w(1) = u;
  w(2) = theta;
  for (int a = 3; a <= M; ++a) w(a) = coeff(a);
  return w;
}

std::vector<std::string> validate(const MomentState1D& s) {
  std::vector<std::string> out;
  if (s.M < 3) out.push_back("truncation order M must be >= 3");
  if (s.M >= 3 && s.f.size() != static_cast<std::size_t>(s.M - 2)) {
    std::ostringstream msg;
    msg << "expected " << s.M - 2 << " higher coefficients f_3..f_M, got " << s.f.size();
    out.push_back(msg.str());
  }
  if (!std::isfinite(s.rho) || !std::isfinite(s.u) || !std::isfinite(s.theta)) out.push_back("non-finite entry");
  for (double v : s.f) {
    if (!std::isfinite(v)) {
      out.push_back("non-finite entry");
      break;
    }
  }
  if (!(s.rho > 0.0)) out.push_back("density nonpositive");
  if (!(s.theta > 0.0)) out.push_back("temperature nonpositive");
  return out;
}

void require_valid(const MomentState1D& state) {
  const auto violations = validate(state);
  if (violations.empty()) return;
  std::string msg = "invalid moment state:";
  for (const auto& v : violations) msg += " [" + v + "]";
  throw ValidationError(msg);
}

Vector bgk_source(const MomentState1D& state, double tau) {
  if (!(tau > 0.0)) throw ValidationError("BGK relaxation time must be positive");
  require_valid(state);
  Vector q = Vector::Zero(state.dim());
  if (std::isinf(tau)) return q;
  for (int a = 3; a <= state.M; ++a) q(a) = -state.coeff(a) / tau;
  return q;
}

Matrix QuasiLinearSystem::transport_matrix(int k) const {
  check_shapes();
  Eigen::PartialPivLU<Matrix> lu(D);
  return lu.solve(Mk.at(static_cast<std::size_t>(k)) * D);
}

void QuasiLinearSystem::check_shapes() const {
  auto square = [this](const Matrix& m) { return m.rows() == dim && m.cols() == dim; };
  if (!square(D)) throw ValidationError("system matrix D has wrong shape");
  for (const auto& m : Mk)
    if (!square(m)) throw ValidationError("convection matrix has wrong shape");
  if (q.size() != dim) throw ValidationError("source vector has wrong length");
}

}  // namespace hme
