#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hme/linalg.hpp"

namespace hme {

/// Unknowns of the 1D moment system, w = (rho, u, theta, f_3, ..., f_M).
///
/// f_0 = rho and f_1 = f_2 = 0 are structural and never stored; `f[0]`
/// holds f_3.
struct MomentState1D {
  int M = 3;
  double rho = 1.0;
  double u = 0.0;
  double theta = 1.0;
  std::vector<double> f;

  static MomentState1D equilibrium(int M, double rho, double u, double theta);
  /// Inverse of to_vector(); w.size() fixes M = w.size() - 1.
  static MomentState1D from_vector(const Vector& w);

  /// Expansion coefficient f_alpha including the structural ones; zero
  /// outside 0..M.
  double coeff(int alpha) const;
  double& higher(int alpha) { return f.at(static_cast<std::size_t>(alpha - 3)); }
  int dim() const { return M + 1; }
  Vector to_vector() const;
};

/// Lists violated invariants; an empty list means the state is valid.
std::vector<std::string> validate(const MomentState1D& state);
/// Throws ValidationError listing every violation.
void require_valid(const MomentState1D& state);

/// BGK relaxation in coefficient space: q_alpha = -f_alpha / tau for
/// alpha >= 3, zero on the conserved slots. tau = +inf gives zero.
Vector bgk_source(const MomentState1D& state, double tau);

}  // namespace hme
