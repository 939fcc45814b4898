#pragma once

#include <vector>

#include "hme/linalg.hpp"

namespace hme {

/// D(w) dw/dt + sum_k M_k(w) D(w) dw/dx_k = q(w)
///
/// Rows of D, M_k and q are expansion coefficients; columns of D are the
/// unknowns. All matrices are dim x dim.
struct QuasiLinearSystem {
  int dim = 0;
  Matrix D;
  std::vector<Matrix> Mk;
  Vector q;

  /// D^{-1} M_k D, the coefficient matrix of the equivalent dw/dt + A dw/dx form.
  Matrix transport_matrix(int k) const;
  /// Throws ValidationError when the matrices disagree in size.
  void check_shapes() const;
};

}  // namespace hme
