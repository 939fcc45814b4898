#pragma once

#include <Eigen/Dense>

namespace hme {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace hme
