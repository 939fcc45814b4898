#include "hme/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hme/errors.hpp"
#include "hme/hme1d.hpp"

namespace hme {

namespace {

template <class Mat>
double condition_number(const Mat& m) {
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

// Eigenvectors of a real spectrum. Simple eigenvalues keep the solver's
// vector; clusters of (numerically) equal eigenvalues are rebuilt from the
// null space of A - mean(cluster) I. Returns false when some cluster has
// fewer null directions than its algebraic multiplicity.
bool real_eigenbasis(const Matrix& a, const std::vector<double>& lambdas, const std::vector<Eigen::Index>& order,
                     const Eigen::MatrixXcd& vectors, double scale, Matrix& basis) {
  const auto n = a.rows();
  basis = Matrix::Zero(n, n);
  const double gap = 1e-6 * scale;
  double norm_a = -1.0;
  Eigen::Index col = 0;
  std::size_t i = 0;
  bool full = true;
  while (i < lambdas.size()) {
    std::size_t j = i + 1;
    while (j < lambdas.size() && lambdas[j] - lambdas[j - 1] < gap) ++j;
    const auto m = static_cast<Eigen::Index>(j - i);
    if (m == 1) {
      basis.col(col) = vectors.col(order[i]).real().normalized();
      ++col;
      ++i;
      continue;
    }
    if (norm_a < 0.0) norm_a = std::max(1.0, Eigen::BDCSVD<Matrix>(a).singularValues()(0));
    double mean = 0.0;
    for (std::size_t k = i; k < j; ++k) mean += lambdas[k];
    mean /= static_cast<double>(m);

    // Squared singular values of A - mean I, ascending.
    const Matrix shifted = a - mean * Matrix::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Matrix> gram(shifted.transpose() * shifted);
    const auto& sv2 = gram.eigenvalues();
    const double threshold = 1e-6 * norm_a * static_cast<double>(1 + m);
    Eigen::Index null_dim = 0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (sv2(k) <= threshold * threshold) ++null_dim;
    if (null_dim < m) full = false;
    basis.middleCols(col, m) = gram.eigenvectors().leftCols(m);
    col += m;
    i = j;
  }
  return full;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::hyperbolic:
      return "hyperbolic";
    case Verdict::marginal:
      return "marginal";
    case Verdict::not_hyperbolic:
      return "not_hyperbolic";
  }
  return "unknown";
}

HyperbolicityReport analyze(const Matrix& a, const AnalyzeOptions& options) {
  if (a.rows() != a.cols() || a.rows() == 0) throw ValidationError("analyze: matrix must be square and nonempty");
  if (!a.allFinite()) throw ValidationError("analyze: matrix has non-finite entries");
  if (!(options.tol > 0.0) || !(options.cond_cap > 1.0)) throw ValidationError("analyze: bad tolerance options");

  Eigen::EigenSolver<Matrix> es(a, true);
  if (es.info() != Eigen::Success) throw NumericalError("analyze: eigenvalue iteration did not converge");

  HyperbolicityReport r;
  const auto& ev = es.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&ev](Eigen::Index x, Eigen::Index y) {
    if (ev(x).real() != ev(y).real()) return ev(x).real() < ev(y).real();
    return ev(x).imag() < ev(y).imag();
  });
  for (const auto k : order) r.eigenvalues.push_back(ev(k));
  double radius = 0.0;
  for (const auto& l : r.eigenvalues) {
    radius = std::max(radius, std::abs(l));
    r.max_imag = std::max(r.max_imag, std::abs(l.imag()));
  }
  r.scale = std::max(1.0, radius);

  const bool real = r.max_imag < options.tol * r.scale;
  if (real) {
    std::vector<double> lambdas;
    lambdas.reserve(r.eigenvalues.size());
    for (const auto& l : r.eigenvalues) lambdas.push_back(l.real());
    Matrix basis;
    const bool full = real_eigenbasis(a, lambdas, order, es.eigenvectors(), r.scale, basis);
    r.eigvec_condition = condition_number(basis);
    r.diagonalizable = full && std::isfinite(r.eigvec_condition);
    r.verdict = (r.diagonalizable && r.eigvec_condition < options.cond_cap) ? Verdict::hyperbolic : Verdict::marginal;
  } else {
    r.eigvec_condition = condition_number(Eigen::MatrixXcd(es.eigenvectors()));
    r.diagonalizable = false;
    r.verdict = r.max_imag < 1e3 * options.tol * r.scale ? Verdict::marginal : Verdict::not_hyperbolic;
  }
  return r;
}

SystemCheck check_abs_system(const QuasiLinearSystem& sys, int n_random, Rng& rng, const AnalyzeOptions& options,
                             double d_cond_cap) {
  sys.check_shapes();
  if (sys.Mk.empty()) throw ValidationError("check_abs_system: no convection matrices");
  if (n_random < 0) throw ValidationError("check_abs_system: negative direction count");

  SystemCheck out;
  out.d_condition = condition_number(sys.D);
  out.d_invertible = out.d_condition < d_cond_cap;

  const int dims = static_cast<int>(sys.Mk.size());
  auto check_direction = [&](const Vector& n) {
    Matrix b = Matrix::Zero(sys.dim, sys.dim);
    for (int k = 0; k < dims; ++k) b += n(k) * sys.Mk[static_cast<std::size_t>(k)];
    const auto rep = analyze(b, options);
    ++out.directions_checked;
    if (rep.verdict == Verdict::hyperbolic) ++out.directions_hyperbolic;
    out.worst_max_imag = std::max(out.worst_max_imag, rep.max_imag);
    out.worst_eigvec_condition = std::max(out.worst_eigvec_condition, rep.eigvec_condition);
  };
  for (int k = 0; k < dims; ++k) check_direction(Vector::Unit(dims, k));
  for (int i = 0; i < n_random; ++i) check_direction(rng.unit_vector(dims));
  return out;
}

bool symmetry_criterion(std::span<const Matrix> matrices, double tol) {
  for (const auto& m : matrices) {
    if (m.rows() != m.cols()) return false;
    const double bound = tol * std::max(1.0, max_abs(m));
    if (max_abs(m - m.transpose()) > bound) return false;
  }
  return true;
}

ScanResult scan_grad_region(int M, std::span<const double> g_m1, std::span<const double> g_m, ScanTarget target,
                            const AnalyzeOptions& options) {
  if (M < 3) throw ValidationError("scan: M must be >= 3");
  if (g_m1.empty() || g_m.empty()) throw ValidationError("scan: empty grid");
  if (M == 3) {
    for (double g : g_m1)
      if (g != 0.0) throw ValidationError("scan: for M = 3 the coefficient f_2 is structurally zero; g_m1 must be {0}");
  }
  ScanResult result;
  result.M = M;
  result.target = target;
  result.cells.resize(g_m1.size());
  for (std::size_t i = 0; i < g_m1.size(); ++i) {
    for (double gm : g_m) {
      MomentState1D s = MomentState1D::equilibrium(M, 1.0, 0.0, 1.0);
      if (M - 1 >= 3) s.higher(M - 1) = g_m1[i];
      s.higher(M) = gm;
      const Matrix a = target == ScanTarget::grad ? grad_matrix(s) : regularized_matrix(s);
      const auto rep = analyze(a, options);
      result.cells[i].push_back(ScanCell{g_m1[i], gm, rep.verdict == Verdict::hyperbolic, rep.max_imag});
    }
  }
  return result;
}

}  // namespace hme
