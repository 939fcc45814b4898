#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hme/linalg.hpp"
#include "hme/quasilinear.hpp"
#include "hme/random.hpp"

namespace hme {

enum class Verdict { hyperbolic, marginal, not_hyperbolic };
std::string to_string(Verdict v);

struct HyperbolicityReport {
  std::vector<std::complex<double>> eigenvalues;  // sorted by real part, then imaginary part
  double max_imag = 0.0;
  double scale = 1.0;  // max(1, spectral radius)
  bool diagonalizable = false;
  double eigvec_condition = 0.0;
  Verdict verdict = Verdict::not_hyperbolic;
};

struct AnalyzeOptions {
  double tol = 1e-9;
  double cond_cap = 1e8;
};

/// Real diagonalizability of a square matrix.
///
/// Spectrum real when max|Im| < tol * scale. Eigenvectors are rebuilt per
/// cluster of (numerically) equal eigenvalues from the null space of
/// A - lambda I, so repeated eigenvalues of diagonalizable matrices are
/// handled. Verdicts:
///   hyperbolic      real spectrum, full eigenbasis, condition < cond_cap
///   marginal        max|Im| in [tol, 1e3 tol) * scale, or real spectrum
///                   with a deficient / ill-conditioned eigenbasis
///   not_hyperbolic  otherwise
HyperbolicityReport analyze(const Matrix& matrix, const AnalyzeOptions& options = {});

struct SystemCheck {
  bool d_invertible = false;
  double d_condition = 0.0;
  int directions_checked = 0;
  int directions_hyperbolic = 0;
  double worst_max_imag = 0.0;
  double worst_eigvec_condition = 0.0;
  bool passed() const { return d_invertible && directions_checked == directions_hyperbolic; }
};

/// The two sufficient conditions for hyperbolicity of the quasilinear form:
/// D invertible (condition number < d_cond_cap) and sum_k n_k M_k real
/// diagonalizable for every axis direction plus n_random random unit
/// directions.
SystemCheck check_abs_system(const QuasiLinearSystem& sys, int n_random, Rng& rng,
                             const AnalyzeOptions& options = {}, double d_cond_cap = 1e12);

/// True iff every matrix is symmetric to within tol * max(1, max|entry|).
/// Symmetric convection matrices in an orthonormal basis make every linear
/// combination real diagonalizable.
bool symmetry_criterion(std::span<const Matrix> matrices, double tol = 1e-12);

enum class ScanTarget { grad, regularized };

struct ScanCell {
  double g_m1 = 0.0;  // f_{M-1} / (rho theta^{(M-1)/2})
  double g_m = 0.0;   // f_M / (rho theta^{M/2})
  bool hyperbolic = false;
  double max_imag = 0.0;
};

/// Hyperbolicity over normalized (f_{M-1}, f_M) at rho = theta = 1, u = 0 and
/// f_alpha = 0 for 3 <= alpha <= M-2. cells[i][j] pairs g_m1[i] with g_m[j].
/// For M = 3, f_2 is structurally zero and g_m1 must be {0}.
struct ScanResult {
  int M = 3;
  ScanTarget target = ScanTarget::grad;
  std::vector<std::vector<ScanCell>> cells;
};
ScanResult scan_grad_region(int M, std::span<const double> g_m1, std::span<const double> g_m,
                            ScanTarget target = ScanTarget::grad, const AnalyzeOptions& options = {});

}  // namespace hme
