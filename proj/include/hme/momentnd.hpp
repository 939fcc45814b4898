#pragma once

#include <compare>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hme/linalg.hpp"
#include "hme/quasilinear.hpp"
#include "hme/random.hpp"

namespace hme::nd {

/// alpha = (alpha_1, ..., alpha_D), all entries >= 0.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  static MultiIndex zero(int D) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(D), 0)); }
  static MultiIndex unit(int D, int axis);

  int dim() const { return static_cast<int>(entries_.size()); }
  int order() const { return order_; }
  int operator[](int d) const { return entries_[static_cast<std::size_t>(d)]; }
  const std::vector<int>& entries() const { return entries_; }

  /// alpha + delta * e_axis; `valid` is false when an entry would go negative.
  MultiIndex shifted(int axis, int delta, bool& valid) const;
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// All |alpha| <= M, grade by grade, lexicographically ascending within a
/// grade. Length binomial(M + D, D).
std::vector<MultiIndex> enumerate_indices(int D, int M);

enum class Case { classic, generalized };
std::string to_string(Case c);

/// Coefficients f_alpha (|alpha| <= M) of the expansion in H_alpha^[Theta](xi - u).
///
/// classic:     Theta = theta I, f_{e_j} = 0, sum_j f_{2 e_j} = 0
/// generalized: Theta symmetric positive definite, f_alpha = 0 for |alpha| = 1, 2
class MomentStateND {
 public:
  MomentStateND(int D, int M, Case kind);
  static MomentStateND equilibrium(int D, int M, Case kind, double rho, std::vector<double> u, const Matrix& Theta);

  int D() const { return D_; }
  int M() const { return M_; }
  Case kind() const { return kind_; }
  double rho() const { return f_.front(); }

  const std::vector<MultiIndex>& indices() const { return *indices_; }
  /// Position of alpha in indices(), or -1.
  int position(const MultiIndex& alpha) const;
  /// f_alpha, zero when alpha is outside the retained set.
  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double value);
  std::vector<double>& coeffs() { return f_; }
  const std::vector<double>& coeffs() const { return f_; }

  std::vector<double> u;
  Matrix Theta;

 private:
  int D_;
  int M_;
  Case kind_;
  std::shared_ptr<const std::vector<MultiIndex>> indices_;
  std::shared_ptr<const std::map<MultiIndex, int>> lookup_;
  std::vector<double> f_;
};

std::vector<std::string> validate(const MomentStateND& state);
void require_valid(const MomentStateND& state);

/// Derivative of the expansion parameters along some direction s.
struct Derivatives {
  std::vector<double> du;  // size D
  Matrix dTheta;           // D x D, symmetric
  std::vector<double> df;  // aligned with indices()
};

/// Projected derivative coefficients, aligned with indices():
/// G_alpha = df_alpha + sum_i du_i f_{alpha-e_i} + 1/2 sum_ij dTheta_ij f_{alpha-e_i-e_j}.
/// Throws ValidationError if d respects neither the shape nor the active constraints.
std::vector<double> derivative_coeffs(const MomentStateND& state, const Derivatives& d);

/// Projected coefficients of xi_k times sum_alpha G_alpha H_alpha, aligned with indices():
/// J_alpha = u_k G_alpha + (1 - delta_{|alpha|,M}) (alpha_k + 1) G_{alpha+e_k} + sum_l Theta_kl G_{alpha-e_l}.
/// k is 0-based.
std::vector<double> convection_coeffs(const MomentStateND& state, int k, std::span<const double> G);

/// Row / column layout of the assembled system.
///
/// Unknowns: f_0, u_1..u_D, then the grade-2 block theta_ij for i <= j in
/// row-major order (classic: components of the temperature tensor,
/// theta_ij = theta delta_ij + (1 + delta_ij) f_{e_i+e_j} / f_0; generalized:
/// Theta_ij), then f_alpha for |alpha| >= 3 in enumeration order. Basis rows
/// follow the same order (grade 1 by axis, grade 2 by the pair (i, j)), which
/// makes D lower triangular.
struct SystemLayout {
  std::vector<int> basis;  // row r <-> indices()[basis[r]]
  std::vector<std::string> unknown_labels;
};
SystemLayout system_layout(int D, int M);

/// Unknown vector w in the layout above.
Vector unknowns(const MomentStateND& state);

/// Chain-rule derivatives of (u, Theta, f) along unit direction e_j of w.
Derivatives unknown_direction(const MomentStateND& state, int j);

/// D by probing derivative_coeffs with every unknown direction, M_k by probing
/// convection_coeffs with unit coefficient vectors, BGK source
/// q_alpha = -f_alpha / tau for |alpha| >= 3.
QuasiLinearSystem assemble_system(const MomentStateND& state, double tau = std::numeric_limits<double>::infinity());

/// Gram matrix <H_alpha, H_beta> of the weighted inner product
/// int g1 g2 / w^[Theta] (up to the factor 1/m_g), in system row order.
Matrix gram_matrix(const MomentStateND& state);

/// Convection matrices in an orthonormal basis: L^T M_k L^{-T} with
/// gram = L L^T. Symmetric because multiplication by xi_k is self-adjoint.
std::vector<Matrix> orthonormal_convection(const MomentStateND& state);

/// State describing f'(xi) = f(R^T xi) for an orthogonal R.
MomentStateND rotate(const MomentStateND& state, const Matrix& R);

/// Random realizable state with moderately sized non-equilibrium coefficients.
MomentStateND random_state(int D, int M, Case kind, Rng& rng);

}  // namespace hme::nd
