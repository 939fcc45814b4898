#include "hme/momentnd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hme/errors.hpp"

namespace hme::nd {

namespace {

using Poly = std::map<std::vector<int>, double>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return out;
}

// prod_d (sum_e A(d, e) X_e)^{beta_d}
Poly linear_power_product(const Matrix& A, const MultiIndex& beta) {
  const int D = beta.dim();
  Poly out{{std::vector<int>(static_cast<std::size_t>(D), 0), 1.0}};
  for (int d = 0; d < D; ++d) {
    Poly lin;
    for (int e = 0; e < D; ++e) {
      if (A(d, e) == 0.0) continue;
      std::vector<int> ex(static_cast<std::size_t>(D), 0);
      ex[static_cast<std::size_t>(e)] = 1;
      lin[ex] += A(d, e);
    }
    for (int p = 0; p < beta[d]; ++p) out = poly_mul(out, lin);
  }
  return out;
}

double multi_factorial(const std::vector<int>& e) {
  double r = 1.0;
  for (int v : e) r *= std::tgamma(v + 1.0);
  return r;
}

std::vector<std::pair<int, int>> upper_pairs(int D) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < D; ++i)
    for (int j = i; j < D; ++j) out.emplace_back(i, j);
  return out;
}

MultiIndex pair_index(int D, int i, int j) {
  std::vector<int> e(static_cast<std::size_t>(D), 0);
  e[static_cast<std::size_t>(i)] += 1;
  e[static_cast<std::size_t>(j)] += 1;
  return MultiIndex(e);
}

double scalar_temperature(const MomentStateND& s) { return s.Theta.trace() / s.D(); }

void check_dims(int D, int M) {
  if (D < 1) throw ValidationError("dimension D must be >= 1");
  if (M < 2) throw ValidationError("order M must be >= 2");
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int v : entries_) {
    if (v < 0) throw ValidationError("multi-index entries must be nonnegative");
    order_ += v;
  }
}

MultiIndex MultiIndex::unit(int D, int axis) {
  std::vector<int> e(static_cast<std::size_t>(D), 0);
  e.at(static_cast<std::size_t>(axis)) = 1;
  return MultiIndex(e);
}

MultiIndex MultiIndex::shifted(int axis, int delta, bool& valid) const {
  std::vector<int> e = entries_;
  auto& v = e.at(static_cast<std::size_t>(axis));
  v += delta;
  valid = v >= 0;
  if (!valid) return {};
  return MultiIndex(e);
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

std::vector<MultiIndex> enumerate_indices(int D, int M) {
  check_dims(D, M);
  std::vector<MultiIndex> out;
  for (int grade = 0; grade <= M; ++grade) {
    std::vector<MultiIndex> level;
    std::vector<int> e(static_cast<std::size_t>(D), 0);
    // Compositions of `grade` into D parts.
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == D - 1) {
        e[static_cast<std::size_t>(pos)] = left;
        level.emplace_back(e);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        e[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1, left - v);
      }
    };
    rec(rec, 0, grade);
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string to_string(Case c) { return c == Case::classic ? "classic" : "generalized"; }

MomentStateND::MomentStateND(int D, int M, Case kind) : u(static_cast<std::size_t>(D), 0.0), D_(D), M_(M), kind_(kind) {
  check_dims(D, M);
  Theta = Matrix::Identity(D, D);
  auto idx = std::make_shared<std::vector<MultiIndex>>(enumerate_indices(D, M));
  auto lookup = std::make_shared<std::map<MultiIndex, int>>();
  for (std::size_t i = 0; i < idx->size(); ++i) (*lookup)[(*idx)[i]] = static_cast<int>(i);
  indices_ = idx;
  lookup_ = lookup;
  f_.assign(idx->size(), 0.0);
  f_[0] = 1.0;
}

MomentStateND MomentStateND::equilibrium(int D, int M, Case kind, double rho, std::vector<double> u,
                                         const Matrix& Theta) {
  MomentStateND s(D, M, kind);
  if (static_cast<int>(u.size()) != D) throw ValidationError("velocity must have D components");
  if (Theta.rows() != D || Theta.cols() != D) throw ValidationError("Theta must be D x D");
  s.u = std::move(u);
  s.Theta = Theta;
  s.f_[0] = rho;
  return s;
}

int MomentStateND::position(const MultiIndex& alpha) const {
  const auto it = lookup_->find(alpha);
  return it == lookup_->end() ? -1 : it->second;
}

double MomentStateND::coeff(const MultiIndex& alpha) const {
  const int p = position(alpha);
  return p < 0 ? 0.0 : f_[static_cast<std::size_t>(p)];
}

void MomentStateND::set_coeff(const MultiIndex& alpha, double value) {
  const int p = position(alpha);
  if (p < 0) throw ValidationError("multi-index " + alpha.str() + " outside the retained set");
  f_[static_cast<std::size_t>(p)] = value;
}

std::vector<std::string> validate(const MomentStateND& s) {
  std::vector<std::string> out;
  const int D = s.D();
  if (static_cast<int>(s.u.size()) != D) out.push_back("velocity has wrong length");
  if (s.Theta.rows() != D || s.Theta.cols() != D) {
    out.push_back("Theta has wrong shape");
    return out;
  }
  bool finite = s.Theta.allFinite();
  for (double v : s.u) finite = finite && std::isfinite(v);
  for (double v : s.coeffs()) finite = finite && std::isfinite(v);
  if (!finite) {
    out.push_back("non-finite entry");
    return out;
  }
  if (!(s.rho() > 0.0)) out.push_back("density nonpositive");
  const double scale = std::max(1.0, max_abs(s.Theta));
  if (max_abs(s.Theta - s.Theta.transpose()) > 1e-12 * scale) out.push_back("Theta not symmetric");
  const double fscale = std::max(1.0, std::abs(s.rho()));
  for (int i = 0; i < D; ++i)
    if (std::abs(s.coeff(MultiIndex::unit(D, i))) > 1e-12 * fscale) out.push_back("first-order coefficient nonzero");
  if (s.kind() == Case::classic) {
    const double th = scalar_temperature(s);
    if (!(th > 0.0)) out.push_back("temperature nonpositive");
    if (max_abs(s.Theta - th * Matrix::Identity(D, D)) > 1e-12 * scale) out.push_back("classic case needs Theta = theta I");
    double trace = 0.0;
    for (int i = 0; i < D; ++i) trace += s.coeff(pair_index(D, i, i));
    if (std::abs(trace) > 1e-12 * fscale) out.push_back("sum of f_{2e_j} nonzero");
  } else {
    Eigen::LLT<Matrix> llt(0.5 * (s.Theta + s.Theta.transpose()));
    if (llt.info() != Eigen::Success) out.push_back("Theta not positive definite");
    for (const auto& [i, j] : upper_pairs(D))
      if (std::abs(s.coeff(pair_index(D, i, j))) > 1e-12 * fscale) out.push_back("second-order coefficient nonzero");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_valid(const MomentStateND& s) {
  const auto violations = validate(s);
  if (violations.empty()) return;
  std::string msg = "invalid moment state:";
  for (const auto& v : violations) msg += " [" + v + "]";
  throw ValidationError(msg);
}

std::vector<double> derivative_coeffs(const MomentStateND& s, const Derivatives& d) {
  const int D = s.D();
  const auto& idx = s.indices();
  if (static_cast<int>(d.du.size()) != D || d.dTheta.rows() != D || d.dTheta.cols() != D || d.df.size() != idx.size())
    throw ValidationError("derivative_coeffs: derivative shapes do not match the state");
  const double scale = std::max(1.0, max_abs(d.dTheta));
  if (max_abs(d.dTheta - d.dTheta.transpose()) > 1e-12 * scale)
    throw ValidationError("derivative_coeffs: dTheta must be symmetric");
  for (int i = 0; i < D; ++i)
    if (d.df[static_cast<std::size_t>(s.position(MultiIndex::unit(D, i)))] != 0.0)
      throw ValidationError("derivative_coeffs: first-order coefficients are constrained to zero");
  if (s.kind() == Case::classic) {
    const double dth = d.dTheta.trace() / D;
    if (max_abs(d.dTheta - dth * Matrix::Identity(D, D)) > 1e-12 * scale)
      throw ValidationError("derivative_coeffs: classic case needs dTheta = dtheta I");
    double trace = 0.0;
    for (int i = 0; i < D; ++i) trace += d.df[static_cast<std::size_t>(s.position(pair_index(D, i, i)))];
    if (std::abs(trace) > 1e-12 * std::max(1.0, s.rho()))
      throw ValidationError("derivative_coeffs: classic case needs sum of df_{2e_j} = 0");
  } else {
    for (const auto& [i, j] : upper_pairs(D))
      if (d.df[static_cast<std::size_t>(s.position(pair_index(D, i, j)))] != 0.0)
        throw ValidationError("derivative_coeffs: second-order coefficients are constrained to zero");
  }

  std::vector<double> G(idx.size(), 0.0);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const MultiIndex& a = idx[p];
    double g = d.df[p];
    for (int i = 0; i < D; ++i) {
      bool ok = false;
      const MultiIndex ai = a.shifted(i, -1, ok);
      if (!ok) continue;
      g += d.du[static_cast<std::size_t>(i)] * s.coeff(ai);
      for (int j = 0; j < D; ++j) {
        bool ok2 = false;
        const MultiIndex aij = ai.shifted(j, -1, ok2);
        if (ok2) g += 0.5 * d.dTheta(i, j) * s.coeff(aij);
      }
    }
    G[p] = g;
  }
  return G;
}

std::vector<double> convection_coeffs(const MomentStateND& s, int k, std::span<const double> G) {
  const int D = s.D();
  if (k < 0 || k >= D) throw ValidationError("convection_coeffs: direction out of range");
  const auto& idx = s.indices();
  if (G.size() != idx.size()) throw ValidationError("convection_coeffs: coefficient vector has wrong length");
  auto g_at = [&](const MultiIndex& b) {
    const int p = s.position(b);
    return p < 0 ? 0.0 : G[static_cast<std::size_t>(p)];
  };
  std::vector<double> J(idx.size(), 0.0);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const MultiIndex& a = idx[p];
    double v = s.u[static_cast<std::size_t>(k)] * G[p];
    if (a.order() < s.M()) {
      bool ok = false;
      v += (a[k] + 1) * g_at(a.shifted(k, 1, ok));
    }
    for (int l = 0; l < D; ++l) {
      bool ok = false;
      const MultiIndex al = a.shifted(l, -1, ok);
      if (ok) v += s.Theta(k, l) * g_at(al);
    }
    J[p] = v;
  }
  return J;
}

SystemLayout system_layout(int D, int M) {
  if (M < 3) throw ValidationError("system assembly needs M >= 3");
  const auto idx = enumerate_indices(D, M);
  std::map<MultiIndex, int> lookup;
  for (std::size_t i = 0; i < idx.size(); ++i) lookup[idx[i]] = static_cast<int>(i);
  SystemLayout layout;
  layout.basis.push_back(0);
  layout.unknown_labels.push_back("rho");
  for (int i = 0; i < D; ++i) {
    layout.basis.push_back(lookup.at(MultiIndex::unit(D, i)));
    layout.unknown_labels.push_back("u_" + std::to_string(i + 1));
  }
  for (const auto& [i, j] : upper_pairs(D)) {
    layout.basis.push_back(lookup.at(pair_index(D, i, j)));
    layout.unknown_labels.push_back("theta_" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (idx[p].order() < 3) continue;
    layout.basis.push_back(static_cast<int>(p));
    layout.unknown_labels.push_back("f_" + idx[p].str());
  }
  return layout;
}

Vector unknowns(const MomentStateND& s) {
  require_valid(s);
  const int D = s.D();
  const auto layout = system_layout(D, s.M());
  Vector w(static_cast<Eigen::Index>(layout.basis.size()));
  Eigen::Index r = 0;
  w(r++) = s.rho();
  for (int i = 0; i < D; ++i) w(r++) = s.u[static_cast<std::size_t>(i)];
  const double th = scalar_temperature(s);
  for (const auto& [i, j] : upper_pairs(D)) {
    if (s.kind() == Case::generalized) {
      w(r++) = s.Theta(i, j);
    } else {
      const double f = s.coeff(pair_index(D, i, j));
      w(r++) = i == j ? th + 2.0 * f / s.rho() : f / s.rho();
    }
  }
  for (std::size_t p = 0; p < s.indices().size(); ++p)
    if (s.indices()[p].order() >= 3) w(r++) = s.coeffs()[p];
  return w;
}

Derivatives unknown_direction(const MomentStateND& s, int j) {
  const int D = s.D();
  const auto pairs = upper_pairs(D);
  const int n_pairs = static_cast<int>(pairs.size());
  const int n = static_cast<int>(s.indices().size());
  if (j < 0 || j >= n) throw ValidationError("unknown_direction: index out of range");

  Derivatives d;
  d.du.assign(static_cast<std::size_t>(D), 0.0);
  d.dTheta = Matrix::Zero(D, D);
  d.df.assign(static_cast<std::size_t>(n), 0.0);
  auto df = [&](const MultiIndex& a) -> double& { return d.df[static_cast<std::size_t>(s.position(a))]; };
  const bool classic = s.kind() == Case::classic;
  const double rho = s.rho();

  if (j == 0) {
    d.df[0] = 1.0;
    if (classic) {
      // f_{2e_i} = rho (theta_ii - theta) / 2, f_{e_i+e_j} = rho theta_ij
      for (const auto& [a, b] : pairs) {
        const MultiIndex m = pair_index(D, a, b);
        df(m) = s.coeff(m) / rho;
      }
    }
    return d;
  }
  if (j <= D) {
    d.du[static_cast<std::size_t>(j - 1)] = 1.0;
    return d;
  }
  if (j <= D + n_pairs) {
    const auto [a, b] = pairs[static_cast<std::size_t>(j - D - 1)];
    if (!classic) {
      d.dTheta(a, b) = 1.0;
      d.dTheta(b, a) = 1.0;
      return d;
    }
    if (a != b) {
      df(pair_index(D, a, b)) = rho;
      return d;
    }
    d.dTheta = Matrix::Identity(D, D) / D;
    for (int i = 0; i < D; ++i) df(pair_index(D, i, i)) = 0.5 * rho * ((i == a ? 1.0 : 0.0) - 1.0 / D);
    return d;
  }
  // Higher coefficients follow the enumeration order.
  int count = D + n_pairs;
  for (int p = 0; p < n; ++p) {
    if (s.indices()[static_cast<std::size_t>(p)].order() < 3) continue;
    if (++count == j) {
      d.df[static_cast<std::size_t>(p)] = 1.0;
      return d;
    }
  }
  throw ValidationError("unknown_direction: index out of range");
}

QuasiLinearSystem assemble_system(const MomentStateND& s, double tau) {
  require_valid(s);
  if (!(tau > 0.0)) throw ValidationError("BGK relaxation time must be positive");
  const auto layout = system_layout(s.D(), s.M());
  const int n = static_cast<int>(layout.basis.size());
  QuasiLinearSystem sys;
  sys.dim = n;
  sys.D = Matrix::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const auto G = derivative_coeffs(s, unknown_direction(s, c));
    for (int r = 0; r < n; ++r) sys.D(r, c) = G[static_cast<std::size_t>(layout.basis[static_cast<std::size_t>(r)])];
  }
  for (int k = 0; k < s.D(); ++k) {
    Matrix Mk = Matrix::Zero(n, n);
    for (int c = 0; c < n; ++c) {
      std::vector<double> G(static_cast<std::size_t>(n), 0.0);
      G[static_cast<std::size_t>(layout.basis[static_cast<std::size_t>(c)])] = 1.0;
      const auto J = convection_coeffs(s, k, G);
      for (int r = 0; r < n; ++r) Mk(r, c) = J[static_cast<std::size_t>(layout.basis[static_cast<std::size_t>(r)])];
    }
    sys.Mk.push_back(std::move(Mk));
  }
  for (int r = 0; r < n; ++r) {
    if (std::abs(sys.D(r, r)) < 1e-300) throw NumericalError("assemble_system: D has a zero diagonal entry");
  }
  sys.q = Vector::Zero(n);
  if (!std::isinf(tau)) {
    for (int r = 0; r < n; ++r) {
      const auto p = static_cast<std::size_t>(layout.basis[static_cast<std::size_t>(r)]);
      if (s.indices()[p].order() >= 3) sys.q(r) = -s.coeffs()[p] / tau;
    }
  }
  return sys;
}

Matrix gram_matrix(const MomentStateND& s) {
  require_valid(s);
  const auto layout = system_layout(s.D(), s.M());
  const int n = static_cast<int>(layout.basis.size());
  const Matrix A = s.Theta.inverse();
  Matrix gram = Matrix::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const MultiIndex& beta = s.indices()[static_cast<std::size_t>(layout.basis[static_cast<std::size_t>(c)])];
    const Poly lead = linear_power_product(A, beta);
    for (int r = 0; r < n; ++r) {
      const MultiIndex& alpha = s.indices()[static_cast<std::size_t>(layout.basis[static_cast<std::size_t>(r)])];
      if (alpha.order() != beta.order()) continue;
      const auto it = lead.find(alpha.entries());
      if (it != lead.end()) gram(r, c) = it->second * multi_factorial(alpha.entries());
    }
  }
  return 0.5 * (gram + gram.transpose());
}

std::vector<Matrix> orthonormal_convection(const MomentStateND& s) {
  const auto sys = assemble_system(s);
  Eigen::LLT<Matrix> llt(gram_matrix(s));
  if (llt.info() != Eigen::Success) throw NumericalError("orthonormal_convection: Gram matrix not positive definite");
  const Matrix L = llt.matrixL();
  const Matrix Linv = L.inverse();
  std::vector<Matrix> out;
  for (const auto& Mk : sys.Mk) out.push_back(L.transpose() * Mk * Linv.transpose());
  return out;
}

MomentStateND rotate(const MomentStateND& s, const Matrix& R) {
  require_valid(s);
  const int D = s.D();
  if (R.rows() != D || R.cols() != D) throw ValidationError("rotate: R must be D x D");
  if (max_abs(R * R.transpose() - Matrix::Identity(D, D)) > 1e-10) throw ValidationError("rotate: R is not orthogonal");
  MomentStateND out(D, s.M(), s.kind());
  Vector u(D);
  for (int i = 0; i < D; ++i) u(i) = s.u[static_cast<std::size_t>(i)];
  const Vector ur = R * u;
  for (int i = 0; i < D; ++i) out.u[static_cast<std::size_t>(i)] = ur(i);
  out.Theta = R * s.Theta * R.transpose();
  out.Theta = 0.5 * (out.Theta + out.Theta.transpose());
  std::fill(out.coeffs().begin(), out.coeffs().end(), 0.0);
  const Matrix Rt = R.transpose();  // row d of Rt holds (R_{ed})_e
  for (std::size_t p = 0; p < s.indices().size(); ++p) {
    const double fa = s.coeffs()[p];
    if (fa == 0.0) continue;
    const Poly c = linear_power_product(Rt, s.indices()[p]);
    for (const auto& [e, v] : c) {
      const int q = out.position(MultiIndex(e));
      out.coeffs()[static_cast<std::size_t>(q)] += fa * v;
    }
  }
  if (s.kind() == Case::classic) {
    // Remove round-off from the structural constraints.
    const double th = scalar_temperature(out);
    out.Theta = th * Matrix::Identity(D, D);
    for (int i = 0; i < D; ++i) out.set_coeff(MultiIndex::unit(D, i), 0.0);
    double trace = 0.0;
    for (int i = 0; i < D; ++i) trace += out.coeff(pair_index(D, i, i));
    for (int i = 0; i < D; ++i) out.set_coeff(pair_index(D, i, i), out.coeff(pair_index(D, i, i)) - trace / D);
  } else {
    for (int i = 0; i < D; ++i) out.set_coeff(MultiIndex::unit(D, i), 0.0);
    for (const auto& [i, j] : upper_pairs(D)) out.set_coeff(pair_index(D, i, j), 0.0);
  }
  return out;
}

MomentStateND random_state(int D, int M, Case kind, Rng& rng) {
  MomentStateND s(D, M, kind);
  const double rho = rng.uniform(0.5, 2.0);
  const double th = rng.uniform(0.5, 2.0);
  s.coeffs()[0] = rho;
  for (auto& v : s.u) v = rng.uniform(-1.0, 1.0);
  if (kind == Case::classic) {
    s.Theta = th * Matrix::Identity(D, D);
    for (const auto& [i, j] : upper_pairs(D)) s.set_coeff(pair_index(D, i, j), rho * th * rng.uniform(-0.1, 0.1));
    double trace = 0.0;
    for (int i = 0; i < D; ++i) trace += s.coeff(pair_index(D, i, i));
    for (int i = 0; i < D; ++i) s.set_coeff(pair_index(D, i, i), s.coeff(pair_index(D, i, i)) - trace / D);
  } else {
    Matrix P = Matrix::Zero(D, D);
    for (int i = 0; i < D; ++i)
      for (int j = i; j < D; ++j) P(i, j) = P(j, i) = rng.uniform(-0.2, 0.2);
    s.Theta = th * (Matrix::Identity(D, D) + P);
    Eigen::LLT<Matrix> llt(s.Theta);
    if (llt.info() != Eigen::Success) s.Theta = th * Matrix::Identity(D, D);
  }
  for (std::size_t p = 0; p < s.indices().size(); ++p) {
    const int order = s.indices()[p].order();
    if (order >= 3) s.coeffs()[p] = rho * std::pow(th, 0.5 * order) * rng.uniform(-0.2, 0.2);
  }
  return s;
}

}  // namespace hme::nd
