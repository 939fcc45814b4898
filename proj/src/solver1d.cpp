#include "hme/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hme/errors.hpp"
#include "hme/hermite.hpp"
#include "hme/hme1d.hpp"

namespace hme::solver {

namespace {

double largest_root(int k) {
  static thread_local std::vector<double> cache;
  if (cache.size() <= static_cast<std::size_t>(k)) cache.resize(static_cast<std::size_t>(k) + 1, 0.0);
  double& c = cache[static_cast<std::size_t>(k)];
  if (c == 0.0) c = hermite::roots(k).back();
  return c;
}

MomentState1D average(const MomentState1D& a, const MomentState1D& b) {
  return MomentState1D::from_vector(0.5 * (a.to_vector() + b.to_vector()));
}

// Cells with one ghost on each side.
std::vector<MomentState1D> with_ghosts(const Grid1D& grid, Boundary bc) {
  const int n = grid.n_cells();
  std::vector<MomentState1D> out;
  out.reserve(static_cast<std::size_t>(n + 2));
  out.push_back(bc == Boundary::periodic ? grid.cells.back() : grid.cells.front());
  out.insert(out.end(), grid.cells.begin(), grid.cells.end());
  out.push_back(bc == Boundary::periodic ? grid.cells.front() : grid.cells.back());
  return out;
}

}  // namespace

void validate(const SimConfig& c) {
  std::vector<std::string> bad;
  if (c.M < 3) bad.push_back("M must be >= 3");
  if (c.n_cells < 4) bad.push_back("n_cells must be >= 4");
  if (!(c.x_max > c.x_min) || !std::isfinite(c.x_min) || !std::isfinite(c.x_max)) bad.push_back("need x_min < x_max");
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) bad.push_back("cfl must lie in (0, 1)");
  if (!(c.tau > 0.0)) bad.push_back("tau must be positive");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) bad.push_back("t_end must be finite and >= 0");
  if (c.output_stride < 0) bad.push_back("output_stride must be >= 0");
  if (bad.empty()) return;
  std::string msg = "invalid simulation config:";
  for (const auto& b : bad) msg += " [" + b + "]";
  throw ValidationError(msg);
}

void validate(const Grid1D& grid) {
  if (grid.n_cells() < 4) throw ValidationError("grid needs at least 4 cells");
  if (!(grid.x_max > grid.x_min)) throw ValidationError("grid needs x_min < x_max");
  const int M = grid.cells.front().M;
  for (const auto& c : grid.cells) {
    if (c.M != M) throw ValidationError("grid cells must share the same M");
    require_valid(c);
  }
}

Grid1D make_grid(const SimConfig& config, const InitialCondition& ic) {
  validate(config);
  require_valid(ic.left);
  if (ic.left.M != config.M) throw ValidationError("initial state order does not match config M");
  if (ic.kind == InitialCondition::Kind::riemann) {
    require_valid(ic.right);
    if (ic.right.M != config.M) throw ValidationError("initial state order does not match config M");
  }
  Grid1D grid;
  grid.x_min = config.x_min;
  grid.x_max = config.x_max;
  grid.cells.assign(static_cast<std::size_t>(config.n_cells), ic.left);
  const double length = config.x_max - config.x_min;
  for (int i = 0; i < config.n_cells; ++i) {
    const double x = grid.center(i);
    auto& cell = grid.cells[static_cast<std::size_t>(i)];
    switch (ic.kind) {
      case InitialCondition::Kind::uniform:
        break;
      case InitialCondition::Kind::riemann:
        if (x >= ic.x0) cell = ic.right;
        break;
      case InitialCondition::Kind::sine: {
        const double s = std::sin(2.0 * std::numbers::pi * ic.wavenumber * (x - config.x_min) / length);
        cell.rho += ic.rho_amp * s;
        cell.u += ic.u_amp * s;
        break;
      }
    }
  }
  validate(grid);
  return grid;
}

double max_wavespeed(const MomentState1D& state) {
  require_valid(state);
  return std::abs(state.u) + largest_root(state.M + 1) * std::sqrt(state.theta);
}

double stable_dt(const Grid1D& grid, const SimConfig& config) {
  const auto ext = with_ghosts(grid, config.bc);
  double smax = 0.0;
  for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
    smax = std::max(smax, max_wavespeed(ext[i]));
    smax = std::max(smax, max_wavespeed(average(ext[i], ext[i + 1])));
  }
  smax = std::max(smax, max_wavespeed(ext.back()));
  return config.cfl * grid.dx() / smax;
}

Grid1D step(const Grid1D& grid, const SimConfig& config, double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw NumericalError("step: invalid time step");
  const double dx = grid.dx();
  double cell_speed = 0.0;
  for (const auto& c : grid.cells) cell_speed = std::max(cell_speed, max_wavespeed(c));
  const double bound = config.cfl * dx / cell_speed;
  if (dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "CFL violation: dt = " << dt << " exceeds cfl*dx/max_speed = " << bound;
    throw NumericalError(msg.str());
  }

  const auto ext = with_ghosts(grid, config.bc);
  const int n = grid.n_cells();
  const int dim = grid.cells.front().dim();
  // Interface j sits between ext[j] and ext[j+1], j = 0..n.
  std::vector<Vector> minus(static_cast<std::size_t>(n + 1));
  std::vector<Vector> plus(static_cast<std::size_t>(n + 1));
  std::vector<double> mass_flux(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    const auto& L = ext[static_cast<std::size_t>(j)];
    const auto& R = ext[static_cast<std::size_t>(j + 1)];
    const MomentState1D mid = average(L, R);
    const Vector dw = R.to_vector() - L.to_vector();
    const double alpha = std::max({max_wavespeed(L), max_wavespeed(R), max_wavespeed(mid)});
    const Vector phi = regularized_matrix(mid) * dw;
    minus[static_cast<std::size_t>(j)] = 0.5 * (phi - alpha * dw);
    plus[static_cast<std::size_t>(j)] = 0.5 * (phi + alpha * dw);
    mass_flux[static_cast<std::size_t>(j)] = 0.5 * (L.rho * L.u + R.rho * R.u) - 0.5 * alpha * (R.rho - L.rho);
  }

  Grid1D out = grid;
  const double ratio = dt / dx;
  const double decay = std::isinf(config.tau) ? 1.0 : std::exp(-dt / config.tau);
  for (int i = 0; i < n; ++i) {
    const auto& cell = grid.cells[static_cast<std::size_t>(i)];
    Vector w = cell.to_vector() - ratio * (plus[static_cast<std::size_t>(i)] + minus[static_cast<std::size_t>(i + 1)]);
    w(0) = cell.rho - ratio * (mass_flux[static_cast<std::size_t>(i + 1)] - mass_flux[static_cast<std::size_t>(i)]);
    for (int a = 3; a < dim; ++a) w(a) *= decay;
    MomentState1D next = MomentState1D::from_vector(w);
    const auto violations = hme::validate(next);
    if (!violations.empty()) {
      std::ostringstream msg;
      msg << "step produced an invalid state in cell " << i << " (x = " << grid.center(i) << "):";
      for (const auto& v : violations) msg << " [" << v << "]";
      throw NumericalError(msg.str());
    }
    out.cells[static_cast<std::size_t>(i)] = std::move(next);
  }
  return out;
}

Totals conserved_totals(const Grid1D& grid) {
  Totals t;
  const double dx = grid.dx();
  for (const auto& c : grid.cells) {
    t.mass += dx * c.rho;
    t.momentum += dx * c.rho * c.u;
    t.energy += dx * 0.5 * c.rho * (c.u * c.u + c.theta);
  }
  return t;
}

Trajectory run(const SimConfig& config, const InitialCondition& ic) {
  validate(config);
  Trajectory traj;
  Grid1D grid = make_grid(config, ic);
  traj.snapshots.push_back(Snapshot{0, 0.0, grid});
  traj.totals.push_back(conserved_totals(grid));
  double t = 0.0;
  int steps = 0;
  while (t < config.t_end) {
    double dt = stable_dt(grid, config);
    const double remaining = config.t_end - t;
    const bool last = dt >= remaining;
    if (last) dt = remaining;
    grid = step(grid, config, dt);
    ++steps;
    t = last ? config.t_end : t + dt;
    traj.dt_history.push_back(dt);
    traj.totals.push_back(conserved_totals(grid));
    const bool stride_hit = config.output_stride > 0 && steps % config.output_stride == 0;
    if (stride_hit || t >= config.t_end) traj.snapshots.push_back(Snapshot{steps, t, grid});
  }
  return traj;
}

}  // namespace hme::solver
