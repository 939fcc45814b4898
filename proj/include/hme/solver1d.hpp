#pragma once

#include <string>
#include <vector>

#include "hme/state1d.hpp"

namespace hme::solver {

enum class Boundary { periodic, copy };

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::vector<MomentState1D> cells;

  int n_cells() const { return static_cast<int>(cells.size()); }
  double dx() const { return (x_max - x_min) / static_cast<double>(cells.size()); }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
};

struct SimConfig {
  int M = 3;
  int n_cells = 200;
  double x_min = 0.0;
  double x_max = 1.0;
  double cfl = 0.45;
  double tau = 1.0;
  double t_end = 0.1;
  Boundary bc = Boundary::periodic;
  int output_stride = 0;  // 0: initial and final snapshots only
};

void validate(const SimConfig& config);
void validate(const Grid1D& grid);

/// Initial data. `riemann` puts `left` on x < x0 and `right` elsewhere;
/// `sine` perturbs rho (and optionally u) of `left` by amp sin(2 pi k x / L).
struct InitialCondition {
  enum class Kind { uniform, riemann, sine } kind = Kind::uniform;
  MomentState1D left;
  MomentState1D right;
  double x0 = 0.5;
  double rho_amp = 0.0;
  double u_amp = 0.0;
  int wavenumber = 1;
};

Grid1D make_grid(const SimConfig& config, const InitialCondition& ic);

/// |u| + c_max sqrt(theta), c_max the largest root of He_{M+1}.
double max_wavespeed(const MomentState1D& state);

/// cfl * dx / (largest max_wavespeed over cells and interface averages).
double stable_dt(const Grid1D& grid, const SimConfig& config);

/// One step: local Lax-Friedrichs fluctuations on the quasilinear form with
/// A_hat evaluated at interface averages (straight-line path, midpoint rule),
/// the density equation in conservative flux form, then exact BGK relaxation
/// f_alpha *= exp(-dt/tau), alpha >= 3.
/// Throws NumericalError on CFL violation or on an unrealizable result.
Grid1D step(const Grid1D& grid, const SimConfig& config, double dt);

struct Totals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};
/// sum dx (rho, rho u, rho u^2/2 + rho theta/2).
Totals conserved_totals(const Grid1D& grid);

struct Snapshot {
  int step = 0;
  double time = 0.0;
  Grid1D grid;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<double> dt_history;
  std::vector<Totals> totals;  // after every step, totals[0] = initial
};

/// Advances to t_end with CFL-adaptive steps (last step clipped to land on
/// t_end). Snapshots: the initial grid, every output_stride-th step, and the
/// final grid.
Trajectory run(const SimConfig& config, const InitialCondition& ic);

}  // namespace hme::solver
