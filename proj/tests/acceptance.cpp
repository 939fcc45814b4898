// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "hme/hermite.hpp"
#include "hme/hme1d.hpp"
#include "hme/hyperbolicity.hpp"
#include "hme/moment13.hpp"
#include "hme/momentnd.hpp"
#include "hme/random.hpp"
#include "hme/solver1d.hpp"
#include "oracles.hpp"

using namespace hme;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr int kStatesPerM = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<MomentState1D> sample_states(int M) {
  Rng rng(kSeed + static_cast<std::uint64_t>(M));
  std::vector<MomentState1D> out;
  for (int i = 0; i < kStatesPerM; ++i) out.push_back(random_state_1d(M, rng));
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome spectrum_identity() {
  double worst = 0.0;
  for (int M = 3; M <= 10; ++M) {
    const auto c = hermite::roots(M + 1);
    for (const auto& s : sample_states(M)) {
      const auto rep = analyze(regularized_matrix(s));
      const double tol = 1e-8 * (1.0 + std::abs(s.u) + std::sqrt(s.theta));
      for (int j = 0; j <= M; ++j) {
        const double expected = s.u + c[static_cast<std::size_t>(j)] * std::sqrt(s.theta);
        worst = std::max(worst, std::abs(rep.eigenvalues[static_cast<std::size_t>(j)] - expected) / tol);
      }
    }
  }
  return {worst < 1.0, "max error / tolerance " + fmt(worst)};
}

Outcome factorization_identity() {
  double worst = 0.0;
  for (int M = 3; M <= 10; ++M)
    for (const auto& s : sample_states(M)) {
      const Matrix A = regularized_matrix(s);
      const Matrix D = factor_D(s);
      const Matrix lhs = D * A;
      const Matrix rhs = multiply_truncate(s.u, s.theta, M) * D;
      worst = std::max(worst, max_abs(lhs - rhs) / (1e-12 * max_abs(A)));
    }
  return {worst < 1.0, "max residual / tolerance " + fmt(worst)};
}

Outcome deduction_equivalence() {
  double worst = 0.0;
  for (int M = 3; M <= 10; ++M)
    for (const auto& s : sample_states(M)) {
      const auto sys = build_system_by_deduction(s);
      worst = std::max(worst, max_abs(sys.transport_matrix(0) - regularized_matrix(s)));
    }
  return {worst < 1e-11, "max deviation " + fmt(worst)};
}

Outcome characteristic_polynomial() {
  double worst = 0.0;
  for (int M = 3; M <= 8; ++M) {
    const auto c = hermite::roots(M + 1);
    for (const auto& s : sample_states(M)) {
      const Matrix A = regularized_matrix(s);
      const double sq = std::sqrt(s.theta);
      // Midpoints between roots, then points beyond the outermost roots.
      std::vector<double> t;
      for (int j = 0; j < M; ++j) t.push_back(0.5 * (c[static_cast<std::size_t>(j)] + c[static_cast<std::size_t>(j + 1)]));
      for (int j = 0; static_cast<int>(t.size()) < 2 * (M + 1); ++j) {
        const double step = 0.5 * (j / 2 + 1);
        t.push_back(j % 2 == 0 ? c.back() + step : c.front() - step);
      }
      for (double tj : t) {
        const double lambda = s.u + tj * sq;
        const Matrix L = lambda * Matrix::Identity(M + 1, M + 1) - A;
        const double det = L.partialPivLu().determinant();
        const double ref = oracle::char_poly(s, lambda);
        worst = std::max(worst, std::abs(det - ref) / std::abs(ref));
      }
    }
  }
  return {worst < 1e-9, "max relative deviation " + fmt(worst)};
}

Outcome grad_region() {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(-1.0 + 2.0 * i / 40.0);
  const std::vector<double> zero{0.0};
  const auto grad = scan_grad_region(3, zero, grid, ScanTarget::grad);
  const auto reg = scan_grad_region(3, zero, grid, ScanTarget::regularized);
  bool origin = false;
  int grad_bad = 0, reg_good = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] == 0.0) origin = grad.cells[0][j].hyperbolic;
    if (!grad.cells[0][j].hyperbolic) ++grad_bad;
    if (reg.cells[0][j].hyperbolic) ++reg_good;
  }
  const bool pass = origin && grad_bad > 0 && reg_good == static_cast<int>(grid.size());
  return {pass, "grad non-hyperbolic points " + std::to_string(grad_bad) + "/41, regularized hyperbolic " +
                    std::to_string(reg_good) + "/41"};
}

Outcome minimal_polynomial_13() {
  Rng rng(kSeed + 13);
  double worst_res = 0.0, worst_eig = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = m13::random_state(rng);
    const Matrix M1 = m13::assemble_M(s, 1);
    const double n = max_abs(M1);
    worst_res = std::max(worst_res, max_abs(m13::minimal_polynomial_residual(s)) / (1e-10 * n * n * n));

    // Roots of x (x^2 - 7/5) (x^4 - 26/5 x^2 + 3) in units of sqrt(theta).
    const double th = s.temperature();
    std::vector<double> roots{0.0, std::sqrt(1.4), -std::sqrt(1.4)};
    const double disc = std::sqrt(26.0 * 26.0 / 25.0 - 12.0);
    for (double r2 : {0.5 * (5.2 + disc), 0.5 * (5.2 - disc)}) {
      roots.push_back(std::sqrt(r2));
      roots.push_back(-std::sqrt(r2));
    }
    const auto rep = analyze(M1);
    for (const auto& l : rep.eigenvalues) {
      double best = std::abs(l.imag()) + 1e300;
      for (double r : roots) best = std::min(best, std::abs(l - std::complex<double>(s.u[0] + r * std::sqrt(th), 0.0)));
      worst_eig = std::max(worst_eig, best);
    }
    const auto sp = m13::eigenspeeds(s, 1);
    std::vector<double> expected;
    for (double r : roots) expected.push_back(s.u[0] + r * std::sqrt(th));
    std::sort(expected.begin(), expected.end());
    for (std::size_t j = 0; j < 7; ++j) worst_eig = std::max(worst_eig, std::abs(sp.speeds[j] - expected[j]));
  }
  return {worst_res < 1.0 && worst_eig < 1e-9,
          "residual / tolerance " + fmt(worst_res) + ", eigenvalue error " + fmt(worst_eig)};
}

Outcome directional_13() {
  Rng rng(kSeed + 14);
  int checked = 0, passed = 0;
  for (int i = 0; i < 20; ++i) {
    const auto s = m13::random_state(rng);
    std::array<Matrix, 3> Mk{m13::assemble_M(s, 1), m13::assemble_M(s, 2), m13::assemble_M(s, 3)};
    for (int d = 0; d < 200; ++d) {
      const Vector n = rng.unit_vector(3);
      const Matrix A = n(0) * Mk[0] + n(1) * Mk[1] + n(2) * Mk[2];
      ++checked;
      if (analyze(A).verdict == Verdict::hyperbolic) ++passed;
    }
  }
  return {passed == checked, std::to_string(passed) + "/" + std::to_string(checked) + " directions hyperbolic"};
}

Outcome nd_reduction() {
  double worst = 0.0;
  for (int M = 3; M <= 10; ++M)
    for (const auto& s1 : sample_states(M)) {
      auto sn = nd::MomentStateND::equilibrium(1, M, nd::Case::classic, s1.rho, {s1.u}, s1.theta * Matrix::Identity(1, 1));
      for (int a = 3; a <= M; ++a) sn.set_coeff(nd::MultiIndex({a}), s1.coeff(a));
      const auto sys = nd::assemble_system(sn);
      worst = std::max({worst, max_abs(sys.D - factor_D(s1)), max_abs(sys.Mk[0] - multiply_truncate(s1.u, s1.theta, M)),
                        max_abs(sys.transport_matrix(0) - regularized_matrix(s1))});
    }
  Rng rng(kSeed + 15);
  int configs = 0, configs_ok = 0;
  for (int D : {2, 3})
    for (int M = 3; M <= 5; ++M)
      for (auto kind : {nd::Case::classic, nd::Case::generalized}) {
        bool ok = true;
        for (int i = 0; i < 20; ++i) {
          const auto s = nd::random_state(D, M, kind, rng);
          ok = check_abs_system(nd::assemble_system(s), 5, rng).passed() && ok;
        }
        ++configs;
        if (ok) ++configs_ok;
      }
  return {worst < 1e-12 && configs_ok == configs,
          "D=1 max deviation " + fmt(worst) + ", " + std::to_string(configs_ok) + "/" + std::to_string(configs) +
              " configurations pass"};
}

double l1_against_coarse(const solver::Grid1D& fine, const solver::Grid1D& coarse) {
  double err = 0.0;
  for (int i = 0; i < coarse.n_cells(); ++i) {
    const double avg = 0.5 * (fine.cells[static_cast<std::size_t>(2 * i)].rho + fine.cells[static_cast<std::size_t>(2 * i + 1)].rho);
    err += coarse.dx() * std::abs(avg - coarse.cells[static_cast<std::size_t>(i)].rho);
  }
  return err;
}

Outcome solver_sanity() {
  using namespace hme::solver;
  std::ostringstream msg;
  bool pass = true;

  {
    SimConfig c;
    c.M = 5;
    c.n_cells = 50;
    c.tau = 0.05;
    c.t_end = 0.2;
    InitialCondition ic;
    ic.left = MomentState1D::equilibrium(5, 1.3, 0.4, 0.9);
    const auto traj = run(c, ic);
    double drift = 0.0;
    for (const auto& cell : traj.snapshots.back().grid.cells)
      for (int i = 0; i < 6; ++i) drift = std::max(drift, std::abs(cell.to_vector()(i) - ic.left.to_vector()(i)));
    pass = pass && drift == 0.0;
    msg << "fixed point drift " << fmt(drift);
  }
  {
    SimConfig c;
    c.M = 4;
    c.n_cells = 100;
    c.tau = 0.01;
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::sine;
    ic.left = MomentState1D::equilibrium(4, 1.0, 0.3, 1.0);
    ic.left.f = {0.05, -0.02};
    ic.rho_amp = 0.3;
    ic.u_amp = 0.2;
    auto g = make_grid(c, ic);
    const double m0 = conserved_totals(g).mass;
    for (int n = 0; n < 100; ++n) g = step(g, c, stable_dt(g, c));
    const double drift = std::abs(conserved_totals(g).mass - m0) / m0;
    pass = pass && drift < 1e-10;
    msg << ", mass drift " << fmt(drift);
  }
  {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::sine;
    ic.left = MomentState1D::equilibrium(3, 1.0, 0.3, 1.0);
    ic.rho_amp = 0.2;
    ic.u_amp = 0.1;
    std::vector<Grid1D> finals;
    for (int n : {200, 400, 800}) {
      SimConfig c;
      c.M = 3;
      c.n_cells = n;
      c.tau = 1.0;
      c.t_end = 0.1;
      finals.push_back(run(c, ic).snapshots.back().grid);
    }
    const double order = std::log2(l1_against_coarse(finals[1], finals[0]) / l1_against_coarse(finals[2], finals[1]));
    pass = pass && order >= 0.9;
    msg << ", convergence order " << fmt(order);
  }
  {
    SimConfig c;
    c.M = 5;
    c.n_cells = 400;
    c.tau = 1e-3;
    c.t_end = 0.1;
    c.bc = Boundary::copy;
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::riemann;
    ic.left = MomentState1D::equilibrium(5, 1.0, 0.0, 1.0);
    ic.right = MomentState1D::equilibrium(5, 0.125, 0.0, 0.8);
    const auto traj = run(c, ic);
    const Grid1D& g = traj.snapshots.back().grid;
    const double bound = std::max(max_wavespeed(ic.left), max_wavespeed(ic.right));
    const double margin = 4.0 * g.dx();
    double outside = 0.0;
    for (int i = 0; i < g.n_cells(); ++i) {
      const double x = g.center(i);
      if (std::abs(x - ic.x0) <= bound * c.t_end + margin) continue;
      const auto& cell = g.cells[static_cast<std::size_t>(i)];
      const auto& ref = x < ic.x0 ? ic.left : ic.right;
      outside = std::max({outside, std::abs(cell.rho - ref.rho), std::abs(cell.u - ref.u), std::abs(cell.theta - ref.theta)});
    }
    pass = pass && outside < 1e-6;
    msg << ", change outside fan " << fmt(outside);
  }
  return {pass, msg.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(HME_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("hme_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "c13.json") << R"({"n_states":20,"n_direction_states":4,"n_directions":40})";
  std::ofstream(dir / "cnd.json") << R"({"D":2,"M":[3,4],"n_states":4,"n_directions":4})";
  std::ofstream(dir / "sim.json") << R"({"M":4,"n_cells":64,"t_end":0.05,"tau":0.01,"bc":"copy","output_stride":5,
    "initial":{"kind":"riemann","left":{"rho":1,"u":0,"theta":1},"right":{"rho":0.3,"u":0,"theta":0.7}}})";

  bool pass = true;
  int compared = 0;
  for (int rep = 0; rep < 2; ++rep) {
    const std::string r = std::to_string(rep);
    pass = run_cli("check13 " + (dir / "c13.json").string() + " --seed 77", dir / ("c13_" + r)) == 0 && pass;
    pass = run_cli("checknd " + (dir / "cnd.json").string() + " --seed 77", dir / ("cnd_" + r)) == 0 && pass;
    pass = run_cli("scan --format json", dir / ("scan_" + r)) == 0 && pass;
    pass = run_cli("simulate " + (dir / "sim.json").string() + " --out " + (dir / ("sim_" + r)).string(), dir / ("log_" + r)) == 0 &&
           pass;
  }
  for (const char* name : {"c13_", "cnd_", "scan_"}) {
    pass = pass && slurp(dir / (std::string(name) + "0")) == slurp(dir / (std::string(name) + "1"));
    ++compared;
  }
  for (const auto& entry : fs::directory_iterator(dir / "sim_0")) {
    pass = pass && slurp(entry.path()) == slurp(dir / "sim_1" / entry.path().filename());
    ++compared;
  }
  fs::remove_all(dir);
  return {pass, std::to_string(compared) + " output files compared"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"spectrum identity", spectrum_identity},
      {"factorization identity", factorization_identity},
      {"deduction equivalence", deduction_equivalence},
      {"characteristic polynomial", characteristic_polynomial},
      {"Grad non-hyperbolicity", grad_region},
      {"13-moment minimal polynomial", minimal_polynomial_13},
      {"13-moment directional hyperbolicity", directional_13},
      {"ND reduction and hyperbolicity", nd_reduction},
      {"solver sanity", solver_sanity},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
