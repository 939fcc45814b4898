#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "hme/errors.hpp"
#include "hme/hermite.hpp"
#include "hme/hme1d.hpp"
#include "hme/hyperbolicity.hpp"
#include "hme/io.hpp"
#include "hme/moment13.hpp"
#include "hme/momentnd.hpp"
#include "hme/random.hpp"
#include "hme/solver1d.hpp"
#include "hme/version.hpp"

namespace hme::cli {

namespace {

using io::Json;

constexpr std::uint64_t kDefaultSeed = 20240601;

Json tool_info() { return Json{{"name", "hme"}, {"version", kVersion}}; }

std::string format_or(const Common& c, const std::string& fallback) { return c.format.empty() ? fallback : c.format; }

AnalyzeOptions analyze_options(const Common& c) { return AnalyzeOptions{c.tol, c.cond_cap}; }

std::uint64_t resolve_seed(const Common& c, const Json& config) {
  if (c.seed) return *c.seed;
  if (config.contains("seed")) {
    if (!config["seed"].is_number_unsigned()) throw ValidationError("field 'seed' must be a nonnegative integer");
    return config["seed"].get<std::uint64_t>();
  }
  return kDefaultSeed;
}

Json load_optional(const std::string& path) { return path.empty() ? Json::object() : io::read_json_file(path); }

void emit(const std::string& text, const Common& c) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_file_atomic(c.out, text);
  }
}

std::string csv_header(const Json& config) {
  std::ostringstream os;
  os << "# hme " << kVersion << "\n";
  os << "# config: " << config.dump() << "\n";
  return os.str();
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string layout_labels_1d(int M) {
  std::string s = "rho,u,theta";
  for (int a = 3; a <= M; ++a) s += ",f" + std::to_string(a);
  return s;
}

Json complex_list(const std::vector<std::complex<double>>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(Json{{"re", v.real()}, {"im", v.imag()}});
  return out;
}

Json report_json(const HyperbolicityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["max_imag"] = r.max_imag;
  j["scale"] = r.scale;
  j["diagonalizable"] = r.diagonalizable;
  j["eigvec_condition"] = std::isfinite(r.eigvec_condition) ? Json(r.eigvec_condition) : Json("inf");
  j["eigenvalues"] = complex_list(r.eigenvalues);
  return j;
}

template <class T>
std::vector<T> list_or_scalar(const Json& config, const std::string& name, std::vector<T> fallback) {
  if (!config.contains(name)) return fallback;
  const Json& v = config[name];
  std::vector<T> out;
  try {
    if (v.is_array()) {
      for (const auto& x : v) out.push_back(x.get<T>());
    } else {
      out.push_back(v.get<T>());
    }
  } catch (const Json::exception&) {
    throw ValidationError("field '" + name + "' has the wrong type");
  }
  if (out.empty()) throw ValidationError("field '" + name + "' must not be empty");
  return out;
}

int positive_int(const Json& config, const std::string& name, int fallback) {
  if (!config.contains(name)) return fallback;
  if (!config[name].is_number_integer() || config[name].get<int>() < 0)
    throw ValidationError("field '" + name + "' must be a nonnegative integer");
  return config[name].get<int>();
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n == 1) return {lo};
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back((lo * (n - 1 - i) + hi * i) / (n - 1));
  return out;
}

std::vector<double> grid_axis(const Json& config, const std::string& name, std::vector<double> fallback) {
  if (!config.contains(name)) return fallback;
  const Json& v = config[name];
  if (v.is_object()) {
    const double lo = v.value("min", -1.0);
    const double hi = v.value("max", 1.0);
    const int n = v.value("n", 41);
    if (n < 1 || !(hi >= lo)) throw ValidationError("field '" + name + "' needs n >= 1 and max >= min");
    return linspace(lo, hi, n);
  }
  return list_or_scalar<double>(config, name, fallback);
}

}  // namespace

int assemble(const std::string& state_path, const std::string& which, const Common& c) {
  const auto state = io::state1d_from_json(io::read_json_file(state_path));
  const auto state_json = io::to_json(state);
  Json config{{"command", "assemble"}, {"which", which}, {"state", state_json}, {"state_hash", io::content_hash(state_json)}};
  const std::string layout = layout_labels_1d(state.M);
  const std::string fmt = format_or(c, "csv");

  if (which == "system") {
    const auto sys = build_system_by_deduction(state);
    const Matrix transport = sys.transport_matrix(0);
    if (fmt == "json") {
      Json out{{"tool", tool_info()}, {"config", config}, {"layout", layout}};
      out["D"] = io::matrix_to_json(sys.D);
      out["M"] = io::matrix_to_json(sys.Mk.front());
      out["q"] = io::vector_to_json(sys.q);
      out["transport"] = io::matrix_to_json(transport);
      emit(json_text(out), c);
      return 0;
    }
    std::ostringstream os;
    os << csv_header(config) << "# layout: " << layout << "\n";
    os << "# D\n";
    io::write_csv_matrix(os, sys.D);
    os << "# M\n";
    io::write_csv_matrix(os, sys.Mk.front());
    os << "# q\n";
    io::write_csv_matrix(os, sys.q.transpose());
    os << "# transport D^-1 M D\n";
    io::write_csv_matrix(os, transport);
    emit(os.str(), c);
    return 0;
  }

  Matrix m;
  if (which == "grad") m = grad_matrix(state);
  else if (which == "regularized") m = regularized_matrix(state);
  else if (which == "D") m = factor_D(state);
  else if (which == "M") m = multiply_truncate(state.u, state.theta, state.M);
  else throw ValidationError("unknown matrix '" + which + "'");

  if (fmt == "json") {
    emit(json_text(Json{{"tool", tool_info()}, {"config", config}, {"layout", layout}, {"matrix", io::matrix_to_json(m)}}), c);
    return 0;
  }
  std::ostringstream os;
  os << csv_header(config) << "# layout: " << layout << "\n";
  io::write_csv_matrix(os, m);
  emit(os.str(), c);
  return 0;
}

int eig(const std::string& state_path, const std::string& target, const Common& c) {
  const Json input = io::read_json_file(state_path);
  Json config{{"command", "eig"}, {"target", target}, {"tol", c.tol}, {"cond_cap", c.cond_cap}};
  Matrix m;
  Json predicted = nullptr;
  if (target == "m13") {
    const auto s = io::state13_from_json(input);
    config["state"] = io::to_json(s);
    m = m13::assemble_M(s, 1);
    const auto speeds = m13::eigenspeeds(s, 1);
    predicted = Json::array();
    for (std::size_t i = 0; i < speeds.speeds.size(); ++i)
      predicted.push_back(Json{{"speed", speeds.speeds[i]}, {"multiplicity", speeds.multiplicity[i]}});
  } else {
    const auto s = io::state1d_from_json(input);
    config["state"] = io::to_json(s);
    if (target == "grad") {
      m = grad_matrix(s);
    } else {
      m = regularized_matrix(s);
      predicted = Json::array();
      for (double r : hermite::roots(s.M + 1)) predicted.push_back(Json{{"speed", s.u + r * std::sqrt(s.theta)}, {"multiplicity", 1}});
    }
  }
  const auto report = analyze(m, analyze_options(c));

  if (format_or(c, "json") == "csv") {
    std::ostringstream os;
    os << csv_header(config) << "# verdict: " << to_string(report.verdict) << "\n";
    os << "# max_imag: " << io::format_number(report.max_imag)
       << ", eigvec_condition: " << io::format_number(report.eigvec_condition) << "\n";
    os << "re,im\n";
    for (const auto& v : report.eigenvalues) os << io::format_number(v.real()) << "," << io::format_number(v.imag()) << "\n";
    emit(os.str(), c);
    return 0;
  }
  Json out{{"tool", tool_info()}, {"config", config}, {"report", report_json(report)}, {"predicted_speeds", predicted}};
  emit(json_text(out), c);
  return 0;
}

int scan(const std::string& config_path, const Common& c) {
  const Json input = load_optional(config_path);
  const int M = input.contains("M") ? input["M"].get<int>() : 3;
  const std::string target_s = input.value("target", std::string("grad"));
  if (target_s != "grad" && target_s != "regularized" && target_s != "both")
    throw ValidationError("field 'target' must be \"grad\", \"regularized\" or \"both\"");
  const auto g_m = grid_axis(input, "g_m", linspace(-1.0, 1.0, 41));
  const auto g_m1 = grid_axis(input, "g_m1", M == 3 ? std::vector<double>{0.0} : linspace(-1.0, 1.0, 41));

  Json config{{"command", "scan"}, {"M", M}, {"target", target_s}, {"g_m1", g_m1}, {"g_m", g_m}, {"tol", c.tol}, {"cond_cap", c.cond_cap}};
  std::vector<ScanTarget> targets;
  if (target_s != "regularized") targets.push_back(ScanTarget::grad);
  if (target_s != "grad") targets.push_back(ScanTarget::regularized);

  Json results = Json::array();
  std::ostringstream rows;
  std::ostringstream summary;
  for (const auto t : targets) {
    const std::string name = t == ScanTarget::grad ? "grad" : "regularized";
    const auto res = scan_grad_region(M, g_m1, g_m, t, analyze_options(c));
    int count = 0;
    int total = 0;
    Json cells = Json::array();
    for (const auto& row : res.cells) {
      for (const auto& cell : row) {
        ++total;
        count += cell.hyperbolic ? 1 : 0;
        if (targets.size() > 1) rows << name << ",";
        rows << io::format_number(cell.g_m1) << "," << io::format_number(cell.g_m) << ","
             << (cell.hyperbolic ? 1 : 0) << "," << io::format_number(cell.max_imag) << "\n";
        cells.push_back(Json{{"g_m1", cell.g_m1}, {"g_m", cell.g_m}, {"hyperbolic", cell.hyperbolic}, {"max_imag", cell.max_imag}});
      }
    }
    summary << "# " << name << ": " << count << " of " << total << " points hyperbolic\n";
    results.push_back(Json{{"target", name}, {"hyperbolic_points", count}, {"total_points", total}, {"cells", cells}});
  }

  if (format_or(c, "csv") == "json") {
    emit(json_text(Json{{"tool", tool_info()}, {"config", config}, {"results", results}}), c);
    return 0;
  }
  const std::string columns = targets.size() > 1 ? "target,gM1,gM,hyperbolic,max_imag\n" : "gM1,gM,hyperbolic,max_imag\n";
  emit(csv_header(config) + summary.str() + columns + rows.str(), c);
  return 0;
}

int check13(const std::string& config_path, const Common& c) {
  const Json input = load_optional(config_path);
  const std::uint64_t seed = resolve_seed(c, input);
  const int n_states = positive_int(input, "n_states", 100);
  const int n_direction_states = positive_int(input, "n_direction_states", 20);
  const int n_directions = positive_int(input, "n_directions", 200);
  Json config{{"command", "check13"}, {"seed", seed}, {"n_states", n_states}, {"n_direction_states", n_direction_states},
              {"n_directions", n_directions}, {"tol", c.tol}, {"cond_cap", c.cond_cap}};

  Rng rng(seed);
  double worst_residual = 0.0;
  double worst_speed_error = 0.0;
  int spectrum_failures = 0;
  for (int i = 0; i < n_states; ++i) {
    const auto s = m13::random_state(rng);
    const Matrix m1 = m13::assemble_M(s, 1);
    const double norm = max_abs(m1);
    worst_residual = std::max(worst_residual, max_abs(m13::minimal_polynomial_residual(s)) / (norm * norm * norm));
    const auto report = analyze(m1, analyze_options(c));
    const auto speeds = m13::eigenspeeds(s, 1);
    std::vector<double> expected;
    for (std::size_t k = 0; k < speeds.speeds.size(); ++k)
      for (int r = 0; r < speeds.multiplicity[k]; ++r) expected.push_back(speeds.speeds[k]);
    if (report.verdict != Verdict::hyperbolic) ++spectrum_failures;
    for (std::size_t k = 0; k < expected.size(); ++k)
      worst_speed_error = std::max(worst_speed_error, std::abs(report.eigenvalues[k] - expected[k]));
  }
  SystemCheck total;
  total.d_invertible = true;
  for (int i = 0; i < n_direction_states; ++i) {
    const auto s = m13::random_state(rng);
    const auto chk = check_abs_system(m13::build_system(s), n_directions, rng, analyze_options(c));
    total.d_invertible = total.d_invertible && chk.d_invertible;
    total.d_condition = std::max(total.d_condition, chk.d_condition);
    total.directions_checked += chk.directions_checked;
    total.directions_hyperbolic += chk.directions_hyperbolic;
    total.worst_max_imag = std::max(total.worst_max_imag, chk.worst_max_imag);
    total.worst_eigvec_condition = std::max(total.worst_eigvec_condition, chk.worst_eigvec_condition);
  }
  const bool passed = worst_residual < 1e-10 && worst_speed_error < 1e-9 && spectrum_failures == 0 && total.passed();
  Json out{{"tool", tool_info()},
           {"config", config},
           {"minimal_polynomial_max_relative_residual", worst_residual},
           {"eigenvalue_max_error", worst_speed_error},
           {"states_not_hyperbolic", spectrum_failures},
           {"directions_checked", total.directions_checked},
           {"directions_hyperbolic", total.directions_hyperbolic},
           {"worst_max_imag", total.worst_max_imag},
           {"worst_eigvec_condition", total.worst_eigvec_condition},
           {"worst_D_condition", total.d_condition},
           {"passed", passed}};
  emit(json_text(out), c);
  return passed ? 0 : 3;
}

int checknd(const std::string& config_path, const Common& c) {
  const Json input = load_optional(config_path);
  const std::uint64_t seed = resolve_seed(c, input);
  const int n_states = positive_int(input, "n_states", 20);
  const int n_directions = positive_int(input, "n_directions", 8);
  Json config{{"command", "checknd"}, {"seed", seed}, {"n_states", n_states}, {"n_directions", n_directions},
              {"tol", c.tol}, {"cond_cap", c.cond_cap}};
  Rng rng(seed);
  Json results = Json::array();
  bool all_passed = true;

  auto record = [&](const Json& label, const SystemCheck& chk) {
    Json r = label;
    r["D_condition"] = chk.d_condition;
    r["directions_checked"] = chk.directions_checked;
    r["directions_hyperbolic"] = chk.directions_hyperbolic;
    r["worst_max_imag"] = chk.worst_max_imag;
    r["worst_eigvec_condition"] = chk.worst_eigvec_condition;
    r["passed"] = chk.passed();
    all_passed = all_passed && chk.passed();
    results.push_back(r);
  };

  if (input.contains("state")) {
    const auto s = io::statend_from_json(input["state"]);
    config["state"] = io::to_json(s);
    record(Json{{"D", s.D()}, {"M", s.M()}, {"case", nd::to_string(s.kind())}},
           check_abs_system(nd::assemble_system(s), n_directions, rng, analyze_options(c)));
  } else {
    const auto dims = list_or_scalar<int>(input, "D", {2, 3});
    const auto orders = list_or_scalar<int>(input, "M", {3, 4, 5});
    const auto cases = list_or_scalar<std::string>(input, "case", {"classic", "generalized"});
    config["D"] = dims;
    config["M"] = orders;
    config["case"] = cases;
    for (int D : dims) {
      for (int M : orders) {
        if (D < 1 || M < 3) throw ValidationError("checknd needs D >= 1 and M >= 3");
        for (const auto& name : cases) {
          if (name != "classic" && name != "generalized") throw ValidationError("field 'case' must be \"classic\" or \"generalized\"");
          const auto kind = name == "classic" ? nd::Case::classic : nd::Case::generalized;
          SystemCheck total;
          total.d_invertible = true;
          for (int i = 0; i < n_states; ++i) {
            const auto chk = check_abs_system(nd::assemble_system(nd::random_state(D, M, kind, rng)), n_directions, rng,
                                              analyze_options(c));
            total.d_invertible = total.d_invertible && chk.d_invertible;
            total.d_condition = std::max(total.d_condition, chk.d_condition);
            total.directions_checked += chk.directions_checked;
            total.directions_hyperbolic += chk.directions_hyperbolic;
            total.worst_max_imag = std::max(total.worst_max_imag, chk.worst_max_imag);
            total.worst_eigvec_condition = std::max(total.worst_eigvec_condition, chk.worst_eigvec_condition);
          }
          record(Json{{"D", D}, {"M", M}, {"case", name}, {"states", n_states}}, total);
        }
      }
    }
  }
  emit(json_text(Json{{"tool", tool_info()}, {"config", config}, {"results", results}, {"passed", all_passed}}), c);
  return all_passed ? 0 : 3;
}

int simulate(const std::string& config_path, const Common& c) {
  const Json input = io::read_json_file(config_path);
  if (c.out.empty()) throw ValidationError("simulate needs --out <directory>");
  const auto config = io::sim_config_from_json(input);
  if (!input.contains("initial")) throw ValidationError("missing field 'initial'");
  const auto ic = io::initial_condition_from_json(input["initial"], config.M);
  const auto traj = solver::run(config, ic);

  const std::filesystem::path dir(c.out);
  std::filesystem::create_directories(dir);
  Json echo{{"command", "simulate"}, {"input", input}, {"resolved", io::to_json(config)}};
  const std::string config_hash = io::content_hash(echo);

  Json snapshots = Json::array();
  for (const auto& snap : traj.snapshots) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%06d.csv", snap.step);
    std::ostringstream os;
    os << "# hme " << kVersion << "\n# config_hash: " << config_hash << "\n# step: " << snap.step
       << "\n# time: " << io::format_number(snap.time) << "\n";
    os << "x,rho,u,theta";
    for (int a = 3; a <= config.M; ++a) os << ",f" << a;
    os << "\n";
    for (int i = 0; i < snap.grid.n_cells(); ++i) {
      const auto& cell = snap.grid.cells[static_cast<std::size_t>(i)];
      os << io::format_number(snap.grid.center(i));
      for (Eigen::Index k = 0; k < cell.dim(); ++k) os << "," << io::format_number(cell.to_vector()(k));
      os << "\n";
    }
    io::write_file_atomic((dir / name).string(), os.str());
    snapshots.push_back(Json{{"file", name}, {"step", snap.step}, {"time", snap.time}});
  }

  Json conservation = Json::array();
  for (std::size_t i = 0; i < traj.totals.size(); ++i) {
    const auto& t = traj.totals[i];
    conservation.push_back(Json{{"step", i}, {"mass", t.mass}, {"momentum", t.momentum}, {"energy", t.energy}});
  }
  Json meta{{"tool", tool_info()},
            {"config", echo},
            {"config_hash", config_hash},
            {"steps", traj.dt_history.size()},
            {"snapshots", snapshots},
            {"dt_history", traj.dt_history},
            {"conservation", conservation}};
  io::write_file_atomic((dir / "metadata.json").string(), json_text(meta));
  return 0;
}

}  // namespace hme::cli
