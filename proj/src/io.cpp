#include "hme/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hme/errors.hpp"

namespace hme::io {

namespace {

const Json& field(const Json& j, const std::string& name) {
  if (!j.is_object()) throw ValidationError("expected a JSON object while reading '" + name + "'");
  const auto it = j.find(name);
  if (it == j.end()) throw ValidationError("missing field '" + name + "'");
  return *it;
}

double number(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) throw ValidationError("field '" + name + "' must be a number");
  return v.get<double>();
}

int integer(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw ValidationError("field '" + name + "' must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (!v.is_array()) throw ValidationError("field '" + name + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ValidationError("field '" + name + "' must hold numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!allowed.contains(k)) throw ValidationError("unknown field '" + k + "' in " + what);
  }
}

MomentState1D state1d_with_default(const Json& j, int default_M) {
  if (!j.is_object()) throw ValidationError("1D state must be a JSON object");
  reject_unknown(j, {"M", "rho", "u", "theta", "f"}, "1D state");
  const int M = j.contains("M") ? integer(j, "M") : default_M;
  if (M < 3) throw ValidationError("field 'M' must be >= 3");
  MomentState1D s = MomentState1D::equilibrium(M, number(j, "rho"), number(j, "u"), number(j, "theta"));
  if (j.contains("f")) {
    const auto f = numbers(j, "f");
    if (f.size() != static_cast<std::size_t>(M - 2))
      throw ValidationError("field 'f' must hold M-2 = " + std::to_string(M - 2) + " entries (f_3..f_M)");
    s.f = f;
  }
  require_valid(s);
  return s;
}

}  // namespace

Json to_json(const MomentState1D& s) {
  Json j;
  j["M"] = s.M;
  j["rho"] = s.rho;
  j["u"] = s.u;
  j["theta"] = s.theta;
  j["f"] = s.f;
  return j;
}

MomentState1D state1d_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("M")) throw ValidationError("missing field 'M'");
  return state1d_with_default(j, 0);
}

Json to_json(const m13::Moment13State& s) {
  Json j;
  j["rho"] = s.rho;
  j["u"] = s.u;
  j["theta"] = s.theta;
  j["q"] = s.q;
  return j;
}

m13::Moment13State state13_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("13-moment state must be a JSON object");
  reject_unknown(j, {"rho", "u", "theta", "q"}, "13-moment state");
  m13::Moment13State s;
  s.rho = number(j, "rho");
  auto copy = [&j](const std::string& name, auto& dst) {
    const auto v = numbers(j, name);
    if (v.size() != dst.size())
      throw ValidationError("field '" + name + "' must hold " + std::to_string(dst.size()) + " entries");
    std::copy(v.begin(), v.end(), dst.begin());
  };
  copy("u", s.u);
  copy("theta", s.theta);
  if (j.contains("q")) copy("q", s.q);
  m13::require_valid(s);
  return s;
}

Json to_json(const nd::MomentStateND& s) {
  Json j;
  j["D"] = s.D();
  j["M"] = s.M();
  j["case"] = nd::to_string(s.kind());
  j["rho"] = s.rho();
  j["u"] = s.u;
  Json theta = Json::array();
  for (int r = 0; r < s.D(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < s.D(); ++c) row.push_back(s.Theta(r, c));
    theta.push_back(row);
  }
  j["Theta"] = theta;
  Json coeffs = Json::array();
  for (std::size_t p = 1; p < s.indices().size(); ++p) {
    if (s.coeffs()[p] == 0.0) continue;
    coeffs.push_back(Json{{"index", s.indices()[p].entries()}, {"value", s.coeffs()[p]}});
  }
  j["coefficients"] = coeffs;
  return j;
}

nd::MomentStateND statend_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("moment state must be a JSON object");
  reject_unknown(j, {"D", "M", "case", "rho", "u", "Theta", "theta", "coefficients"}, "moment state");
  const int D = integer(j, "D");
  const int M = integer(j, "M");
  if (D < 1) throw ValidationError("field 'D' must be >= 1");
  if (M < 3) throw ValidationError("field 'M' must be >= 3");
  const Json& kind_j = field(j, "case");
  if (!kind_j.is_string()) throw ValidationError("field 'case' must be \"classic\" or \"generalized\"");
  const auto kind_s = kind_j.get<std::string>();
  nd::Case kind;
  if (kind_s == "classic") kind = nd::Case::classic;
  else if (kind_s == "generalized") kind = nd::Case::generalized;
  else throw ValidationError("field 'case' must be \"classic\" or \"generalized\"");

  std::vector<double> u = j.contains("u") ? numbers(j, "u") : std::vector<double>(static_cast<std::size_t>(D), 0.0);
  if (static_cast<int>(u.size()) != D) throw ValidationError("field 'u' must hold D entries");
  Matrix Theta = Matrix::Identity(D, D);
  if (j.contains("Theta")) {
    const Json& t = j.at("Theta");
    if (!t.is_array() || static_cast<int>(t.size()) != D) throw ValidationError("field 'Theta' must be a D x D array");
    for (int r = 0; r < D; ++r) {
      const Json& row = t[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != D || !std::all_of(row.begin(), row.end(), [](const Json& x) { return x.is_number(); }))
        throw ValidationError("field 'Theta' must be a D x D array of numbers");
      for (int c = 0; c < D; ++c) Theta(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  } else if (j.contains("theta")) {
    Theta *= number(j, "theta");
  }
  auto s = nd::MomentStateND::equilibrium(D, M, kind, number(j, "rho"), u, Theta);
  if (j.contains("coefficients")) {
    const Json& list = j.at("coefficients");
    if (!list.is_array()) throw ValidationError("field 'coefficients' must be an array");
    for (const auto& entry : list) {
      const Json& idx = field(entry, "index");
      if (!idx.is_array() || static_cast<int>(idx.size()) != D)
        throw ValidationError("coefficient 'index' must hold D integers");
      std::vector<int> e;
      for (const auto& x : idx) {
        if (!x.is_number_integer()) throw ValidationError("coefficient 'index' must hold D integers");
        e.push_back(x.get<int>());
      }
      const nd::MultiIndex alpha(e);
      if (alpha.order() == 0) throw ValidationError("f_0 is given by 'rho', not by 'coefficients'");
      if (alpha.order() > M) throw ValidationError("coefficient index " + alpha.str() + " exceeds order M");
      s.set_coeff(alpha, number(entry, "value"));
    }
  }
  nd::require_valid(s);
  return s;
}

solver::SimConfig sim_config_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("simulation config must be a JSON object");
  reject_unknown(j, {"M", "n_cells", "x_min", "x_max", "cfl", "tau", "t_end", "bc", "output_stride", "initial", "seed"},
                 "simulation config");
  solver::SimConfig c;
  if (j.contains("M")) c.M = integer(j, "M");
  if (j.contains("n_cells")) c.n_cells = integer(j, "n_cells");
  if (j.contains("x_min")) c.x_min = number(j, "x_min");
  if (j.contains("x_max")) c.x_max = number(j, "x_max");
  if (j.contains("cfl")) c.cfl = number(j, "cfl");
  if (j.contains("tau")) c.tau = number(j, "tau");
  if (j.contains("t_end")) c.t_end = number(j, "t_end");
  if (j.contains("output_stride")) c.output_stride = integer(j, "output_stride");
  if (j.contains("bc")) {
    const Json& bc = j.at("bc");
    if (bc == "periodic") c.bc = solver::Boundary::periodic;
    else if (bc == "copy") c.bc = solver::Boundary::copy;
    else throw ValidationError("field 'bc' must be \"periodic\" or \"copy\"");
  }
  solver::validate(c);
  return c;
}

Json to_json(const solver::SimConfig& c) {
  Json j;
  j["M"] = c.M;
  j["n_cells"] = c.n_cells;
  j["x_min"] = c.x_min;
  j["x_max"] = c.x_max;
  j["cfl"] = c.cfl;
  if (std::isinf(c.tau)) j["tau"] = "inf";
  else j["tau"] = c.tau;
  j["t_end"] = c.t_end;
  j["bc"] = c.bc == solver::Boundary::periodic ? "periodic" : "copy";
  j["output_stride"] = c.output_stride;
  return j;
}

solver::InitialCondition initial_condition_from_json(const Json& j, int M) {
  if (!j.is_object()) throw ValidationError("initial condition must be a JSON object");
  reject_unknown(j, {"kind", "left", "right", "state", "x0", "rho_amp", "u_amp", "wavenumber"}, "initial condition");
  solver::InitialCondition ic;
  const Json& kind = field(j, "kind");
  if (kind == "uniform") ic.kind = solver::InitialCondition::Kind::uniform;
  else if (kind == "riemann") ic.kind = solver::InitialCondition::Kind::riemann;
  else if (kind == "sine") ic.kind = solver::InitialCondition::Kind::sine;
  else throw ValidationError("field 'kind' must be \"uniform\", \"riemann\" or \"sine\"");
  const std::string base = j.contains("state") ? "state" : "left";
  ic.left = state1d_with_default(field(j, base), M);
  ic.right = ic.left;
  if (ic.kind == solver::InitialCondition::Kind::riemann) ic.right = state1d_with_default(field(j, "right"), M);
  if (j.contains("x0")) ic.x0 = number(j, "x0");
  if (j.contains("rho_amp")) ic.rho_amp = number(j, "rho_amp");
  if (j.contains("u_amp")) ic.u_amp = number(j, "u_amp");
  if (j.contains("wavenumber")) ic.wavenumber = integer(j, "wavenumber");
  if (ic.left.M != M || ic.right.M != M) throw ValidationError("initial state order must equal config 'M'");
  return ic;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv_matrix(std::ostream& os, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << format_number(m(r, c));
    }
    os << '\n';
  }
}

std::string content_hash(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace hme::io
