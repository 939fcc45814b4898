#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hme/linalg.hpp"
#include "hme/moment13.hpp"
#include "hme/momentnd.hpp"
#include "hme/solver1d.hpp"
#include "hme/state1d.hpp"

// JSON and CSV encodings shared by the CLI and the test harnesses. Parsers
// throw ValidationError with the offending field named.

namespace hme::io {

using Json = nlohmann::ordered_json;

Json to_json(const MomentState1D& state);
MomentState1D state1d_from_json(const Json& j);

Json to_json(const m13::Moment13State& state);
m13::Moment13State state13_from_json(const Json& j);

/// {"D":2,"M":3,"case":"classic","rho":..,"u":[..],"Theta":[[..]],
///  "coefficients":[{"index":[a1,a2],"value":v}, ...]}
/// Unlisted coefficients are zero; f_0 comes from "rho".
Json to_json(const nd::MomentStateND& state);
nd::MomentStateND statend_from_json(const Json& j);

solver::SimConfig sim_config_from_json(const Json& j);
Json to_json(const solver::SimConfig& config);
solver::InitialCondition initial_condition_from_json(const Json& j, int M);

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

/// Shortest round-trip decimal form, fixed across runs.
std::string format_number(double x);

/// Rows of comma-separated numbers.
void write_csv_matrix(std::ostream& os, const Matrix& m);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string content_hash(const Json& j);

Json read_json_file(const std::string& path);
/// Writes to path + ".tmp" then renames, so failures leave no partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace hme::io
