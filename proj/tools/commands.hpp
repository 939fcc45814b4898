#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace hme::cli {

struct Common {
  double tol = 1e-9;
  double cond_cap = 1e8;
  std::optional<std::uint64_t> seed;
  std::string out;             // empty: stdout (directory for simulate)
  std::string format;  // csv | json; empty picks the command default
};

int assemble(const std::string& state_path, const std::string& which, const Common& common);
int eig(const std::string& state_path, const std::string& target, const Common& common);
int scan(const std::string& config_path, const Common& common);
int check13(const std::string& config_path, const Common& common);
int checknd(const std::string& config_path, const Common& common);
int simulate(const std::string& config_path, const Common& common);

}  // namespace hme::cli
