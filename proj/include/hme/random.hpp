#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hme/linalg.hpp"
#include "hme/state1d.hpp"

namespace hme {

/// Seeded generator with platform-independent uniform/normal draws
/// (std distributions are implementation-defined, the CLI promises
/// byte-identical output for a given seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniformly distributed point on the unit sphere in R^n.
  Vector unit_vector(int n);

 private:
  std::mt19937_64 engine_;
};

/// Random realizable state: rho in [0.5, 2], u in [-1, 1], theta in
/// [0.5, 2], f_alpha = rho theta^{alpha/2} g with g uniform in
/// [-spread, spread].
MomentState1D random_state_1d(int M, Rng& rng, double spread = 0.3);

}  // namespace hme
