#pragma once

#include <string>

#include "json.hpp"

#include "floquet/potential.hpp"
#include "floquet/propagator.hpp"

namespace floquet {

// One experiment setup: the physical parameters, the truncation, and the
// integrator. Loaded from JSON; every validation failure maps to ConfigError
// so the CLI can report exit code 2.
struct RunConfig {
  double h = 2.0 * M_PI;
  int K = 32;
  int N = 8;
  int margin = 16;
  FourierPotential potential{{}, {}};
  IntegratorConfig integrator;
};

// Parse and validate; throws ConfigError with a human-readable message.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Phase gap the CLI warns about when it collapses (full resonance).
inline constexpr double kResonanceWarnGap = 1e-12;

// Reads FLOQUET_THREADS (a cap on internal linear-algebra parallelism) and
// applies it; returns the cap that was applied (0 = leave defaults).
int apply_thread_cap();

}  // namespace floquet
