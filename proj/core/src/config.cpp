#include "floquet/config.hpp"

#include <Eigen/Core>
#include <cstdlib>
#include <fstream>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {

namespace {

double require_positive(const nlohmann::json& j, const std::string& key, double fallback) {
  double v = j.value(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key + " must be positive");
  return v;
}

FourierPotential parse_potential(const nlohmann::json& j) {
  PotentialClass klass;
  klass.alpha = j.value("alpha", 3.0);
  klass.beta = j.value("beta", 0.0);
  klass.gamma = j.value("gamma", 2);
  klass.c_v = j.value("c_v", 1.0);
  if (klass.alpha < 0.0) throw ConfigError("potential.alpha must be >= 0");
  if (klass.beta < 0.0) throw ConfigError("potential.beta must be >= 0");
  if (klass.gamma < 0) throw ConfigError("potential.gamma must be >= 0");
  if (!(klass.c_v > 0.0)) throw ConfigError("potential.c_v must be positive");

  std::vector<ModeHarmonics> entries;
  for (const auto& mode : j.value("modes", nlohmann::json::array())) {
    if (!mode.contains("k")) throw ConfigError("potential mode entry lacks k");
    ModeHarmonics mh;
    mh.k = mode.at("k").get<int>();
    for (const auto& harm : mode.value("harmonics", nlohmann::json::array())) {
      if (!harm.contains("m")) throw ConfigError("harmonic entry lacks m");
      mh.harmonics.push_back(
          {harm.at("m").get<int>(),
           Complex(harm.value("re", 0.0), harm.value("im", 0.0))});
    }
    entries.push_back(std::move(mh));
  }
  try {
    return FourierPotential(entries, klass);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("potential table invalid: ") + e.what());
  }
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.h = require_positive(j, "h", cfg.h);
  cfg.K = j.value("K", cfg.K);
  cfg.N = j.value("N", cfg.N);
  cfg.margin = j.value("margin", cfg.margin);
  if (cfg.K < 1) throw ConfigError("K must be >= 1");
  if (cfg.N < 1) throw ConfigError("N must be >= 1");
  if (3 * cfg.N > cfg.K)
    throw ConfigError("N must satisfy N <= K/3 (got N = " + std::to_string(cfg.N) +
                      ", K = " + std::to_string(cfg.K) + ")");
  if (cfg.margin < 0 || cfg.margin >= cfg.K)
    throw ConfigError("margin must satisfy 0 <= margin < K");

  if (!j.contains("potential")) throw ConfigError("config lacks a potential block");
  cfg.potential = parse_potential(j.at("potential"));

  const auto ij = j.value("integrator", nlohmann::json::object());
  std::string method = ij.value("method", std::string("rk4"));
  if (method == "rk4") {
    cfg.integrator.method = Method::RK4;
  } else if (method == "splitstep") {
    cfg.integrator.method = Method::SplitStep;
  } else {
    throw ConfigError("integrator.method must be rk4 or splitstep");
  }
  cfg.integrator.dt = ij.value("dt", 0.0);
  cfg.integrator.eta = ij.value("eta", 0.5);
  if (cfg.integrator.dt < 0.0) throw ConfigError("integrator.dt must be >= 0");
  if (!(cfg.integrator.eta > 0.0)) throw ConfigError("integrator.eta must be positive");
  double safety = cfg.integrator.eta * cfg.h / (static_cast<double>(cfg.K) * cfg.K);
  if (cfg.integrator.dt > safety * (1.0 + 1e-9))
    throw ConfigError("integrator.dt exceeds the safety bound eta*h/K^2 = " +
                      std::to_string(safety));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

int apply_thread_cap() {
  const char* env = std::getenv("FLOQUET_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  int cap = std::atoi(env);
  if (cap < 1) return 0;
  Eigen::setNbThreads(cap);
  return cap;
}

}  // namespace floquet
