#pragma once

#include <string>
#include <vector>

#include "photoion/ionization.hpp"
#include "photoion/oracle.hpp"

namespace photoion {

struct PulseSpec {
  double omega_min = 0.0;
  double omega_max = 0.0;
  int smoothness = 0;  // 0 = C-infinity bump, n >= 1 = C^n polynomial window
  Vec3 ref{0.0, 0.0, 1.0};
  int m = 1;
  bool normalize = true;
};

// Parsed run configuration. The file format is a small TOML subset
// (key = value, [section], [[pulse]]); a JSON object with the same section
// names is accepted as an alternative. See README for the schema.
struct RunConfig {
  int schema = 1;

  std::string potential_kind = "coulomb";  // "coulomb" | "gaussian-well"
  double Z = 1.0;
  double depth = 1.0;   // gaussian-well: V(r) = -depth exp(-(r/width)^2)
  double width = 1.0;
  double mu = 1.0;
  double range = 10.0;

  std::vector<PulseSpec> pulses;
  double lambda = 10.0;  // UV cutoff scale
  double alpha = 0.0;

  P3Grids p3;
  EscapeGrids escape_grids;
  GrowthGrids growth_grids;
  double t_max = 400.0;  // time-domain truncation for oracle amplitudes

  int eigen_l_max = 1;
  int eigen_count = 4;
  std::vector<double> q_values;

  double escape_R = 20.0;
  double escape_tau = 200.0;

  std::string decay_quantity = "stat-phase1";
  int decay_n = 2;
  Vec3 decay_x{0.0, 0.0, 0.0};
  double decay_alpha = 0.0;

  std::vector<std::string> checks;  // verify: which checks to run
  bool checks_given = false;        // list present in the file (may be empty)

  std::string hash;  // content hash of the config file, stamped on outputs

  Potential potential() const;
  TransversePulse pulse(std::size_t i) const;
  MultiPulse multipulse() const;
  Cutoff cutoff() const;
};

// FNV-1a of the raw bytes, as a 16-digit hex string.
std::string config_hash(const std::string& bytes);

RunConfig parse_config_text(const std::string& text, const std::string& name);
RunConfig parse_config(const std::string& path);

}  // namespace photoion
