#pragma once

#include <string>
#include <vector>

#include "photoion/ionization.hpp"

namespace photoion {

// One verification record: name, tolerance, measured value, pass/fail.
struct CheckRecord {
  std::string name;
  double tolerance = 0.0;
  double measured = 0.0;
  bool pass = false;
};

struct PhaseRow {
  double q = 0.0;
  double delta = 0.0;
  double sigma = 0.0;
  Complex c;  // dipole radial factor c(q)
};

struct EigenReport {
  double E0 = 0.0;
  std::vector<std::pair<int, double>> bound;  // (l, E) candidates above E0
  std::vector<PhaseRow> table;
};

// All emitters stamp the unit-convention banner and the config hash.
std::string ionization_json(const IonizationResult& r, const std::string& hash);
std::string ionization_text(const IonizationResult& r, const std::string& hash);
std::string spectrum_csv(const IonizationResult& r, const std::string& hash);

std::string eigen_json(const EigenReport& r, const std::string& hash);
std::string eigen_csv(const EigenReport& r, const std::string& hash);
std::string eigen_text(const EigenReport& r, const std::string& hash);

std::string report_json(const std::vector<CheckRecord>& checks,
                        const std::string& hash);

void write_file(const std::string& path, const std::string& contents);

}  // namespace photoion
