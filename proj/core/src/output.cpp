#include "photoion/output.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace photoion {
namespace {

using ojson = nlohmann::ordered_json;

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string csv_header(const std::string& hash) {
  return std::string("# unit_convention: ") + kUnitConvention +
         "\n# config_hash: " + hash + "\n";
}

ojson stamp(const std::string& hash) {
  ojson j;
  j["unit_convention"] = kUnitConvention;
  j["config_hash"] = hash;
  return j;
}

}  // namespace

std::string ionization_json(const IonizationResult& r,
                            const std::string& hash) {
  ojson j = stamp(hash);
  j["per_pulse_p3"] = r.per_pulse;
  j["occupation"] = r.occupation;
  j["total_p3"] = r.total_p3;
  j["alpha"] = r.alpha;
  j["total_probability"] = r.total_probability;
  j["below_threshold"] = r.below_threshold;
  j["perturbative"] = r.perturbative;
  j["caveat"] = r.caveat;
  j["gram_residual"] = r.gram_residual;
  j["angular_check"] = r.angular_check;
  j["quad_error"] = r.quad_error;
  return j.dump(2) + "\n";
}

std::string ionization_text(const IonizationResult& r,
                            const std::string& hash) {
  std::string out;
  out += std::string("unit convention    ") + kUnitConvention + "\n";
  out += "config hash        " + hash + "\n";
  for (std::size_t i = 0; i < r.per_pulse.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "pulse %-2zu  m = %-3d  P3 = %.10e\n", i + 1,
                  r.occupation[i], r.per_pulse[i]);
    out += buf;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "total P3           %.10e\n", r.total_p3);
  out += buf;
  std::snprintf(buf, sizeof buf, "alpha              %.10e\n", r.alpha);
  out += buf;
  std::snprintf(buf, sizeof buf, "total probability  %.10e\n",
                r.total_probability);
  out += buf;
  out += std::string("below threshold    ") +
         (r.below_threshold ? "yes" : "no") + "\n";
  out += std::string("perturbative       ") + (r.perturbative ? "yes" : "no") +
         "\n";
  out += "caveat             " + r.caveat + "\n";
  return out;
}

std::string spectrum_csv(const IonizationResult& r, const std::string& hash) {
  std::string out = csv_header(hash);
  out += "q,dPdq\n";
  for (std::size_t i = 0; i < r.q_samples.size(); ++i)
    out += csv_num(r.q_samples[i]) + "," + csv_num(r.dpdq[i]) + "\n";
  return out;
}

std::string eigen_json(const EigenReport& r, const std::string& hash) {
  ojson j = stamp(hash);
  j["E0"] = r.E0;
  ojson bound = ojson::array();
  for (const auto& [l, e] : r.bound) {
    ojson b;
    b["l"] = l;
    b["E"] = e;
    bound.push_back(b);
  }
  j["excited"] = bound;
  ojson table = ojson::array();
  for (const auto& row : r.table) {
    ojson t;
    t["q"] = row.q;
    t["delta_1"] = row.delta;
    t["sigma_1"] = row.sigma;
    t["re_c"] = row.c.real();
    t["im_c"] = row.c.imag();
    table.push_back(t);
  }
  j["phase_table"] = table;
  return j.dump(2) + "\n";
}

std::string eigen_csv(const EigenReport& r, const std::string& hash) {
  std::string out = csv_header(hash);
  char buf[64];
  std::snprintf(buf, sizeof buf, "# E0: %.12e\n", r.E0);
  out += buf;
  out += "q,delta_1,sigma_1,re_c,im_c\n";
  for (const auto& row : r.table)
    out += csv_num(row.q) + "," + csv_num(row.delta) + "," +
           csv_num(row.sigma) + "," + csv_num(row.c.real()) + "," +
           csv_num(row.c.imag()) + "\n";
  return out;
}

std::string eigen_text(const EigenReport& r, const std::string& hash) {
  std::string out;
  out += std::string("unit convention  ") + kUnitConvention + "\n";
  out += "config hash      " + hash + "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "E0               %.10e\n", r.E0);
  out += buf;
  for (const auto& [l, e] : r.bound) {
    std::snprintf(buf, sizeof buf, "excited  l = %d   E = %.10e\n", l, e);
    out += buf;
  }
  if (!r.table.empty())
    out += "      q          delta_1        sigma_1        |c(q)|\n";
  for (const auto& row : r.table) {
    std::snprintf(buf, sizeof buf, "%10.4f  %13.6e  %13.6e  %13.6e\n", row.q,
                  row.delta, row.sigma, std::abs(row.c));
    out += buf;
  }
  return out;
}

std::string report_json(const std::vector<CheckRecord>& checks,
                        const std::string& hash) {
  ojson j = stamp(hash);
  bool all = true;
  ojson arr = ojson::array();
  for (const auto& c : checks) {
    ojson e;
    e["name"] = c.name;
    e["tolerance"] = c.tolerance;
    e["measured"] = c.measured;
    e["pass"] = c.pass;
    arr.push_back(e);
    all = all && c.pass;
  }
  j["checks"] = arr;
  j["all_pass"] = all;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError(path + ": cannot open for writing");
  out << contents;
  if (!out) throw NumericError(path + ": write failed");
}

}  // namespace photoion
