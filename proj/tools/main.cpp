#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "photoion/config.hpp"
#include "photoion/output.hpp"
#include "photoion/parallel.hpp"
#include "photoion/radial.hpp"

namespace {

using namespace photoion;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "json";
  int threads = 0;
  double tolerance = 0.0;  // 0 = per-check defaults
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "run configuration file")
      ->required();
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--threads", o.threads, "worker thread count (0 = auto)");
  cmd->add_option("--tolerance", o.tolerance, "override check tolerances");
}

RunConfig load(const CommonOpts& o) {
  g_default_threads.store(o.threads);
  std::filesystem::create_directories(o.out_dir);
  return parse_config(o.config_path);
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  return (std::filesystem::path(o.out_dir) / name).string();
}

void emit(const CommonOpts& o, const std::string& json_name,
          const std::string& json, const std::string& csv_name,
          const std::string& csv, const std::string& text_name,
          const std::string& text) {
  write_file(out_path(o, json_name), json);
  if (!csv_name.empty()) write_file(out_path(o, csv_name), csv);
  write_file(out_path(o, text_name), text);
  if (o.format == "json")
    std::fputs(json.c_str(), stdout);
  else if (o.format == "csv")
    std::fputs(csv.c_str(), stdout);
  else
    std::fputs(text.c_str(), stdout);
}

int cmd_eigen(const CommonOpts& o) {
  const RunConfig cfg = load(o);
  const Potential V = cfg.potential();
  const RadialGrid grid = RadialGrid::make(cfg.p3.r_max, cfg.p3.h_lin);

  EigenReport rep;
  rep.E0 = ground_state(V, grid).energy;
  for (int l = 0; l <= cfg.eigen_l_max; ++l)
    for (const auto& b : excited_bound_states(V, grid, l, cfg.eigen_count))
      if (l > 0 || b.energy != rep.E0) rep.bound.emplace_back(l, b.energy);

  std::vector<PhaseRow> rows(cfg.q_values.size());
  parallel_for(cfg.q_values.size(), [&](std::size_t i) {
    const double q = cfg.q_values[i];
    const ContinuumWave cw = continuum_wave(V, grid, q, 1);
    rows[i] = {q, cw.delta, cw.sigma, dipole_element(V, grid, q)};
  });
  rep.table = rows;

  emit(o, "eigen.json", eigen_json(rep, cfg.hash), "phases.csv",
       eigen_csv(rep, cfg.hash), "eigen.txt", eigen_text(rep, cfg.hash));
  return 0;
}

int cmd_rate(const CommonOpts& o) {
  const RunConfig cfg = load(o);
  if (cfg.pulses.empty())
    throw InvalidInputError("rate requires at least one [[pulse]]");
  IonizationResult res =
      p3_multi(cfg.potential(), cfg.multipulse(), cfg.cutoff(), cfg.p3);
  res = total_probability(std::move(res), cfg.alpha);
  emit(o, "rate.json", ionization_json(res, cfg.hash), "spectrum.csv",
       spectrum_csv(res, cfg.hash), "rate.txt", ionization_text(res, cfg.hash));
  return 0;
}

int cmd_escape(const CommonOpts& o) {
  const RunConfig cfg = load(o);
  if (cfg.pulses.empty())
    throw InvalidInputError("escape requires a [[pulse]]");
  const Potential V = cfg.potential();
  const TransversePulse F = cfg.pulse(0);
  const Cutoff kappa = cfg.cutoff();
  const double esc =
      escape_probability(V, F, kappa, cfg.escape_R, cfg.escape_tau,
                         cfg.escape_grids);
  const double bound = escape_bound_reference(V, cfg.escape_R, cfg.escape_grids);
  const double p3 = p3_single(V, F, kappa, cfg.p3).total_p3;

  std::vector<CheckRecord> checks;
  const double tol = o.tolerance > 0.0 ? o.tolerance : 0.02;
  checks.push_back({"escape-vs-p3", tol,
                    p3 > 0.0 ? std::abs(esc - p3) / p3 : esc,
                    p3 > 0.0 ? std::abs(esc - p3) / p3 <= tol : esc <= tol});
  checks.push_back({"escape-bound-reference", 1e-3, bound, bound < 1e-3});
  const std::string json = report_json(checks, cfg.hash);
  write_file(out_path(o, "escape.json"), json);
  std::fputs(json.c_str(), stdout);
  for (const auto& c : checks) if (!c.pass) return 4;
  return 0;
}

int cmd_decay(const CommonOpts& o) {
  const RunConfig cfg = load(o);
  if (cfg.pulses.empty())
    throw InvalidInputError("decay requires a [[pulse]]");
  std::vector<double> t_grid;
  for (double t = 10.0; t <= 1000.0; t += 2.0) t_grid.push_back(t);
  const DecayFit fit =
      decay_fit(cfg.pulse(0), cfg.cutoff(), cfg.decay_quantity, cfg.decay_x,
                cfg.decay_alpha, cfg.decay_n, t_grid);

  std::vector<CheckRecord> checks;
  checks.push_back({"decay-slope", 0.2, fit.slope + fit.n,
                    fit.pass && !fit.inconclusive});
  if (cfg.decay_quantity == "stat-phase3")
    checks.push_back({"decay-linearity", 0.2, fit.linearity,
                      fit.linearity <= 0.2});
  const std::string json = report_json(checks, cfg.hash);
  write_file(out_path(o, "decay.json"), json);

  std::string csv = "# unit_convention: ";
  csv += kUnitConvention;
  csv += "\n# config_hash: " + cfg.hash + "\nt,value\n";
  for (std::size_t i = 0; i < fit.t.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e,%.12e\n", fit.t[i], fit.value[i]);
    csv += buf;
  }
  write_file(out_path(o, "decay_samples.csv"), csv);
  std::fputs(o.format == "csv" ? csv.c_str() : json.c_str(), stdout);
  if (fit.inconclusive) return 5;
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  const RunConfig cfg = load(o);
  std::vector<std::string> checks = cfg.checks;
  if (!cfg.checks_given)
    checks = {"ground-state", "completeness", "dipole-identity", "amplitudes",
              "p3-oracle",    "decay",        "growth",          "escape"};

  const Potential V = cfg.potential();
  std::vector<CheckRecord> out;
  auto tol = [&](double dflt) { return o.tolerance > 0.0 ? o.tolerance : dflt; };
  auto need_pulse = [&]() -> TransversePulse {
    if (cfg.pulses.empty())
      throw InvalidInputError("requested check needs a [[pulse]]");
    return cfg.pulse(0);
  };

  for (const std::string& name : checks) {
    if (name == "ground-state") {
      const RadialGrid grid = RadialGrid::make(cfg.p3.r_max, cfg.p3.h_lin);
      const double e0 = ground_state(V, grid).energy;
      const double t = tol(1e-6);
      double measured = -1.0;
      if (V.is_coulomb()) measured = std::abs(e0 + V.Z * V.Z / 4.0);
      out.push_back({name, t, measured,
                     V.is_coulomb() ? measured < t : e0 < 0.0});
    } else if (name == "completeness") {
      const RadialGrid grid = RadialGrid::make(1450.0, 0.05);
      const BoundState gs = ground_state(V, grid);
      Wavepacket w;
      w.channels.push_back({1, 0, {}});
      auto& u = w.channels[0].u;
      u.resize(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i)
        u[i] = grid.r[i] * gs.u[i] / std::sqrt(3.0);
      SpectralBasis basis(V, grid, 1, 16, 4.0, 150);
      const double defect = completeness_defect(basis, w);
      const double t = tol(1e-4);
      out.push_back({name, t, defect, defect < t});
    } else if (name == "dipole-identity") {
      const RadialGrid grid = RadialGrid::make(cfg.p3.r_max, cfg.p3.h_lin);
      const double E0 = ground_state(V, grid).energy;
      double worst = 0.0;
      for (double q : {0.6, 1.0, 1.5}) {
        const Complex c = dipole_element(V, grid, q);
        const Complex m = momentum_element(V, grid, q);
        worst = std::max(worst,
                         std::abs(m - Complex(0, 1) * (q * q - E0) * c) /
                             std::abs(m));
      }
      const double t = tol(1e-5);
      out.push_back({name, t, worst, worst < t});
    } else if (name == "amplitudes") {
      const TransversePulse F = need_pulse();
      const RadialGrid grid = RadialGrid::make(cfg.p3.r_max, cfg.p3.h_lin);
      const double E0 = ground_state(V, grid).energy;
      const PulseSpec& p = cfg.pulses[0];
      const double q_lo = std::sqrt(std::max(0.0, E0 + p.omega_min));
      const double q_hi = std::sqrt(E0 + p.omega_max);
      double worst = 0.0;
      for (int i = 1; i <= 5; ++i) {
        const double q = q_lo + (q_hi - q_lo) * i / 6.0;
        const AmplitudeReport rep =
            amplitude_report(V, grid, F, cfg.cutoff(), q, cfg.t_max);
        worst = std::max({worst, rep.diff_pA_xE, rep.diff_xE_shell,
                          rep.diff_pA_shell});
      }
      const double t = tol(1e-5);
      out.push_back({name, t, worst, worst < t});
    } else if (name == "p3-oracle") {
      const TransversePulse F = need_pulse();
      const double p3 = p3_single(V, F, cfg.cutoff(), cfg.p3).total_p3;
      const double oracle = p3_oracle(V, F, cfg.cutoff(), cfg.p3, cfg.t_max);
      const double rel = p3 > 0.0 ? std::abs(p3 - oracle) / p3
                                  : std::abs(oracle);
      const double t = tol(1e-4);
      out.push_back({name, t, rel, rel < t});
    } else if (name == "decay") {
      std::vector<double> t_grid;
      for (double t = 10.0; t <= 1000.0; t += 2.0) t_grid.push_back(t);
      double worst = 0.0;
      bool ok = true;
      for (int n : {2, 3}) {
        const PulseSpec& p = cfg.pulses.empty()
                                 ? PulseSpec{0.4, 0.6, 0, {0, 0, 1}, 1, true}
                                 : cfg.pulses[0];
        const TransversePulse F = make_pulse(
            RadialWindow::poly(p.omega_min, p.omega_max, n),
            to_complex(p.ref), true);
        const DecayFit fit = decay_fit(F, cfg.cutoff(), "stat-phase1",
                                       {0, 0, 0}, 0.0, n, t_grid);
        worst = std::max(worst, fit.slope + n);
        ok = ok && fit.pass && !fit.inconclusive;
      }
      const double t = tol(0.2);
      out.push_back({name, t, worst, ok && worst <= t});
    } else if (name == "growth") {
      std::vector<double> t_grid{1, 2, 3, 5, 8, 12, 18, 25, 35, 50};
      const GrowthReport rep = growth_check(V, cfg.growth_grids, t_grid);
      const double t = tol(2.1);
      out.push_back({name, t, rep.exponent, rep.exponent <= t});
    } else if (name == "escape") {
      const TransversePulse F = need_pulse();
      const double esc = escape_probability(V, F, cfg.cutoff(), cfg.escape_R,
                                            cfg.escape_tau, cfg.escape_grids);
      const double p3 = p3_single(V, F, cfg.cutoff(), cfg.p3).total_p3;
      const double rel =
          p3 > 0.0 ? std::abs(esc - p3) / p3 : std::abs(esc);
      const double t = tol(0.02);
      out.push_back({name, t, rel, rel <= t});
    } else {
      throw InvalidInputError("unknown verify check '" + name + "'");
    }
  }

  const std::string json = report_json(out, cfg.hash);
  write_file(out_path(o, "verify.json"), json);
  std::fputs(json.c_str(), stdout);
  for (const auto& c : out) if (!c.pass) return 4;
  return 0;
}

int dispatch(int (*fn)(const CommonOpts&), const CommonOpts& o) {
  try {
    return fn(o);
  } catch (const InvalidInputError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const NoBoundStateError& e) {
    std::fprintf(stderr, "no bound state: %s\n", e.what());
    return 2;
  } catch (const OrthonormalityError& e) {
    std::fprintf(stderr, "orthonormality violation (gram residual %.3e): %s\n",
                 e.gram_residual, e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 5;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leading-order photoionization of a one-electron atom"};
  app.require_subcommand(1);

  CommonOpts opts;
  int (*handler)(const CommonOpts&) = nullptr;
  for (auto [name, desc, fn] :
       {std::tuple{"eigen", "bound states and continuum phase table",
                   &cmd_eigen},
        std::tuple{"rate", "leading-order ionization probability", &cmd_rate},
        std::tuple{"verify", "run verification checks", &cmd_verify},
        std::tuple{"escape", "escape-probability cross-check", &cmd_escape},
        std::tuple{"decay", "oscillatory-integral decay fit", &cmd_decay}}) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd, opts);
    cmd->callback([&handler, fn]() { handler = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return dispatch(handler, opts);
}
