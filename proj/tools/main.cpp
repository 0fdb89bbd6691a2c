// cqmsc command-line tool. Subcommands wrap the shared library's C API and
// emit CSV (or JSON-lines) curve files and JSON reports; every output embeds
// the effective configuration so runs are reproducible from their own files.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cqmsc.h"
#include "emit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CliError {
  int code;
  std::string status;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& status, const std::string& message) {
  throw CliError{code, status, message};
}

void check(cqmsc_status status) {
  if (status == CQMSC_OK) return;
  const int code = (status == CQMSC_ERR_INVALID_ARGUMENT || status == CQMSC_ERR_DOMAIN ||
                    status == CQMSC_ERR_BELOW_MINIMUM || status == CQMSC_ERR_POLE)
                       ? kExitValidation
                       : kExitNumerical;
  fail(code, cqmsc_status_name(status), cqmsc_last_error());
}

struct ParamsHandle {
  cqmsc_params* ptr = nullptr;
  ~ParamsHandle() { cqmsc_params_destroy(ptr); }
};

// ---- configuration ------------------------------------------------------

struct CommonOptions {
  double g = 1.0;
  double alpha = 1.0;
  double hbar = 1.0;
  double mass = 1.0;
  std::string generator = "S";
  std::string out;
  std::string format = "csv";
  std::string config_path;

  bool json_lines() const { return format == "json-lines"; }

  void make_params(ParamsHandle& handle) const {
    check(cqmsc_params_create(g, alpha, hbar, mass, &handle.ptr));
  }

  cqmsc_generator parse_generator(const std::string& name) const {
    if (name == "R" || name == "r") return CQMSC_GEN_R;
    if (name == "S" || name == "s") return CQMSC_GEN_S;
    fail(kExitValidation, "invalid-argument", "generator must be R or S, got '" + name + "'");
  }

  void echo_into(cli::ConfigEcho& echo) const {
    echo.set("g", g);
    echo.set("alpha", alpha);
    echo.set("hbar", hbar);
    echo.set("mass", mass);
    echo.set("generator", generator);
    echo.set("format", format);
  }
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--g", opts.g, "dimensionless inverse-square coupling (> 0)");
  sub->add_option("--alpha", opts.alpha, "generator time scale (> 0)");
  sub->add_option("--hbar", opts.hbar, "action scale (> 0)");
  sub->add_option("--mass", opts.mass, "mass scale (> 0)");
  sub->add_option("--generator", opts.generator, "generator: R or S");
  sub->add_option("--out", opts.out, "output path (default: standard output)");
  sub->add_option("--format", opts.format, "output format: csv or json-lines")
      ->check(CLI::IsMember({"csv", "json-lines"}));
  sub->add_option("--config", opts.config_path, "flat key = value config file");
}

// Flat "key = value" file, same keys as the long flags.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitValidation, "invalid-argument", "cannot read config file: " + path);
  std::map<std::string, std::string> values;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(kExitValidation, "invalid-argument", "config line is not key = value: " + line);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "command" || key == "schema_version") continue;  // echo bookkeeping
    values[key] = value;
  }
  return values;
}

// Config-file values are injected as extra flags for every key that the real
// command line does not mention, which gives flags > file > defaults.
std::vector<std::string> merge_config_args(const std::vector<std::string>& argv,
                                           const std::map<std::string, std::string>& config) {
  std::set<std::string> present;
  for (const auto& arg : argv) {
    if (arg.rfind("--", 0) == 0) {
      present.insert(arg.substr(0, arg.find('=')));
    }
  }
  std::vector<std::string> merged = argv;
  for (const auto& [key, value] : config) {
    if (!present.count("--" + key)) {
      merged.push_back("--" + key + "=" + value);
    }
  }
  return merged;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) fail(kExitValidation, "invalid-argument", "grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = lo + i * step;
  grid.back() = hi;
  return grid;
}

// ---- subcommands ---------------------------------------------------------

struct PotentialCmd {
  CommonOptions common;
  double q_min = 0.125;
  double q_max = 4.0;
  int q_steps = 32;

  int run() {
    if (!(q_min > 0.0) || !(q_max > q_min)) {
      fail(kExitValidation, "invalid-argument", "need 0 < q-min < q-max");
    }
    ParamsHandle params;
    common.make_params(params);

    const bool both = common.generator == "both";
    cli::ConfigEcho echo;
    common.echo_into(echo);
    echo.set("q-min", q_min);
    echo.set("q-max", q_max);
    echo.set("q-steps", static_cast<long>(q_steps));

    cli::Writer writer(common.out);
    std::vector<std::string> columns =
        both ? std::vector<std::string>{"q", "V_R", "V_S"} : std::vector<std::string>{"q", "V"};
    cli::CsvTable table(writer.stream(), "potential", echo, columns, common.json_lines());

    const cqmsc_generator gen = both ? CQMSC_GEN_R : common.parse_generator(common.generator);
    for (double q : linspace(q_min, q_max, q_steps)) {
      if (both) {
        double vr, vs;
        check(cqmsc_potential(params.ptr, CQMSC_GEN_R, q, &vr));
        check(cqmsc_potential(params.ptr, CQMSC_GEN_S, q, &vs));
        table.row({q, vr, vs});
      } else {
        double v;
        check(cqmsc_potential(params.ptr, gen, q, &v));
        table.row({q, v});
      }
    }
    return kExitOk;
  }
};

struct PhasePortraitCmd {
  CommonOptions common;
  double q_min = 0.2, q_max = 4.0;
  int q_steps = 18;
  double p_min = -2.5, p_max = 2.5;
  int p_steps = 18;
  double energy = std::nan("");

  int run() {
    if (!(q_min > 0.0) || !(q_max > q_min)) {
      fail(kExitValidation, "invalid-argument", "need 0 < q-min < q-max");
    }
    ParamsHandle params;
    common.make_params(params);
    const cqmsc_generator gen = common.parse_generator(common.generator);
    // Default level energy: the zero-energy separatrix-like curve for S, a
    // representative closed orbit for R.
    double level_energy = energy;
    if (std::isnan(level_energy)) {
      level_energy = gen == CQMSC_GEN_S ? 0.0 : 2.0;
    }

    cli::ConfigEcho echo;
    common.echo_into(echo);
    echo.set("q-min", q_min);
    echo.set("q-max", q_max);
    echo.set("q-steps", static_cast<long>(q_steps));
    echo.set("p-min", p_min);
    echo.set("p-max", p_max);
    echo.set("p-steps", static_cast<long>(p_steps));
    echo.set("energy", level_energy);

    // Level-curve points are gathered first so that an empty classically
    // allowed region can be flagged in the header.
    std::vector<std::pair<double, double>> level_points;
    for (double q : linspace(q_min, q_max, 8 * q_steps)) {
      int allowed;
      double p_abs;
      check(cqmsc_level_curve(params.ptr, gen, level_energy, q, &allowed, &p_abs));
      if (allowed) level_points.emplace_back(q, p_abs);
    }
    if (level_points.empty()) {
      echo.set("status", "empty-allowed-region");
      std::cerr << "note: level curve at E = " << cli::fmt17(level_energy)
                << " has an empty classically allowed region\n";
    }

    cli::Writer writer(common.out);
    cli::CsvTable table(writer.stream(), "phase-portrait", echo,
                        {"series", "q", "p", "dq_dtau", "dp_dtau"}, common.json_lines());

    const double nan = std::nan("");
    for (double q : linspace(q_min, q_max, q_steps)) {
      for (double p : linspace(p_min, p_max, p_steps)) {
        double dq, dp;
        check(cqmsc_rhs(params.ptr, gen, q, p, &dq, &dp));
        table.row({"field", q, p, dq, dp});
      }
    }
    for (const auto& [q, p_abs] : level_points) {
      table.row({"level", q, p_abs, nan, nan});
      table.row({"level", q, -p_abs, nan, nan});
    }
    if (gen == CQMSC_GEN_S) {
      for (double q : linspace(q_min, q_max, 8 * q_steps)) {
        table.row({"asymptote", q, q / common.alpha, nan, nan});
      }
    }
    return kExitOk;
  }
};

struct SimulateCmd {
  CommonOptions common;
  double q0 = 1.0;
  double p0 = 0.0;
  double tau_end = 0.0;  // 0: eight time scales
  double sample_dtau = 0.0;
  double drift_tol = 1e-8;
  double q_escape = 0.0;

  int run() {
    ParamsHandle params;
    common.make_params(params);
    const cqmsc_generator gen = common.parse_generator(common.generator);
    const double horizon = tau_end > 0.0 ? tau_end : 8.0 * common.alpha;
    const double dtau = sample_dtau > 0.0 ? sample_dtau : common.alpha / 100.0;

    cqmsc_integrate_opts opts;
    cqmsc_integrate_opts_init(&opts);
    opts.energy_drift_tol = drift_tol;
    opts.sample_dtau = dtau;
    if (q_escape > 0.0) opts.q_escape = q_escape;

    cqmsc_trajectory* traj = nullptr;
    check(cqmsc_integrate(params.ptr, gen, q0, p0, horizon, &opts, &traj));
    const std::unique_ptr<cqmsc_trajectory, void (*)(cqmsc_trajectory*)> guard(
        traj, cqmsc_trajectory_destroy);

    const double energy = cqmsc_trajectory_energy(traj);

    cli::ConfigEcho echo;
    common.echo_into(echo);
    echo.set("q0", q0);
    echo.set("p0", p0);
    echo.set("tau-end", horizon);
    echo.set("sample-dtau", dtau);
    echo.set("drift-tol", drift_tol);
    echo.set("energy", energy);
    echo.set("status", cqmsc_trajectory_escaped(traj) ? "escaped" : "completed");

    cli::Writer writer(common.out);
    cli::CsvTable table(writer.stream(), "simulate", echo, {"tau", "q", "p", "energy_drift"},
                        common.json_lines());
    for (std::size_t i = 0; i < cqmsc_trajectory_size(traj); ++i) {
      double tau, q, p;
      check(cqmsc_trajectory_sample(traj, i, &tau, &q, &p));
      table.row({tau, q, p, cqmsc_trajectory_drift(traj, i)});
    }
    return kExitOk;
  }
};

struct LyapunovCmd {
  CommonOptions common;
  double q0 = 1.0;
  double p0 = 0.0;
  double delta0 = 1e-8;
  double tau_end = 0.0;
  double sample_dtau = 0.0;
  std::string method = "two-trajectory";

  int run() {
    ParamsHandle params;
    common.make_params(params);

    cqmsc_lyapunov_opts opts;
    cqmsc_lyapunov_opts_init(&opts);
    opts.delta0 = delta0;
    opts.tau_end = tau_end;
    opts.sample_dtau = sample_dtau;
    if (method == "two-trajectory") {
      opts.method = CQMSC_LYAPUNOV_TWO_TRAJECTORY;
    } else if (method == "tangent") {
      opts.method = CQMSC_LYAPUNOV_TANGENT_MAP;
    } else {
      fail(kExitValidation, "invalid-argument",
           "method must be two-trajectory or tangent, got '" + method + "'");
    }

    cli::ConfigEcho echo;
    common.echo_into(echo);
    echo.set("q0", q0);
    echo.set("p0", p0);
    echo.set("delta0", delta0);
    echo.set("method", method);

    // Series to --out when requested; the summary row always goes to
    // standard output.
    if (!common.out.empty()) {
      cqmsc_growth_series* series = nullptr;
      check(cqmsc_perturbation_growth(params.ptr, q0, p0, &opts, &series));
      const std::unique_ptr<cqmsc_growth_series, void (*)(cqmsc_growth_series*)> guard(
          series, cqmsc_growth_series_destroy);
      cli::Writer writer(common.out);
      cli::CsvTable table(writer.stream(), "lyapunov", echo, {"tau", "q_ref", "log_delta_q"},
                          common.json_lines());
      for (std::size_t i = 0; i < cqmsc_growth_series_size(series); ++i) {
        double tau, q_ref, log_delta;
        check(cqmsc_growth_series_sample(series, i, &tau, &q_ref, &log_delta));
        table.row({tau, q_ref, log_delta});
      }
    }

    cqmsc_lyapunov_estimate est;
    check(cqmsc_estimate_lyapunov(params.ptr, q0, p0, &opts, &est));
    std::cout << "g,alpha,lambda_hat,r_squared\n"
              << cli::fmt17(common.g) << "," << cli::fmt17(common.alpha) << ","
              << cli::fmt17(est.lambda_hat) << "," << cli::fmt17(est.r_squared) << "\n";
    return kExitOk;
  }
};

struct ActionCmd {
  CommonOptions common;
  double energy = std::nan("");
  double e_min = std::nan(""), e_max = std::nan("");
  int e_steps = 25;
  std::string method = "closed";
  double tol = 1e-10;

  int run() {
    ParamsHandle params;
    common.make_params(params);
    const int method_id =
        method == "quadrature" ? CQMSC_ACTION_QUADRATURE : CQMSC_ACTION_CLOSED_FORM;
    if (method != "closed" && method != "quadrature") {
      fail(kExitValidation, "invalid-argument",
           "method must be closed or quadrature, got '" + method + "'");
    }

    std::vector<double> energies;
    if (!std::isnan(energy)) {
      energies.push_back(energy);
    } else if (!std::isnan(e_min) && !std::isnan(e_max)) {
      energies = linspace(e_min, e_max, e_steps);
    } else {
      // Default sweep: a decade above the potential minimum.
      const double e_floor = std::sqrt(common.g * common.mass) / common.alpha;
      energies = linspace(1.05 * e_floor, 10.0 * e_floor, e_steps);
    }

    cli::ConfigEcho echo;
    common.echo_into(echo);
    echo.set("method", method);
    echo.set("tol", tol);
    echo.set("e-min", energies.front());
    echo.set("e-max", energies.back());
    echo.set("e-steps", static_cast<long>(energies.size()));

    cli::Writer writer(common.out);
    cli::CsvTable table(writer.stream(), "action", echo,
                        {"E", "W", "W_langer", "T_period", "method"}, common.json_lines());
    for (double e : energies) {
      cqmsc_action_result result;
      check(cqmsc_action_eval(params.ptr, e, method_id, tol, &result));
      table.row({result.E, result.W, result.W_langer, result.T_period, method});
    }
    return kExitOk;
  }
};

struct DosCmd {
  CommonOptions common;
  std::string method = "gutzwiller";
  double energy = std::nan("");
  double e_min = 0.05, e_max = 5.0;
  int e_steps = 100;
  int k_max = 64;
  long n_max = 10000;
  double cutoff_L = std::nan("");
  double reg_C = std::nan("");
  double e_ref = std::nan("");
  double tol = 1e-10;

  int run() {
    ParamsHandle params;
    common.make_params(params);

    const std::set<std::string> known{"gutzwiller", "series",        "digamma",
                                      "contour",    "thomas-fermi-cutoff", "integral-diff"};
    if (!known.count(method)) {
      fail(kExitValidation, "invalid-argument", "unknown dos method '" + method + "'");
    }
    if (k_max < 1 || n_max < 1) {
      fail(kExitValidation, "invalid-argument", "k-max and n-max must be >= 1");
    }

    std::vector<double> energies =
        std::isnan(energy) ? linspace(e_min, e_max, e_steps) : std::vector<double>{energy};

    cli::ConfigEcho echo;
    common.echo_into(echo);
    echo.set("method", method);
    echo.set("e-min", energies.front());
    echo.set("e-max", energies.back());
    echo.set("e-steps", static_cast<long>(energies.size()));
    if (method == "series") echo.set("n-max", n_max);
    if (method == "gutzwiller" || method == "contour") {
      echo.set("k-max", static_cast<long>(k_max));
    }
    if (!std::isnan(cutoff_L)) echo.set("cutoff-L", cutoff_L);
    if (!std::isnan(reg_C)) echo.set("reg-C", reg_C);
    if (method == "integral-diff") {
      if (std::isnan(e_ref)) {
        fail(kExitValidation, "invalid-argument", "integral-diff needs --e-ref");
      }
      echo.set("e-ref", e_ref);
      echo.set("tol", tol);
    }

    const std::string truncation =
        method == "series" ? std::to_string(n_max)
        : (method == "gutzwiller" || method == "contour") ? std::to_string(k_max)
                                                          : "";
    const std::string reg = !std::isnan(reg_C)       ? cli::fmt17(reg_C)
                            : !std::isnan(cutoff_L) ? cli::fmt17(cutoff_L)
                                                    : "";

    cli::Writer writer(common.out);
    std::vector<std::string> columns{"E", "rho", "method", "k_max_or_n_max", "C_or_L"};
    if (method == "series") columns.push_back("tail_signature");
    if (method == "contour") {
      columns.push_back("series_part");
      columns.push_back("boltzmann_ratio");
    }
    if (method == "gutzwiller") {
      columns.push_back("delta_rho_sc");
      columns.push_back("delta_rho_series");
      columns.push_back("rho_bar");
    }
    cli::CsvTable table(writer.stream(), "dos", echo, columns, common.json_lines());

    for (double e : energies) {
      std::vector<cli::Cell> row{e, 0.0, method, truncation, reg};
      if (method == "series") {
        double partial, tail;
        check(cqmsc_dos_series(params.ptr, e, n_max, 0, &partial, &tail));
        row[1] = partial;
        row.push_back(tail);
      } else if (method == "digamma") {
        double rho;
        check(cqmsc_dos_digamma(params.ptr, e, reg_C, cutoff_L, &rho));
        row[1] = rho;
      } else if (method == "contour") {
        double pole, series_part, ratio;
        check(cqmsc_dos_contour(params.ptr, e, k_max, &pole, &series_part, &ratio));
        row[1] = pole;
        row.push_back(series_part);
        row.push_back(ratio);
      } else if (method == "gutzwiller") {
        double closed, series_part, rho_bar;
        check(cqmsc_dos_gutzwiller(params.ptr, e, k_max, cutoff_L, &closed, &series_part,
                                   &rho_bar));
        row[1] = std::isnan(rho_bar) ? closed : rho_bar + closed;
        row.push_back(closed);
        row.push_back(series_part);
        row.push_back(rho_bar);
      } else if (method == "thomas-fermi-cutoff") {
        if (std::isnan(cutoff_L)) {
          fail(kExitValidation, "invalid-argument", "thomas-fermi-cutoff needs --cutoff-L");
        }
        double rho;
        check(cqmsc_dos_cutoff(params.ptr, e, cutoff_L, &rho));
        row[1] = rho;
      } else {  // integral-diff
        double diff;
        check(cqmsc_dos_integral_diff(params.ptr, e, e_ref, tol, &diff));
        row[1] = diff;
      }
      table.row(row);
    }
    return kExitOk;
  }
};

struct ThermalityCmd {
  CommonOptions common;
  std::vector<double> probes;

  int run() {
    ParamsHandle params;
    common.make_params(params);
    if (probes.empty()) {
      const double e_unit = common.hbar / common.alpha;
      probes = {0.5 * e_unit, e_unit, 2.0 * e_unit};
    }

    cqmsc_thermal_report rep;
    check(cqmsc_thermality_report(params.ptr, probes.data(), probes.size(), &rep));

    std::ostringstream body;
    body << "{\n";
    body << "  \"schema_version\": 1,\n";
    body << "  \"command\": \"thermality\",\n";
    body << "  \"params\": {\"g\": " << cli::fmt17(common.g)
         << ", \"alpha\": " << cli::fmt17(common.alpha)
         << ", \"hbar\": " << cli::fmt17(common.hbar)
         << ", \"mass\": " << cli::fmt17(common.mass) << "},\n";
    body << "  \"diamond_temperature\": " << cli::fmt17(rep.t_d) << ",\n";
    body << "  \"beta\": " << cli::fmt17(rep.beta) << ",\n";
    body << "  \"lyapunov_exponent\": " << cli::fmt17(rep.lambda) << ",\n";
    body << "  \"scrambling_bound\": " << cli::fmt17(rep.bound) << ",\n";
    body << "  \"bound_ratio\": " << cli::fmt17(rep.ratio) << ",\n";
    body << "  \"im_period_over_hbar\": " << cli::fmt17(rep.im_period_over_hbar) << ",\n";
    body << "  \"thermality_signature\": {\n";
    body << "    \"note\": \"geometric ratio of the pole series vs exp(-beta E)\",\n";
    body << "    \"probes\": [\n";
    for (std::size_t i = 0; i < probes.size(); ++i) {
      double ratio, boltzmann, discrepancy;
      check(cqmsc_thermality_probe(params.ptr, probes[i], &ratio, &boltzmann, &discrepancy));
      body << "      {\"energy\": " << cli::fmt17(probes[i])
           << ", \"geometric_ratio\": " << cli::fmt17(ratio)
           << ", \"boltzmann_factor\": " << cli::fmt17(boltzmann)
           << ", \"discrepancy\": " << cli::fmt17(discrepancy) << "}"
           << (i + 1 < probes.size() ? ",\n" : "\n");
    }
    body << "    ],\n";
    body << "    \"max_discrepancy\": " << cli::fmt17(rep.max_probe_discrepancy) << "\n";
    body << "  }\n";
    body << "}\n";

    cli::Writer writer(common.out);
    writer.stream() << body.str();
    return kExitOk;
  }
};

struct VerifyCmd {
  CommonOptions common;
  bool quick = false;
  std::string inject_fault = "none";
  bool json_to_stdout = false;

  int run() {
    ParamsHandle params;
    common.make_params(params);
    int fault = CQMSC_FAULT_NONE;
    if (inject_fault == "disable-langer") {
      fault = CQMSC_FAULT_DISABLE_LANGER;
    } else if (inject_fault != "none") {
      fail(kExitValidation, "invalid-argument",
           "inject-fault must be none or disable-langer, got '" + inject_fault + "'");
    }

    char* json = nullptr;
    int passed = 0;
    check(cqmsc_verify_run(params.ptr, quick ? 1 : 0, fault, &json, &passed));
    const std::unique_ptr<char, void (*)(char*)> guard(json, cqmsc_string_free);

    if (json_to_stdout) {
      std::cout << json << "\n";
    } else {
      const nlohmann::json report = nlohmann::json::parse(json);
      for (const auto& chk : report.at("checks")) {
        std::printf("%s  %-32s  measured %.3e  tolerance %.3e  [%.2fs]\n",
                    chk.at("passed").get<bool>() ? "PASS" : "FAIL",
                    chk.at("name").get<std::string>().c_str(),
                    chk.at("measured").is_number() ? chk.at("measured").get<double>()
                                                   : std::nan(""),
                    chk.at("tolerance").get<double>(), chk.at("seconds").get<double>());
      }
      std::cout << (passed ? "all checks passed" : "CHECKS FAILED") << "\n";
    }

    if (!common.out.empty()) {
      std::ofstream out(common.out);
      if (!out) fail(kExitValidation, "invalid-argument", "cannot open " + common.out);
      out << json << "\n";
    }
    return passed ? kExitOk : kExitNumerical;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassical toolkit for conformal quantum mechanics on causal diamonds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return std::string(cqmsc_version()); });

  PotentialCmd potential;
  auto* sub_potential =
      app.add_subcommand("potential", "effective potential samples over a q grid");
  add_common(sub_potential, potential.common);
  sub_potential->add_option("--q-min", potential.q_min, "grid start (> 0)");
  sub_potential->add_option("--q-max", potential.q_max, "grid end");
  sub_potential->add_option("--q-steps", potential.q_steps, "grid points");

  PhasePortraitCmd portrait;
  auto* sub_portrait = app.add_subcommand(
      "phase-portrait", "direction field, level curves and asymptotes in phase space");
  add_common(sub_portrait, portrait.common);
  sub_portrait->add_option("--q-min", portrait.q_min, "field grid start (> 0)");
  sub_portrait->add_option("--q-max", portrait.q_max, "field grid end");
  sub_portrait->add_option("--q-steps", portrait.q_steps, "field grid points");
  sub_portrait->add_option("--p-min", portrait.p_min, "momentum grid start");
  sub_portrait->add_option("--p-max", portrait.p_max, "momentum grid end");
  sub_portrait->add_option("--p-steps", portrait.p_steps, "momentum grid points");
  sub_portrait->add_option("--energy", portrait.energy, "level-curve energy");

  SimulateCmd simulate;
  auto* sub_simulate = app.add_subcommand("simulate", "integrate one generator-flow trajectory");
  add_common(sub_simulate, simulate.common);
  sub_simulate->add_option("--q0", simulate.q0, "initial coordinate (> 0)");
  sub_simulate->add_option("--p0", simulate.p0, "initial momentum");
  sub_simulate->add_option("--tau-end", simulate.tau_end, "integration horizon");
  sub_simulate->add_option("--sample-dtau", simulate.sample_dtau, "sampling interval");
  sub_simulate->add_option("--drift-tol", simulate.drift_tol, "relative energy drift bound");
  sub_simulate->add_option("--q-escape", simulate.q_escape, "escape cutoff (S)");

  LyapunovCmd lyapunov;
  auto* sub_lyapunov =
      app.add_subcommand("lyapunov", "instability exponent of the S flow from separation growth");
  add_common(sub_lyapunov, lyapunov.common);
  sub_lyapunov->add_option("--q0", lyapunov.q0, "initial coordinate (> 0)");
  sub_lyapunov->add_option("--p0", lyapunov.p0, "initial momentum");
  sub_lyapunov->add_option("--delta0", lyapunov.delta0, "initial displacement in q");
  sub_lyapunov->add_option("--tau-end", lyapunov.tau_end, "integration horizon");
  sub_lyapunov->add_option("--sample-dtau", lyapunov.sample_dtau, "sampling interval");
  sub_lyapunov->add_option("--method", lyapunov.method, "two-trajectory or tangent");

  ActionCmd action;
  auto* sub_action =
      app.add_subcommand("action", "loop action, Langer-corrected action and period");
  add_common(sub_action, action.common);
  sub_action->add_option("--energy", action.energy, "single orbit energy");
  sub_action->add_option("--e-min", action.e_min, "energy grid start");
  sub_action->add_option("--e-max", action.e_max, "energy grid end");
  sub_action->add_option("--e-steps", action.e_steps, "energy grid points");
  sub_action->add_option("--method", action.method, "closed or quadrature");
  sub_action->add_option("--tol", action.tol, "quadrature relative tolerance");

  DosCmd dos;
  auto* sub_dos = app.add_subcommand("dos", "density-of-states routes over an energy grid");
  add_common(sub_dos, dos.common);
  sub_dos->add_option("--method", dos.method,
                      "gutzwiller | series | digamma | contour | thomas-fermi-cutoff | "
                      "integral-diff");
  sub_dos->add_option("--energy", dos.energy, "single energy");
  sub_dos->add_option("--e-min", dos.e_min, "energy grid start");
  sub_dos->add_option("--e-max", dos.e_max, "energy grid end");
  sub_dos->add_option("--e-steps", dos.e_steps, "energy grid points");
  sub_dos->add_option("--k-max", dos.k_max, "orbit-repetition truncation");
  sub_dos->add_option("--n-max", dos.n_max, "pole-series truncation");
  sub_dos->add_option("--cutoff-L", dos.cutoff_L, "box length for cutoff regularization");
  sub_dos->add_option("--reg-C", dos.reg_C, "explicit subtraction constant");
  sub_dos->add_option("--e-ref", dos.e_ref, "reference energy for integral-diff");
  sub_dos->add_option("--tol", dos.tol, "quadrature tolerance");

  ThermalityCmd thermality;
  auto* sub_thermality =
      app.add_subcommand("thermality", "diamond-temperature and scrambling diagnostics");
  add_common(sub_thermality, thermality.common);
  sub_thermality->add_option("--probe-energies", thermality.probes,
                             "Boltzmann-signature probe energies");

  VerifyCmd verify;
  auto* sub_verify =
      app.add_subcommand("verify", "run the cross-method identity suite (exit 0 iff all pass)");
  add_common(sub_verify, verify.common);
  sub_verify->add_flag("--quick", verify.quick, "closed-form subset only, no ODE sweeps");
  sub_verify->add_option("--inject-fault", verify.inject_fault,
                         "negative control: none or disable-langer");
  sub_verify->add_flag("--json", verify.json_to_stdout, "print the JSON report to stdout");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Manual config-file pass so that flags > file > defaults.
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
      } else if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[i + 1];
      }
    }
    if (!config_path.empty()) {
      args = merge_config_args(args, read_config_file(config_path));
    }

    try {
      std::vector<const char*> cargs;
      cargs.push_back(argv[0]);
      for (const auto& a : args) cargs.push_back(a.c_str());
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {  // --help / --version
        return app.exit(e);
      }
      fail(kExitValidation, "invalid-argument", e.what());
    }

    if (sub_potential->parsed()) return potential.run();
    if (sub_portrait->parsed()) return portrait.run();
    if (sub_simulate->parsed()) return simulate.run();
    if (sub_lyapunov->parsed()) return lyapunov.run();
    if (sub_action->parsed()) return action.run();
    if (sub_dos->parsed()) return dos.run();
    if (sub_thermality->parsed()) return thermality.run();
    if (sub_verify->parsed()) return verify.run();
    fail(kExitValidation, "invalid-argument", "no subcommand given");
  } catch (const CliError& e) {
    std::cerr << "{\"error\": {\"status\": \"" << e.status << "\", \"message\": \""
              << e.message << "\"}}\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": {\"status\": \"internal\", \"message\": \"" << e.what()
              << "\"}}\n";
    return kExitNumerical;
  }
  return kExitOk;
}
