#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// End-to-end checks of the command-line tool (path from CQMSC_CLI).

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* env = std::getenv("CQMSC_CLI");
  return env != nullptr ? env : "./build/tools/cqmsc";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string err_path = "/tmp/cqmsc_cli_stderr.txt";
  const std::string cmd = cli_path() + " " + args + " 2>" + err_path;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buffer;
  while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) out += buffer.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
}

// Data rows of a CSV emission (skips '#' metadata and the header row).
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("cli: default potential grid contains the exact zero of V_S") {
  const auto res = run_cli("potential");
  REQUIRE(res.exit_code == 0);
  bool found = false;
  for (const auto& row : csv_rows(res.out)) {
    if (row[0] == "1" && row[1] == "0") found = true;
  }
  CHECK(found);
}

TEST_CASE("cli: R potential grid is convex with a single minimum") {
  const auto res = run_cli("potential --generator R --g 1 --alpha 1 --q-steps 64");
  REQUIRE(res.exit_code == 0);
  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 64);
  int sign_changes = 0;
  double prev_diff = 0.0;
  double min_q = 0.0, min_v = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][1]);
    const double diff = v - std::stod(rows[i - 1][1]);
    if (i > 1 && diff * prev_diff < 0.0) ++sign_changes;
    prev_diff = diff;
    if (v < min_v) {
      min_v = v;
      min_q = std::stod(rows[i][0]);
    }
  }
  CHECK(sign_changes == 1);
  CHECK(min_q == doctest::Approx(1.0).epsilon(0.1));  // grid resolution
}

TEST_CASE("cli: action reference value") {
  const auto res = run_cli("action --g 1 --alpha 2 --energy 2 --method quadrature");
  REQUIRE(res.exit_code == 0);
  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 1);
  CHECK(std::stod(rows[0][1]) == doctest::Approx(3.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("cli: lyapunov summary row") {
  const auto res = run_cli("lyapunov --g 1 --alpha 2");
  REQUIRE(res.exit_code == 0);
  std::istringstream in(res.out);
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(header == "g,alpha,lambda_hat,r_squared");
  std::istringstream rs(row);
  std::string cell;
  std::vector<double> values;
  while (std::getline(rs, cell, ',')) values.push_back(std::stod(cell));
  REQUIRE(values.size() == 4);
  CHECK(values[2] == doctest::Approx(0.5).epsilon(0.01));
  CHECK(values[3] > 0.999);
}

TEST_CASE("cli: gutzwiller dos column is finite on the default grid") {
  const auto res = run_cli("dos --method gutzwiller --g 1 --alpha 1 --e-steps 20");
  REQUIRE(res.exit_code == 0);
  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 20);
  for (const auto& row : rows) {
    CHECK(std::isfinite(std::stod(row[1])));
    CHECK(std::isfinite(std::stod(row[5])));  // delta_rho_sc
  }
}

TEST_CASE("cli: phase portrait arrows point up near the barrier") {
  const auto res = run_cli("phase-portrait --g 1 --alpha 2");
  REQUIRE(res.exit_code == 0);
  bool asymptote_seen = false;
  for (const auto& row : csv_rows(res.out)) {
    if (row[0] == "field" && std::stod(row[1]) < 0.3) {
      CHECK(std::stod(row[4]) > 0.0);  // dp/dtau dominated by g/q^3
    }
    if (row[0] == "asymptote") {
      asymptote_seen = true;
      CHECK(std::stod(row[2]) ==
            doctest::Approx(std::stod(row[1]) / 2.0).epsilon(1e-12));
    }
  }
  CHECK(asymptote_seen);
}

TEST_CASE("cli: simulate conserves energy and reports escape") {
  const auto res = run_cli("simulate --generator S --g 1 --alpha 2 --tau-end 60");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("# status = escaped") != std::string::npos);
  for (const auto& row : csv_rows(res.out)) {
    CHECK(std::stod(row[3]) <= 1.1e-8);  // energy_drift column
  }
}

TEST_CASE("cli: thermality report fields") {
  const auto res = run_cli("thermality --alpha 2");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("\"bound_ratio\": 0.5") != std::string::npos);
  CHECK(res.out.find("\"lyapunov_exponent\": 0.5") != std::string::npos);
  CHECK(res.out.find("\"scrambling_bound\": 1") != std::string::npos);
}

TEST_CASE("cli: config echo reproduces the run byte for byte") {
  const std::string out1 = "/tmp/cqmsc_cli_rt1.csv";
  const std::string out2 = "/tmp/cqmsc_cli_rt2.csv";
  const std::string conf = "/tmp/cqmsc_cli_rt.conf";
  REQUIRE(run_cli("potential --g 2.5 --alpha 1.25 --q-steps 9 --out " + out1).exit_code == 0);

  // extract the echo block into a config file
  std::ifstream in(out1);
  std::ofstream cf(conf);
  std::string line;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line == "# config-begin") {
      inside = true;
      continue;
    }
    if (line == "# config-end") break;
    if (inside) cf << line.substr(2) << "\n";
  }
  cf.close();

  REQUIRE(run_cli("potential --config " + conf + " --out " + out2).exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));

  // flags take precedence over file values
  const auto res = run_cli("potential --config " + conf + " --g 4.0");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("# g = 4\n") != std::string::npos);
}

TEST_CASE("cli: json-lines format") {
  const auto res = run_cli("action --energy 2 --alpha 2 --format json-lines");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("\"command\":\"action\"") != std::string::npos);
  CHECK(res.out.find("\"W\":9.4247779607693793") != std::string::npos);
}

TEST_CASE("cli: exit codes and machine-readable errors") {
  SUBCASE("validation error") {
    const auto res = run_cli("potential --g -3");
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("\"error\"") != std::string::npos);
    CHECK(res.err.find("g must be positive") != std::string::npos);
  }
  SUBCASE("physics domain error") {
    const auto res = run_cli("action --energy 0.1 --alpha 1");
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("below-minimum") != std::string::npos);
  }
  SUBCASE("numerical error") {
    const auto res = run_cli("lyapunov --tau-end 1");
    CHECK(res.exit_code == 3);
    CHECK(res.err.find("regime-not-reached") != std::string::npos);
  }
  SUBCASE("unknown flag") {
    CHECK(run_cli("potential --nonsense 3").exit_code == 2);
  }
}

TEST_CASE("cli: quick verify passes") {
  const auto res = run_cli("verify --quick");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("all checks passed") != std::string::npos);
  CHECK(res.out.find("FAIL") == std::string::npos);
}
