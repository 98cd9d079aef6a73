#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rct/io.hpp"

namespace {

std::string work_dir() {
  static std::string dir = [] {
    auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    auto d = std::filesystem::temp_directory_path() /
             ("rct_cli_" + std::to_string(stamp));
    std::filesystem::create_directories(d);
    return d.string();
  }();
  return dir;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(RCT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

double cell(const rct::io::CsvTable& t, size_t row, size_t col) {
  return std::strtod(t.rows[row][col].c_str(), nullptr);
}

std::string meta(const rct::io::CsvTable& t, const std::string& key) {
  for (const auto& [k, v] : t.metadata)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("argument errors exit with status 2") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("sample-hermitian") == 2);  // missing required --out
  CHECK(run_cli("sample-hermitian --bogus-flag --out " + work_dir() + "/x.csv") == 2);
  CHECK(run_cli("verify --only no-such-check") == 2);
  CHECK(run_cli("equilibrium --n 4 --gamma -1 --out " + work_dir() + "/x.csv") == 2);
}

TEST_CASE("verify subcommand runs a named check and writes a report") {
  std::string json_path = work_dir() + "/verify.json";
  CHECK(run_cli("verify --only dimension-table --json " + json_path) == 0);
  auto doc = nlohmann::json::parse(rct::io::read_text(json_path));
  REQUIRE(doc.contains("data"));
  REQUIRE(doc["data"]["checks"].size() == 1);
  CHECK(doc["data"]["checks"][0]["name"] == "dimension-table");
  CHECK(doc["data"]["checks"][0]["passed"] == true);
  CHECK(doc["checks"]["all_passed"] == true);
}

TEST_CASE("sample-hermitian writes a reproducible csv") {
  std::string out = work_dir() + "/samples.csv";
  int rc = run_cli("sample-hermitian --n 2 --d 1 --length 6000 --burn-in 1000 "
                   "--thin 10 --seed 7 --out " + out);
  CHECK(rc == 0);
  auto table = rct::io::read_csv(out);
  CHECK(meta(table, "seed") == "7");
  CHECK(meta(table, "command") == "sample-hermitian");
  REQUIRE(table.header.size() == 2);  // two 1-d points per configuration
  REQUIRE(table.rows.size() == 500);
  CHECK(!std::filesystem::exists(out + ".partial"));
  CHECK(meta(table, "check_projection_ks") != "");

  // Re-render reproduces the file byte for byte.
  CHECK(rct::io::render_csv(table) == rct::io::read_text(out));

  // Same seed, same bytes; different seed, different samples.
  std::string out2 = work_dir() + "/samples2.csv";
  CHECK(run_cli("sample-hermitian --n 2 --d 1 --length 6000 --burn-in 1000 "
                "--thin 10 --seed 7 --out " + out2) == 0);
  CHECK(rct::io::read_text(out2) == rct::io::read_text(out));
  std::string out3 = work_dir() + "/samples3.csv";
  CHECK(run_cli("sample-hermitian --n 2 --d 1 --length 6000 --burn-in 1000 "
                "--thin 10 --seed 8 --out " + out3) == 0);
  CHECK(rct::io::read_text(out3) != rct::io::read_text(out));
}

TEST_CASE("sample-hermitian json agrees with csv numerically") {
  std::string csv_out = work_dir() + "/pair.csv";
  std::string json_out = work_dir() + "/pair.json";
  std::string base = "sample-hermitian --n 3 --d 2 --length 3000 --burn-in 500 "
                     "--thin 5 --seed 11 --out ";
  CHECK(run_cli(base + csv_out) == 0);
  CHECK(run_cli(base + json_out + " --format json") == 0);

  auto table = rct::io::read_csv(csv_out);
  auto doc = nlohmann::json::parse(rct::io::read_text(json_out));
  REQUIRE(doc["data"]["columns"].size() == table.header.size());
  REQUIRE(doc["data"]["rows"].size() == table.rows.size());
  for (size_t i = 0; i < table.rows.size(); i += 97) {
    for (size_t j = 0; j < table.header.size(); ++j) {
      double via_json = doc["data"]["rows"][i][j].get<double>();
      CHECK(via_json == cell(table, i, j));
    }
  }
  CHECK(doc["config"]["seed"].get<double>() == 11.0);
  CHECK(doc["checks"].contains("projection_ks"));
}

TEST_CASE("sample-hermitian --reconstruct emits a matching tuple file") {
  std::string out = work_dir() + "/recon.csv";
  CHECK(run_cli("sample-hermitian --n 2 --d 2 --length 2000 --burn-in 500 "
                "--thin 50 --seed 3 --reconstruct --out " + out) == 0);
  auto tuples = rct::io::read_csv(work_dir() + "/recon_tuples.csv");
  auto points = rct::io::read_csv(out);
  REQUIRE(points.rows.size() == 30);
  REQUIRE(tuples.rows.size() == 30);
  // comp{r}_{i}_{j}_re/im for d=2, n=2: 2 components x 4 entries x 2 parts.
  CHECK(tuples.header.size() == 16);

  // Hermitian components: diagonal entries are real, off-diagonal conjugate.
  auto col = [&](const std::string& name) {
    for (size_t j = 0; j < tuples.header.size(); ++j)
      if (tuples.header[j] == name) return j;
    REQUIRE(false);
    return size_t{0};
  };
  for (size_t row = 0; row < tuples.rows.size(); row += 7) {
    CHECK(cell(tuples, row, col("comp0_0_0_im")) == 0.0);
    CHECK(cell(tuples, row, col("comp0_0_1_re")) ==
          cell(tuples, row, col("comp0_1_0_re")));
    CHECK(cell(tuples, row, col("comp0_0_1_im")) ==
          -cell(tuples, row, col("comp0_1_0_im")));
    // Trace of each component equals the sum of that component's points.
    double trace = cell(tuples, row, col("comp1_0_0_re")) +
                   cell(tuples, row, col("comp1_1_1_re"));
    double sum = cell(points, row, 1) + cell(points, row, 3);
    CHECK(trace == doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("equilibrium subcommand writes the minimizer and a density grid") {
  std::string out = work_dir() + "/eq.csv";
  CHECK(run_cli("equilibrium --n 8 --d 2 --gamma 1 --seed 5 --out " + out) == 0);
  auto table = rct::io::read_csv(out);
  REQUIRE(table.rows.size() == 8);
  REQUIRE(table.header.size() == 2);
  CHECK(meta(table, "check_support_ok") == "true");
  CHECK(meta(table, "converged") == "1");
  double energy = std::strtod(meta(table, "energy").c_str(), nullptr);
  CHECK(std::isfinite(energy));

  auto density = rct::io::read_csv(work_dir() + "/eq_density.csv");
  REQUIRE(density.rows.size() == 201);
  REQUIRE(density.header.size() == 2);
  // Density grid covers the support and vanishes at the clipped edges.
  CHECK(cell(density, 100, 1) > 0.0);

  // An iteration-starved run reports failure but still writes its state.
  std::string stuck = work_dir() + "/stuck.csv";
  CHECK(run_cli("equilibrium --n 12 --d 1 --max-iter 1 --out " + stuck) == 3);
  CHECK(std::filesystem::exists(stuck));
  auto stuck_table = rct::io::read_csv(stuck);
  CHECK(meta(stuck_table, "converged") == "0");
}

TEST_CASE("density-2x2 grid reflects attraction versus repulsion") {
  std::string d3 = work_dir() + "/rho3.csv";
  CHECK(run_cli("density-2x2 --d 3 --gamma 1 --grid 60 --out " + d3) == 0);
  auto t3 = rct::io::read_csv(d3);
  REQUIRE(t3.rows.size() == 60);
  REQUIRE(t3.header == std::vector<std::string>({"delta", "log_rho",
                                                 "log_rho_stripped", "finite"}));
  // d=3: the stripped interaction increases towards small separation.
  size_t mid = 20;
  CHECK(cell(t3, 0, 2) > cell(t3, mid, 2));
  CHECK(cell(t3, 0, 3) == 1.0);

  std::string d1 = work_dir() + "/rho1.csv";
  CHECK(run_cli("density-2x2 --d 1 --gamma 1 --grid 60 --out " + d1) == 0);
  auto t1 = rct::io::read_csv(d1);
  // d=1: repulsion crushes the density at small separation.
  CHECK(cell(t1, 0, 1) < -5.0);
  CHECK(cell(t1, 0, 2) < cell(t1, mid, 2));
}

TEST_CASE("density-2x2 --mcmc cross-checks the sampler against the marginal") {
  std::string out = work_dir() + "/rho2_mcmc.csv";
  CHECK(run_cli("density-2x2 --d 2 --gamma 1 --grid 40 --mcmc --length 260000 "
                "--burn-in 20000 --thin 10 --sigma 0.6 --seed 19 --out " + out) == 0);
  auto table = rct::io::read_csv(out);
  double ks = std::strtod(meta(table, "check_mcmc_ks").c_str(), nullptr);
  CHECK(ks > 0.0);
  CHECK(ks < 0.02);
  CHECK(meta(table, "check_mcmc_samples") == "24000");
}
