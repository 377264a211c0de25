#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pslset/cli.hpp"
#include "pslset/io.hpp"

namespace fs = std::filesystem;
using namespace pslset;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pslset_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("design writes its outputs and a non-increasing trace") {
  const fs::path dir = scratch("design");
  const Run r = run({"design", "--L", "2", "--M", "24", "--seed", "7", "--iters", "40", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("seed=7") != std::string::npos);
  for (const char* f : {"sequence.json", "trace.csv", "correlation.csv", "summary.json"})
    CHECK(fs::exists(dir / f));

  const auto rows = csv_rows(dir / "trace.csv");
  REQUIRE(rows.size() >= 2);
  for (std::size_t n = 1; n < rows.size(); ++n) CHECK(std::stod(rows[n][1]) <= std::stod(rows[n - 1][1]) + 1e-9);

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["seed"] == 7);
  const double final_psl = summary["psl"].get<double>();
  CHECK(final_psl == std::stod(rows.back()[1]));

  SUBCASE("correlate reproduces the reported psl") {
    const fs::path cdir = scratch("roundtrip");
    const Run c = run({"correlate", "--in", (dir / "sequence.json").string(), "--out", cdir.string()});
    REQUIRE(c.code == 0);
    const auto metrics = nlohmann::json::parse(slurp(cdir / "metrics.json"));
    CHECK(std::abs(metrics["psl"].get<double>() - final_psl) < 1e-9);
    CHECK(slurp(cdir / "correlation.csv") == slurp(dir / "correlation.csv"));
  }
  SUBCASE("restart from the written sequences") {
    const fs::path rdir = scratch("restart");
    const Run again = run({"design", "--init-file", (dir / "sequence.json").string(), "--iters", "3", "--out",
                           rdir.string()});
    CHECK(again.code == 0);
    const auto first = csv_rows(rdir / "trace.csv").front();
    CHECK(std::abs(std::stod(first[1]) - final_psl) < 1e-12);
  }
}

TEST_CASE("design usage errors") {
  CHECK(run({"design", "--L", "0", "--M", "10"}).code == 2);
  CHECK(run({"design", "--M", "10"}).code == 2);
  CHECK(run({"design", "--L", "2", "--M", "1"}).code == 2);
  CHECK(run({"design", "--L", "2", "--M", "10", "--eigen-mode", "exact"}).code == 2);
  CHECK(run({"design", "--L", "2", "--M", "10", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("seed sweep fans out into per-seed directories") {
  const fs::path dir = scratch("sweep");
  const Run r = run({"design", "--L", "1", "--M", "16", "--iters", "5", "--seed", "3", "--sweep", "3", "--jobs",
                     "2", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (int s : {3, 4, 5}) CHECK(fs::exists(dir / ("seed_" + std::to_string(s)) / "trace.csv"));
  CHECK(r.out.find("seed=3") < r.out.find("seed=4"));

  const fs::path single = scratch("single4");
  run({"design", "--L", "1", "--M", "16", "--iters", "5", "--seed", "4", "--out", single.string()});
  CHECK(slurp(single / "sequence.json") == slurp(dir / "seed_4" / "sequence.json"));
}

TEST_CASE("verbose design writes the inner trace") {
  const fs::path dir = scratch("verbose");
  REQUIRE(run({"design", "--L", "1", "--M", "12", "--iters", "2", "-v", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "inner_trace.csv").rfind("outer_iter,inner_iter,g_value\n1,0,", 0) == 0);
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  ::setenv(cli::output_dir_env, dir.string().c_str(), 1);
  const Run r = run({"design", "--L", "1", "--M", "8", "--iters", "1"});
  ::unsetenv(cli::output_dir_env);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "sequence.json"));
}

TEST_CASE("correlate") {
  const fs::path dir = scratch("correlate");
  {
    std::ofstream os(dir / "pair.json");
    os << R"({"L": 1, "M": 2, "phases": [[0, 0]]})";
    std::ofstream bad(dir / "bad.json");
    bad << R"({"L": 1, "M": 2, "phases": [[0]]})";
  }
  const Run r = run({"correlate", "--in", (dir / "pair.json").string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "correlation.csv") == "pair_i,pair_j,lag,abs_value\n1,1,-1,1\n1,1,0,2\n1,1,1,1\n");
  CHECK(r.out.find("psl=1 ") != std::string::npos);
  CHECK(run({"correlate", "--in", (dir / "bad.json").string(), "--out", dir.string()}).code == 2);
  CHECK(run({"correlate", "--in", (dir / "missing.json").string()}).code == 2);

  io::write_sequence_file(dir / "two.json", init_random(2, 9, 1));
  REQUIRE(run({"correlate", "--in", (dir / "two.json").string(), "--out", dir.string()}).code == 0);
  std::map<std::pair<std::string, long>, std::string> cells;
  for (const auto& row : csv_rows(dir / "correlation.csv")) cells[{row[0] + row[1], std::stol(row[2])}] = row[3];
  for (long k = -8; k <= 8; ++k) CHECK(cells[{"12", k}] == cells[{"21", -k}]);
}

TEST_CASE("radar") {
  const fs::path dir = scratch("radar");
  io::write_sequence_file(dir / "four.json", init_random(4, 16, 2));
  io::write_sequence_file(dir / "two.json", init_random(2, 16, 2));
  {
    std::ofstream os(dir / "lone.json");
    os << R"({"Q": 1, "P": 1, "theta_deg": [15], "beta": [[[0.5, -1]]], "sigma2": 0})";
  }

  const Run lone = run({"radar", "--in", (dir / "four.json").string(), "--scene", (dir / "lone.json").string(),
                        "--estimator", "ls", "--out", dir.string()});
  REQUIRE(lone.code == 0);
  const auto mse = csv_rows(dir / "mse.csv");
  REQUIRE(mse.size() == 1);
  CHECK(mse[0][0] == "ls");
  CHECK(std::stod(mse[0][1]) < 1e-10);

  const fs::path both = dir / "both";
  const std::vector<std::string> args = {"radar", "--in", (dir / "four.json").string(), "--random-scene", "--Q",
                                         "6", "--P", "5", "--seed", "3", "--estimator", "both", "--out",
                                         both.string()};
  REQUIRE(run(args).code == 0);
  for (const char* f : {"true_abs.csv", "ls_abs.csv", "capon_abs.csv", "mse.csv"}) CHECK(fs::exists(both / f));
  CHECK(csv_rows(both / "mse.csv").size() == 2);
  const std::string first = slurp(both / "ls_abs.csv");
  REQUIRE(run(args).code == 0);
  CHECK(slurp(both / "ls_abs.csv") == first);

  CHECK(run({"radar", "--in", (dir / "two.json").string(), "--random-scene", "--out", dir.string()}).code == 2);
  CHECK(run({"radar", "--in", (dir / "four.json").string(), "--out", dir.string()}).code == 2);
  CHECK(run({"radar", "--in", (dir / "four.json").string(), "--random-scene", "--estimator", "mle"}).code == 2);
}
