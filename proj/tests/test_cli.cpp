#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "run_config.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using namespace cswp_cli;

namespace {

const fs::path kWork = CSWP_TEST_WORK_DIR;

int run(const std::string& args) {
  const std::string cmd = std::string(CSWP_CLI_PATH) + " " + args + " >" + (kWork / "last_stdout.txt").string() +
                          " 2>" + (kWork / "last_stderr.txt").string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

fs::path dir(const std::string& name) {
  fs::create_directories(kWork);
  const fs::path d = kWork / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults describe the reference experiment") {
    const RunConfig c = parse_config("{}");
    CHECK(c.section.kind == "square");
    CHECK(c.degree == 3);
    CHECK(c.elements == 5);
    CHECK(c.material.kind == "svk");
    CHECK(c.material.lambda == 121.0);
    CHECK(c.material.mu == 80.0);
    CHECK(c.steps == 1);
    CHECK(c.formulation == "pk2");
    CHECK(c.tolerance == 1e-10);
  }

  TEST_CASE("round trip is idempotent") {
    RunConfig c;
    c.section.kind = "rectangle";
    c.section.a = 1.0 / 3.0;
    c.material.kind = "mooneyrivlin";
    c.eps = {0.1, -1e-17, 0.3};
    c.kappa = {0.2, 0.0, 1.0 / 7.0};
    c.formulation = "pk1";
    c.sweep.proportional = true;
    c.sweep.axis = 3;
    const std::string once = serialize_config(c);
    const std::string twice = serialize_config(parse_config(once));
    CHECK(once == twice);
    const RunConfig back = parse_config(once);
    CHECK(back.section.a == c.section.a);
    CHECK(back.kappa[2] == c.kappa[2]);
    CHECK(back.eps[1] == c.eps[1]);
    CHECK(back.sweep.axis == 3);
    CHECK(back.sweep.proportional);
  }

  TEST_CASE("shorthand forms") {
    const RunConfig c = parse_config(R"({"section": "circle", "material": "neohooke", "sweep": {"axis": "eps3"}})");
    CHECK(c.section.kind == "circle");
    CHECK(c.material.kind == "neohooke");
    CHECK(c.sweep.axis == 2);
  }

  TEST_CASE("schema violations") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"degre": 3})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"degree": "three"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"degree": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"eps": [1, 2]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"section": "hexagon"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"material": {"kind": "svk", "mu": -1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"formulation": "pk3"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"samples": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"axis": "kappa9"}})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("axis names") {
    for (int i = 0; i < 6; ++i) CHECK(parse_axis(axis_name(i)) == i);
    CHECK(parse_axis("4") == 4);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("solve writes every output") {
    const fs::path d = dir("solve");
    REQUIRE(run("solve --eps 0.02,0.03,0.1 --kappa 0.01,0.02,0.02 --out " + d.string()) == 0);
    for (const char* f : {"summary.txt", "residuals.csv", "resultants.csv", "stiffness.csv", "fields.csv", "config.json"})
      CHECK(fs::exists(d / f));
    const auto res = csv(d / "residuals.csv");
    CHECK(res[0][1] == "residual_norm");
    CHECK(std::stod(res.back()[1]) <= 1e-10);
    const auto st = csv(d / "stiffness.csv");
    REQUIRE(st.size() == 7);
    CHECK(st[0].size() == 7);
    CHECK(st[3][0] == "eps3");
    CHECK(std::stod(st[3][3]) > 100.0);
    const auto fl = csv(d / "fields.csv");
    CHECK(fl.size() == 1 + 21 * 21);
    CHECK(fl[0][4] == "u1_mm");
  }

  TEST_CASE("zero prescriptors give zero outputs") {
    const fs::path d = dir("zero");
    REQUIRE(run("solve --grid 5 --out " + d.string()) == 0);
    const auto r = csv(d / "resultants.csv");
    for (const auto& v : r[1]) CHECK(std::stod(v) == 0.0);
    const auto f = csv(d / "fields.csv");
    for (size_t i = 1; i < f.size(); ++i) {
      for (int c = 4; c <= 7; ++c) CHECK(std::stod(f[i][c]) == 0.0);
      CHECK(std::stod(f[i][8]) == 1.0);
    }
  }

  TEST_CASE("identical configurations give byte-identical outputs") {
    const std::string args = "--section circle --material neohooke --eps 0.01,0,0.05 --kappa 0,0.02,0.1 --grid 7";
    const fs::path a = dir("det_a"), b = dir("det_b");
    REQUIRE(run("solve " + args + " --out " + a.string()) == 0);
    REQUIRE(run("solve " + args + " --workers 3 --out " + b.string()) == 0);
    for (const char* f : {"summary.txt", "residuals.csv", "resultants.csv", "stiffness.csv", "fields.csv"})
      CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
  }

  TEST_CASE("formulations give the same resultants") {
    const fs::path a = dir("pk2"), b = dir("pk1");
    const std::string args = "--eps 0.02,0.03,0.1 --kappa 0.01,0.02,0.02 --tol 1e-12";
    REQUIRE(run("stiffness " + args + " --out " + a.string()) == 0);
    REQUIRE(run("stiffness " + args + " --formulation pk1 --out " + b.string()) == 0);
    const auto ra = csv(a / "resultants.csv"), rb = csv(b / "resultants.csv");
    double scale = 0.0;
    for (const auto& v : ra[1]) scale = std::max(scale, std::abs(std::stod(v)));
    for (size_t i = 0; i < 6; ++i) CHECK(std::abs(std::stod(ra[1][i]) - std::stod(rb[1][i])) <= 1e-8 * scale);
    CHECK_FALSE(fs::exists(b / "fields.csv"));
  }

  TEST_CASE("config file with flag overrides") {
    const fs::path d = dir("cfg");
    fs::create_directories(d);
    RunConfig c;
    c.section.kind = "rectangle";
    c.elements = 3;
    c.kappa = {0.0, 0.0, 0.1};
    c.out = (d / "from_file").string();
    {
      std::ofstream(d / "run.json") << serialize_config(c);
    }
    REQUIRE(run("solve --config " + (d / "run.json").string() + " --elements 4 --out " + (d / "o").string()) == 0);
    const RunConfig used = load_config((d / "o" / "config.json").string());
    CHECK(used.section.kind == "rectangle");
    CHECK(used.elements == 4);
    CHECK(used.kappa[2] == 0.1);
    CHECK_FALSE(fs::exists(d / "from_file"));
  }

  TEST_CASE("sweep output") {
    const fs::path d = dir("sweep");
    REQUIRE(run("sweep --section rectangle --a 1 --b 0.5 --lambda 1.275 --mu 1 --axis kappa3 --from 0 --to 0.5 "
                "--samples 11 --out " +
                d.string()) == 0);
    const auto rows = csv(d / "sweep.csv");
    REQUIRE(rows.size() == 12);
    const size_t col = 23;  // C66
    CHECK(rows[0][col] == "C66_kN*mm^2");
    const double c0 = std::stod(rows[1][col]);
    for (size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][col]) > std::stod(rows[i - 1][col]));
    CHECK(c0 > 0.0);

    const fs::path p = dir("sweep_prop");
    REQUIRE(run("sweep --proportional --eps 0.02,0.03,0.1 --kappa 0.01,0.02,0.02 --from 0 --to 1 --samples 3 "
                "--material mooneyrivlin --out " +
                p.string()) == 0);
    const auto pr = csv(p / "sweep.csv");
    REQUIRE(pr.size() == 4);
    CHECK(std::stod(pr[1][13]) == 0.0);
    CHECK(std::stod(pr[1][20]) == doctest::Approx(208.16).epsilon(0.01));
  }

  TEST_CASE("exit codes") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("solve --section hexagon --out " + dir("bad").string()) == 1);
    CHECK(run("solve --degree 0 --out " + dir("bad").string()) == 1);
    CHECK(run("solve --config /nonexistent.json") == 1);
    CHECK(run("solve --help") == 0);

    const fs::path d = dir("diverge");
    CHECK(run("solve --eps 0.02,0.03,0.1 --kappa 0.01,0.02,0.02 --max-iter 3 --out " + d.string()) == 0);
    CHECK(run("solve --kappa 0,0,5 --max-iter 2 --out " + d.string()) == 2);
    REQUIRE(fs::exists(d / "residuals.csv"));
    CHECK(csv(d / "residuals.csv").size() >= 3);
    CHECK(slurp(d / "summary.txt").find("status diverged") != std::string::npos);
  }
}
