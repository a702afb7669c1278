#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mevmix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  auto config = mevmix::cli::parse_args(static_cast<int>(argv.size()), argv.data(), out, err, o.code);
  if (config) o.code = mevmix::cli::run(*config, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string model(const char* name) { return std::string(MEVMIX_MODELS_DIR) + "/" + name + ".json"; }

fs::path temp_file(const std::string& name, const std::string& contents) {
  const auto p = fs::temp_directory_path() / ("mevmix_cli_test_" + name);
  std::ofstream(p) << contents;
  return p;
}

void check_error_json(const Outcome& o, int code) {
  CHECK(o.code == code);
  CHECK(o.out.empty());
  const auto e = json::parse(o.err);
  CHECK(e["error"]["code"] == code);
  CHECK(e["error"]["message"].is_string());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validate") {
    const auto ok = run_cli({"validate", "--model", model("tawn")});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["valid"] == true);
    CHECK(ok.err.empty());

    const auto bad = run_cli({"validate", "--model", model("invalid_weights")});
    check_error_json(bad, 1);
    CHECK_FALSE(json::parse(bad.err)["error"]["violations"].empty());
  }

  TEST_CASE("error classes") {
    check_error_json(run_cli({"frobnicate"}), 2);
    check_error_json(run_cli({"sample", "--model", model("tawn"), "--n", "10"}), 2);
    check_error_json(run_cli({"eval"}), 2);
    check_error_json(run_cli({"taildep", "--model", model("tawn"), "--J", "0"}), 2);

    const auto malformed = temp_file("malformed.json", R"({"d": 2, "components": [)");
    check_error_json(run_cli({"validate", "--model", malformed.string()}), 3);
    const auto wrong_shape = temp_file(
        "shape.json",
        R"({"d": 3, "components": [{"alpha": 0.5, "beta": [1, 1], "copula": {"kind": "independence"}}]})");
    check_error_json(run_cli({"validate", "--model", wrong_shape.string()}), 3);

    check_error_json(run_cli({"validate", "--model", "/nonexistent/m.json"}), 4);
    check_error_json(run_cli({"taildep", "--model", model("tawn"), "--J", "4"}), 2);
    const auto grid = temp_file("bad_grid.csv", "0.5,1.5\n");
    check_error_json(run_cli({"eval", "--model", model("logistic_alpha05"), "--grid-file", grid.string()}), 6);
  }

  TEST_CASE("taildep on the logistic model") {
    const auto o = run_cli({"taildep", "--model", model("logistic_alpha05"), "--J", "2"});
    REQUIRE(o.code == 0);
    const auto doc = json::parse(o.out);
    const auto& reports = doc["reports"];
    REQUIRE(reports.size() == 2);  // generic and closed form
    for (const auto& r : reports) {
      CHECK(r["J"] == json::array({2}));
      CHECK(std::abs(r["lambda"].get<double>() - (2.0 - std::sqrt(2.0))) <= 1e-12);
    }
    CHECK(reports[1]["method"] == "analytic-closed-form");

    const auto csv = run_cli({"taildep", "--model", model("logistic_alpha05"), "--J", "2", "--format", "csv"});
    CHECK(csv.out.rfind("J,d,method,lambda", 0) == 0);
  }

  TEST_CASE("eval default grid") {
    const auto o = run_cli({"eval", "--model", model("logistic_alpha05")});
    REQUIRE(o.code == 0);
    std::istringstream in(o.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "u1,u2,cdf,exponent");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 9);
  }

  TEST_CASE("sample output is independent of the thread count") {
    const auto one = run_cli({"sample", "--model", model("m4_mixture"), "--seed", "7", "--n", "10000", "--threads", "1",
                              "--uniform"});
    const auto four = run_cli({"sample", "--model", model("m4_mixture"), "--seed", "7", "--n", "10000", "--threads",
                               "4", "--uniform"});
    REQUIRE(one.code == 0);
    CHECK(one.out == four.out);
    CHECK(one.out.rfind("y1,y2,y3,u1,u2,u3\n", 0) == 0);
    const auto other = run_cli({"sample", "--model", model("m4_mixture"), "--seed", "8", "--n", "10000"});
    CHECK(other.out != one.out.substr(0, other.out.size()));
  }

  TEST_CASE("empirical taildep from a data file") {
    const auto samples = run_cli({"sample", "--model", model("logistic_alpha05"), "--seed", "3", "--n", "200000"});
    REQUIRE(samples.code == 0);
    const auto data = temp_file("data.csv", samples.out);
    const auto o = run_cli({"taildep", "--data", data.string(), "--J", "1", "--u", "0.98"});
    REQUIRE(o.code == 0);
    const auto r = json::parse(o.out)["reports"][0];
    CHECK(r["method"] == "empirical");
    CHECK(r["n"] == 200000);
    CHECK(std::abs(r["lambda"].get<double>() - (2.0 - std::sqrt(2.0))) <= 0.05);
  }

  TEST_CASE("--out writes a file") {
    const auto path = fs::temp_directory_path() / "mevmix_cli_test_out.json";
    fs::remove(path);
    const auto o = run_cli({"validate", "--model", model("tawn"), "--out", path.string()});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    json j;
    in >> j;
    CHECK(j["d"] == 3);
  }
}
