#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rwpot/config.hpp"
#include "rwpot/runner.hpp"

using namespace rwpot;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return ExperimentConfig::parse(in, "test.cfg");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kCompare =
    "kind = compare  # coupled gap\n"
    "dist.F = atomic 0:0.3 1:0.7\n"
    "dist.G = atomic 0:0.6 1:0.4\n"
    "F = F\nG = G\nx = 1\nn_list = 8 16\nsamples = 100\nseed = 3\n";

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse(kCompare);
  CHECK(c.str("kind") == "compare");
  CHECK(c.integers("n_list") == std::vector<long>{8, 16});
  CHECK(c.distribution("F").atoms().size() == 2);
  CHECK(c.distribution("F").atoms()[0].prob == 0.3);
  CHECK(c.distribution("F").id() == "F");
  CHECK(c.real("missing", 2.5) == 2.5);
  CHECK_THROWS_AS(c.integer("nope"), ConfigError);
  CHECK_THROWS_AS(parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse("phi = q\n").distribution("phi"), ConfigError);
  try {
    parse("x = 1\ndist.bad = atomic 0:0.3 1:0.8\n");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.cfg:2") != std::string::npos);
  }
}

TEST_CASE("csv sentinels") {
  CHECK(csv_number(INFINITY) == "inf");
  CHECK(csv_number(-INFINITY) == "-inf");
  CHECK(csv_number(NAN) == "nan");
  CHECK(csv_number(0.25) == "0.25");
}

TEST_CASE("compare run writes a gap CSV and manifest, identical across worker counts") {
  const fs::path base = fs::temp_directory_path() / "rwpot_unit_cli";
  fs::remove_all(base);
  std::ostringstream log;
  RunOptions one{(base / "one").string(), std::nullopt, 1};
  RunOptions four{(base / "four").string(), std::nullopt, 4};
  const auto r1 = run_experiment("compare", parse(kCompare), one, log);
  const auto r4 = run_experiment("", parse(kCompare), four, log);
  CHECK(r1.exit_code == kExitOk);
  CHECK(r4.exit_code == kExitOk);
  CHECK(fs::exists(base / "one" / "manifest.json"));
  const std::string csv = slurp(base / "one" / "gap.csv");
  CHECK(csv == slurp(base / "four" / "gap.csv"));
  CHECK(csv.rfind("mode,x,n,gap[nats]", 0) == 0);
  const std::string manifest = slurp(base / "one" / "manifest.json");
  CHECK(manifest.find("\"code_version\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 3") != std::string::npos);

  RunOptions seeded{(base / "seeded").string(), 4, 1};
  run_experiment("compare", parse(kCompare), seeded, log);
  CHECK(slurp(base / "seeded" / "gap.csv") != csv);
  fs::remove_all(base);
}

TEST_CASE("runner exit codes") {
  const fs::path base = fs::temp_directory_path() / "rwpot_unit_exit";
  std::ostringstream log;
  RunOptions o{base.string(), std::nullopt, 1};
  CHECK(run_experiment("rate", parse(kCompare), o, log).exit_code == kExitConfig);
  CHECK(run_experiment("compare", parse("dist.F = point 1\nF = F\nG = F\n"), o, log).exit_code == kExitConfig);
  CHECK(run_experiment("compare", parse("F = F\n"), o, log).exit_code == kExitConfig);
  const auto rate = run_experiment(
      "rate", parse("dist.z = point 0\nphi = z\nscale = 1.5\n"), o, log);
  CHECK(rate.exit_code == kExitOk);
  const std::string csv = slurp(base / "rate.csv");
  CHECK(csv.find(",1.5,inf,") != std::string::npos);
  fs::remove_all(base);
}
