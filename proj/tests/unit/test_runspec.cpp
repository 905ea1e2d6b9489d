#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "algebroid/errors.hpp"
#include "algebroid/runner.hpp"
#include "algebroid/runspec.hpp"

using namespace algebroid;
namespace fs = std::filesystem;

namespace {

const char* kSqrt = R"({
  "schema-version": 1,
  "domain": "euclidean-plane",
  "reference-point": [0.1, 0],
  "equation": {"preset": "sqrt-z"},
  "targets": [1, -1, [0, 2]],
  "r-grid": {"min": 2.718281828459045, "max": 403.4287934927351, "count": 8},
  "n-theta": 512,
  "seed": 7,
  "checks": ["fmt", "bran"]
})";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("algebroid-test-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string error_detail(const std::string& text) {
  try {
    parse_run_spec(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigInvalid);
    return e.detail();
  }
  return "";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ALGEBROID_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("valid spec parses") {
  const auto s = parse_run_spec(kSqrt);
  CHECK(s.domain == DomainKind::kEuclidean);
  CHECK(s.reference == cplx(0.1, 0.0));
  CHECK(s.equation.preset == "sqrt-z");
  REQUIRE(s.targets.size() == 3);
  CHECK(s.targets[2] == SpherePoint::finite(cplx(0, 2)));
  CHECK(s.grid.count == 8);
  CHECK(s.seed == 7u);
  CHECK(s.wants("fmt"));
  CHECK_FALSE(s.wants("smt"));
}

TEST_CASE("invalid specs name the offending field") {
  auto with = [](const std::string& from, const std::string& to) {
    std::string t = kSqrt;
    const auto pos = t.find(from);
    REQUIRE(pos != std::string::npos);
    return t.replace(pos, from.size(), to);
  };
  CHECK(error_detail(with("\"count\": 8", "\"count\": 1")).find("'r-grid.count'") != std::string::npos);
  CHECK(error_detail(with("\"n-theta\": 512", "\"n-theta\": 512, \"colour\": 1")).find("'colour'") !=
        std::string::npos);
  CHECK(error_detail(with("\"count\": 8", "\"count\": 8, \"step\": 2")).find("'r-grid.step'") != std::string::npos);
  CHECK(error_detail(with("\"sqrt-z\"", "\"sqrt-w\"")).find("'equation.preset'") != std::string::npos);
  CHECK(error_detail(with("\"fmt\", \"bran\"", "\"fmt\", \"magic\"")).find("'checks[1]'") != std::string::npos);
  CHECK(error_detail(with("\"schema-version\": 1", "\"schema-version\": 2")).find("'schema-version'") !=
        std::string::npos);
  CHECK(error_detail(with("\"min\": 2.718281828459045", "\"min\": 500")).find("'r-grid.max'") != std::string::npos);
  CHECK(error_detail("{\"schema-version\": 1, \"equation\": {\"nu\": 2, \"coefficients\": [[0, -1], [0]]}}")
            .find("'equation.coefficients'") != std::string::npos);
  CHECK(error_detail("not json").find("JSON") != std::string::npos);
}

TEST_CASE("explicit coefficients and values") {
  const auto s = parse_run_spec(
      R"({"schema-version": 1, "equation": {"nu": 2, "coefficients": [[[0, 0], [-1, 0]], [], [1]]},
          "targets": ["inf", "1/2", [0, -1]]})");
  const auto eq = s.equation.build();
  CHECK(eq.nu() == 2);
  CHECK(eq.A(0) == CPoly{0.0, -1.0});
  CHECK(s.targets[0].infinite);
  CHECK(s.targets[1] == SpherePoint::finite(0.5));
  CHECK(parse_value_text("inf").infinite);
  CHECK(parse_value_text("[1, 2]") == SpherePoint::finite(cplx(1, 2)));
  CHECK(format_value(SpherePoint::finite(cplx(1, -2))) == "1-2i");
}

TEST_CASE("spec serialisation is a fixed point") {
  const auto s = parse_run_spec(kSqrt);
  const std::string once = serialize_run_spec(s);
  const std::string twice = serialize_run_spec(parse_run_spec(once));
  CHECK(once == twice);
}

TEST_CASE("number formatting is locale independent and exact") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(std::stod(format_number(0.1)) == 0.1);
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_short(2.0) == "2");
}

TEST_CASE("runner writes the three artifacts and the closed-form T column") {
  const fs::path dir = scratch("run");
  RunOptions opts;
  opts.out_dir = dir;
  const auto outcome = run(parse_run_spec(kSqrt), opts);
  CHECK(outcome.exit_code == 0);
  REQUIRE(fs::exists(dir / "curves.csv"));
  REQUIRE(fs::exists(dir / "report.json"));
  REQUIRE(fs::exists(dir / "summary.txt"));
  std::istringstream csv(read_file(dir / "curves.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("r,T,m,N,N_bran,T_ricci", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line)) {
    const double r = std::stod(line.substr(0, line.find(',')));
    const auto rest = line.substr(line.find(',') + 1);
    const double t = std::stod(rest.substr(0, rest.find(',')));
    CHECK(std::abs(t - 0.5 * std::log(r)) < 1e-3);
    ++rows;
  }
  CHECK(rows == 8);
  const auto report = nlohmann::ordered_json::parse(read_file(dir / "report.json"));
  CHECK(report["exit-code"] == 0);
  // report.json round-trips: parse, serialise, parse is a fixed point.
  CHECK(nlohmann::ordered_json::parse(report.dump()) == report);
  // The embedded spec parses back to the same canonical form.
  const std::string echo = report["spec"].dump(2);
  CHECK(serialize_run_spec(parse_run_spec(echo)) == echo);
  fs::remove_all(dir);
}

TEST_CASE("radical run lists valence and orders") {
  const fs::path dir = scratch("radical");
  RunOptions opts;
  opts.out_dir = dir;
  const auto outcome =
      run(parse_run_spec(R"({"schema-version": 1, "equation": {"preset": "paper-example-radical"},
                             "checks": ["radical"]})"),
          opts);
  CHECK(outcome.exit_code == 0);
  const std::string summary = read_file(dir / "summary.txt");
  CHECK(summary.find("72") != std::string::npos);
  for (const char* v : {"7", "5", "17"}) CHECK(summary.find(v) != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("value at the reference point fails the run with exit code 1") {
  const fs::path dir = scratch("refpoint");
  std::string text = kSqrt;
  text.replace(text.find("[0.1, 0]"), 8, "[0, 0]");
  RunOptions opts;
  opts.out_dir = dir;
  const auto outcome = run(parse_run_spec(text), opts);
  CHECK(outcome.exit_code == 1);
  CHECK(read_file(dir / "summary.txt").find("ValueAtReference") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("CLI exit codes and deterministic curves") {
  const fs::path dir = scratch("cli");
  std::ofstream(dir / "good.json") << kSqrt;
  std::string bad = kSqrt;
  bad.replace(bad.find("\"count\": 8"), 10, "\"count\": 1");
  std::ofstream(dir / "bad.json") << bad;

  CHECK(run_cli("run " + (dir / "good.json").string() + " --out " + (dir / "a").string()) == 0);
  CHECK(run_cli("run " + (dir / "good.json").string() + " --out " + (dir / "b").string()) == 0);
  const std::string a = read_file(dir / "a" / "curves.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == read_file(dir / "b" / "curves.csv"));
  CHECK(run_cli("run " + (dir / "bad.json").string() + " --out " + (dir / "c").string()) == 2);
  CHECK(run_cli("run " + (dir / "missing.json").string()) != 0);

  // ALGEBROID_OUT is honoured when --out is absent.
  const std::string env_dir = (dir / "env").string();
  const std::string cmd = "ALGEBROID_OUT=" + env_dir + " " + ALGEBROID_CLI_PATH + " run " +
                          (dir / "good.json").string() + " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(fs::path(env_dir) / "curves.csv"));
  fs::remove_all(dir);
}
