#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "algebroid/errors.hpp"
#include "algebroid/runner.hpp"
#include "algebroid/runspec.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Algebraic and value-distribution data of algebroid functions"};
  app.require_subcommand(1);

  std::string spec_file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "Execute a run specification");
  run->add_option("specfile", spec_file, "JSON run specification")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides ALGEBROID_OUT and the spec)");
  run->add_option("--seed", seed, "Seed overriding the spec");
  run->add_flag("--verbose", verbose, "Progress messages on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    algebroid::RunSpec spec = algebroid::load_run_spec(spec_file);
    if (seed) spec.seed = *seed;

    algebroid::RunOptions opts;
    if (!out_dir.empty()) {
      opts.out_dir = out_dir;
    } else if (const char* env = std::getenv("ALGEBROID_OUT"); env && *env) {
      opts.out_dir = env;
    } else if (!spec.output_dir.empty()) {
      opts.out_dir = spec.output_dir;
    } else {
      opts.out_dir = "algebroid-out";
    }
    opts.verbose = verbose;
    opts.log = &std::cerr;

    const auto outcome = algebroid::run(spec, opts);
    std::cout << outcome.summary;
    return outcome.exit_code;
  } catch (const algebroid::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == algebroid::ErrorCode::kConfigInvalid ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
