// rare-gt: experiment driver for the rare-events sequence probability estimators.
//
// Exit codes: 0 ok, 1 configuration / IO, 2 profile validation, 3 runtime.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "raregt/error.hpp"
#include "raregt/experiment.hpp"
#include "raregt/oracle.hpp"
#include "raregt/profile_io.hpp"
#include "raregt/sampling.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kValidation = 2, kRuntime = 3 };

int run(const std::string& spec_path, const std::string& output_override) {
  std::ifstream in(spec_path);
  if (!in) throw raregt::ConfigError("cannot open spec " + spec_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw raregt::ConfigError(std::string("invalid JSON in spec: ") + e.what());
  }
  auto spec = raregt::spec_from_json(doc, std::filesystem::path(spec_path).parent_path());
  if (!output_override.empty()) spec.output = output_override;
  const auto profile = raregt::load_profile(spec.profile_path);
  const auto report = raregt::run_experiment(spec, profile, raregt::threads_from_env());

  if (spec.output.empty() || spec.output == "-") {
    raregt::write_csv(std::cout, report, spec.record_timing);
  } else {
    std::ofstream out(spec.output, std::ios::binary);
    if (!out) throw raregt::ConfigError("cannot write " + spec.output.string());
    raregt::write_csv(out, report, spec.record_timing);
    for (const auto& line : report.summary) std::cerr << line << '\n';
  }
  return kOk;
}

int bounds(const std::string& c_lo, const std::string& c_hi, const std::string& epsilon) {
  double lo = 0.0, hi = 0.0, eps = 0.0;
  try {
    lo = raregt::Rational::parse(c_lo).to_double();
    hi = raregt::Rational::parse(c_hi).to_double();
    eps = raregt::Rational::parse(epsilon).to_double();
  } catch (const std::exception& e) {
    throw raregt::ConfigError(std::string("bad numeric argument: ") + e.what());
  }
  const auto rb = raregt::RegimeBounds::from_range(lo, hi);
  const auto params = raregt::select_params(rb, eps);
  std::printf("c_lo=%.17g c_hi=%.17g c_bar=%.17g c_log=%.17g\n", rb.c_lo, rb.c_hi, rb.c_bar, rb.c_log);
  std::printf("epsilon=%.17g K=%llu M=%llu theorem_bound=%.17g\n", eps,
              static_cast<unsigned long long>(params.K), static_cast<unsigned long long>(params.M),
              raregt::theorem_bound(rb, params.K, params.M));
  return kOk;
}

int sample(const std::string& profile_path, std::uint64_t n, std::uint64_t seed, const std::string& source,
           const std::string& out_path) {
  if (source != "p" && source != "q") throw raregt::ConfigError("--source must be p or q");
  const auto dist = raregt::instantiate(raregt::load_profile(profile_path), n);
  const auto s = raregt::draw_string(dist, source == "p" ? raregt::Source::p : raregt::Source::q, n, seed);
  if (out_path.empty() || out_path == "-") {
    raregt::write_string(std::cout, s);
  } else {
    std::ofstream out(out_path);
    if (!out) throw raregt::ConfigError("cannot write " + out_path);
    raregt::write_string(out, s);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rare-events Good-Turing sequence probability experiments"};
  app.require_subcommand(1);

  std::string spec_path, output_override;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON spec");
  run_cmd->add_option("--spec", spec_path, "Experiment spec file")->required();
  run_cmd->add_option("--output", output_override, "Override the spec's output path ('-' for stdout)");

  std::string profiles_dir;
  auto* profiles_cmd = app.add_subcommand("profiles", "Write the built-in profiles as JSON");
  profiles_cmd->add_option("--out", profiles_dir, "Target directory")->required();

  std::string c_lo, c_hi, epsilon;
  auto* bounds_cmd = app.add_subcommand("bounds", "Select (K, M) for a target accuracy");
  bounds_cmd->add_option("--c-lo", c_lo, "Lower normalized probability bound")->required();
  bounds_cmd->add_option("--c-hi", c_hi, "Upper normalized probability bound")->required();
  bounds_cmd->add_option("--epsilon", epsilon, "Target accuracy")->required();

  std::string sample_profile, sample_source = "p", sample_out;
  std::uint64_t sample_n = 0, sample_seed = 1;
  auto* sample_cmd = app.add_subcommand("sample", "Draw one string and dump it");
  sample_cmd->add_option("--profile", sample_profile, "Profile JSON")->required();
  sample_cmd->add_option("--n", sample_n, "String length")->required();
  sample_cmd->add_option("--seed", sample_seed, "RNG seed");
  sample_cmd->add_option("--source", sample_source, "p or q");
  sample_cmd->add_option("--out", sample_out, "Output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) return run(spec_path, output_override);
    if (*profiles_cmd) {
      for (const auto& path : raregt::emit_profile_library(profiles_dir)) std::cout << path.string() << '\n';
      return kOk;
    }
    if (*bounds_cmd) return bounds(c_lo, c_hi, epsilon);
    if (*sample_cmd) return sample(sample_profile, sample_n, sample_seed, sample_source, sample_out);
  } catch (const raregt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const raregt::EmptyProfile& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const raregt::NormalizationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const raregt::GranularityError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
