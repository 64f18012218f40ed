// Command-line driver for the extrapolation experiments.
//
//   vskx --function f2 --distribution uniform --method cubic,tps_vsk
//   vskx --reproduce table5 --format table
//   vskx --config experiment.json --out results.csv

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <vskx/error.hpp>
#include <vskx/harness.hpp>

namespace {

void fail(const std::string& kind, const std::string& message) {
  nlohmann::json line = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << line.dump() << std::endl;
}

template <typename T, typename Parse>
T parse_or_throw(const std::string& text, Parse parse, const char* what) {
  const auto v = parse(text);
  if (!v) throw vskx::Error(vskx::ErrorKind::Config, std::string("unknown ") + what + " '" + text + "'");
  return *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyharmonic and variably scaled kernel extrapolation benchmarks"};

  std::string function = "f2";
  std::string distribution = "uniform";
  std::vector<std::string> methods{"cubic", "tps_vsk"};
  vskx::ExperimentConfig defaults;
  long long n = defaults.n;
  long long s = defaults.s;
  double a = defaults.a;
  double b = defaults.b;
  double lambda = defaults.lambda;
  double noise_sigma = defaults.noise_sigma;
  std::uint64_t seed = defaults.seed;
  double lambda2_max = b + 0.1 * defaults.lambda2_steps;
  std::string out_path;
  std::string format = "csv";
  std::string reproduce;
  std::string config_path;
  std::string ridge = "kernel_block";
  std::string chebyshev_variant = "gauss";
  std::string svr_kernel = "polynomial";
  int seeds = 1;

  app.add_option("--function", function, "Test function f1..f6");
  app.add_option("--distribution", distribution, "halton, chebyshev, random or uniform");
  app.add_option("--method", methods, "cubic, tps_vsk, svr (comma separated)")->delimiter(',');
  app.add_option("--n", n, "Number of training nodes");
  app.add_option("--a", a, "Left end of the sample interval");
  app.add_option("--b", b, "Right end of the sample interval");
  app.add_option("--s", s, "Evaluation points on [a, lambda2]");
  app.add_option("--lambda", lambda, "Ridge parameter");
  app.add_option("--noise-sigma", noise_sigma, "Standard deviation of Gaussian noise");
  app.add_option("--seed", seed, "Seed for random nodes and noise");
  app.add_option("--seeds", seeds, "Average the RMSE over this many consecutive seeds");
  app.add_option("--lambda2-max", lambda2_max, "Largest lambda2 (swept in steps of 0.1 from b)");
  app.add_option("--ridge", ridge, "kernel_block or full_diagonal");
  app.add_option("--chebyshev-variant", chebyshev_variant, "gauss or lobatto");
  app.add_option("--svr-kernel", svr_kernel, "polynomial or cubic_projected")
      ->check(CLI::IsMember({"polynomial", "cubic_projected"}));
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--format", format, "csv, table or errors")
      ->check(CLI::IsMember({"csv", "table", "errors"}));
  app.add_option("--reproduce", reproduce, "Preset grid: table1 .. table5");
  app.add_option("--config", config_path, "JSON file with ExperimentConfig fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    fail("usage", e.what());
    return 2;
  }

  try {
    const auto output_format =
        parse_or_throw<vskx::OutputFormat>(format, vskx::parse_output_format, "format");
    const bool keep_errors = output_format == vskx::OutputFormat::Errors;

    std::vector<vskx::ExperimentConfig> configs;
    if (!reproduce.empty()) {
      if (reproduce.rfind("table", 0) != 0) {
        throw vskx::Error(vskx::ErrorKind::Config, "--reproduce expects tableN");
      }
      configs = vskx::table_preset(std::stoi(reproduce.substr(5)));
      for (auto& c : configs) c.keep_errors = keep_errors;
    } else if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw vskx::Error(vskx::ErrorKind::Io, "cannot read " + config_path);
      std::stringstream text;
      text << in.rdbuf();
      auto c = vskx::config_from_json(text.str());
      c.keep_errors = c.keep_errors || keep_errors;
      configs.push_back(c);
    } else {
      vskx::ExperimentConfig c;
      c.function_id =
          parse_or_throw<vskx::TestFunction>(function, vskx::parse_test_function, "function");
      c.distribution =
          parse_or_throw<vskx::Distribution>(distribution, vskx::parse_distribution, "distribution");
      c.methods.clear();
      for (const auto& m : methods) {
        c.methods.push_back(parse_or_throw<vskx::Method>(m, vskx::parse_method, "method"));
      }
      c.n = n;
      c.s = s;
      c.a = a;
      c.b = b;
      c.lambda = lambda;
      c.noise_sigma = noise_sigma;
      c.seed = seed;
      c.lambda2_steps = static_cast<int>(std::lround((lambda2_max - b) / 0.1));
      if (ridge == "kernel_block") {
        c.ridge = vskx::RidgeMode::KernelBlock;
      } else if (ridge == "full_diagonal") {
        c.ridge = vskx::RidgeMode::FullDiagonal;
      } else {
        throw vskx::Error(vskx::ErrorKind::Config, "unknown ridge mode '" + ridge + "'");
      }
      if (chebyshev_variant == "gauss") {
        c.chebyshev_variant = vskx::ChebyshevVariant::Gauss;
      } else if (chebyshev_variant == "lobatto") {
        c.chebyshev_variant = vskx::ChebyshevVariant::Lobatto;
      } else {
        throw vskx::Error(vskx::ErrorKind::Config,
                          "unknown chebyshev variant '" + chebyshev_variant + "'");
      }
      c.svr_kernel = svr_kernel == "polynomial" ? vskx::SvrKernelChoice::Polynomial
                                                : vskx::SvrKernelChoice::CubicProjected;
      c.keep_errors = keep_errors;
      vskx::validate(c);
      configs.push_back(c);
    }

    const auto results = vskx::run_experiments(configs, seeds);
    if (out_path.empty()) {
      vskx::emit(results, output_format, std::cout);
    } else {
      std::ofstream out(out_path);
      if (!out) throw vskx::Error(vskx::ErrorKind::Io, "cannot write " + out_path);
      vskx::emit(results, output_format, out);
    }
  } catch (const vskx::Error& e) {
    fail(vskx::to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    fail("internal", e.what());
    return 1;
  }
  return 0;
}
