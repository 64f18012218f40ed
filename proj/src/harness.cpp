#include <vskx/harness.hpp>

#include <cmath>
#include <future>
#include <memory>
#include <random>

#include <json.hpp>

#include <vskx/error.hpp>
#include <vskx/scaling_fit.hpp>
#include <vskx/svr.hpp>
#include <vskx/vsk.hpp>

namespace vskx {

namespace {

const KernelSpec kCubic = KernelSpec::cubic();

std::string context(const ExperimentConfig& c, Method m) {
  return to_string(c.function_id) + "/" + to_string(c.distribution) + "/" + to_string(m) +
         " (n=" + std::to_string(c.n) + ", seed=" + std::to_string(c.seed) + ")";
}

// Evaluator for one fitted method; training data never depend on lambda2.
using Approximant = std::function<VecX(const VecX&)>;

Approximant fit_method(const ExperimentConfig& c, Method method, const VecX& x, const VecX& f,
                       const VecX& widest_grid) {
  switch (method) {
    case Method::Cubic: {
      auto model = std::make_shared<const Extrapolant<double>>(
          fit<double>(kCubic, as_points(x), f, c.lambda, c.ridge));
      return [model](const VecX& g) { return model->evaluate(as_points(g)); };
    }
    case Method::TpsVsk: {
      const ScalingModel scaling = select_scaling(x, f, widest_grid);
      auto model = std::make_shared<const VskExtrapolant<double>>(
          fit_vsk<double>(kCubic, to_scaling_function(scaling), as_points(x), f, c.lambda,
                          c.ridge));
      return [model](const VecX& g) { return model->evaluate(as_points(g)); };
    }
    case Method::Svr: {
      const SvrKernel kernel =
          c.svr_kernel == SvrKernelChoice::Polynomial
              ? SvrKernel::polynomial(3)
              : SvrKernel::polyharmonic_projected(kCubic, {x.minCoeff(), x.maxCoeff()});
      SvrOptions options;
      options.max_iterations = c.svr_max_iterations;
      const CrossValidation cv = cross_validate(kernel, x, f, 3, SvrGrid{}, options);
      auto model = std::make_shared<const SvrModel>(
          train_svr(kernel, x, f, cv.epsilon, cv.zeta, options));
      return [model](const VecX& g) { return predict_svr(*model, g); };
    }
  }
  throw Error(ErrorKind::Config, "unknown method");
}

SvrKernelChoice parse_svr_kernel(const std::string& s) {
  if (s == "polynomial") return SvrKernelChoice::Polynomial;
  if (s == "cubic_projected") return SvrKernelChoice::CubicProjected;
  throw Error(ErrorKind::Config, "unknown svr_kernel '" + s + "'");
}

RidgeMode parse_ridge(const std::string& s) {
  if (s == "kernel_block") return RidgeMode::KernelBlock;
  if (s == "full_diagonal") return RidgeMode::FullDiagonal;
  throw Error(ErrorKind::Config, "unknown ridge mode '" + s + "'");
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Cubic: return "cubic";
    case Method::TpsVsk: return "tps_vsk";
    case Method::Svr: return "svr";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::Cubic, Method::TpsVsk, Method::Svr}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

void validate(const ExperimentConfig& c) {
  if (!(c.a < c.b)) throw Error(ErrorKind::Config, "config requires a < b");
  if (c.n < 3) throw Error(ErrorKind::Config, "config requires n >= 3");
  if (c.s < 2) throw Error(ErrorKind::Config, "config requires s >= 2");
  if (c.lambda2_steps < 0) throw Error(ErrorKind::Config, "lambda2_steps must be >= 0");
  if (!(c.lambda >= 0.0)) throw Error(ErrorKind::Config, "lambda must be >= 0");
  if (!(c.noise_sigma >= 0.0)) throw Error(ErrorKind::Config, "noise_sigma must be >= 0");
  if (c.svr_max_iterations < 1) throw Error(ErrorKind::Config, "svr_max_iterations must be >= 1");
  if (c.methods.empty()) throw Error(ErrorKind::Config, "no methods selected");
  for (Method m : c.methods) {
    if (m == Method::Svr && c.distribution != Distribution::Uniform) {
      throw Error(ErrorKind::Config, "SVR experiments use uniform (equispaced) nodes only");
    }
  }
}

ExperimentConfig config_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");

  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "function_id") {
        const auto f = parse_test_function(value.get<std::string>());
        if (!f) throw Error(ErrorKind::Config, "unknown function_id");
        c.function_id = *f;
      } else if (key == "distribution") {
        const auto d = parse_distribution(value.get<std::string>());
        if (!d) throw Error(ErrorKind::Config, "unknown distribution");
        c.distribution = *d;
      } else if (key == "n") {
        c.n = value.get<Index>();
      } else if (key == "a") {
        c.a = value.get<double>();
      } else if (key == "b") {
        c.b = value.get<double>();
      } else if (key == "lambda2_steps") {
        c.lambda2_steps = value.get<int>();
      } else if (key == "s") {
        c.s = value.get<Index>();
      } else if (key == "lambda") {
        c.lambda = value.get<double>();
      } else if (key == "noise_sigma") {
        c.noise_sigma = value.get<double>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : value) {
          const auto parsed = parse_method(m.get<std::string>());
          if (!parsed) throw Error(ErrorKind::Config, "unknown method");
          c.methods.push_back(*parsed);
        }
      } else if (key == "ridge") {
        c.ridge = parse_ridge(value.get<std::string>());
      } else if (key == "chebyshev_variant") {
        const auto v = value.get<std::string>();
        if (v == "gauss") {
          c.chebyshev_variant = ChebyshevVariant::Gauss;
        } else if (v == "lobatto") {
          c.chebyshev_variant = ChebyshevVariant::Lobatto;
        } else {
          throw Error(ErrorKind::Config, "unknown chebyshev_variant");
        }
      } else if (key == "svr_kernel") {
        c.svr_kernel = parse_svr_kernel(value.get<std::string>());
      } else if (key == "svr_max_iterations") {
        c.svr_max_iterations = value.get<long>();
      } else if (key == "keep_errors") {
        c.keep_errors = value.get<bool>();
      } else {
        throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config value has the wrong type: ") + e.what());
  }
  validate(c);
  return c;
}

VecX add_noise(const VecX& values, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Domain, "noise sigma must be >= 0");
  if (sigma == 0.0) return values;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  VecX out = values;
  for (Index i = 0; i < out.size(); ++i) out(i) += sigma * normal(gen);
  return out;
}

double rmse(const VecX& truth, const VecX& approx) {
  if (truth.size() != approx.size()) {
    throw Error(ErrorKind::Shape, "rmse inputs differ in length");
  }
  if (truth.size() == 0) throw Error(ErrorKind::Shape, "rmse of empty vectors");
  return std::sqrt((truth - approx).squaredNorm() / static_cast<double>(truth.size()));
}

std::vector<double> lambda2_values(const ExperimentConfig& c) {
  std::vector<double> out;
  for (int i = 0; i <= c.lambda2_steps; ++i) out.push_back(c.b + 0.1 * i);
  return out;
}

NodeSet make_nodes(const ExperimentConfig& c) {
  switch (c.distribution) {
    case Distribution::Halton: return halton(c.n, c.a, c.b);
    case Distribution::Chebyshev:
      return c.chebyshev_variant == ChebyshevVariant::Gauss ? chebyshev_gauss(c.n, c.a, c.b)
                                                            : chebyshev(c.n, c.a, c.b);
    case Distribution::Random: return random_uniform(c.n, c.a, c.b, c.seed);
    case Distribution::Uniform: return equispaced(c.n, c.a, c.b);
  }
  throw Error(ErrorKind::Config, "unknown distribution");
}

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& c) {
  validate(c);
  NodeSet nodes;
  VecX f;
  try {
    nodes = make_nodes(c);
    f = add_noise(test_function(c.function_id, nodes.points), c.noise_sigma, c.seed);
  } catch (const Error& e) {
    throw Error(e.kind(), to_string(c.function_id) + "/" + to_string(c.distribution) +
                              " training data: " + e.what());
  }
  const std::vector<double> sweep = lambda2_values(c);
  const VecX widest_grid = equispaced(c.s, c.a, sweep.back()).points;

  std::vector<ExperimentResult> results;
  for (Method method : c.methods) {
    try {
      const Approximant approx = fit_method(c, method, nodes.points, f, widest_grid);
      for (double lambda2 : sweep) {
        const VecX grid = equispaced(c.s, c.a, lambda2).points;
        const VecX truth = test_function(c.function_id, grid);
        const VecX values = approx(grid);
        ExperimentResult r;
        r.function_id = c.function_id;
        r.distribution = c.distribution;
        r.method = method;
        r.lambda2 = lambda2;
        r.rmse = rmse(truth, values);
        r.seed = c.seed;
        r.noise_sigma = c.noise_sigma;
        if (c.keep_errors) {
          r.grid = grid;
          r.abs_error = (truth - values).cwiseAbs();
        }
        if (!std::isfinite(r.rmse)) {
          throw Error(ErrorKind::SingularSystem, "non-finite RMSE at lambda2 = " +
                                                     std::to_string(lambda2));
        }
        results.push_back(std::move(r));
      }
    } catch (const Error& e) {
      throw Error(e.kind(), context(c, method) + ": " + e.what());
    }
  }
  return results;
}

std::vector<ExperimentResult> run_experiment_averaged(const ExperimentConfig& c, int count) {
  if (count < 1) throw Error(ErrorKind::Config, "seed count must be >= 1");
  std::vector<ExperimentResult> mean = run_experiment(c);
  for (int k = 1; k < count; ++k) {
    ExperimentConfig ck = c;
    ck.seed = c.seed + static_cast<std::uint64_t>(k);
    const auto more = run_experiment(ck);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i].rmse += more[i].rmse;
  }
  for (auto& r : mean) {
    r.rmse /= count;
    if (count > 1) {
      r.grid.resize(0);
      r.abs_error.resize(0);
    }
  }
  return mean;
}

std::vector<ExperimentResult> run_experiments(const std::vector<ExperimentConfig>& configs,
                                              int seeds) {
  std::vector<std::future<std::vector<ExperimentResult>>> jobs;
  jobs.reserve(configs.size());
  for (const auto& c : configs) {
    jobs.push_back(std::async(std::launch::async,
                              [c, seeds] { return run_experiment_averaged(c, seeds); }));
  }
  std::vector<ExperimentResult> out;
  for (auto& job : jobs) {
    auto part = job.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<ExperimentConfig> table_preset(int table) {
  std::vector<ExperimentConfig> out;
  if (table >= 1 && table <= 4) {
    for (auto d : {Distribution::Halton, Distribution::Chebyshev, Distribution::Random,
                   Distribution::Uniform}) {
      ExperimentConfig c;
      c.function_id = static_cast<TestFunction>(table - 1);
      c.distribution = d;
      c.methods = {Method::Cubic, Method::TpsVsk};
      out.push_back(c);
    }
    return out;
  }
  if (table == 5) {
    for (auto f : {TestFunction::F5, TestFunction::F6}) {
      ExperimentConfig c;
      c.function_id = f;
      c.distribution = Distribution::Uniform;
      c.noise_sigma = 1e-4;
      c.methods = {Method::Svr, Method::TpsVsk};
      out.push_back(c);
    }
    return out;
  }
  throw Error(ErrorKind::Config, "no preset for table " + std::to_string(table));
}

}  // namespace vskx
