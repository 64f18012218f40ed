#ifndef VSKX_HARNESS_HPP_
#define VSKX_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <vskx/linsys.hpp>
#include <vskx/nodes.hpp>
#include <vskx/types.hpp>

namespace vskx {

// f1 = 1/(x(x+1)^2), f2 = 1/(x+1), f3 = x/(x^2+1)^2, f4 = exp(-2x),
// f5 = atan(20/x), f6 = x/(x^2+1).
enum class TestFunction { F1, F2, F3, F4, F5, F6 };

std::string to_string(TestFunction f);
std::optional<TestFunction> parse_test_function(std::string_view name);
double test_function(TestFunction f, double x);
VecX test_function(TestFunction f, const VecX& x);

enum class Method { Cubic, TpsVsk, Svr };

std::string to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

enum class ChebyshevVariant { Gauss, Lobatto };

// Kernel of the SVR baseline: (1 + x y)^3, or the cubic spline made
// positive definite by projection (SvrKernel::polyharmonic_projected).
enum class SvrKernelChoice { Polynomial, CubicProjected };

struct ExperimentConfig {
  TestFunction function_id = TestFunction::F2;
  Distribution distribution = Distribution::Uniform;
  Index n = 30;
  double a = 0.1;
  double b = 2.0;
  int lambda2_steps = 10;  // lambda2 = b + 0.1 i, i = 0..steps
  Index s = 40;
  double lambda = 1e-6;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
  std::vector<Method> methods{Method::Cubic, Method::TpsVsk};
  RidgeMode ridge = RidgeMode::KernelBlock;
  ChebyshevVariant chebyshev_variant = ChebyshevVariant::Gauss;
  bool keep_errors = false;  // retain per-point absolute errors
  SvrKernelChoice svr_kernel = SvrKernelChoice::Polynomial;
  long svr_max_iterations = 5000000;
};

void validate(const ExperimentConfig& config);

// Reads a JSON object whose keys mirror ExperimentConfig field names; absent
// keys keep their defaults.
ExperimentConfig config_from_json(std::string_view text);

struct ExperimentResult {
  TestFunction function_id = TestFunction::F2;
  Distribution distribution = Distribution::Uniform;
  Method method = Method::Cubic;
  double lambda2 = 0.0;
  double rmse = 0.0;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  VecX grid;       // filled when keep_errors is set
  VecX abs_error;  // |f - A| on grid
};

VecX add_noise(const VecX& values, double sigma, std::uint64_t seed);
double rmse(const VecX& truth, const VecX& approx);
std::vector<double> lambda2_values(const ExperimentConfig& config);
NodeSet make_nodes(const ExperimentConfig& config);

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config);

// Mean RMSE over seeds seed, seed+1, ..., seed+count-1.
std::vector<ExperimentResult> run_experiment_averaged(const ExperimentConfig& config, int count);

// Runs configurations concurrently; output keeps the input order.
std::vector<ExperimentResult> run_experiments(const std::vector<ExperimentConfig>& configs,
                                              int seeds = 1);

// Preset grids: 1-4 run cubic and TPS-VSK for f1..f4 on every distribution;
// 5 compares SVR and TPS-VSK on noisy f5 and f6.
std::vector<ExperimentConfig> table_preset(int table);

enum class OutputFormat { Csv, Table, Errors };
std::optional<OutputFormat> parse_output_format(std::string_view name);

void emit(const std::vector<ExperimentResult>& results, OutputFormat format, std::ostream& out);
void emit_csv(const std::vector<ExperimentResult>& results, std::ostream& out);
void emit_table(const std::vector<ExperimentResult>& results, std::ostream& out);
void emit_errors(const std::vector<ExperimentResult>& results, std::ostream& out);
std::vector<ExperimentResult> parse_csv(std::istream& in);

}  // namespace vskx

#endif  // VSKX_HARNESS_HPP_
