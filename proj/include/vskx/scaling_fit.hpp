#ifndef VSKX_SCALING_FIT_HPP_
#define VSKX_SCALING_FIT_HPP_

#include <optional>
#include <string>

#include <Eigen/Core>

#include <vskx/types.hpp>
#include <vskx/vsk.hpp>

namespace vskx {

// Rational:    g(x, mu) = x^(-mu1) / (x^mu2 + mu3)
// Exponential: g(x, mu) = (mu1 x + mu3) exp(-mu2 x)
enum class ModelClass { Rational, Exponential };

std::string to_string(ModelClass c);

using Params3 = Eigen::Vector3d;

struct ScalingModel {
  ModelClass model_class = ModelClass::Rational;
  Params3 mu = Params3::Zero();
  // Unweighted ||f - g(x, mu)||_2 over the training nodes.
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  // Robust weights of the final least-squares pass.
  VecX weights;
};

struct FitOptions {
  double step_tolerance = 1e-8;  // relative parameter step
  int max_iterations = 400;      // total LM iterations across reweighting passes
  bool robust = true;            // Tukey bisquare reweighting; false = plain least squares
  double bisquare_tuning = 4.685;
  double initial_damping = 1e-3;
};

double eval_model(ModelClass c, const Params3& mu, double x);

// d g / d mu at x.
Eigen::RowVector3d model_jacobian(ModelClass c, const Params3& mu, double x);

// sum_i w_i (f_i - g(x_i, mu))^2
double weighted_objective(ModelClass c, const Params3& mu, const VecX& nodes, const VecX& values,
                          const VecX& weights);

// Starting point: Rational (0, 1, 1); Exponential from a log-linear fit of |f|.
Params3 default_init(ModelClass c, const VecX& nodes, const VecX& values);

// Robust (IRLS) Levenberg-Marquardt fit of one model class.
ScalingModel fit_class(ModelClass c, const VecX& nodes, const VecX& values, const Params3& init,
                       const FitOptions& options = {});
ScalingModel fit_class(ModelClass c, const VecX& nodes, const VecX& values,
                       const FitOptions& options = {});

// Fits both classes and keeps the smaller residual norm (ties go to
// Rational). A candidate that is not finite on `check_points` is discarded.
ScalingModel select_scaling(const VecX& nodes, const VecX& values,
                            const std::optional<VecX>& check_points = std::nullopt,
                            const FitOptions& options = {});

ScalingFunction<double> to_scaling_function(const ScalingModel& model);

}  // namespace vskx

#endif  // VSKX_SCALING_FIT_HPP_
