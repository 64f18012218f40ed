#include <vskx/scaling_fit.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>

#include <vskx/error.hpp>

namespace vskx {

namespace {

constexpr double kPoleThreshold = 1e-14;

void require_inputs(ModelClass c, const VecX& nodes, const VecX& values) {
  if (nodes.size() != values.size()) {
    throw Error(ErrorKind::Shape, "nodes and values differ in length");
  }
  if (nodes.size() < 3) {
    throw Error(ErrorKind::DegenerateInput, "scaling fit needs at least 3 samples");
  }
  if (c == ModelClass::Rational && (nodes.array() <= 0.0).any()) {
    throw Error(ErrorKind::Domain, "rational scaling model requires positive nodes");
  }
}

// Residuals f - g, or nullopt if g is undefined (pole, non-finite) anywhere.
std::optional<VecX> residuals(ModelClass c, const Params3& mu, const VecX& nodes,
                              const VecX& values) {
  VecX r(nodes.size());
  for (Index i = 0; i < nodes.size(); ++i) {
    double g;
    try {
      g = eval_model(c, mu, nodes(i));
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!std::isfinite(g)) return std::nullopt;
    r(i) = values(i) - g;
  }
  return r;
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), mid));
  }
  return m;
}

// Tukey bisquare weights on residuals scaled by MAD / 0.6745.
VecX bisquare_weights(const VecX& r, double tuning, double scale_floor) {
  std::vector<double> rv(r.data(), r.data() + r.size());
  const double med = median(rv);
  for (auto& v : rv) v = std::abs(v - med);
  const double s = std::max(median(rv) / 0.6745, scale_floor);
  VecX w(r.size());
  for (Index i = 0; i < r.size(); ++i) {
    const double u = r(i) / (tuning * s);
    w(i) = std::abs(u) < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
  }
  return w;
}

struct LmResult {
  Params3 mu;
  int iterations = 0;
  bool step_converged = false;
};

// Levenberg-Marquardt on sum w_i r_i^2 with fixed weights.
LmResult levenberg_marquardt(ModelClass c, const VecX& nodes, const VecX& values,
                             const VecX& weights, Params3 mu, int max_iterations,
                             const FitOptions& options) {
  LmResult out;
  const VecX sqrt_w = weights.cwiseSqrt();
  auto r = residuals(c, mu, nodes, values);
  if (!r) {
    throw Error(ErrorKind::FitDegenerate, "scaling model undefined at the starting parameters");
  }
  double cost = (sqrt_w.cwiseProduct(*r)).squaredNorm();
  double damping = options.initial_damping;

  while (out.iterations < max_iterations) {
    Eigen::MatrixX3d jac(nodes.size(), 3);
    for (Index i = 0; i < nodes.size(); ++i) {
      jac.row(i) = sqrt_w(i) * model_jacobian(c, mu, nodes(i));
    }
    if (!jac.allFinite() || jac.isZero(0.0)) {
      throw Error(ErrorKind::FitDegenerate, "scaling model Jacobian is degenerate");
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d grad = jac.transpose() * sqrt_w.cwiseProduct(*r);
    ++out.iterations;
    if (cost == 0.0 || grad.isZero(0.0)) {
      out.step_converged = true;
      break;
    }

    // Marquardt scaling; the floor keeps flat directions solvable.
    const Eigen::Vector3d scale = jtj.diagonal().cwiseMax(1e-12 * jtj.diagonal().maxCoeff());
    bool accepted = false;
    Params3 step = Params3::Zero();
    while (damping < 1e16) {
      Eigen::Matrix3d lhs = jtj;
      lhs.diagonal() += damping * scale;
      step = lhs.ldlt().solve(grad);
      const Params3 trial = mu + step;
      const auto trial_r = residuals(c, trial, nodes, values);
      if (step.allFinite() && trial_r) {
        const double trial_cost = (sqrt_w.cwiseProduct(*trial_r)).squaredNorm();
        if (trial_cost <= cost) {
          mu = trial;
          r = trial_r;
          cost = trial_cost;
          damping = std::max(damping / 10.0, 1e-15);
          accepted = true;
          break;
        }
      }
      damping *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at machine precision.
      out.step_converged = true;
      break;
    }
    if (step.norm() < options.step_tolerance * (std::sqrt(std::numeric_limits<double>::epsilon()) +
                                                mu.norm())) {
      out.step_converged = true;
      break;
    }
  }
  out.mu = mu;
  return out;
}

}  // namespace

std::string to_string(ModelClass c) {
  return c == ModelClass::Rational ? "rational" : "exponential";
}

double eval_model(ModelClass c, const Params3& mu, double x) {
  if (c == ModelClass::Rational) {
    if (!(x > 0.0)) {
      throw Error(ErrorKind::Domain, "rational scaling model is defined for x > 0 only");
    }
    const double lx = std::log(x);
    const double denom = std::exp(mu(1) * lx) + mu(2);
    if (!(std::abs(denom) >= kPoleThreshold)) {
      std::ostringstream msg;
      msg << "rational scaling model has a pole at x = " << x;
      throw Error(ErrorKind::Pole, msg.str());
    }
    return std::exp(-mu(0) * lx) / denom;
  }
  return (mu(0) * x + mu(2)) * std::exp(-mu(1) * x);
}

Eigen::RowVector3d model_jacobian(ModelClass c, const Params3& mu, double x) {
  Eigen::RowVector3d j;
  if (c == ModelClass::Rational) {
    const double g = eval_model(c, mu, x);
    const double lx = std::log(x);
    const double xp = std::exp(mu(1) * lx);
    const double denom = xp + mu(2);
    j << -lx * g, -g * xp * lx / denom, -g / denom;
  } else {
    const double e = std::exp(-mu(1) * x);
    j << x * e, -x * (mu(0) * x + mu(2)) * e, e;
  }
  return j;
}

double weighted_objective(ModelClass c, const Params3& mu, const VecX& nodes, const VecX& values,
                          const VecX& weights) {
  double total = 0.0;
  for (Index i = 0; i < nodes.size(); ++i) {
    const double r = values(i) - eval_model(c, mu, nodes(i));
    total += weights(i) * r * r;
  }
  return total;
}

Params3 default_init(ModelClass c, const VecX& nodes, const VecX& values) {
  if (c == ModelClass::Rational) {
    return Params3(0.0, 1.0, 1.0);
  }
  // Least-squares line through (x_i, log|f_i|), skipping zero samples.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (Index i = 0; i < nodes.size(); ++i) {
    if (values(i) == 0.0) continue;
    const double y = std::log(std::abs(values(i)));
    sx += nodes(i);
    sy += y;
    sxx += nodes(i) * nodes(i);
    sxy += nodes(i) * y;
    ++count;
  }
  double rate = 0.0;
  const double denom = count * sxx - sx * sx;
  if (count >= 2 && denom > 0.0) {
    rate = -(count * sxy - sx * sy) / denom;
  }
  Index imin = 0;
  nodes.minCoeff(&imin);
  return Params3(0.0, rate, values(imin) * std::exp(rate * nodes(imin)));
}

ScalingModel fit_class(ModelClass c, const VecX& nodes, const VecX& values, const Params3& init,
                       const FitOptions& options) {
  require_inputs(c, nodes, values);
  const Index n = nodes.size();
  const double scale_floor = 1e-6 * std::max(values.cwiseAbs().maxCoeff(),
                                             std::numeric_limits<double>::min());

  ScalingModel model;
  model.model_class = c;
  model.mu = init;
  VecX weights = VecX::Ones(n);
  int used = 0;

  while (used < options.max_iterations) {
    const Params3 before = model.mu;
    const LmResult lm = levenberg_marquardt(c, nodes, values, weights, model.mu,
                                            options.max_iterations - used, options);
    used += lm.iterations;
    model.mu = lm.mu;
    model.weights = weights;
    if (!options.robust) {
      model.converged = lm.step_converged;
      break;
    }
    const double change = (model.mu - before).norm();
    if (used > lm.iterations && lm.step_converged &&
        change < options.step_tolerance *
                     (std::sqrt(std::numeric_limits<double>::epsilon()) + model.mu.norm())) {
      model.converged = true;
      break;
    }
    const VecX r = *residuals(c, model.mu, nodes, values);
    weights = bisquare_weights(r, options.bisquare_tuning, scale_floor);
    if ((weights.array() > 0.0).count() < 3) {
      throw Error(ErrorKind::FitDegenerate, "fewer than 3 samples keep nonzero robust weight");
    }
  }
  model.iterations = used;
  const auto r = residuals(c, model.mu, nodes, values);
  model.residual_norm = r ? r->norm() : std::numeric_limits<double>::infinity();
  return model;
}

ScalingModel fit_class(ModelClass c, const VecX& nodes, const VecX& values,
                       const FitOptions& options) {
  require_inputs(c, nodes, values);
  return fit_class(c, nodes, values, default_init(c, nodes, values), options);
}

ScalingModel select_scaling(const VecX& nodes, const VecX& values,
                            const std::optional<VecX>& check_points, const FitOptions& options) {
  std::optional<ScalingModel> best;
  std::string diagnostics;
  for (ModelClass c : {ModelClass::Rational, ModelClass::Exponential}) {
    try {
      ScalingModel m = fit_class(c, nodes, values, options);
      if (!std::isfinite(m.residual_norm)) {
        throw Error(ErrorKind::FitDegenerate, "non-finite residual");
      }
      if (check_points) {
        for (Index i = 0; i < check_points->size(); ++i) {
          if (!std::isfinite(eval_model(c, m.mu, (*check_points)(i)))) {
            throw Error(ErrorKind::ScalingEvaluation, "not finite on the evaluation interval");
          }
        }
      }
      if (!best || m.residual_norm < best->residual_norm) {
        best = std::move(m);
      }
    } catch (const Error& e) {
      diagnostics += to_string(c) + ": " + e.what() + "; ";
    }
  }
  if (!best) {
    throw Error(ErrorKind::Selection, "no scaling model could be fitted (" + diagnostics + ")");
  }
  return *best;
}

ScalingFunction<double> to_scaling_function(const ScalingModel& model) {
  const ModelClass c = model.model_class;
  const Params3 mu = model.mu;
  return ScalingFunction<double>::univariate([c, mu](double x) { return eval_model(c, mu, x); },
                                             to_string(c), {mu(0), mu(1), mu(2)});
}

}  // namespace vskx
