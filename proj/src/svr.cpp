#include <vskx/svr.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include <vskx/error.hpp>

namespace vskx {

namespace {

constexpr double kTau = 1e-12;

MatX gram_matrix(const SvrKernel& kernel, const VecX& x) {
  const Index n = x.size();
  MatX k(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      k(i, j) = kernel(x(i), x(j));
      k(j, i) = k(i, j);
    }
  }
  return k;
}

// Regression dual in the 2n-variable form
//   min 1/2 a^T Q a + p^T a,  y^T a = 0,  0 <= a <= zeta
// with a = (alpha*, alpha), y = (+1, -1), Q_st = y_s y_t K, p = (eps - f, eps + f).
class SmoSolver {
 public:
  SmoSolver(const MatX& k, const VecX& f, double epsilon, double zeta)
      : k_(k), n_(f.size()), zeta_(zeta), a_(VecX::Zero(2 * n_)), grad_(2 * n_) {
    grad_.head(n_) = epsilon - f.array();
    grad_.tail(n_) = epsilon + f.array();
  }

  // Returns the final maximal violation.
  double run(double tolerance, long max_iterations, long& iterations, bool& converged) {
    iterations = 0;
    converged = false;
    double gap = std::numeric_limits<double>::infinity();
    while (iterations < max_iterations) {
      Index i = -1;
      Index j = -1;
      gap = select_pair(i, j);
      if (gap < tolerance || j < 0) {
        converged = true;
        break;
      }
      update(i, j);
      ++iterations;
    }
    if (!converged) {
      Index i = -1;
      Index j = -1;
      gap = select_pair(i, j);
      converged = gap < tolerance;
    }
    return gap;
  }

  VecX dual_diffs() const { return a_.head(n_) - a_.tail(n_); }
  const VecX& alpha() const { return a_; }

 private:
  double y(Index t) const { return t < n_ ? 1.0 : -1.0; }
  Index sample(Index t) const { return t < n_ ? t : t - n_; }
  double q(Index s, Index t) const { return y(s) * y(t) * k_(sample(s), sample(t)); }
  double qd(Index t) const { return k_(sample(t), sample(t)); }
  bool at_upper(Index t) const { return a_(t) >= zeta_; }
  bool at_lower(Index t) const { return a_(t) <= 0.0; }

  // Second-order working-set selection; returns Gmax + Gmax2.
  double select_pair(Index& out_i, Index& out_j) const {
    const Index total = 2 * n_;
    double gmax = -std::numeric_limits<double>::infinity();
    Index imax = -1;
    for (Index t = 0; t < total; ++t) {
      if (y(t) > 0) {
        if (!at_upper(t) && -grad_(t) >= gmax) {
          gmax = -grad_(t);
          imax = t;
        }
      } else if (!at_lower(t) && grad_(t) >= gmax) {
        gmax = grad_(t);
        imax = t;
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    Index jmin = -1;
    for (Index t = 0; t < total; ++t) {
      double grad_diff;
      double quad;
      if (y(t) > 0) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad_(t));
        grad_diff = gmax + grad_(t);
        if (imax < 0 || grad_diff <= 0) continue;
        quad = qd(imax) + qd(t) - 2.0 * y(imax) * q(imax, t);
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad_(t));
        grad_diff = gmax - grad_(t);
        if (imax < 0 || grad_diff <= 0) continue;
        quad = qd(imax) + qd(t) + 2.0 * y(imax) * q(imax, t);
      }
      const double obj = -(grad_diff * grad_diff) / (quad > 0 ? quad : kTau);
      if (obj <= best) {
        best = obj;
        jmin = t;
      }
    }
    out_i = imax;
    out_j = jmin;
    if (imax < 0) return -std::numeric_limits<double>::infinity();
    return gmax + gmax2;
  }

  void update(Index i, Index j) {
    const double c = zeta_;
    const double old_i = a_(i);
    const double old_j = a_(j);
    const double qij = q(i, j);
    double& ai = a_(i);
    double& aj = a_(j);
    if (y(i) != y(j)) {
      double quad = qd(i) + qd(j) + 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (-grad_(i) - grad_(j)) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0) {
        if (aj < 0) {
          aj = 0;
          ai = diff;
        }
      } else if (ai < 0) {
        ai = 0;
        aj = -diff;
      }
      if (diff > 0) {
        if (ai > c) {
          ai = c;
          aj = c - diff;
        }
      } else if (aj > c) {
        aj = c;
        ai = c + diff;
      }
    } else {
      double quad = qd(i) + qd(j) - 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (grad_(i) - grad_(j)) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c) {
        if (ai > c) {
          ai = c;
          aj = sum - c;
        }
      } else if (aj < 0) {
        aj = 0;
        ai = sum;
      }
      if (sum > c) {
        if (aj > c) {
          aj = c;
          ai = sum - c;
        }
      } else if (ai < 0) {
        ai = 0;
        aj = sum;
      }
    }
    const double di = ai - old_i;
    const double dj = aj - old_j;
    for (Index t = 0; t < 2 * n_; ++t) {
      grad_(t) += q(t, i) * di + q(t, j) * dj;
    }
  }

  const MatX& k_;
  Index n_;
  double zeta_;
  VecX a_;
  VecX grad_;
};

double rmse_of(const VecX& a, const VecX& b) {
  return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

}  // namespace

SvrKernel SvrKernel::polyharmonic(const KernelSpec& spec) {
  if (spec.dimension() != 1) {
    throw Error(ErrorKind::Domain, "SVR baseline works on scalar inputs (d = 1)");
  }
  return SvrKernel{[spec](double x, double y) { return phs_eval<double>(spec, std::abs(x - y)); },
                   "phs(d=1,l=" + std::to_string(spec.order()) + ")", spec};
}

SvrKernel SvrKernel::polyharmonic_projected(const KernelSpec& spec, std::vector<double> anchors) {
  if (spec.dimension() != 1) {
    throw Error(ErrorKind::Domain, "SVR baseline works on scalar inputs (d = 1)");
  }
  const std::size_t l = static_cast<std::size_t>(spec.order());
  if (anchors.size() != l) {
    throw Error(ErrorKind::Domain, "projected kernel needs exactly l anchors");
  }
  std::sort(anchors.begin(), anchors.end());
  if (std::adjacent_find(anchors.begin(), anchors.end()) != anchors.end()) {
    throw Error(ErrorKind::DegenerateInput, "projected kernel anchors must be distinct");
  }
  auto phi = [spec](double x, double y) { return phs_eval<double>(spec, std::abs(x - y)); };
  // Lagrange basis of degree l-1 on the anchors.
  auto lagrange = [anchors](double x) {
    std::vector<double> out(anchors.size(), 1.0);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      for (std::size_t j = 0; j < anchors.size(); ++j) {
        if (j != k) out[k] *= (x - anchors[j]) / (anchors[k] - anchors[j]);
      }
    }
    return out;
  };
  auto fn = [phi, lagrange, anchors](double x, double y) {
    const auto lx = lagrange(x);
    const auto ly = lagrange(y);
    double value = phi(x, y);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      value -= lx[k] * phi(anchors[k], y) + ly[k] * phi(x, anchors[k]);
      value += lx[k] * ly[k];
      for (std::size_t j = 0; j < anchors.size(); ++j) {
        value += lx[j] * ly[k] * phi(anchors[j], anchors[k]);
      }
    }
    return value;
  };
  return SvrKernel{fn, "phs_projected(d=1,l=" + std::to_string(spec.order()) + ")", spec};
}

SvrKernel SvrKernel::linear() {
  return SvrKernel{[](double x, double y) { return x * y; }, "linear", std::nullopt};
}

SvrKernel SvrKernel::polynomial(int degree, double offset) {
  if (degree < 1) throw Error(ErrorKind::Domain, "polynomial kernel degree must be >= 1");
  if (!(offset >= 0.0)) throw Error(ErrorKind::Domain, "polynomial kernel offset must be >= 0");
  return SvrKernel{[degree, offset](double x, double y) { return std::pow(offset + x * y, degree); },
                   "polynomial(" + std::to_string(degree) + ")", std::nullopt};
}

double svr_dual_objective(const MatX& gram, const VecX& values, const VecX& dual_diffs,
                          double epsilon) {
  return 0.5 * dual_diffs.dot(gram * dual_diffs) + epsilon * dual_diffs.cwiseAbs().sum() -
         values.dot(dual_diffs);
}

SvrModel train_svr(const SvrKernel& kernel, const VecX& nodes, const VecX& values, double epsilon,
                   double zeta, const SvrOptions& options) {
  const Index n = nodes.size();
  if (values.size() != n) {
    throw Error(ErrorKind::Shape, "nodes and values differ in length");
  }
  if (n < 1) {
    throw Error(ErrorKind::DegenerateInput, "SVR needs at least one sample");
  }
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorKind::Domain, "SVR tube width must be nonnegative");
  }
  if (!(zeta > 0.0)) {
    throw Error(ErrorKind::Domain, "SVR trade-off parameter must be positive");
  }

  SvrModel model;
  model.kernel = kernel;
  model.nodes = nodes;
  model.epsilon = epsilon;
  model.zeta = zeta;

  const MatX plain = gram_matrix(kernel, nodes);
  // The cubic kernel is only conditionally positive definite.
  model.diagonal_shift = options.diagonal_shift_factor * plain.cwiseAbs().maxCoeff();
  MatX train = plain;
  train.diagonal().array() += model.diagonal_shift;

  SmoSolver solver(train, values, epsilon, zeta);
  model.max_violation =
      solver.run(options.tolerance, options.max_iterations, model.iterations, model.converged);
  model.dual_diffs = solver.dual_diffs();
  const VecX& a = solver.alpha();

  // Bias from the active-tube conditions, averaged over unbounded support
  // vectors; otherwise the midpoint of the interval the bounded ones allow.
  const VecX e = values - plain * model.dual_diffs;
  double sum = 0.0;
  int free_count = 0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    const double upper_var = a(i);     // alpha*_i
    const double lower_var = a(n + i);  // alpha_i
    if (upper_var > 0.0 && upper_var < zeta) {
      sum += e(i) - epsilon;
      ++free_count;
    } else if (lower_var > 0.0 && lower_var < zeta) {
      sum += e(i) + epsilon;
      ++free_count;
    } else if (upper_var >= zeta) {
      upper = std::min(upper, e(i) - epsilon);
    } else if (lower_var >= zeta) {
      lower = std::max(lower, e(i) + epsilon);
    } else {
      lower = std::max(lower, e(i) - epsilon);
      upper = std::min(upper, e(i) + epsilon);
    }
  }
  if (free_count > 0) {
    model.bias = sum / free_count;
  } else if (std::isfinite(lower) && std::isfinite(upper)) {
    model.bias = 0.5 * (lower + upper);
  } else {
    model.bias = std::isfinite(lower) ? lower : upper;
  }

  for (Index i = 0; i < n; ++i) {
    if (model.dual_diffs(i) != 0.0) model.support.push_back(i);
  }
  model.objective = svr_dual_objective(train, values, model.dual_diffs, epsilon);
  return model;
}

double predict_svr(const SvrModel& model, double x) {
  double value = model.bias;
  for (Index i : model.support) {
    value += model.dual_diffs(i) * model.kernel(x, model.nodes(i));
  }
  return value;
}

VecX predict_svr(const SvrModel& model, const VecX& x) {
  VecX out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = predict_svr(model, x(i));
  return out;
}

CrossValidation cross_validate(const SvrKernel& kernel, const VecX& nodes, const VecX& values,
                               int folds, const SvrGrid& grid, const SvrOptions& options) {
  const Index n = nodes.size();
  if (values.size() != n) {
    throw Error(ErrorKind::Shape, "nodes and values differ in length");
  }
  if (folds < 2 || n < folds) {
    throw Error(ErrorKind::Config, "cross validation needs 2 <= folds <= n");
  }
  if (grid.epsilons.empty() || grid.zetas.empty()) {
    throw Error(ErrorKind::Config, "empty hyperparameter grid");
  }

  // Contiguous blocks; the first n % folds blocks get one extra point.
  std::vector<Index> start(static_cast<std::size_t>(folds) + 1, 0);
  for (int f = 0; f < folds; ++f) {
    const Index size = n / folds + (f < n % folds ? 1 : 0);
    start[static_cast<std::size_t>(f) + 1] = start[static_cast<std::size_t>(f)] + size;
    if (size < 2 || n - size < 2) {
      throw Error(ErrorKind::Config, "cross-validation fold with fewer than 2 points");
    }
  }

  std::vector<double> zetas = grid.zetas;
  std::vector<double> epsilons = grid.epsilons;
  std::sort(zetas.begin(), zetas.end());
  std::sort(epsilons.begin(), epsilons.end());

  auto score = [&](double eps, double zeta) {
    double total = 0.0;
    for (int f = 0; f < folds; ++f) {
      const Index lo = start[static_cast<std::size_t>(f)];
      const Index hi = start[static_cast<std::size_t>(f) + 1];
      VecX train_x(n - (hi - lo));
      VecX train_f(n - (hi - lo));
      train_x << nodes.head(lo), nodes.tail(n - hi);
      train_f << values.head(lo), values.tail(n - hi);
      const SvrModel m = train_svr(kernel, train_x, train_f, eps, zeta, options);
      total += rmse_of(predict_svr(m, nodes.segment(lo, hi - lo)), values.segment(lo, hi - lo));
    }
    return total / folds;
  };

  std::vector<std::future<double>> cells;
  for (double zeta : zetas) {
    for (double eps : epsilons) {
      cells.push_back(std::async(std::launch::async, score, eps, zeta));
    }
  }

  CrossValidation best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  std::size_t idx = 0;
  for (double zeta : zetas) {
    for (double eps : epsilons) {
      const double rmse = cells[idx++].get();
      if (rmse < best.rmse) best = {eps, zeta, rmse};
    }
  }
  if (!std::isfinite(best.rmse)) {
    throw Error(ErrorKind::Config, "cross validation produced no finite score");
  }
  return best;
}

}  // namespace vskx
