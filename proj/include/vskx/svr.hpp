#ifndef VSKX_SVR_HPP_
#define VSKX_SVR_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <vskx/kernels.hpp>
#include <vskx/types.hpp>

namespace vskx {

// Kernel over scalar inputs used by the SVR baseline.
struct SvrKernel {
  std::function<double(double, double)> fn;
  std::string name;
  std::optional<KernelSpec> phs;  // set when the kernel is a polyharmonic spline

  // Raw phi(|x - y|). For a kernel that is only conditionally positive
  // definite the dual QP is indefinite under the single equality constraint.
  static SvrKernel polyharmonic(const KernelSpec& spec);

  // Positive definite kernel built from a polyharmonic spline of order l by
  // projecting out the polynomials of degree l-1 through the unisolvent
  // anchors xi_1 < ... < xi_l (Lagrange basis L_k on the anchors):
  //
  //   k(x,y) = phi(x,y) - sum_k L_k(x) phi(xi_k,y) - sum_k L_k(y) phi(x,xi_k)
  //          + sum_jk L_j(x) L_k(y) phi(xi_j,xi_k) + sum_k L_k(x) L_k(y)
  static SvrKernel polyharmonic_projected(const KernelSpec& spec, std::vector<double> anchors);
  static SvrKernel linear();  // k(x, y) = x y
  // k(x, y) = (offset + x y)^degree
  static SvrKernel polynomial(int degree, double offset = 1.0);

  double operator()(double x, double y) const { return fn(x, y); }
};

struct SvrOptions {
  double tolerance = 1e-6;            // maximal violating pair gap
  long max_iterations = 100000;       // pair updates
  double diagonal_shift_factor = 1e-8;  // training kernel A + factor * max|A| * I
};

struct SvrModel {
  SvrKernel kernel;
  VecX nodes;
  VecX dual_diffs;  // alpha*_i - alpha_i
  double bias = 0.0;
  std::vector<Index> support;
  double epsilon = 0.0;
  double zeta = 1.0;
  double diagonal_shift = 0.0;
  // 1/2 b^T K b + eps sum|b_i| - f^T b with the training (shifted) kernel.
  double objective = 0.0;
  double max_violation = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Trains epsilon-insensitive SVR by SMO with maximal-violating-pair selection.
SvrModel train_svr(const SvrKernel& kernel, const VecX& nodes, const VecX& values, double epsilon,
                   double zeta, const SvrOptions& options = {});

// sum_i (alpha*_i - alpha_i) k(x, x_i) + b
double predict_svr(const SvrModel& model, double x);
VecX predict_svr(const SvrModel& model, const VecX& x);

// Dual objective for arbitrary dual differences.
double svr_dual_objective(const MatX& gram, const VecX& values, const VecX& dual_diffs,
                          double epsilon);

struct SvrGrid {
  std::vector<double> epsilons{1e-4, 1e-3, 1e-2, 1e-1};
  std::vector<double> zetas{1e-2, 1e-1, 1.0, 10.0, 1e2};
};

struct CrossValidation {
  double epsilon = 0.0;
  double zeta = 0.0;
  double rmse = 0.0;  // mean validation RMSE over folds
};

// k-fold search over contiguous index blocks; ties go to the smaller zeta,
// then the smaller epsilon.
CrossValidation cross_validate(const SvrKernel& kernel, const VecX& nodes, const VecX& values,
                               int folds = 3, const SvrGrid& grid = {},
                               const SvrOptions& options = {});

}  // namespace vskx

#endif  // VSKX_SVR_HPP_
