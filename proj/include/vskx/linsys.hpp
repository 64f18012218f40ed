#ifndef VSKX_LINSYS_HPP_
#define VSKX_LINSYS_HPP_

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include <vskx/error.hpp>
#include <vskx/kernels.hpp>
#include <vskx/poly_basis.hpp>
#include <vskx/types.hpp>

namespace vskx {

// Where the ridge parameter lambda enters the saddle-point matrix.
//
// KernelBlock adds lambda to the n kernel rows only, so polynomial data are
// still reproduced exactly. FullDiagonal adds lambda to all n+m diagonal
// entries, i.e. (K + lambda I) gamma = g with I of size n+m.
enum class RidgeMode {
  KernelBlock,
  FullDiagonal,
};

template <typename Scalar>
struct SaddleSystem {
  Matrix<Scalar> matrix;  // [[A + lambda I, P], [P^T, 0]]
  Vector<Scalar> rhs;     // (f; 0)
  Index n = 0;
  Index m = 0;
};

namespace detail {

template <typename Scalar>
void require_distinct(const Points<Scalar>& nodes) {
  for (Index i = 0; i < nodes.rows(); ++i) {
    for (Index k = i + 1; k < nodes.rows(); ++k) {
      if (nodes.row(i) == nodes.row(k)) {
        std::ostringstream msg;
        msg << "duplicate nodes at indices " << i << " and " << k;
        throw Error(ErrorKind::DegenerateInput, msg.str());
      }
    }
  }
}

}  // namespace detail

template <typename Scalar>
SaddleSystem<Scalar> assemble(const KernelSpec& spec, const PolyBasis& basis,
                              const Points<Scalar>& nodes, const Vector<Scalar>& values,
                              Scalar lambda, RidgeMode mode = RidgeMode::KernelBlock) {
  const Index n = nodes.rows();
  const Index m = basis.size();
  if (basis.dimension() != spec.dimension()) {
    throw Error(ErrorKind::Shape, "kernel and polynomial basis dimensions differ");
  }
  if (values.size() != n) {
    throw Error(ErrorKind::Shape, "expected " + std::to_string(n) + " values, got " +
                                      std::to_string(values.size()));
  }
  if (!(lambda >= Scalar(0))) {
    throw Error(ErrorKind::Domain, "ridge parameter must be nonnegative");
  }
  if (n < m) {
    throw Error(ErrorKind::DegenerateInput,
                "need at least " + std::to_string(m) + " nodes for a polynomial part of degree " +
                    std::to_string(basis.degree()) + ", got " + std::to_string(n));
  }
  detail::require_distinct(nodes);

  SaddleSystem<Scalar> sys;
  sys.n = n;
  sys.m = m;
  sys.matrix = Matrix<Scalar>::Zero(n + m, n + m);
  sys.matrix.topLeftCorner(n, n) = kernel_matrix<Scalar>(spec, nodes);
  const Matrix<Scalar> p = poly_matrix<Scalar>(basis, nodes);
  sys.matrix.topRightCorner(n, m) = p;
  sys.matrix.bottomLeftCorner(m, n) = p.transpose();

  const Index ridge_size = mode == RidgeMode::FullDiagonal ? n + m : n;
  sys.matrix.diagonal().head(ridge_size).array() += lambda;

  sys.rhs = Vector<Scalar>::Zero(n + m);
  sys.rhs.head(n) = values;
  return sys;
}

// Dense LU with partial pivoting. A pivot below 1e-12 ||K||_inf is reported
// as a singular system.
template <typename Scalar>
Vector<Scalar> solve(const Matrix<Scalar>& system, const Vector<Scalar>& rhs) {
  using std::abs;
  if (system.rows() != system.cols()) {
    throw Error(ErrorKind::Shape, "system matrix is not square");
  }
  if (system.rows() != rhs.size()) {
    throw Error(ErrorKind::Shape, "right-hand side length does not match system");
  }
  const Scalar norm_inf = system.cwiseAbs().rowwise().sum().maxCoeff();
  const Eigen::PartialPivLU<Matrix<Scalar>> lu(system);
  const Scalar min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const Scalar threshold = Scalar(1e-12) * norm_inf;
  if (!(min_pivot >= threshold) || norm_inf == Scalar(0)) {
    std::ostringstream msg;
    msg << "singular system of size " << system.rows() << ": pivot " << double(min_pivot)
        << " below threshold " << double(threshold);
    throw Error(ErrorKind::SingularSystem, msg.str());
  }
  return lu.solve(rhs);
}

template <typename Scalar>
Vector<Scalar> solve(const SaddleSystem<Scalar>& sys) {
  try {
    return solve<Scalar>(sys.matrix, sys.rhs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularSystem) throw;
    std::ostringstream msg;
    msg << e.what() << " (n=" << sys.n << " nodes, m=" << sys.m
        << " polynomial terms; nodes may not be unisolvent)";
    throw Error(ErrorKind::SingularSystem, msg.str());
  }
}

// P(x) = sum_k alpha_k phi(|x - x_k|) + sum_j beta_j p_j(x)
template <typename Scalar>
class Extrapolant {
 public:
  Extrapolant(KernelSpec spec, PolyBasis basis, Points<Scalar> nodes, Vector<Scalar> alpha,
              Vector<Scalar> beta, Scalar lambda, RidgeMode mode = RidgeMode::KernelBlock)
      : spec_(spec),
        basis_(std::move(basis)),
        nodes_(std::move(nodes)),
        alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        lambda_(lambda),
        mode_(mode) {
    if (alpha_.size() != nodes_.rows() || beta_.size() != basis_.size()) {
      throw Error(ErrorKind::Shape, "coefficient lengths do not match nodes and basis");
    }
  }

  const KernelSpec& spec() const { return spec_; }
  const PolyBasis& basis() const { return basis_; }
  const Points<Scalar>& nodes() const { return nodes_; }
  const Vector<Scalar>& alpha() const { return alpha_; }
  const Vector<Scalar>& beta() const { return beta_; }
  Scalar lambda() const { return lambda_; }
  RidgeMode ridge_mode() const { return mode_; }
  int dimension() const { return spec_.dimension(); }

  template <typename Derived>
  Scalar evaluate(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != spec_.dimension()) {
      throw Error(ErrorKind::Shape, "evaluation point has dimension " + std::to_string(x.size()) +
                                        ", model expects " + std::to_string(spec_.dimension()));
    }
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> xr(x.size());
    for (Index i = 0; i < x.size(); ++i) xr(i) = x(i);
    Scalar value(0);
    for (Index k = 0; k < nodes_.rows(); ++k) {
      value += alpha_(k) * phs_eval<Scalar>(spec_, (xr - nodes_.row(k)).norm());
    }
    for (Index j = 0; j < basis_.size(); ++j) {
      value += beta_(j) * basis_.template term<Scalar>(j, xr);
    }
    return value;
  }

  Vector<Scalar> evaluate(const Points<Scalar>& points) const {
    Vector<Scalar> out(points.rows());
    for (Index i = 0; i < points.rows(); ++i) {
      out(i) = evaluate(points.row(i));
    }
    return out;
  }

 private:
  KernelSpec spec_;
  PolyBasis basis_;
  Points<Scalar> nodes_;
  Vector<Scalar> alpha_;
  Vector<Scalar> beta_;
  Scalar lambda_;
  RidgeMode mode_;
};

// Standard kernel fit: polynomial part of degree l-1 in d variables.
template <typename Scalar>
Extrapolant<Scalar> fit(const KernelSpec& spec, const Points<Scalar>& nodes,
                        const Vector<Scalar>& values, Scalar lambda = Scalar(0),
                        RidgeMode mode = RidgeMode::KernelBlock) {
  PolyBasis basis(spec.dimension(), spec.poly_degree());
  const SaddleSystem<Scalar> sys = assemble<Scalar>(spec, basis, nodes, values, lambda, mode);
  const Vector<Scalar> gamma = solve<Scalar>(sys);
  return Extrapolant<Scalar>(spec, std::move(basis), nodes, gamma.head(sys.n), gamma.tail(sys.m),
                             lambda, mode);
}

}  // namespace vskx

#endif  // VSKX_LINSYS_HPP_
