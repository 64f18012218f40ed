#ifndef VSKX_VSK_HPP_
#define VSKX_VSK_HPP_

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <vskx/error.hpp>
#include <vskx/kernels.hpp>
#include <vskx/linsys.hpp>
#include <vskx/types.hpp>

namespace vskx {

// Scalar feature psi: R^d -> R used to lift x to (x, psi(x)).
template <typename Scalar>
class ScalingFunction {
 public:
  using Fn = std::function<Scalar(const Vector<Scalar>&)>;

  ScalingFunction(int dimension, Fn fn, std::string tag = "custom",
                  std::vector<double> params = {})
      : d_(dimension), fn_(std::move(fn)), tag_(std::move(tag)), params_(std::move(params)) {}

  // Convenience for d = 1.
  static ScalingFunction univariate(std::function<Scalar(Scalar)> f, std::string tag = "custom",
                                    std::vector<double> params = {}) {
    return ScalingFunction(
        1, [f = std::move(f)](const Vector<Scalar>& x) { return f(x(0)); }, std::move(tag),
        std::move(params));
  }

  static ScalingFunction constant(int dimension, Scalar c) {
    return ScalingFunction(
        dimension, [c](const Vector<Scalar>&) { return c; }, "constant",
        {static_cast<double>(c)});
  }

  int dimension() const { return d_; }
  const std::string& tag() const { return tag_; }
  const std::vector<double>& params() const { return params_; }

  Scalar operator()(const Vector<Scalar>& x) const { return fn_(x); }

 private:
  int d_;
  Fn fn_;
  std::string tag_;
  std::vector<double> params_;
};

// Psi(x) = (x, psi(x)).
template <typename Scalar, typename Derived>
Vector<Scalar> lift(const ScalingFunction<Scalar>& psi, const Eigen::MatrixBase<Derived>& x) {
  using std::isfinite;
  if (x.size() != psi.dimension()) {
    throw Error(ErrorKind::Shape, "point dimension does not match scaling function");
  }
  Vector<Scalar> xv(x.size());
  for (Index i = 0; i < x.size(); ++i) xv(i) = x(i);
  const Scalar s = psi(xv);
  if (!isfinite(s)) {
    throw Error(ErrorKind::ScalingEvaluation, "scaling function is not finite at x = " +
                                                  std::to_string(static_cast<double>(xv(0))));
  }
  Vector<Scalar> out(xv.size() + 1);
  out << xv, s;
  return out;
}

template <typename Scalar>
Points<Scalar> lift_points(const ScalingFunction<Scalar>& psi, const Points<Scalar>& points) {
  Points<Scalar> out(points.rows(), points.cols() + 1);
  for (Index i = 0; i < points.rows(); ++i) {
    out.row(i) = lift(psi, points.row(i)).transpose();
  }
  return out;
}

// VSK interpolant: an ordinary polyharmonic interpolant in d+1 variables
// evaluated on the graph of psi. Holds psi so that evaluation outside the
// sample domain uses the same fitted feature.
template <typename Scalar>
class VskExtrapolant {
 public:
  VskExtrapolant(Extrapolant<Scalar> lifted, std::shared_ptr<const ScalingFunction<Scalar>> psi)
      : lifted_(std::move(lifted)), psi_(std::move(psi)) {}

  const Extrapolant<Scalar>& lifted() const { return lifted_; }
  const ScalingFunction<Scalar>& scaling() const { return *psi_; }
  std::shared_ptr<const ScalingFunction<Scalar>> scaling_ptr() const { return psi_; }

  template <typename Derived>
  Scalar evaluate(const Eigen::MatrixBase<Derived>& x) const {
    return lifted_.evaluate(lift(*psi_, x));
  }

  Vector<Scalar> evaluate(const Points<Scalar>& points) const {
    Vector<Scalar> out(points.rows());
    for (Index i = 0; i < points.rows(); ++i) {
      out(i) = evaluate(points.row(i));
    }
    return out;
  }

 private:
  Extrapolant<Scalar> lifted_;
  std::shared_ptr<const ScalingFunction<Scalar>> psi_;
};

// `base` is the kernel order over the original d-dimensional inputs; the
// system is built with kernel (d+1, l) and the degree l-1 polynomials in
// d+1 variables, so m = C(l+d, l-1).
template <typename Scalar>
VskExtrapolant<Scalar> fit_vsk(const KernelSpec& base,
                               std::shared_ptr<const ScalingFunction<Scalar>> psi,
                               const Points<Scalar>& nodes, const Vector<Scalar>& values,
                               Scalar lambda = Scalar(0), RidgeMode mode = RidgeMode::KernelBlock) {
  if (!psi) {
    throw Error(ErrorKind::ScalingEvaluation, "no scaling function supplied");
  }
  if (nodes.cols() != base.dimension() || psi->dimension() != base.dimension()) {
    throw Error(ErrorKind::Shape, "nodes, scaling function and kernel dimensions differ");
  }
  if (2 * base.order() <= base.dimension() + 1) {
    throw Error(ErrorKind::Domain, "VSK lift requires 2l > d+1");
  }
  // Distinct nodes give distinct lifted nodes; check before lifting so the
  // error names the original indices.
  detail::require_distinct(nodes);
  const KernelSpec lifted_spec(base.dimension() + 1, base.order());
  Extrapolant<Scalar> model =
      fit<Scalar>(lifted_spec, lift_points(*psi, nodes), values, lambda, mode);
  return VskExtrapolant<Scalar>(std::move(model), std::move(psi));
}

template <typename Scalar>
VskExtrapolant<Scalar> fit_vsk(const KernelSpec& base, ScalingFunction<Scalar> psi,
                               const Points<Scalar>& nodes, const Vector<Scalar>& values,
                               Scalar lambda = Scalar(0), RidgeMode mode = RidgeMode::KernelBlock) {
  return fit_vsk<Scalar>(base, std::make_shared<const ScalingFunction<Scalar>>(std::move(psi)),
                         nodes, values, lambda, mode);
}

// P^Psi(x) = P((x, psi(x))) with an explicitly supplied psi.
template <typename Scalar, typename Derived>
Scalar evaluate_vsk(const Extrapolant<Scalar>& lifted, const ScalingFunction<Scalar>& psi,
                    const Eigen::MatrixBase<Derived>& x) {
  return lifted.evaluate(lift(psi, x));
}

}  // namespace vskx

#endif  // VSKX_VSK_HPP_
