#ifndef VSKX_KERNELS_HPP_
#define VSKX_KERNELS_HPP_

#include <cmath>
#include <string>

#include <vskx/error.hpp>
#include <vskx/types.hpp>

namespace vskx {

// Polyharmonic spline of order l acting on points of dimension d:
//
//   phi(r) = r^(2l-d)          d odd
//   phi(r) = r^(2l-d) log r    d even
//
// The kernel is conditionally positive definite of order l, so an
// interpolant needs the polynomial part of total degree l-1.
class KernelSpec {
 public:
  KernelSpec(int dimension, int order) : d_(dimension), l_(order) {
    if (d_ < 1 || l_ < 1) {
      throw Error(ErrorKind::Domain, "kernel dimension and order must be positive");
    }
    if (2 * l_ <= d_) {
      throw Error(ErrorKind::Domain,
                  "polyharmonic spline requires 2l > d (got d=" + std::to_string(d_) +
                      ", l=" + std::to_string(l_) + ")");
    }
  }

  static KernelSpec cubic() { return {1, 2}; }
  static KernelSpec thin_plate() { return {2, 2}; }

  int dimension() const { return d_; }
  int order() const { return l_; }
  int exponent() const { return 2 * l_ - d_; }
  bool has_log() const { return d_ % 2 == 0; }

  // Degree of the polynomial part the kernel needs.
  int poly_degree() const { return l_ - 1; }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  int d_;
  int l_;
};

template <typename Scalar>
Scalar phs_eval(const KernelSpec& spec, Scalar r) {
  using std::log;
  if (!(r >= Scalar(0))) {
    throw Error(ErrorKind::Domain, "kernel radius must be nonnegative");
  }
  if (r == Scalar(0)) {
    return Scalar(0);
  }
  Scalar value(1);
  for (int k = 0; k < spec.exponent(); ++k) {
    value *= r;
  }
  if (spec.has_log()) {
    value *= log(r);
  }
  return value;
}

// Kernel values between every row of `eval` and every row of `centers`.
template <typename Scalar>
Matrix<Scalar> kernel_matrix(const KernelSpec& spec, const Points<Scalar>& eval,
                             const Points<Scalar>& centers) {
  if (eval.cols() != spec.dimension() || centers.cols() != spec.dimension()) {
    throw Error(ErrorKind::Shape, "point dimension does not match kernel dimension " +
                                      std::to_string(spec.dimension()));
  }
  Matrix<Scalar> a(eval.rows(), centers.rows());
  for (Index i = 0; i < eval.rows(); ++i) {
    for (Index k = 0; k < centers.rows(); ++k) {
      a(i, k) = phs_eval<Scalar>(spec, (eval.row(i) - centers.row(k)).norm());
    }
  }
  return a;
}

// Symmetric interpolation matrix A_ik = phi(|x_i - x_k|).
template <typename Scalar>
Matrix<Scalar> kernel_matrix(const KernelSpec& spec, const Points<Scalar>& points) {
  if (points.cols() != spec.dimension()) {
    throw Error(ErrorKind::Shape, "point dimension does not match kernel dimension " +
                                      std::to_string(spec.dimension()));
  }
  const Index n = points.rows();
  Matrix<Scalar> a = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = i + 1; k < n; ++k) {
      a(i, k) = phs_eval<Scalar>(spec, (points.row(i) - points.row(k)).norm());
      a(k, i) = a(i, k);
    }
  }
  return a;
}

}  // namespace vskx

#endif  // VSKX_KERNELS_HPP_
