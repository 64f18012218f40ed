#ifndef VSKX_TYPES_HPP_
#define VSKX_TYPES_HPP_

#include <Eigen/Core>

namespace vskx {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// One point per row.
template <typename Scalar>
using Points = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VecX = Vector<double>;
using MatX = Matrix<double>;
using PointsX = Points<double>;

// Lays out a 1-D sample as an n×1 point set.
template <typename Scalar>
Points<Scalar> as_points(const Vector<Scalar>& x) {
  return Points<Scalar>(x);
}

}  // namespace vskx

#endif  // VSKX_TYPES_HPP_
