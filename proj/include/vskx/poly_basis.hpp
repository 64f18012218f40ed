#ifndef VSKX_POLY_BASIS_HPP_
#define VSKX_POLY_BASIS_HPP_

#include <string>
#include <vector>

#include <vskx/error.hpp>
#include <vskx/types.hpp>

namespace vskx {

// Monomial basis of the polynomials of total degree <= degree in d variables,
// in graded lexicographic order: 1, x1, ..., xd, x1^2, x1 x2, ...
class PolyBasis {
 public:
  using MultiIndex = std::vector<int>;

  PolyBasis(int dimension, int degree) : d_(dimension), degree_(degree) {
    if (d_ < 1) {
      throw Error(ErrorKind::Domain, "polynomial basis dimension must be positive");
    }
    if (degree_ < 0) {
      throw Error(ErrorKind::Domain, "polynomial basis degree must be nonnegative");
    }
    MultiIndex current(d_, 0);
    for (int total = 0; total <= degree_; ++total) {
      append_graded(current, 0, total);
    }
  }

  int dimension() const { return d_; }
  int degree() const { return degree_; }
  Index size() const { return static_cast<Index>(terms_.size()); }
  const std::vector<MultiIndex>& terms() const { return terms_; }

  template <typename Scalar, typename Derived>
  Scalar term(Index j, const Eigen::MatrixBase<Derived>& x) const {
    Scalar value(1);
    const auto& alpha = terms_[static_cast<std::size_t>(j)];
    for (int v = 0; v < d_; ++v) {
      for (int p = 0; p < alpha[static_cast<std::size_t>(v)]; ++p) {
        value *= x(v);
      }
    }
    return value;
  }

 private:
  // Exponents of variable `var` descend so that x1 precedes x2 at equal degree.
  void append_graded(MultiIndex& current, int var, int remaining) {
    if (var == d_ - 1) {
      current[static_cast<std::size_t>(var)] = remaining;
      terms_.push_back(current);
      return;
    }
    for (int p = remaining; p >= 0; --p) {
      current[static_cast<std::size_t>(var)] = p;
      append_graded(current, var + 1, remaining - p);
    }
  }

  int d_;
  int degree_;
  std::vector<MultiIndex> terms_;
};

// P_ij = p_j(x_i).
template <typename Scalar>
Matrix<Scalar> poly_matrix(const PolyBasis& basis, const Points<Scalar>& points) {
  if (points.cols() != basis.dimension()) {
    throw Error(ErrorKind::Shape, "point dimension does not match polynomial basis dimension " +
                                      std::to_string(basis.dimension()));
  }
  Matrix<Scalar> p(points.rows(), basis.size());
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < basis.size(); ++j) {
      p(i, j) = basis.term<Scalar>(j, points.row(i));
    }
  }
  return p;
}

}  // namespace vskx

#endif  // VSKX_POLY_BASIS_HPP_
