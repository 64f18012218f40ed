// Independent reference implementations used by the unit and acceptance
// tests. None of them call into the library's solvers.
#ifndef VSKX_TESTS_ORACLES_HPP_
#define VSKX_TESTS_ORACLES_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Gaussian elimination with full pivoting; nullopt when a pivot is exactly 0.
inline std::optional<Eigen::VectorXd> gauss_full_pivot(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> col(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = i;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = k;
    Eigen::Index pc = k;
    double best = 0.0;
    for (Eigen::Index i = k; i < n; ++i) {
      for (Eigen::Index j = k; j < n; ++j) {
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (best == 0.0) return std::nullopt;
    a.row(k).swap(a.row(pr));
    std::swap(b(k), b(pr));
    a.col(k).swap(a.col(pc));
    std::swap(col[static_cast<std::size_t>(k)], col[static_cast<std::size_t>(pc)]);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b(i) -= factor * b(k);
    }
  }
  Eigen::VectorXd y(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double s = b(i);
    for (Eigen::Index j = i + 1; j < n; ++j) s -= a(i, j) * y(j);
    y(i) = s / a(i, i);
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(col[static_cast<std::size_t>(i)]) = y(i);
  return x;
}

// Cubic-spline interpolant value in extended precision:
// sum_k alpha_k |x - x_k|^3 + beta_0 + beta_1 x.
inline long double cubic_sum(const Eigen::VectorXd& nodes, const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& beta, double x) {
  long double s = 0.0L;
  for (Eigen::Index k = 0; k < nodes.size(); ++k) {
    const long double r = std::abs(static_cast<long double>(x) - nodes(k));
    s += static_cast<long double>(alpha(k)) * r * r * r;
  }
  return s + static_cast<long double>(beta(0)) + static_cast<long double>(beta(1)) * x;
}

inline double svr_objective(const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& beta, double eps) {
  return 0.5 * beta.dot(k * beta) + eps * beta.cwiseAbs().sum() - f.dot(beta);
}

struct QpSolution {
  Eigen::VectorXd beta;
  double objective = std::numeric_limits<double>::infinity();
};

// Minimizes 1/2 b^T K b + eps sum|b_i| - f^T b over sum b_i = 0, |b_i| <= zeta
// by enumerating, for every variable, the face it lies on:
// -zeta, free negative, 0, free positive, +zeta. On each face the problem is
// an equality-constrained quadratic whose stationary point solves a linear
// KKT system; feasible stationary points are compared by objective.
inline QpSolution svr_brute_force(const Eigen::MatrixXd& k, const Eigen::VectorXd& f, double eps,
                                  double zeta) {
  const int n = static_cast<int>(f.size());
  int combos = 1;
  for (int i = 0; i < n; ++i) combos *= 5;
  QpSolution best;
  std::vector<int> state(static_cast<std::size_t>(n));
  for (int code = 0; code < combos; ++code) {
    int c = code;
    std::vector<int> free_idx;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sign = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      state[static_cast<std::size_t>(i)] = c % 5;
      c /= 5;
      switch (state[static_cast<std::size_t>(i)]) {
        case 0: beta(i) = -zeta; break;
        case 1: sign(i) = -1.0; free_idx.push_back(i); break;
        case 2: break;
        case 3: sign(i) = 1.0; free_idx.push_back(i); break;
        case 4: beta(i) = zeta; break;
      }
    }
    const int nf = static_cast<int>(free_idx.size());
    if (nf == 0) {
      if (std::abs(beta.sum()) > 1e-12) continue;
    } else {
      // [K_FF 1; 1^T 0] (b_F; nu) = (f_F - eps s_F - K_F,fixed b_fixed; -sum b_fixed)
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
      Eigen::VectorXd rhs(nf + 1);
      for (int a = 0; a < nf; ++a) {
        const int i = free_idx[static_cast<std::size_t>(a)];
        for (int b = 0; b < nf; ++b) m(a, b) = k(i, free_idx[static_cast<std::size_t>(b)]);
        m(a, nf) = 1.0;
        m(nf, a) = 1.0;
        rhs(a) = f(i) - eps * sign(i) - k.row(i).dot(beta);
      }
      rhs(nf) = -beta.sum();
      const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      const Eigen::VectorXd sol = lu.solve(rhs);
      if (!sol.allFinite() || (m * sol - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) continue;
      bool feasible = true;
      for (int a = 0; a < nf; ++a) {
        const int i = free_idx[static_cast<std::size_t>(a)];
        const double v = sol(a);
        if (sign(i) * v < -1e-12 || std::abs(v) > zeta + 1e-12) feasible = false;
        beta(i) = v;
      }
      if (!feasible) continue;
    }
    const double obj = svr_objective(k, f, beta, eps);
    if (obj < best.objective) {
      best.objective = obj;
      best.beta = beta;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // VSKX_TESTS_ORACLES_HPP_
