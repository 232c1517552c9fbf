#pragma once

#include <Eigen/Dense>
#include <functional>

#include "rpop/rng.hpp"

namespace rpop::testing {

inline Eigen::MatrixXd random_symmetric(int n, Rng& rng, double scale = 1.0) {
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = scale * rng.normal();
  }
  return 0.5 * (M + M.transpose());
}

inline Eigen::VectorXd random_vector(int n, Rng& rng, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

// Central-difference gradient of a scalar function of a symmetric matrix,
// probing the symmetric coordinate directions.
inline Eigen::MatrixXd fd_gradient(
    const std::function<double(const Eigen::MatrixXd&)>& f,
    const Eigen::MatrixXd& X, double h = 1e-5) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
      E(i, j) = 1.0;
      E(j, i) = 1.0;  // diagonal direction has a single unit entry
      if (i == j) E(i, i) = 1.0;
      const double fp = f(X + h * E);
      const double fm = f(X - h * E);
      const double d = (fp - fm) / (2.0 * h);
      // d = <grad, E> = (i==j ? grad_ii : 2 grad_ij).
      if (i == j) {
        G(i, i) = d;
      } else {
        G(i, j) = G(j, i) = 0.5 * d;
      }
    }
  }
  return G;
}

}  // namespace rpop::testing
