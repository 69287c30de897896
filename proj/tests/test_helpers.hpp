#pragma once

#include <Eigen/Dense>
#include <utility>

#include "lassopeak/linalg.hpp"
#include "lassopeak/rng.hpp"

namespace test_helpers {

inline Eigen::MatrixXd random_matrix(Eigen::Index n, Eigen::Index p,
                                     std::uint64_t seed) {
  lassopeak::Rng rng(seed);
  Eigen::MatrixXd m(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) m(i, j) = rng.normal();
  }
  return m;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::uint64_t seed) {
  lassopeak::Rng rng(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

// Standardized regression data with a planted sparse signal.
inline std::pair<lassopeak::DesignMatrix, lassopeak::ResponseVector>
random_problem(Eigen::Index n, Eigen::Index p, std::uint64_t seed,
               double noise = 0.5) {
  lassopeak::Rng rng(seed);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = rng.normal();
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (Eigen::Index j = 0; j < p; j += 2) beta[j] = rng.uniform(-2.0, 2.0);
  Eigen::VectorXd y = x * beta;
  for (Eigen::Index i = 0; i < n; ++i) y[i] += noise * rng.normal();
  return lassopeak::center_scale(x, y);
}

// DesignMatrix wrapper around values that are already standardized (or
// deliberately not; unit tests sometimes bypass centering).
inline lassopeak::DesignMatrix as_design(const Eigen::MatrixXd& values) {
  return {values, Eigen::VectorXd::Zero(values.cols()),
          Eigen::VectorXd::Ones(values.cols())};
}

inline lassopeak::ResponseVector as_response(const Eigen::VectorXd& values) {
  return {values, 0.0};
}

// Columns orthogonal, mean zero, squared norm n-1: X'X = (n-1) I and the
// standardization invariants hold exactly.
inline lassopeak::DesignMatrix orthonormal_design(Eigen::Index n,
                                                  Eigen::Index p,
                                                  std::uint64_t seed) {
  Eigen::MatrixXd a = random_matrix(n, p, seed);
  const Eigen::RowVectorXd mu = a.colwise().mean();
  a.rowwise() -= mu;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  q *= std::sqrt(static_cast<double>(n - 1));
  return as_design(q);
}

}  // namespace test_helpers
