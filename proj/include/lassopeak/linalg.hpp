#pragma once

#include <Eigen/Dense>
#include <utility>

#include "lassopeak/errors.hpp"

namespace lassopeak {

// Observations after per-column centering and scaling to unit sample
// standard deviation (n-1 denominator). The original means and scales are
// kept so fitted coefficients can be applied to raw data.
struct DesignMatrix {
  Eigen::MatrixXd values;         // n x p, centered and scaled
  Eigen::VectorXd column_means;   // p
  Eigen::VectorXd column_scales;  // p, original standard deviations

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// Centered responses; mean_offset restores the original scale.
struct ResponseVector {
  Eigen::VectorXd values;
  double mean_offset = 0.0;
};

// Thin SVD truncated at the numerical-rank tolerance
// tau = sigma_max * max(n, p) * machine epsilon.
struct SvdFactors {
  Eigen::MatrixXd left_vectors;     // n x r, column-orthonormal
  Eigen::VectorXd singular_values;  // r, non-increasing, all > tau
  Eigen::MatrixXd right_vectors;    // p x r, column-orthonormal

  Eigen::Index rank() const { return singular_values.size(); }
};

struct Coefficients {
  Eigen::VectorXd beta;
};

// Centers every column of raw_x and scales it to unit sample standard
// deviation; centers raw_y. Throws ZeroVarianceColumn for constant columns
// and DimensionMismatch if the row counts differ.
std::pair<DesignMatrix, ResponseVector> center_scale(
    const Eigen::MatrixXd& raw_x, const Eigen::VectorXd& raw_y);

SvdFactors svd(const Eigen::MatrixXd& a);
SvdFactors svd(const DesignMatrix& x);

// Moore-Penrose pseudo-inverse. Singular values at or below the rank
// tolerance are treated as exactly zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a);

// Least-squares coefficients via the SVD of x; for rank-deficient designs
// this is the minimum-Euclidean-norm solution, identical to
// pinv(x' x) * x' * y.
Coefficients ols_min_norm(const DesignMatrix& x, const ResponseVector& y);

double l1_norm(const Coefficients& coef);

// (1 / (n-1)) X' X; exactly symmetric.
Eigen::MatrixXd sample_covariance(const DesignMatrix& x);

// Applies standardized-scale coefficients to raw observations and maps the
// predictions back onto the original response scale.
Eigen::VectorXd predict_original_scale(const DesignMatrix& trained_on,
                                       double response_offset,
                                       const Coefficients& coef,
                                       const Eigen::MatrixXd& raw_x);

}  // namespace lassopeak
