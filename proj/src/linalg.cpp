#include "lassopeak/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lassopeak {

std::pair<DesignMatrix, ResponseVector> center_scale(
    const Eigen::MatrixXd& raw_x, const Eigen::VectorXd& raw_y) {
  const Eigen::Index n = raw_x.rows();
  const Eigen::Index p = raw_x.cols();
  if (raw_y.size() != n) {
    throw DimensionMismatch("raw_x has " + std::to_string(n) +
                            " rows but raw_y has " +
                            std::to_string(raw_y.size()) + " entries");
  }
  if (n < 2) {
    throw DimensionMismatch("need at least 2 observations, got " +
                            std::to_string(n));
  }

  DesignMatrix x;
  x.values.resize(n, p);
  x.column_means.resize(p);
  x.column_scales.resize(p);

  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = raw_x.col(j).mean();
    Eigen::VectorXd centered = raw_x.col(j).array() - mean;
    const double sd =
        std::sqrt(centered.squaredNorm() / static_cast<double>(n - 1));
    if (sd <= 1e-12 * (std::abs(mean) + 1.0)) {
      throw ZeroVarianceColumn(static_cast<int>(j));
    }
    x.column_means[j] = mean;
    x.column_scales[j] = sd;
    x.values.col(j) = centered / sd;
  }

  ResponseVector y;
  y.mean_offset = raw_y.mean();
  y.values = raw_y.array() - y.mean_offset;
  return {std::move(x), std::move(y)};
}

SvdFactors svd(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> decomp(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (decomp.info() != Eigen::Success) {
    throw ConvergenceFailure("SVD iteration did not converge");
  }

  const Eigen::VectorXd& sv = decomp.singularValues();
  const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;
  const double tol = sigma_max *
                     static_cast<double>(std::max(a.rows(), a.cols())) *
                     std::numeric_limits<double>::epsilon();

  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > tol) ++rank;

  SvdFactors factors;
  factors.left_vectors = decomp.matrixU().leftCols(rank);
  factors.singular_values = sv.head(rank);
  factors.right_vectors = decomp.matrixV().leftCols(rank);
  return factors;
}

SvdFactors svd(const DesignMatrix& x) { return svd(x.values); }

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a) {
  const SvdFactors f = svd(a);
  if (f.rank() == 0) {
    return Eigen::MatrixXd::Zero(a.cols(), a.rows());
  }
  return f.right_vectors * f.singular_values.cwiseInverse().asDiagonal() *
         f.left_vectors.transpose();
}

Coefficients ols_min_norm(const DesignMatrix& x, const ResponseVector& y) {
  if (y.values.size() != x.rows()) {
    throw DimensionMismatch("x has " + std::to_string(x.rows()) +
                            " rows but y has " +
                            std::to_string(y.values.size()) + " entries");
  }
  const SvdFactors f = svd(x.values);
  if (f.rank() == 0) {
    return Coefficients{Eigen::VectorXd::Zero(x.cols())};
  }
  const Eigen::VectorXd projected = f.left_vectors.transpose() * y.values;
  return Coefficients{f.right_vectors *
                      (projected.array() / f.singular_values.array()).matrix()};
}

double l1_norm(const Coefficients& coef) {
  return coef.beta.cwiseAbs().sum();
}

Eigen::MatrixXd sample_covariance(const DesignMatrix& x) {
  const Eigen::Index n = x.rows();
  if (n < 2) {
    throw DimensionMismatch("need at least 2 observations, got " +
                            std::to_string(n));
  }
  Eigen::MatrixXd cov =
      x.values.transpose() * x.values / static_cast<double>(n - 1);
  cov = ((cov + cov.transpose()) / 2.0).eval();
  return cov;
}

Eigen::VectorXd predict_original_scale(const DesignMatrix& trained_on,
                                       double response_offset,
                                       const Coefficients& coef,
                                       const Eigen::MatrixXd& raw_x) {
  if (raw_x.cols() != trained_on.cols()) {
    throw DimensionMismatch("raw_x has " + std::to_string(raw_x.cols()) +
                            " columns, model has " +
                            std::to_string(trained_on.cols()));
  }
  if (coef.beta.size() != trained_on.cols()) {
    throw DimensionMismatch("coefficient length " +
                            std::to_string(coef.beta.size()) +
                            " does not match " +
                            std::to_string(trained_on.cols()) + " variables");
  }
  const Eigen::MatrixXd standardized =
      (raw_x.rowwise() - trained_on.column_means.transpose()).array().rowwise() /
      trained_on.column_scales.transpose().array();
  return (standardized * coef.beta).array() + response_offset;
}

}  // namespace lassopeak
