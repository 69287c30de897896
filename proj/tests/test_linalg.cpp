#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "lassopeak/linalg.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace lassopeak;
using test_helpers::as_design;
using test_helpers::as_response;
using test_helpers::random_matrix;
using test_helpers::random_vector;

namespace {

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// The four pseudo-inverse conditions, each relative to its own scale.
double worst_penrose_residual(const Eigen::MatrixXd& a,
                              const Eigen::MatrixXd& pinv) {
  const double scale_a = std::max(max_abs(a), 1e-300);
  const double scale_p = std::max(max_abs(pinv), 1e-300);
  const Eigen::MatrixXd ap = a * pinv;
  const Eigen::MatrixXd pa = pinv * a;
  double worst = max_abs(ap * a - a) / scale_a;
  worst = std::max(worst, max_abs(pa * pinv - pinv) / scale_p);
  worst = std::max(worst, max_abs(ap.transpose() - ap) /
                              std::max(max_abs(ap), 1e-300));
  worst = std::max(worst, max_abs(pa.transpose() - pa) /
                              std::max(max_abs(pa), 1e-300));
  return worst;
}

}  // namespace

TEST_CASE("center_scale matches hand-computed values") {
  Eigen::MatrixXd raw_x(2, 1);
  raw_x << 1, 3;
  Eigen::VectorXd raw_y(2);
  raw_y << 0, 2;

  const auto [x, y] = center_scale(raw_x, raw_y);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(x.values(0, 0) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
  CHECK(x.values(1, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(x.column_means[0] == doctest::Approx(2.0));
  CHECK(x.column_scales[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(y.values[0] == doctest::Approx(-1.0));
  CHECK(y.values[1] == doctest::Approx(1.0));
  CHECK(y.mean_offset == doctest::Approx(1.0));
}

TEST_CASE("center_scale establishes the standardization invariants") {
  const Eigen::MatrixXd raw_x = random_matrix(23, 7, 11);
  const Eigen::VectorXd raw_y = random_vector(23, 12);
  const auto [x, y] = center_scale(raw_x, raw_y);

  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    CHECK(std::abs(x.values.col(j).mean()) <= 1e-10);
    const double sd = std::sqrt(x.values.col(j).squaredNorm() / 22.0);
    CHECK(sd == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(std::abs(y.values.mean()) <= 1e-10);
}

TEST_CASE("center_scale is idempotent") {
  const Eigen::MatrixXd raw_x = random_matrix(15, 4, 21);
  const Eigen::VectorXd raw_y = random_vector(15, 22);
  const auto [x1, y1] = center_scale(raw_x, raw_y);
  const auto [x2, y2] = center_scale(x1.values, y1.values);
  CHECK(max_abs(x2.values - x1.values) <= 1e-12);
  CHECK((y2.values - y1.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("center_scale rejects degenerate input") {
  Eigen::MatrixXd raw_x = random_matrix(6, 3, 31);
  raw_x.col(1).setConstant(5.0);
  const Eigen::VectorXd raw_y = random_vector(6, 32);
  CHECK_THROWS_AS(center_scale(raw_x, raw_y), ZeroVarianceColumn);

  const Eigen::MatrixXd good = random_matrix(6, 3, 33);
  CHECK_THROWS_AS(center_scale(good, random_vector(5, 34)), DimensionMismatch);
  CHECK_THROWS_AS(center_scale(random_matrix(1, 2, 35), random_vector(1, 36)),
                  DimensionMismatch);
}

TEST_CASE("svd handles orthonormal and diagonal inputs") {
  Eigen::MatrixXd eye(2, 2);
  eye << 1, 0, 0, 1;
  const SvdFactors f1 = svd(eye);
  REQUIRE(f1.rank() == 2);
  CHECK(f1.singular_values[0] == doctest::Approx(1.0));
  CHECK(f1.singular_values[1] == doctest::Approx(1.0));

  Eigen::MatrixXd diag(2, 2);
  diag << 3, 0, 0, 0;
  const SvdFactors f2 = svd(as_design(diag));
  REQUIRE(f2.rank() == 1);
  CHECK(f2.singular_values[0] == doctest::Approx(3.0));
}

TEST_CASE("svd reconstructs and stays orthonormal") {
  const Eigen::MatrixXd a = random_matrix(5, 3, 41);
  const SvdFactors f = svd(a);
  const Eigen::MatrixXd rebuilt =
      f.left_vectors * f.singular_values.asDiagonal() *
      f.right_vectors.transpose();
  CHECK(max_abs(rebuilt - a) <= 1e-10);
  CHECK(max_abs(f.left_vectors.transpose() * f.left_vectors -
                Eigen::MatrixXd::Identity(f.rank(), f.rank())) <= 1e-10);
  CHECK(max_abs(f.right_vectors.transpose() * f.right_vectors -
                Eigen::MatrixXd::Identity(f.rank(), f.rank())) <= 1e-10);
  for (Eigen::Index i = 1; i < f.rank(); ++i) {
    CHECK(f.singular_values[i] <= f.singular_values[i - 1]);
  }
}

TEST_CASE("svd rank equals min(n-1, p) on centered continuous data") {
  const auto check_rank = [](Eigen::Index n, Eigen::Index p,
                             std::uint64_t seed) {
    const auto [x, y] = center_scale(random_matrix(n, p, seed),
                                     random_vector(n, seed + 1));
    CHECK(svd(x).rank() == std::min<Eigen::Index>(n - 1, p));
  };
  check_rank(5, 3, 51);
  check_rank(4, 4, 52);
  check_rank(3, 6, 53);
  check_rank(12, 7, 54);
  check_rank(7, 12, 55);
}

TEST_CASE("pseudo_inverse on simple matrices") {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
  CHECK(max_abs(pseudo_inverse(eye) - eye) <= 1e-12);

  Eigen::MatrixXd diag(2, 2);
  diag << 2, 0, 0, 0;
  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, 0, 0, 0;
  CHECK(max_abs(pseudo_inverse(diag) - expected) <= 1e-12);
}

TEST_CASE("pseudo_inverse satisfies the Penrose conditions") {
  const Eigen::MatrixXd a = random_matrix(4, 6, 61);
  CHECK(worst_penrose_residual(a, pseudo_inverse(a)) <= 1e-10);

  // 100 shapes spanning n < p, n = p, n > p, some rank-deficient.
  lassopeak::Rng shape_rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + shape_rng.below(14));
    const auto p = static_cast<Eigen::Index>(2 + shape_rng.below(14));
    Eigen::MatrixXd m = random_matrix(n, p, 100 + trial);
    if (trial % 5 == 0 && p >= 2) m.col(p - 1) = m.col(0);  // force deficiency
    CHECK(worst_penrose_residual(m, pseudo_inverse(m)) <= 1e-10);
  }
}

TEST_CASE("ols_min_norm solves the single-column case") {
  Eigen::MatrixXd values(2, 1);
  values << 1, -1;
  Eigen::VectorXd y(2);
  y << 2, -2;
  const Coefficients beta = ols_min_norm(as_design(values), as_response(y));
  REQUIRE(beta.beta.size() == 1);
  CHECK(beta.beta[0] == doctest::Approx(2.0).epsilon(1e-12));

  const Coefficients zero =
      ols_min_norm(as_design(values), as_response(Eigen::VectorXd::Zero(2)));
  CHECK(zero.beta.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ols_min_norm matches an independent dense solve when full rank") {
  for (std::uint64_t seed : {71, 72, 73}) {
    const Eigen::MatrixXd raw = random_matrix(12, 5, seed);
    const Eigen::VectorXd ry = random_vector(12, seed + 10);
    const auto [x, y] = center_scale(raw, ry);
    const Coefficients beta = ols_min_norm(x, y);
    const Eigen::VectorXd reference =
        oracles::qr_least_squares(x.values, y.values);
    CHECK((beta.beta - reference).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("ols_min_norm returns the minimum-norm solution when n < p") {
  const auto [x, y] =
      center_scale(random_matrix(4, 6, 81), random_vector(4, 82));
  const Coefficients beta = ols_min_norm(x, y);

  // Least-squares optimality: the residual is orthogonal to every column.
  const Eigen::VectorXd residual = y.values - x.values * beta.beta;
  CHECK((x.values.transpose() * residual).cwiseAbs().maxCoeff() <= 1e-10);
  // Minimum norm: no component in the null space of x.
  CHECK(oracles::row_space_distance(x.values, beta.beta) <= 1e-18);

  // Same answer as the normal-equation pseudo-inverse route.
  const Eigen::VectorXd via_normal_equations =
      pseudo_inverse(x.values.transpose() * x.values) * x.values.transpose() *
      y.values;
  CHECK((beta.beta - via_normal_equations).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("l1_norm") {
  CHECK(l1_norm(Coefficients{Eigen::VectorXd::Zero(3)}) == 0.0);

  Eigen::VectorXd v(3);
  v << 1, -2, 3;
  CHECK(l1_norm(Coefficients{v}) == doctest::Approx(6.0));

  const Eigen::VectorXd r = random_vector(17, 91);
  double expected = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) expected += std::abs(r[i]);
  CHECK(l1_norm(Coefficients{r}) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("sample_covariance") {
  // Orthogonal +/-1 columns rescaled to squared norm n-1 give the identity.
  Eigen::MatrixXd ortho(4, 3);
  ortho << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
  ortho *= std::sqrt(3.0) / 2.0;
  const Eigen::MatrixXd cov = sample_covariance(as_design(ortho));
  CHECK(max_abs(cov - Eigen::MatrixXd::Identity(3, 3)) <= 1e-12);

  // Two observations bound the rank at one.
  const auto [x2, y2] =
      center_scale(random_matrix(2, 4, 101), random_vector(2, 102));
  const Eigen::MatrixXd cov2 = sample_covariance(x2);
  CHECK(svd(cov2).rank() == 1);

  // Elementwise against the double loop.
  const auto [x3, y3] =
      center_scale(random_matrix(8, 3, 103), random_vector(8, 104));
  const Eigen::MatrixXd cov3 = sample_covariance(x3);
  CHECK(max_abs(cov3 - cov3.transpose()) == 0.0);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(cov3(j, j) == doctest::Approx(1.0).epsilon(1e-10));
    for (Eigen::Index k = 0; k < 3; ++k) {
      double direct = 0.0;
      for (Eigen::Index i = 0; i < 8; ++i) {
        direct += x3.values(i, j) * x3.values(i, k);
      }
      direct /= 7.0;
      CHECK(cov3(j, k) == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov3);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("predict_original_scale matches the unstandardized regression") {
  const Eigen::MatrixXd raw_train = random_matrix(20, 4, 111);
  const Eigen::VectorXd raw_train_y = random_vector(20, 112);
  const auto [x, y] = center_scale(raw_train, raw_train_y);

  Eigen::VectorXd beta(4);
  beta << 0.7, -1.2, 0.0, 2.5;
  const Eigen::MatrixXd raw_test = random_matrix(9, 4, 113);

  const Eigen::VectorXd via_stats =
      predict_original_scale(x, y.mean_offset, Coefficients{beta}, raw_test);

  // Fold the standardization into original-scale slope and intercept.
  Eigen::VectorXd slope = beta.array() / x.column_scales.array();
  const double intercept = y.mean_offset - x.column_means.dot(slope);
  const Eigen::VectorXd direct = (raw_test * slope).array() + intercept;

  CHECK((via_stats - direct).cwiseAbs().maxCoeff() <= 1e-10);
}
