#include "lassopeak/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lassopeak/rng.hpp"

namespace lassopeak {

const char* selector_name(Selector s) {
  return s == Selector::standard ? "standard" : "normalized";
}

double CvCurve::mean_fold_ols_l1() const {
  if (fold_ols_l1.empty()) return 0.0;
  return std::accumulate(fold_ols_l1.begin(), fold_ols_l1.end(), 0.0) /
         static_cast<double>(fold_ols_l1.size());
}

FoldAssignment kfold_split(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n) throw InvalidFoldCount(k, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.partial_shuffle(order, order.size());

  FoldAssignment folds;
  folds.k = k;
  folds.fold_of.assign(n, 0);
  for (int i = 0; i < n; ++i) folds.fold_of[order[i]] = i % k;
  return folds;
}

std::vector<double> uniform_fraction_grid(int points) {
  if (points < 2) throw ValidationError("points", "grid needs >= 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

namespace {

void check_grid(const std::vector<double>& s_grid) {
  if (s_grid.size() < 2 || s_grid.front() != 0.0 || s_grid.back() != 1.0) {
    throw ValidationError("s_grid", "grid must run from 0 to 1");
  }
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > s_grid[i - 1])) {
      throw ValidationError("s_grid", "grid must be strictly increasing");
    }
  }
}

}  // namespace

CvCurve cv_error_curve(const DesignMatrix& x, const ResponseVector& y,
                       const FoldAssignment& folds,
                       const std::vector<double>& s_grid,
                       DenominatorMode mode) {
  check_grid(s_grid);
  const auto n = static_cast<int>(x.rows());
  const Eigen::Index p = x.cols();
  if (static_cast<int>(folds.fold_of.size()) != n) {
    throw DimensionMismatch("fold assignment covers " +
                            std::to_string(folds.fold_of.size()) +
                            " observations, x has " + std::to_string(n));
  }

  CvCurve curve;
  curve.s_grid = s_grid;
  curve.mean_error.assign(s_grid.size(), 0.0);
  curve.fold_ols_l1.assign(folds.k, 0.0);

  for (int f = 0; f < folds.k; ++f) {
    std::vector<int> train_rows;
    std::vector<int> val_rows;
    for (int i = 0; i < n; ++i) {
      (folds.fold_of[i] == f ? val_rows : train_rows).push_back(i);
    }
    if (train_rows.size() < 2) {
      throw FoldTooSmall("fold " + std::to_string(f) + " leaves only " +
                         std::to_string(train_rows.size()) +
                         " training observations");
    }

    Eigen::MatrixXd train_x(train_rows.size(), p);
    Eigen::VectorXd train_y(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      train_x.row(i) = x.values.row(train_rows[i]);
      train_y[i] = y.values[train_rows[i]];
    }
    Eigen::MatrixXd val_x(val_rows.size(), p);
    Eigen::VectorXd val_y(val_rows.size());
    for (std::size_t i = 0; i < val_rows.size(); ++i) {
      val_x.row(i) = x.values.row(val_rows[i]);
      val_y[i] = y.values[val_rows[i]];
    }

    // The split is standardized on its own; held-out rows are mapped with
    // the training statistics so no information leaks.
    auto [fold_x, fold_y] = center_scale(train_x, train_y);
    const LassoPath path = lars_path(fold_x, fold_y);
    const double denom =
        mode == DenominatorMode::path_endpoint
            ? path.terminal_l1
            : l1_norm(ols_min_norm(fold_x, fold_y));
    curve.fold_ols_l1[f] = denom;

    for (std::size_t g = 0; g < s_grid.size(); ++g) {
      const Coefficients coef = coef_at_l1(path, s_grid[g] * denom);
      const Eigen::VectorXd pred =
          predict_original_scale(fold_x, fold_y.mean_offset, coef, val_x);
      curve.mean_error[g] +=
          (val_y - pred).squaredNorm() / static_cast<double>(val_rows.size());
    }
  }

  for (double& e : curve.mean_error) e /= static_cast<double>(folds.k);
  return curve;
}

CvSelection select_standard(const CvCurve& curve) {
  if (curve.s_grid.empty() || curve.mean_error.size() != curve.s_grid.size()) {
    throw EmptyInput("cv curve is empty or inconsistent");
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < curve.mean_error.size(); ++g) {
    if (curve.mean_error[g] < curve.mean_error[best]) best = g;
  }
  CvSelection sel;
  sel.s_cv = curve.s_grid[best];
  sel.s_tilde = sel.s_cv;
  sel.full_ols_l1 = std::numeric_limits<double>::quiet_NaN();
  sel.selector = Selector::standard;
  return sel;
}

CvSelection select_normalized(const CvCurve& curve, double full_ols_l1) {
  if (!(full_ols_l1 > 0.0)) throw NonpositiveNorm(full_ols_l1);
  CvSelection sel = select_standard(curve);
  sel.selector = Selector::normalized;
  sel.full_ols_l1 = full_ols_l1;
  sel.s_tilde =
      std::min(1.0, curve.mean_fold_ols_l1() / full_ols_l1 * sel.s_cv);
  return sel;
}

Coefficients fit_selected(const DesignMatrix& x, const ResponseVector& y,
                          const CvSelection& selection, DenominatorMode mode) {
  const LassoPath path = lars_path(x, y);
  const double s = selection.selector == Selector::normalized
                       ? selection.s_tilde
                       : selection.s_cv;
  if (!(s >= 0.0 && s <= 1.0)) throw FractionOutOfRange(s);
  const double denom = mode == DenominatorMode::path_endpoint
                           ? path.terminal_l1
                           : l1_norm(ols_min_norm(x, y));
  return coef_at_l1(path, s * denom);
}

}  // namespace lassopeak
