// Acceptance suite: every release-gating property, one PASS/FAIL line each.
// Criteria 3-9 share one full-scale experiment run (p = 90, n = 10..200,
// 10 repetitions, 10-fold CV, 101-point fraction grid).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lassopeak/csv.hpp"
#include "lassopeak/lars.hpp"
#include "lassopeak/rng.hpp"
#include "lassopeak/simulation.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace lassopeak;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion-%d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// --- criterion 1: solver vs. proximal-gradient oracle ----------------------

void criterion_solver_oracle() {
  // 20 instances spanning n < p, n = p, n > p, 11 fractions each.
  struct Shape {
    Eigen::Index n, p;
  };
  const std::vector<Shape> shapes = {
      {12, 5}, {10, 7}, {12, 9}, {11, 4}, {9, 6},  {12, 12}, {8, 8},
      {10, 10}, {7, 7},  {9, 9},  {5, 9}, {6, 12}, {7, 10},  {4, 8},
      {8, 11},  {5, 12}, {6, 9},  {4, 11}, {10, 12}, {3, 7}};

  double worst_coef_gap = 0.0;
  int compared = 0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto [x, y] =
        test_helpers::random_problem(shapes[i].n, shapes[i].p, 9000 + i);
    const LassoPath path = lars_path(x, y);

    for (int t = 0; t <= 10; ++t) {
      const double s = static_cast<double>(t) / 10.0;
      const Coefficients ours = coef_at_fraction(path, s);
      const double lambda = lambda_at_fraction(path, s);

      if (lambda > 0.0 || shapes[i].n > shapes[i].p) {
        const Eigen::VectorXd reference =
            oracles::prox_lasso(x.values, y.values, lambda, 1e-10);
        worst_coef_gap = std::max(
            worst_coef_gap, (ours.beta - reference).cwiseAbs().maxCoeff());
        ++compared;
      } else {
        // lambda = 0 with n <= p: the least-squares minimizer set is an
        // affine subspace, so coefficient-wise comparison is ill-posed.
        // Check membership in the optimal set instead: stationarity at
        // lambda = 0 and an objective no worse than the oracle's.
        const Eigen::VectorXd reference =
            oracles::prox_lasso(x.values, y.values, 0.0, 1e-10);
        const double ours_obj =
            (y.values - x.values * ours.beta).squaredNorm();
        const double ref_obj = (y.values - x.values * reference).squaredNorm();
        const bool stationary = kkt_residual(x, y, ours, 0.0) <= 1e-8;
        const bool same_fit = ours_obj <= ref_obj + 1e-8;
        const bool no_larger_l1 =
            l1_norm(ours) <= reference.cwiseAbs().sum() + 1e-6;
        if (!(stationary && same_fit && no_larger_l1)) {
          report(1, false,
                 "optimal-set membership failed at s=1 for n=" +
                     std::to_string(shapes[i].n) +
                     ", p=" + std::to_string(shapes[i].p));
          return;
        }
      }
    }
  }
  report(1, worst_coef_gap <= 1e-6,
         "oracle equivalence on 20 instances, max coefficient gap " +
             fmt(worst_coef_gap) + " (tolerance 1e-6, " +
             std::to_string(compared) + " comparisons)");
}

// --- criterion 2: Penrose conditions ---------------------------------------

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void criterion_penrose() {
  Rng shape_rng(777);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    switch (trial % 3) {
      case 0:  // n < p
        n = 2 + static_cast<Eigen::Index>(shape_rng.below(12));
        p = n + 1 + static_cast<Eigen::Index>(shape_rng.below(12));
        break;
      case 1:  // n = p
        n = p = 2 + static_cast<Eigen::Index>(shape_rng.below(18));
        break;
      default:  // n > p
        p = 2 + static_cast<Eigen::Index>(shape_rng.below(12));
        n = p + 1 + static_cast<Eigen::Index>(shape_rng.below(12));
        break;
    }
    Eigen::MatrixXd a = test_helpers::random_matrix(n, p, 5000 + trial);
    if (trial % 7 == 0 && p >= 2) a.col(p - 1) = 2.0 * a.col(0);

    const Eigen::MatrixXd pinv = pseudo_inverse(a);
    const Eigen::MatrixXd ap = a * pinv;
    const Eigen::MatrixXd pa = pinv * a;
    double err = max_abs(ap * a - a) / std::max(max_abs(a), 1e-300);
    err = std::max(err, max_abs(pa * pinv - pinv) /
                            std::max(max_abs(pinv), 1e-300));
    err = std::max(err, max_abs(ap.transpose() - ap) /
                            std::max(max_abs(ap), 1e-300));
    err = std::max(err, max_abs(pa.transpose() - pa) /
                            std::max(max_abs(pa), 1e-300));
    worst = std::max(worst, err);
  }
  report(2, worst <= 1e-10,
         "Penrose conditions on 100 matrices, worst relative residual " +
             fmt(worst) + " (tolerance 1e-10)");
}

// --- criteria 3-9: the full-scale experiment ---------------------------------

struct CurvePoint {
  double mean_test_mse = 0.0;
  double mean_s_cv = 0.0;
  double mean_pinv_l1 = 0.0;
};

std::map<int, CurvePoint> selector_curve(
    const std::vector<ExperimentRecord>& records, Selector which) {
  std::map<int, int> counts;
  std::map<int, CurvePoint> curve;
  for (const auto& rec : records) {
    if (rec.selector != which) continue;
    auto& point = curve[rec.n];
    point.mean_test_mse += rec.test_mse;
    point.mean_s_cv += rec.s_cv;
    point.mean_pinv_l1 += rec.pinv_ols_l1;
    ++counts[rec.n];
  }
  for (auto& [n, point] : curve) {
    point.mean_test_mse /= counts[n];
    point.mean_s_cv /= counts[n];
    point.mean_pinv_l1 /= counts[n];
  }
  return curve;
}

}  // namespace

int main() {
  criterion_solver_oracle();
  criterion_penrose();

  const SimConfig config;  // full protocol defaults
  const auto started = std::chrono::steady_clock::now();
  const std::vector<ExperimentRecord> records = run_experiment(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  const auto standard = selector_curve(records, Selector::standard);
  const auto normalized = selector_curve(records, Selector::normalized);

  // 3: l1 norm of pseudo-inverse least squares peaks at n = p.
  {
    const double at90 = standard.at(90).mean_pinv_l1;
    const double at50 = standard.at(50).mean_pinv_l1;
    const double at150 = standard.at(150).mean_pinv_l1;
    const bool pass = at90 > 3.0 * at50 && at90 > 3.0 * at150;
    report(3, pass,
           "pinv OLS l1 peak: mean at n=90 is " + fmt(at90) + " vs " +
               fmt(at50) + " at n=50 and " + fmt(at150) +
               " at n=150 (needs > 3x both)");
  }

  // 4: test-error peak at n = p for the standard selector.
  {
    const double at90 = standard.at(90).mean_test_mse;
    const double at70 = standard.at(70).mean_test_mse;
    const double at120 = standard.at(120).mean_test_mse;
    const bool pass = at90 > at70 && at90 > at120;
    report(4, pass,
           "standard-selector MSE peak at n=90: " + fmt(at90) + " vs " +
               fmt(at70) + " at n=70 (ratio " + fmt(at90 / at70) + ") and " +
               fmt(at120) + " at n=120 (ratio " + fmt(at90 / at120) + ")");
  }

  // 5: selected fraction dips where the fold training size hits p.
  {
    const double at100 = standard.at(100).mean_s_cv;
    const double at80 = standard.at(80).mean_s_cv;
    const double at130 = standard.at(130).mean_s_cv;
    const bool pass = at100 < at80 && at100 < at130;
    report(5, pass,
           "selected fraction dip at n=100 (fold training size = p): " +
               fmt(at100) + " vs " + fmt(at80) + " at n=80 and " + fmt(at130) +
               " at n=130");
  }

  // 6: the normalized selector removes the peak.
  {
    const double norm90 = normalized.at(90).mean_test_mse;
    const double std90 = standard.at(90).mean_test_mse;
    const double norm120 = normalized.at(120).mean_test_mse;
    const bool pass = norm90 < std90 && norm90 <= 1.5 * norm120;
    report(6, pass,
           "normalized selector at n=90: MSE " + fmt(norm90) + " vs standard " +
               fmt(std90) + "; vs own n=120 " + fmt(norm120) + " (ratio " +
               fmt(norm90 / norm120) + ", needs <= 1.5)");
  }

  // 7: the normalization formula holds in every record.
  {
    double worst = 0.0;
    int audited = 0;
    for (const auto& rec : records) {
      if (rec.selector != Selector::normalized) continue;
      const double expected = std::min(
          1.0, rec.mean_fold_ols_l1 / rec.full_ols_l1 * rec.s_cv);
      worst = std::max(worst, std::abs(rec.s_applied - expected));
      ++audited;
    }
    report(7, worst <= 1e-12 && audited * 2 == static_cast<int>(records.size()),
           "normalization formula audited over " + std::to_string(audited) +
               " records, worst deviation " + fmt(worst) +
               " (tolerance 1e-12)");
  }

  // 8: byte-identical records for a repeated run with the same seed.
  {
    const std::vector<ExperimentRecord> rerun = run_experiment(config);
    const bool pass =
        records_csv_string(records) == records_csv_string(rerun);
    report(8, pass, pass ? "two full runs with one seed are byte-identical"
                         : "reruns differ");
  }

  // 9: runtime budget for the full experiment.
  report(9, seconds < 900.0,
         "full experiment took " + fmt(seconds) + " s (budget 900 s)");

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
