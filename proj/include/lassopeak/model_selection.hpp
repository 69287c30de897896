#pragma once

#include <cstdint>
#include <vector>

#include "lassopeak/lars.hpp"

namespace lassopeak {

enum class Selector { standard, normalized };

const char* selector_name(Selector s);

// Which l1 norm serves as the denominator of the penalty fraction:
// the endpoint of the computed path (the reference tool's behavior), or
// the pseudo-inverse least-squares norm.
enum class DenominatorMode { path_endpoint, pinv_ols };

struct FoldAssignment {
  std::vector<int> fold_of;  // per observation, values in [0, k)
  int k = 0;
};

struct CvCurve {
  std::vector<double> s_grid;      // strictly increasing, 0 to 1
  std::vector<double> mean_error;  // across-fold mean validation MSE
  std::vector<double> fold_ols_l1;  // per-fold denominator norms, size k

  double mean_fold_ols_l1() const;
};

struct CvSelection {
  double s_cv = 0.0;     // grid point minimizing mean_error
  double s_tilde = 0.0;  // rescaled fraction, clipped to [0, 1]
  double full_ols_l1 = 0.0;  // full-training-set denominator (normalized only)
  Selector selector = Selector::standard;
};

// Random partition into k folds whose sizes differ by at most one.
FoldAssignment kfold_split(int n, int k, std::uint64_t seed);

// Equally spaced fractions from 0 to 1 inclusive.
std::vector<double> uniform_fraction_grid(int points = 101);

// For every fold: fit the path on the remaining observations (standardized
// on that subset alone), evaluate the grid, and score held-out MSE with the
// held-out rows mapped through the training split's centering/scaling.
CvCurve cv_error_curve(const DesignMatrix& x, const ResponseVector& y,
                       const FoldAssignment& folds,
                       const std::vector<double>& s_grid,
                       DenominatorMode mode = DenominatorMode::path_endpoint);

// Argmin of the curve; ties break toward smaller s (more penalization).
CvSelection select_standard(const CvCurve& curve);

// Rescales the selected fraction by mean fold norm / full norm, clipped
// to [0, 1], so the fraction targets the same absolute l1 budget the
// cross-validation splits voted for.
CvSelection select_normalized(const CvCurve& curve, double full_ols_l1);

// Full-data path evaluated at the selected fraction.
Coefficients fit_selected(const DesignMatrix& x, const ResponseVector& y,
                          const CvSelection& selection,
                          DenominatorMode mode = DenominatorMode::path_endpoint);

}  // namespace lassopeak
