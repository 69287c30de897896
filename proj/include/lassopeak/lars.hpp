#pragma once

#include <vector>

#include "lassopeak/linalg.hpp"

namespace lassopeak {

// One breakpoint of the piecewise-linear coefficient path.
struct PathKnot {
  double lambda = 0.0;          // penalty level, equals 2 * max_j |x_j' r|
  Coefficients beta;
  double l1 = 0.0;              // ||beta||_1 at this knot
  std::vector<int> active_set;  // indices with nonzero coefficient, ascending
};

// Full regularization path of  min ||y - X b||^2 + lambda ||b||_1,
// from beta = 0 at lambda_max down to the least-squares fit the path
// reaches at lambda = 0. Coefficients are affine in ||beta||_1 between
// consecutive knots, so any point of the path is recovered exactly by
// linear interpolation.
struct LassoPath {
  std::vector<PathKnot> breakpoints;
  double terminal_l1 = 0.0;  // ||beta||_1 of the endpoint (least-squares fit)
};

// Least angle regression with the lasso modification: variables leave the
// active set when a coefficient would change sign, and the event creates a
// knot. Expects centered/scaled inputs.
LassoPath lars_path(const DesignMatrix& x, const ResponseVector& y);

// Path coefficients whose l1 norm is fraction * terminal_l1.
// fraction = 0 gives the zero vector, fraction = 1 the endpoint.
Coefficients coef_at_fraction(const LassoPath& path, double fraction);

// Path coefficients at an absolute l1 target, clipped to [0, terminal_l1].
Coefficients coef_at_l1(const LassoPath& path, double l1_target);

// Penalty level at the interpolated point. lambda is affine in ||beta||_1
// along each segment, so this is exact, not an approximation.
double lambda_at_fraction(const LassoPath& path, double fraction);

// Maximum violation of the stationarity conditions at (beta, lambda):
// |2 x_j'(y - X beta) - lambda sign(beta_j)| on the support,
// max(0, |2 x_j'(y - X beta)| - lambda) off it. Zero iff beta is optimal.
double kkt_residual(const DesignMatrix& x, const ResponseVector& y,
                    const Coefficients& beta, double lambda);

}  // namespace lassopeak
