#include "lassopeak/lars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lassopeak {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Correlations x_j'(y - X beta) for the current beta, rebuilt from the
// precomputed Gram matrix. Recomputing from scratch at every step keeps
// rounding error from accumulating along the path.
Eigen::VectorXd correlations(const Eigen::VectorXd& xty,
                             const Eigen::MatrixXd& gram,
                             const Eigen::VectorXd& beta,
                             const std::vector<int>& active) {
  Eigen::VectorXd c = xty;
  for (int j : active) c.noalias() -= beta[j] * gram.col(j);
  return c;
}

std::vector<int> nonzero_indices(const Eigen::VectorXd& beta) {
  std::vector<int> idx;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta[j] != 0.0) idx.push_back(static_cast<int>(j));
  }
  return idx;
}

}  // namespace

LassoPath lars_path(const DesignMatrix& x, const ResponseVector& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (y.values.size() != n) {
    throw DimensionMismatch("x has " + std::to_string(n) +
                            " rows but y has " +
                            std::to_string(y.values.size()) + " entries");
  }
  if (n < 2 || p < 1) {
    throw DimensionMismatch("need n >= 2 and p >= 1, got n = " +
                            std::to_string(n) + ", p = " + std::to_string(p));
  }

  const Eigen::MatrixXd gram = x.values.transpose() * x.values;
  const Eigen::VectorXd xty = x.values.transpose() * y.values;
  const double yty = y.values.squaredNorm();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  std::vector<int> active;
  std::vector<char> is_active(p, 0);
  std::vector<char> ignored(p, 0);  // columns whose entry made the Gram singular

  LassoPath path;
  const double c0 = xty.cwiseAbs().maxCoeff();
  path.breakpoints.push_back(
      {2.0 * c0, Coefficients{beta}, 0.0, {}});
  if (c0 <= 1e-13 * std::max(1.0, std::sqrt(yty))) {
    // y is already orthogonal to every predictor; the path is a single point.
    path.breakpoints.back().lambda = 0.0;
    path.terminal_l1 = 0.0;
    return path;
  }

  const double level_tol = 1e-12 * c0;
  const double tie_tol = 1e-12;
  // Centering caps the rank at n - 1.
  const Eigen::Index rank_cap = std::min<Eigen::Index>(p, n - 1);
  const std::size_t max_knots =
      8 * static_cast<std::size_t>(std::min<Eigen::Index>(n, p));

  bool drop_pending = false;
  int tie_streak = 0;

  Eigen::VectorXd c = xty;
  for (;;) {
    double level =
        active.empty() ? 0.0 : std::abs(c[active.front()]);
    for (int j : active) level = std::max(level, std::abs(c[j]));

    if (!drop_pending) {
      // Entry step: bring in the inactive variable with the largest
      // absolute correlation, lowest index on a tie.
      int entering = -1;
      double best = -1.0;
      int tied = 0;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (is_active[j] || ignored[j]) continue;
        const double a = std::abs(c[j]);
        if (a > best + tie_tol * std::max(1.0, best)) {
          best = a;
          entering = static_cast<int>(j);
          tied = 1;
        } else if (a >= best - tie_tol * std::max(1.0, best)) {
          ++tied;
        }
      }
      tie_streak = tied > 1 ? tie_streak + 1 : 0;
      if (tie_streak > p) {
        throw DegeneratePath("tie-break applied more than p consecutive times");
      }
      if (entering < 0) {
        // Nothing left to enter and nothing pending: treat as terminal.
        path.breakpoints.back().lambda = 0.0;
        break;
      }
      active.push_back(entering);
      is_active[entering] = 1;
      level = std::max(level, best);
    }
    drop_pending = false;

    const auto m = static_cast<Eigen::Index>(active.size());

    // Equiangular direction in coefficient space: G_AA d = sign(c_A).
    // With this normalization every active |correlation| falls at unit
    // rate per unit of step length.
    Eigen::MatrixXd gram_aa(m, m);
    Eigen::VectorXd sign_a(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      sign_a[a] = c[active[a]] >= 0.0 ? 1.0 : -1.0;
      for (Eigen::Index b = 0; b < m; ++b) {
        gram_aa(a, b) = gram(active[a], active[b]);
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram_aa);
    if (llt.info() != Eigen::Success) {
      // The newest column is numerically dependent on the active set;
      // retire it and carry on without it.
      const int last = active.back();
      if (beta[last] == 0.0) {
        active.pop_back();
        is_active[last] = 0;
        ignored[last] = 1;
        if (active.empty()) {
          throw DegeneratePath("Gram matrix singular at first entry");
        }
        continue;
      }
      throw DegeneratePath("active Gram matrix lost positive definiteness");
    }
    const Eigen::VectorXd d = llt.solve(sign_a);

    Eigen::VectorXd velocity = Eigen::VectorXd::Zero(p);
    for (Eigen::Index a = 0; a < m; ++a) {
      velocity.noalias() += d[a] * gram.col(active[a]);
    }

    const double gamma_tol = 1e-12 * std::max(1.0, level);
    const double gamma_terminal = level;

    double gamma_join = kInf;
    if (m < rank_cap) {
      for (Eigen::Index j = 0; j < p; ++j) {
        if (is_active[j] || ignored[j]) continue;
        const double num1 = level - c[j];
        const double den1 = 1.0 - velocity[j];
        const double num2 = level + c[j];
        const double den2 = 1.0 + velocity[j];
        if (den1 > 0.0) {
          const double g = num1 / den1;
          if (g > gamma_tol && g < gamma_join) gamma_join = g;
        }
        if (den2 > 0.0) {
          const double g = num2 / den2;
          if (g > gamma_tol && g < gamma_join) gamma_join = g;
        }
      }
    }

    // Lasso modification: stop where a coefficient would cross zero.
    Eigen::VectorXd crossing(m);
    double gamma_drop = kInf;
    for (Eigen::Index a = 0; a < m; ++a) {
      crossing[a] = d[a] == 0.0 ? kInf : -beta[active[a]] / d[a];
      if (crossing[a] > gamma_tol && crossing[a] < gamma_drop) {
        gamma_drop = crossing[a];
      }
    }

    const bool dropping = gamma_drop <= std::min(gamma_join, gamma_terminal);
    const bool terminal = !dropping && gamma_terminal <= gamma_join;
    const double gamma =
        dropping ? gamma_drop : (terminal ? gamma_terminal : gamma_join);

    for (Eigen::Index a = 0; a < m; ++a) beta[active[a]] += gamma * d[a];

    if (dropping) {
      // Every coefficient that reached zero at this step leaves the set.
      std::vector<int> kept;
      kept.reserve(active.size());
      for (Eigen::Index a = 0; a < m; ++a) {
        const int j = active[a];
        if (crossing[a] > gamma_tol && crossing[a] <= gamma * (1.0 + 1e-10)) {
          beta[j] = 0.0;
          is_active[j] = 0;
        } else {
          kept.push_back(j);
        }
      }
      active = std::move(kept);
      // Re-enter immediately if the drop emptied the set.
      drop_pending = !active.empty();
    }

    c = correlations(xty, gram, beta, active);
    double max_abs_c = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      max_abs_c = std::max(max_abs_c, std::abs(c[j]));
    }

    PathKnot knot;
    knot.lambda = 2.0 * max_abs_c;
    knot.beta = Coefficients{beta};
    knot.l1 = beta.cwiseAbs().sum();
    knot.active_set = nonzero_indices(beta);
    path.breakpoints.push_back(std::move(knot));

    if (terminal) {
      path.breakpoints.back().lambda = 0.0;
      break;
    }
    // rss = y'y - 2 b'X'y + b'Gb collapses to y'y - b'X'y - b'c
    // because c = X'y - G b.
    const double rss = std::max(0.0, yty - beta.dot(xty) - beta.dot(c));
    if (std::sqrt(rss) <= 1e-12) {
      // Exact interpolation reached; lambda is 0 by convention.
      path.breakpoints.back().lambda = 0.0;
      break;
    }
    if (max_abs_c <= level_tol) {
      path.breakpoints.back().lambda = 0.0;
      break;
    }
    if (path.breakpoints.size() > max_knots) {
      throw DegeneratePath("exceeded " + std::to_string(max_knots) +
                           " knots");
    }
  }

  path.terminal_l1 = path.breakpoints.back().l1;
  return path;
}

namespace {

// Locates the segment bracketing an l1 target and returns the
// interpolation weight within it.
struct SegmentPosition {
  std::size_t left;
  std::size_t right;
  double weight;  // 0 at left knot, 1 at right knot
};

SegmentPosition locate_l1(const LassoPath& path, double target) {
  const auto& knots = path.breakpoints;
  if (target <= knots.front().l1) return {0, 0, 0.0};
  if (target >= knots.back().l1) {
    return {knots.size() - 1, knots.size() - 1, 0.0};
  }
  std::size_t lo = 0;
  std::size_t hi = knots.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (knots[mid].l1 <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double span = knots[hi].l1 - knots[lo].l1;
  const double w = span > 0.0 ? (target - knots[lo].l1) / span : 0.0;
  return {lo, hi, w};
}

}  // namespace

Coefficients coef_at_l1(const LassoPath& path, double l1_target) {
  if (path.breakpoints.empty()) {
    throw EmptyInput("path has no knots");
  }
  const double target =
      std::clamp(l1_target, 0.0, path.terminal_l1);
  const SegmentPosition pos = locate_l1(path, target);
  const auto& knots = path.breakpoints;
  if (pos.left == pos.right) return knots[pos.left].beta;
  return Coefficients{knots[pos.left].beta.beta +
                      pos.weight * (knots[pos.right].beta.beta -
                                    knots[pos.left].beta.beta)};
}

Coefficients coef_at_fraction(const LassoPath& path, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw FractionOutOfRange(fraction);
  }
  if (path.breakpoints.empty()) {
    throw EmptyInput("path has no knots");
  }
  if (fraction == 0.0) return path.breakpoints.front().beta;
  if (fraction == 1.0) return path.breakpoints.back().beta;
  return coef_at_l1(path, fraction * path.terminal_l1);
}

double lambda_at_fraction(const LassoPath& path, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw FractionOutOfRange(fraction);
  }
  if (path.breakpoints.empty()) {
    throw EmptyInput("path has no knots");
  }
  const auto& knots = path.breakpoints;
  if (fraction == 1.0) return knots.back().lambda;
  const SegmentPosition pos = locate_l1(path, fraction * path.terminal_l1);
  if (pos.left == pos.right) return knots[pos.left].lambda;
  return knots[pos.left].lambda +
         pos.weight * (knots[pos.right].lambda - knots[pos.left].lambda);
}

double kkt_residual(const DesignMatrix& x, const ResponseVector& y,
                    const Coefficients& beta, double lambda) {
  if (beta.beta.size() != x.cols() || y.values.size() != x.rows()) {
    throw DimensionMismatch("incompatible shapes in kkt_residual");
  }
  const Eigen::VectorXd residual = y.values - x.values * beta.beta;
  const Eigen::VectorXd c = x.values.transpose() * residual;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    double violation;
    if (beta.beta[j] != 0.0) {
      const double sign = beta.beta[j] > 0.0 ? 1.0 : -1.0;
      violation = std::abs(2.0 * c[j] - lambda * sign);
    } else {
      violation = std::max(0.0, std::abs(2.0 * c[j]) - lambda);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

}  // namespace lassopeak
