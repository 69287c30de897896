#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lassopeak/model_selection.hpp"

namespace lassopeak {

// Experiment protocol: a fixed pool of synthetic observations, training
// subsets of growing size drawn from it, k-fold cross-validated selection
// on each subset, and held-out evaluation.
struct SimConfig {
  int p = 90;
  int n_nonzero = 20;
  double beta_low = -4.0;
  double beta_high = 4.0;
  double snr = 4.0;  // Var(x' beta) / Var(noise)
  std::vector<int> n_grid = default_n_grid();
  int reps = 10;
  int test_size = 500;
  int k_folds = 10;
  int pool_size = 5000;
  std::uint64_t master_seed = 42;

  static std::vector<int> default_n_grid();  // 10, 20, ..., 200

  // Throws ValidationError naming the violated field.
  void validate() const;
};

// Fixed ground truth shared by every cell of one experiment.
struct SyntheticModel {
  Eigen::VectorXd beta_true;  // exactly n_nonzero entries are nonzero
  double noise_sd = 0.0;      // noise_sd^2 = ||beta_true||^2 / snr
};

struct Pool {
  Eigen::MatrixXd x;  // pool_size x p, iid standard normal
  Eigen::VectorXd y;  // x * beta_true + noise
};

// One (training size, repetition, selector) cell.
struct ExperimentRecord {
  int n = 0;
  int rep = 0;
  Selector selector = Selector::standard;
  double s_cv = 0.0;
  double s_applied = 0.0;  // s_cv for standard, s_tilde for normalized
  double test_mse = 0.0;
  double full_ols_l1 = 0.0;       // full-training-set denominator norm
  double mean_fold_ols_l1 = 0.0;  // mean of the k fold denominator norms
  double pinv_ols_l1 = 0.0;       // l1 norm of pseudo-inverse least squares
};

struct SummaryRow {
  int n = 0;
  Selector selector = Selector::standard;
  double mean_test_mse = 0.0;
  double sd_test_mse = 0.0;
  double mean_s_applied = 0.0;
  double sd_s_applied = 0.0;
  double mean_pinv_ols_l1 = 0.0;
  double sd_pinv_ols_l1 = 0.0;
  double mean_full_ols_l1 = 0.0;
  double sd_full_ols_l1 = 0.0;
};

// Support chosen uniformly at random, nonzero values iid uniform on
// [beta_low, beta_high].
SyntheticModel generate_model(const SimConfig& config, std::uint64_t seed);

Pool sample_pool(const SyntheticModel& model, const SimConfig& config,
                 std::uint64_t seed);

// Draws disjoint training and test subsets from the pool (stream keyed by
// (master_seed, n, rep)), runs both selectors on the same folds and the
// same full-data path, and scores test MSE on the original response scale.
std::pair<ExperimentRecord, ExperimentRecord> run_cell(
    const Pool& pool, const SimConfig& config, int n, int rep,
    DenominatorMode mode = DenominatorMode::path_endpoint);

// All (n, rep) cells; |n_grid| * reps * 2 records sorted by
// (n, rep, selector). Output is identical for any thread count.
std::vector<ExperimentRecord> run_experiment(
    const SimConfig& config,
    DenominatorMode mode = DenominatorMode::path_endpoint,
    unsigned threads = 0);

// Per (n, selector) means and sample standard deviations over repetitions.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

}  // namespace lassopeak
