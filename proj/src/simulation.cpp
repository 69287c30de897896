#include "lassopeak/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "lassopeak/rng.hpp"

namespace lassopeak {

std::vector<int> SimConfig::default_n_grid() {
  std::vector<int> grid;
  for (int n = 10; n <= 200; n += 10) grid.push_back(n);
  return grid;
}

void SimConfig::validate() const {
  if (p < 1) throw ValidationError("p", "must be >= 1");
  if (n_nonzero < 1) throw ValidationError("n_nonzero", "must be >= 1");
  if (n_nonzero > p) {
    throw ValidationError("n_nonzero", "must be <= p (" +
                                           std::to_string(n_nonzero) + " > " +
                                           std::to_string(p) + ")");
  }
  if (!(beta_low <= beta_high)) {
    throw ValidationError("beta_low", "must be <= beta_high");
  }
  if (beta_low == 0.0 && beta_high == 0.0) {
    throw ValidationError("beta_high",
                          "coefficient range collapses to zero signal");
  }
  if (!(snr > 0.0)) throw ValidationError("snr", "must be > 0");
  if (n_grid.empty()) throw ValidationError("n_grid", "must be nonempty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2) throw ValidationError("n_grid", "entries must be >= 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw ValidationError("n_grid", "must be strictly increasing");
    }
  }
  if (reps < 1) throw ValidationError("reps", "must be >= 1");
  if (test_size < 1) throw ValidationError("test_size", "must be >= 1");
  if (k_folds < 2) throw ValidationError("k_folds", "must be >= 2");
  if (k_folds > n_grid.front()) {
    throw ValidationError("k_folds", "must be <= smallest n in n_grid");
  }
  if (pool_size < 1) throw ValidationError("pool_size", "must be >= 1");
  if (n_grid.back() + test_size > pool_size) {
    throw ValidationError(
        "pool_size", "max(n_grid) + test_size exceeds pool_size (" +
                         std::to_string(n_grid.back() + test_size) + " > " +
                         std::to_string(pool_size) + ")");
  }
}

SyntheticModel generate_model(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);

  std::vector<int> positions(config.p);
  std::iota(positions.begin(), positions.end(), 0);
  rng.partial_shuffle(positions, static_cast<std::size_t>(config.n_nonzero));

  SyntheticModel model;
  model.beta_true = Eigen::VectorXd::Zero(config.p);
  for (int i = 0; i < config.n_nonzero; ++i) {
    double value = 0.0;
    while (value == 0.0) {
      value = rng.uniform(config.beta_low, config.beta_high);
    }
    model.beta_true[positions[i]] = value;
  }
  const double signal = model.beta_true.squaredNorm();
  if (signal <= 0.0) {
    throw ValidationError("snr", "signal variance is zero, noise undefined");
  }
  model.noise_sd = std::sqrt(signal / config.snr);
  return model;
}

Pool sample_pool(const SyntheticModel& model, const SimConfig& config,
                 std::uint64_t seed) {
  Rng rng(seed);
  Pool pool;
  pool.x.resize(config.pool_size, config.p);
  for (int i = 0; i < config.pool_size; ++i) {
    for (int j = 0; j < config.p; ++j) pool.x(i, j) = rng.normal();
  }
  pool.y = pool.x * model.beta_true;
  for (int i = 0; i < config.pool_size; ++i) {
    pool.y[i] += model.noise_sd * rng.normal();
  }
  return pool;
}

namespace {

double mse_against(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred) {
  return (truth - pred).squaredNorm() / static_cast<double>(truth.size());
}

ExperimentRecord make_record(int n, int rep, const CvSelection& sel,
                             double s_applied, double test_mse,
                             double full_denominator, double mean_fold,
                             double pinv_l1) {
  ExperimentRecord rec;
  rec.n = n;
  rec.rep = rep;
  rec.selector = sel.selector;
  rec.s_cv = sel.s_cv;
  rec.s_applied = s_applied;
  rec.test_mse = test_mse;
  rec.full_ols_l1 = full_denominator;
  rec.mean_fold_ols_l1 = mean_fold;
  rec.pinv_ols_l1 = pinv_l1;
  return rec;
}

}  // namespace

std::pair<ExperimentRecord, ExperimentRecord> run_cell(const Pool& pool,
                                                       const SimConfig& config,
                                                       int n, int rep,
                                                       DenominatorMode mode) {
  if (n + config.test_size > config.pool_size) {
    throw SubsampleExhausted("n + test_size = " +
                             std::to_string(n + config.test_size) +
                             " exceeds pool of " +
                             std::to_string(config.pool_size));
  }

  Rng cell_rng(derive_seed(config.master_seed,
                           {seed_stream::cell, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(rep)}));
  std::vector<int> rows(config.pool_size);
  std::iota(rows.begin(), rows.end(), 0);
  cell_rng.partial_shuffle(rows,
                           static_cast<std::size_t>(n) + config.test_size);

  Eigen::MatrixXd train_x(n, config.p);
  Eigen::VectorXd train_y(n);
  for (int i = 0; i < n; ++i) {
    train_x.row(i) = pool.x.row(rows[i]);
    train_y[i] = pool.y[rows[i]];
  }
  Eigen::MatrixXd test_x(config.test_size, config.p);
  Eigen::VectorXd test_y(config.test_size);
  for (int i = 0; i < config.test_size; ++i) {
    test_x.row(i) = pool.x.row(rows[n + i]);
    test_y[i] = pool.y[rows[n + i]];
  }

  auto [x, y] = center_scale(train_x, train_y);

  const FoldAssignment folds = kfold_split(
      n, config.k_folds,
      derive_seed(config.master_seed,
                  {seed_stream::folds, static_cast<std::uint64_t>(n),
                   static_cast<std::uint64_t>(rep)}));
  const std::vector<double> grid = uniform_fraction_grid();
  const CvCurve curve = cv_error_curve(x, y, folds, grid, mode);

  const LassoPath path = lars_path(x, y);
  const double pinv_l1 = l1_norm(ols_min_norm(x, y));
  const double full_denominator = mode == DenominatorMode::path_endpoint
                                      ? path.terminal_l1
                                      : pinv_l1;

  const CvSelection standard = select_standard(curve);
  const CvSelection normalized = select_normalized(curve, full_denominator);

  auto evaluate = [&](double s) {
    const Coefficients coef = coef_at_l1(path, s * full_denominator);
    const Eigen::VectorXd pred =
        predict_original_scale(x, y.mean_offset, coef, test_x);
    return mse_against(test_y, pred);
  };

  const double mean_fold = curve.mean_fold_ols_l1();
  ExperimentRecord rec_standard =
      make_record(n, rep, standard, standard.s_cv, evaluate(standard.s_cv),
                  full_denominator, mean_fold, pinv_l1);
  ExperimentRecord rec_normalized = make_record(
      n, rep, normalized, normalized.s_tilde, evaluate(normalized.s_tilde),
      full_denominator, mean_fold, pinv_l1);
  return {std::move(rec_standard), std::move(rec_normalized)};
}

std::vector<ExperimentRecord> run_experiment(const SimConfig& config,
                                             DenominatorMode mode,
                                             unsigned threads) {
  config.validate();
  const SyntheticModel model =
      generate_model(config, derive_seed(config.master_seed, {seed_stream::model}));
  const Pool pool =
      sample_pool(model, config, derive_seed(config.master_seed, {seed_stream::pool}));

  struct Cell {
    int n;
    int rep;
  };
  std::vector<Cell> cells;
  cells.reserve(config.n_grid.size() * static_cast<std::size_t>(config.reps));
  for (int n : config.n_grid) {
    for (int rep = 0; rep < config.reps; ++rep) cells.push_back({n, rep});
  }

  std::vector<ExperimentRecord> records(cells.size() * 2);
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, cells.size());

  // Cells are independent and carry their own RNG streams, so any
  // scheduling produces the same records.
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        auto [standard, normalized] =
            run_cell(pool, config, cells[i].n, cells[i].rep, mode);
        records[2 * i] = standard;
        records[2 * i + 1] = normalized;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> team;
    team.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) team.emplace_back(worker);
    for (auto& t : team) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.n != b.n) return a.n < b.n;
                     if (a.rep != b.rep) return a.rep < b.rep;
                     return static_cast<int>(a.selector) <
                            static_cast<int>(b.selector);
                   });
  return records;
}

namespace {

struct Accumulator {
  std::vector<double> values;

  double mean() const {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  }

  double sd() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
};

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw EmptyInput("no records to summarize");

  std::map<std::pair<int, int>, std::array<Accumulator, 4>> groups;
  for (const auto& rec : records) {
    auto& acc = groups[{static_cast<int>(rec.selector), rec.n}];
    acc[0].values.push_back(rec.test_mse);
    acc[1].values.push_back(rec.s_applied);
    acc[2].values.push_back(rec.pinv_ols_l1);
    acc[3].values.push_back(rec.full_ols_l1);
  }

  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    SummaryRow row;
    row.selector = static_cast<Selector>(key.first);
    row.n = key.second;
    row.mean_test_mse = acc[0].mean();
    row.sd_test_mse = acc[0].sd();
    row.mean_s_applied = acc[1].mean();
    row.sd_s_applied = acc[1].sd();
    row.mean_pinv_ols_l1 = acc[2].mean();
    row.sd_pinv_ols_l1 = acc[2].sd();
    row.mean_full_ols_l1 = acc[3].mean();
    row.sd_full_ols_l1 = acc[3].sd();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lassopeak
