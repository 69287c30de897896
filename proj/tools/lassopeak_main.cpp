#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "lassopeak/config.hpp"
#include "lassopeak/csv.hpp"
#include "lassopeak/lars.hpp"
#include "lassopeak/model_selection.hpp"
#include "lassopeak/rng.hpp"
#include "lassopeak/simulation.hpp"

namespace {

using namespace lassopeak;

DenominatorMode parse_mode(const std::string& name) {
  return name == "pinv_ols" ? DenominatorMode::pinv_ols
                            : DenominatorMode::path_endpoint;
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& summary_path,
                 std::optional<std::uint64_t> seed,
                 const std::string& selector, const std::string& mode_name) {
  SimConfig config = parse_config_file(config_path);
  if (seed) {
    config.master_seed = *seed;
    config.validate();
  }

  std::vector<ExperimentRecord> records =
      run_experiment(config, parse_mode(mode_name));
  if (selector != "both") {
    const Selector keep =
        selector == "normalized" ? Selector::normalized : Selector::standard;
    std::erase_if(records,
                  [&](const ExperimentRecord& r) { return r.selector != keep; });
  }

  write_records_csv(records, out_path);
  std::cout << "wrote " << records.size() << " records to " << out_path
            << "\n";
  if (!summary_path.empty()) {
    write_summary_csv(summarize(records), summary_path);
    std::cout << "wrote summary to " << summary_path << "\n";
  }
  return 0;
}

int run_path(const std::string& data_path, const std::string& out_path,
             bool verify) {
  const DataSet data = read_data_csv_file(data_path);
  auto [x, y] = center_scale(data.x, data.y);
  const LassoPath path = lars_path(x, y);
  write_path_csv(path, data.predictor_names, out_path);
  std::cout << "wrote " << path.breakpoints.size() << " knots to " << out_path
            << " (terminal_l1 = " << format_double(path.terminal_l1) << ")\n";

  if (verify) {
    double worst = 0.0;
    for (const PathKnot& knot : path.breakpoints) {
      worst = std::max(worst, kkt_residual(x, y, knot.beta, knot.lambda));
    }
    std::cout << "verify: max_kkt_residual = " << format_double(worst) << "\n";
    if (worst > 1e-8) {
      std::cerr << "error: VerificationFailed: max KKT residual "
                << format_double(worst) << " exceeds 1e-8\n";
      return 1;
    }
  }
  return 0;
}

int run_cv(const std::string& data_path, int k, const std::string& out_path,
           std::uint64_t seed, const std::string& mode_name) {
  const DataSet data = read_data_csv_file(data_path);
  auto [x, y] = center_scale(data.x, data.y);
  const DenominatorMode mode = parse_mode(mode_name);

  const FoldAssignment folds =
      kfold_split(static_cast<int>(x.rows()), k, seed);
  const CvCurve curve = cv_error_curve(x, y, folds, uniform_fraction_grid(), mode);

  const LassoPath path = lars_path(x, y);
  const double full = mode == DenominatorMode::path_endpoint
                          ? path.terminal_l1
                          : l1_norm(ols_min_norm(x, y));
  const CvSelection standard = select_standard(curve);
  const CvSelection normalized = select_normalized(curve, full);

  write_curve_csv(curve, out_path);
  std::cout << "wrote curve to " << out_path << "\n"
            << "s_cv = " << format_double(standard.s_cv) << "\n"
            << "s_tilde = " << format_double(normalized.s_tilde) << "\n"
            << "full_ols_l1 = " << format_double(full) << "\n"
            << "mean_fold_ols_l1 = " << format_double(curve.mean_fold_ols_l1())
            << "\n";
  return 0;
}

int run_summary(const std::string& records_path, const std::string& out_path) {
  const auto records = read_records_csv_file(records_path);
  write_summary_csv(summarize(records), out_path);
  std::cout << "wrote summary to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lasso regularization-path tool: cross-validated selection and "
               "the n/p = 1 peaking experiment"};
  app.require_subcommand(1);

  // simulate
  std::string sim_config;
  std::string sim_out;
  std::string sim_summary;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_selector = "both";
  std::string sim_mode = "path_endpoint";
  auto* simulate = app.add_subcommand(
      "simulate", "Run the n-sweep experiment and emit record/summary CSVs");
  simulate->add_option("--config", sim_config, "key=value config file")
      ->required();
  simulate->add_option("--out", sim_out, "records CSV output")->required();
  simulate->add_option("--summary", sim_summary, "summary CSV output");
  simulate->add_option("--seed", sim_seed, "override master_seed");
  simulate->add_option("--selector", sim_selector, "records to keep")
      ->check(CLI::IsMember({"standard", "normalized", "both"}));
  simulate
      ->add_option("--denominator-mode", sim_mode,
                   "denominator of the penalty fraction")
      ->check(CLI::IsMember({"path_endpoint", "pinv_ols"}));

  // path
  std::string path_data;
  std::string path_out;
  bool path_verify = false;
  auto* path_cmd = app.add_subcommand(
      "path", "Compute the full lasso path for a data CSV");
  path_cmd->add_option("--data", path_data, "CSV with a 'y' response column")
      ->required();
  path_cmd->add_option("--out", path_out, "knots CSV output")->required();
  path_cmd->add_flag("--verify", path_verify,
                     "recompute KKT residuals at every knot");

  // cv
  std::string cv_data;
  std::string cv_out;
  int cv_k = 10;
  std::uint64_t cv_seed = 0;
  std::string cv_mode = "path_endpoint";
  auto* cv_cmd = app.add_subcommand(
      "cv", "Cross-validated fraction selection for a data CSV");
  cv_cmd->add_option("--data", cv_data, "CSV with a 'y' response column")
      ->required();
  cv_cmd->add_option("--k", cv_k, "fold count");
  cv_cmd->add_option("--out", cv_out, "curve CSV output")->required();
  cv_cmd->add_option("--seed", cv_seed, "fold assignment seed");
  cv_cmd
      ->add_option("--denominator-mode", cv_mode,
                   "denominator of the penalty fraction")
      ->check(CLI::IsMember({"path_endpoint", "pinv_ols"}));

  // summary
  std::string summary_records;
  std::string summary_out;
  auto* summary_cmd =
      app.add_subcommand("summary", "Summarize a records CSV per (n, selector)");
  summary_cmd->add_option("--records", summary_records, "records CSV input")
      ->required();
  summary_cmd->add_option("--out", summary_out, "summary CSV output")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_config, sim_out, sim_summary, sim_seed,
                          sim_selector, sim_mode);
    }
    if (path_cmd->parsed()) {
      return run_path(path_data, path_out, path_verify);
    }
    if (cv_cmd->parsed()) {
      return run_cv(cv_data, cv_k, cv_out, cv_seed, cv_mode);
    }
    if (summary_cmd->parsed()) {
      return run_summary(summary_records, summary_out);
    }
  } catch (const lassopeak::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
