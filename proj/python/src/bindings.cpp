#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lassopeak/config.hpp"
#include "lassopeak/csv.hpp"
#include "lassopeak/lars.hpp"
#include "lassopeak/model_selection.hpp"
#include "lassopeak/simulation.hpp"

namespace py = pybind11;
using namespace lassopeak;

namespace {

Coefficients as_coef(const Eigen::VectorXd& beta) { return Coefficients{beta}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lasso regularization paths, cross-validated selection, and the "
            "n/p = 1 peaking experiment";

  py::register_exception<Error>(m, "LassopeakError", PyExc_RuntimeError);

  py::enum_<Selector>(m, "Selector")
      .value("standard", Selector::standard)
      .value("normalized", Selector::normalized);

  py::enum_<DenominatorMode>(m, "DenominatorMode")
      .value("path_endpoint", DenominatorMode::path_endpoint)
      .value("pinv_ols", DenominatorMode::pinv_ols);

  py::class_<DesignMatrix>(m, "DesignMatrix")
      .def_readonly("values", &DesignMatrix::values)
      .def_readonly("column_means", &DesignMatrix::column_means)
      .def_readonly("column_scales", &DesignMatrix::column_scales);

  py::class_<ResponseVector>(m, "ResponseVector")
      .def_readonly("values", &ResponseVector::values)
      .def_readonly("mean_offset", &ResponseVector::mean_offset);

  py::class_<SvdFactors>(m, "SvdFactors")
      .def_readonly("left_vectors", &SvdFactors::left_vectors)
      .def_readonly("singular_values", &SvdFactors::singular_values)
      .def_readonly("right_vectors", &SvdFactors::right_vectors)
      .def("rank", &SvdFactors::rank);

  py::class_<PathKnot>(m, "PathKnot")
      .def_readonly("lambda_", &PathKnot::lambda)
      .def_property_readonly(
          "beta", [](const PathKnot& k) { return k.beta.beta; })
      .def_readonly("l1", &PathKnot::l1)
      .def_readonly("active_set", &PathKnot::active_set);

  py::class_<LassoPath>(m, "LassoPath")
      .def_readonly("breakpoints", &LassoPath::breakpoints)
      .def_readonly("terminal_l1", &LassoPath::terminal_l1);

  py::class_<FoldAssignment>(m, "FoldAssignment")
      .def_readonly("fold_of", &FoldAssignment::fold_of)
      .def_readonly("k", &FoldAssignment::k);

  py::class_<CvCurve>(m, "CvCurve")
      .def_readonly("s_grid", &CvCurve::s_grid)
      .def_readonly("mean_error", &CvCurve::mean_error)
      .def_readonly("fold_ols_l1", &CvCurve::fold_ols_l1)
      .def("mean_fold_ols_l1", &CvCurve::mean_fold_ols_l1);

  py::class_<CvSelection>(m, "CvSelection")
      .def_readonly("s_cv", &CvSelection::s_cv)
      .def_readonly("s_tilde", &CvSelection::s_tilde)
      .def_readonly("full_ols_l1", &CvSelection::full_ols_l1)
      .def_readonly("selector", &CvSelection::selector);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("p", &SimConfig::p)
      .def_readwrite("n_nonzero", &SimConfig::n_nonzero)
      .def_readwrite("beta_low", &SimConfig::beta_low)
      .def_readwrite("beta_high", &SimConfig::beta_high)
      .def_readwrite("snr", &SimConfig::snr)
      .def_readwrite("n_grid", &SimConfig::n_grid)
      .def_readwrite("reps", &SimConfig::reps)
      .def_readwrite("test_size", &SimConfig::test_size)
      .def_readwrite("k_folds", &SimConfig::k_folds)
      .def_readwrite("pool_size", &SimConfig::pool_size)
      .def_readwrite("master_seed", &SimConfig::master_seed)
      .def("validate", &SimConfig::validate);

  py::class_<SyntheticModel>(m, "SyntheticModel")
      .def_readonly("beta_true", &SyntheticModel::beta_true)
      .def_readonly("noise_sd", &SyntheticModel::noise_sd);

  py::class_<Pool>(m, "Pool")
      .def_readonly("x", &Pool::x)
      .def_readonly("y", &Pool::y);

  py::class_<ExperimentRecord>(m, "ExperimentRecord")
      .def_readonly("n", &ExperimentRecord::n)
      .def_readonly("rep", &ExperimentRecord::rep)
      .def_readonly("selector", &ExperimentRecord::selector)
      .def_readonly("s_cv", &ExperimentRecord::s_cv)
      .def_readonly("s_applied", &ExperimentRecord::s_applied)
      .def_readonly("test_mse", &ExperimentRecord::test_mse)
      .def_readonly("full_ols_l1", &ExperimentRecord::full_ols_l1)
      .def_readonly("mean_fold_ols_l1", &ExperimentRecord::mean_fold_ols_l1)
      .def_readonly("pinv_ols_l1", &ExperimentRecord::pinv_ols_l1);

  py::class_<SummaryRow>(m, "SummaryRow")
      .def_readonly("n", &SummaryRow::n)
      .def_readonly("selector", &SummaryRow::selector)
      .def_readonly("mean_test_mse", &SummaryRow::mean_test_mse)
      .def_readonly("sd_test_mse", &SummaryRow::sd_test_mse)
      .def_readonly("mean_s_applied", &SummaryRow::mean_s_applied)
      .def_readonly("sd_s_applied", &SummaryRow::sd_s_applied)
      .def_readonly("mean_pinv_ols_l1", &SummaryRow::mean_pinv_ols_l1)
      .def_readonly("mean_full_ols_l1", &SummaryRow::mean_full_ols_l1);

  m.def("center_scale", &center_scale, py::arg("raw_x"), py::arg("raw_y"));
  m.def("svd", py::overload_cast<const Eigen::MatrixXd&>(&svd), py::arg("a"));
  m.def("pseudo_inverse", &pseudo_inverse, py::arg("a"));
  m.def(
      "ols_min_norm",
      [](const DesignMatrix& x, const ResponseVector& y) {
        return ols_min_norm(x, y).beta;
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "l1_norm",
      [](const Eigen::VectorXd& beta) { return l1_norm(as_coef(beta)); },
      py::arg("beta"));
  m.def("sample_covariance", &sample_covariance, py::arg("x"));
  m.def(
      "predict_original_scale",
      [](const DesignMatrix& x, double offset, const Eigen::VectorXd& beta,
         const Eigen::MatrixXd& raw) {
        return predict_original_scale(x, offset, as_coef(beta), raw);
      },
      py::arg("trained_on"), py::arg("response_offset"), py::arg("beta"),
      py::arg("raw_x"));

  m.def("lars_path", &lars_path, py::arg("x"), py::arg("y"));
  m.def(
      "coef_at_fraction",
      [](const LassoPath& path, double s) {
        return coef_at_fraction(path, s).beta;
      },
      py::arg("path"), py::arg("fraction"));
  m.def(
      "coef_at_l1",
      [](const LassoPath& path, double t) { return coef_at_l1(path, t).beta; },
      py::arg("path"), py::arg("l1_target"));
  m.def("lambda_at_fraction", &lambda_at_fraction, py::arg("path"),
        py::arg("fraction"));
  m.def(
      "kkt_residual",
      [](const DesignMatrix& x, const ResponseVector& y,
         const Eigen::VectorXd& beta, double lambda) {
        return kkt_residual(x, y, as_coef(beta), lambda);
      },
      py::arg("x"), py::arg("y"), py::arg("beta"), py::arg("lambda_"));

  m.def("kfold_split", &kfold_split, py::arg("n"), py::arg("k"),
        py::arg("seed"));
  m.def("uniform_fraction_grid", &uniform_fraction_grid,
        py::arg("points") = 101);
  m.def("cv_error_curve", &cv_error_curve, py::arg("x"), py::arg("y"),
        py::arg("folds"), py::arg("s_grid"),
        py::arg("mode") = DenominatorMode::path_endpoint);
  m.def("select_standard", &select_standard, py::arg("curve"));
  m.def("select_normalized", &select_normalized, py::arg("curve"),
        py::arg("full_ols_l1"));
  m.def(
      "fit_selected",
      [](const DesignMatrix& x, const ResponseVector& y,
         const CvSelection& sel, DenominatorMode mode) {
        return fit_selected(x, y, sel, mode).beta;
      },
      py::arg("x"), py::arg("y"), py::arg("selection"),
      py::arg("mode") = DenominatorMode::path_endpoint);

  m.def("generate_model", &generate_model, py::arg("config"), py::arg("seed"));
  m.def("sample_pool", &sample_pool, py::arg("model"), py::arg("config"),
        py::arg("seed"));
  m.def("run_cell", &run_cell, py::arg("pool"), py::arg("config"),
        py::arg("n"), py::arg("rep"),
        py::arg("mode") = DenominatorMode::path_endpoint);
  m.def("run_experiment", &run_experiment, py::arg("config"),
        py::arg("mode") = DenominatorMode::path_endpoint,
        py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("summarize", &summarize, py::arg("records"));

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("parse_config_file", &parse_config_file, py::arg("path"));
  m.def(
      "write_records_csv",
      [](const std::vector<ExperimentRecord>& records, const std::string& path) {
        write_records_csv(records, path);
      },
      py::arg("records"), py::arg("path"));
  m.def("records_csv_string", &records_csv_string, py::arg("records"));
  m.def("read_records_csv", &read_records_csv_file, py::arg("path"));
  m.def(
      "write_summary_csv",
      [](const std::vector<SummaryRow>& rows, const std::string& path) {
        write_summary_csv(rows, path);
      },
      py::arg("rows"), py::arg("path"));

  m.attr("__version__") = "0.1.0";
}
