#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lassopeak/simulation.hpp"

namespace lassopeak {

// All CSV output uses LF line endings and serializes doubles with 17
// significant digits via std::to_chars, so files round-trip losslessly
// and identical inputs give byte-identical output. Data files are laid
// out row-major: one observation per line, one variable per column.

std::string format_double(double value);

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       std::ostream& out);
void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::string& path);
std::string records_csv_string(const std::vector<ExperimentRecord>& records);

std::vector<ExperimentRecord> read_records_csv(std::istream& in);
std::vector<ExperimentRecord> read_records_csv_file(const std::string& path);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::string& path);

// Path knots: lambda, l1 norm, active-set size, then one column per
// coefficient.
void write_path_csv(const LassoPath& path,
                    const std::vector<std::string>& variable_names,
                    std::ostream& out);
void write_path_csv(const LassoPath& path,
                    const std::vector<std::string>& variable_names,
                    const std::string& path_out);

void write_curve_csv(const CvCurve& curve, std::ostream& out);
void write_curve_csv(const CvCurve& curve, const std::string& path);

// Regression data: header row, response in the column named `y`, every
// other column a predictor.
struct DataSet {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> predictor_names;
};

DataSet read_data_csv(std::istream& in);
DataSet read_data_csv_file(const std::string& path);

}  // namespace lassopeak
