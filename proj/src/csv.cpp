#include "lassopeak/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lassopeak {

namespace {

constexpr char kRecordsHeader[] =
    "n,rep,selector,s_cv,s_applied,test_mse,full_ols_l1,mean_fold_ols_l1,"
    "pinv_ols_l1";

constexpr char kSummaryHeader[] =
    "n,selector,mean_test_mse,sd_test_mse,mean_s_applied,sd_s_applied,"
    "mean_pinv_ols_l1,mean_full_ols_l1";

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

double parse_double(std::string_view token, const std::string& context) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(0, "bad number '" + std::string(token) + "' in " +
                            context);
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto next = line.find(',', pos);
    if (next == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return fields;
}

Selector parse_selector(const std::string& token) {
  if (token == "standard") return Selector::standard;
  if (token == "normalized") return Selector::normalized;
  throw ParseError(0, "unknown selector '" + token + "'");
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 17);
  if (ec != std::errc{}) throw IoError("double formatting failed");
  return std::string(buffer, ptr);
}

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       std::ostream& out) {
  std::vector<ExperimentRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     if (a.n != b.n) return a.n < b.n;
                     if (a.rep != b.rep) return a.rep < b.rep;
                     return static_cast<int>(a.selector) <
                            static_cast<int>(b.selector);
                   });
  out << kRecordsHeader << '\n';
  for (const auto& rec : sorted) {
    out << rec.n << ',' << rec.rep << ',' << selector_name(rec.selector) << ','
        << format_double(rec.s_cv) << ',' << format_double(rec.s_applied)
        << ',' << format_double(rec.test_mse) << ','
        << format_double(rec.full_ols_l1) << ','
        << format_double(rec.mean_fold_ols_l1) << ','
        << format_double(rec.pinv_ols_l1) << '\n';
  }
  if (!out) throw IoError("write failed while emitting records");
}

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::string& path) {
  auto out = open_output(path);
  write_records_csv(records, out);
}

std::string records_csv_string(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  write_records_csv(records, out);
  return out.str();
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing records header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordsHeader) {
    throw ParseError(1, "unexpected records header '" + line + "'");
  }
  std::vector<ExperimentRecord> records;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 9) {
      throw ParseError(line_number, "expected 9 fields, got " +
                                        std::to_string(fields.size()));
    }
    ExperimentRecord rec;
    rec.n = static_cast<int>(
        parse_double(fields[0], "records line " + std::to_string(line_number)));
    rec.rep = static_cast<int>(
        parse_double(fields[1], "records line " + std::to_string(line_number)));
    rec.selector = parse_selector(fields[2]);
    rec.s_cv = parse_double(fields[3], "s_cv");
    rec.s_applied = parse_double(fields[4], "s_applied");
    rec.test_mse = parse_double(fields[5], "test_mse");
    rec.full_ols_l1 = parse_double(fields[6], "full_ols_l1");
    rec.mean_fold_ols_l1 = parse_double(fields[7], "mean_fold_ols_l1");
    rec.pinv_ols_l1 = parse_double(fields[8], "pinv_ols_l1");
    records.push_back(rec);
  }
  return records;
}

std::vector<ExperimentRecord> read_records_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_records_csv(in);
}

void write_summary_csv(const std::vector<SummaryRow>& rows,
                       std::ostream& out) {
  if (rows.empty()) throw EmptyInput("no summary rows to write");
  std::vector<SummaryRow> sorted = rows;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SummaryRow& a, const SummaryRow& b) {
                     if (a.selector != b.selector) {
                       return static_cast<int>(a.selector) <
                              static_cast<int>(b.selector);
                     }
                     return a.n < b.n;
                   });
  out << kSummaryHeader << '\n';
  for (const auto& row : sorted) {
    out << row.n << ',' << selector_name(row.selector) << ','
        << format_double(row.mean_test_mse) << ','
        << format_double(row.sd_test_mse) << ','
        << format_double(row.mean_s_applied) << ','
        << format_double(row.sd_s_applied) << ','
        << format_double(row.mean_pinv_ols_l1) << ','
        << format_double(row.mean_full_ols_l1) << '\n';
  }
  if (!out) throw IoError("write failed while emitting summary");
}

void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::string& path) {
  auto out = open_output(path);
  write_summary_csv(rows, out);
}

void write_path_csv(const LassoPath& path,
                    const std::vector<std::string>& variable_names,
                    std::ostream& out) {
  out << "knot,lambda,l1,active_size";
  for (const auto& name : variable_names) out << ",beta_" << name;
  out << '\n';
  for (std::size_t k = 0; k < path.breakpoints.size(); ++k) {
    const PathKnot& knot = path.breakpoints[k];
    out << k << ',' << format_double(knot.lambda) << ','
        << format_double(knot.l1) << ',' << knot.active_set.size();
    for (Eigen::Index j = 0; j < knot.beta.beta.size(); ++j) {
      out << ',' << format_double(knot.beta.beta[j]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed while emitting path knots");
}

void write_path_csv(const LassoPath& path,
                    const std::vector<std::string>& variable_names,
                    const std::string& path_out) {
  auto out = open_output(path_out);
  write_path_csv(path, variable_names, out);
}

void write_curve_csv(const CvCurve& curve, std::ostream& out) {
  out << "s,mean_error\n";
  for (std::size_t g = 0; g < curve.s_grid.size(); ++g) {
    out << format_double(curve.s_grid[g]) << ','
        << format_double(curve.mean_error[g]) << '\n';
  }
  if (!out) throw IoError("write failed while emitting cv curve");
}

void write_curve_csv(const CvCurve& curve, const std::string& path) {
  auto out = open_output(path);
  write_curve_csv(curve, out);
}

DataSet read_data_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing data header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);

  int y_column = -1;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "y") {
      if (y_column >= 0) throw ParseError(1, "multiple 'y' columns");
      y_column = static_cast<int>(j);
    } else {
      names.push_back(header[j]);
    }
  }
  if (y_column < 0) throw ParseError(1, "no column named 'y'");
  if (names.empty()) throw ParseError(1, "no predictor columns");

  std::vector<std::vector<double>> x_rows;
  std::vector<double> y_values;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError(line_number,
                       "expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(names.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const double v = parse_double(
          fields[j], "data line " + std::to_string(line_number));
      if (static_cast<int>(j) == y_column) {
        y_values.push_back(v);
      } else {
        row.push_back(v);
      }
    }
    x_rows.push_back(std::move(row));
  }
  if (x_rows.empty()) throw EmptyInput("data file has no observations");

  DataSet data;
  data.predictor_names = std::move(names);
  data.x.resize(x_rows.size(), data.predictor_names.size());
  data.y.resize(y_values.size());
  for (std::size_t i = 0; i < x_rows.size(); ++i) {
    for (std::size_t j = 0; j < x_rows[i].size(); ++j) {
      data.x(i, j) = x_rows[i][j];
    }
    data.y[i] = y_values[i];
  }
  return data;
}

DataSet read_data_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_data_csv(in);
}

}  // namespace lassopeak
