#include "lassopeak/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace lassopeak {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view value, int line, const std::string& key) {
  T out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "cannot parse value '" + std::string(value) +
                               "' for key '" + key + "'");
  }
  return out;
}

std::vector<int> parse_n_grid(std::string_view value, int line) {
  std::vector<int> grid;
  if (value.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= value.size()) {
      const auto next = value.find(':', pos);
      parts.push_back(trim(value.substr(
          pos, next == std::string_view::npos ? value.size() - pos
                                              : next - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (parts.size() != 3) {
      throw ParseError(line, "n_grid range must be start:stop:step");
    }
    const int start = parse_number<int>(parts[0], line, "n_grid");
    const int stop = parse_number<int>(parts[1], line, "n_grid");
    const int step = parse_number<int>(parts[2], line, "n_grid");
    if (step < 1) throw ParseError(line, "n_grid step must be >= 1");
    for (int n = start; n <= stop; n += step) grid.push_back(n);
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto next = value.find(',', pos);
    const auto token = trim(value.substr(
        pos, next == std::string_view::npos ? value.size() - pos : next - pos));
    if (token.empty()) {
      throw ParseError(line, "empty entry in n_grid list");
    }
    grid.push_back(parse_number<int>(token, line, "n_grid"));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return grid;
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_number;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const auto comment = line.find('#');
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_number, "expected 'key = value'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(line_number, "expected 'key = value'");
    }

    if (key == "p") {
      config.p = parse_number<int>(value, line_number, key);
    } else if (key == "n_nonzero") {
      config.n_nonzero = parse_number<int>(value, line_number, key);
    } else if (key == "beta_low") {
      config.beta_low = parse_number<double>(value, line_number, key);
    } else if (key == "beta_high") {
      config.beta_high = parse_number<double>(value, line_number, key);
    } else if (key == "snr") {
      config.snr = parse_number<double>(value, line_number, key);
    } else if (key == "n_grid") {
      config.n_grid = parse_n_grid(value, line_number);
    } else if (key == "reps") {
      config.reps = parse_number<int>(value, line_number, key);
    } else if (key == "test_size") {
      config.test_size = parse_number<int>(value, line_number, key);
    } else if (key == "k_folds") {
      config.k_folds = parse_number<int>(value, line_number, key);
    } else if (key == "pool_size") {
      config.pool_size = parse_number<int>(value, line_number, key);
    } else if (key == "master_seed") {
      config.master_seed =
          parse_number<std::uint64_t>(value, line_number, key);
    } else {
      throw ParseError(line_number, "unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace lassopeak
