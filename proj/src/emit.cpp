#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <vskx/error.hpp>
#include <vskx/harness.hpp>

namespace vskx {

namespace {

constexpr const char* kCsvHeader = "function,distribution,method,lambda2,rmse,seed,noise_sigma";

std::string sci(double v, int digits = 16) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

void require_nonempty(const std::vector<ExperimentResult>& results) {
  if (results.empty()) throw Error(ErrorKind::Config, "no results to emit");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorKind::Io, "malformed number '" + s + "'");
  return v;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "table") return OutputFormat::Table;
  if (name == "errors") return OutputFormat::Errors;
  return std::nullopt;
}

void emit(const std::vector<ExperimentResult>& results, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Csv: emit_csv(results, out); break;
    case OutputFormat::Table: emit_table(results, out); break;
    case OutputFormat::Errors: emit_errors(results, out); break;
  }
  if (!out) throw Error(ErrorKind::Io, "failed to write results");
}

void emit_csv(const std::vector<ExperimentResult>& results, std::ostream& out) {
  require_nonempty(results);
  out << kCsvHeader << '\n';
  for (const auto& r : results) {
    out << to_string(r.function_id) << ',' << to_string(r.distribution) << ','
        << to_string(r.method) << ',' << sci(r.lambda2) << ',' << sci(r.rmse) << ',' << r.seed
        << ',' << sci(r.noise_sigma) << '\n';
  }
}

std::vector<ExperimentResult> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorKind::Io, "missing or unexpected CSV header");
  }
  std::vector<ExperimentResult> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 7) throw Error(ErrorKind::Io, "CSV row needs 7 fields: " + line);
    const auto f = parse_test_function(fields[0]);
    const auto d = parse_distribution(fields[1]);
    const auto m = parse_method(fields[2]);
    if (!f || !d || !m) throw Error(ErrorKind::Io, "unknown label in CSV row: " + line);
    ExperimentResult r;
    r.function_id = *f;
    r.distribution = *d;
    r.method = *m;
    r.lambda2 = to_double(fields[3]);
    r.rmse = to_double(fields[4]);
    r.seed = std::stoull(fields[5]);
    r.noise_sigma = to_double(fields[6]);
    out.push_back(std::move(r));
  }
  return out;
}

// One row per lambda2, one column per (function, distribution, method) in
// first-seen order.
void emit_table(const std::vector<ExperimentResult>& results, std::ostream& out) {
  require_nonempty(results);
  std::vector<std::string> columns;
  std::map<std::string, std::size_t> column_of;
  std::vector<double> rows;
  for (const auto& r : results) {
    const std::string key =
        to_string(r.function_id) + "/" + to_string(r.distribution) + "/" + to_string(r.method);
    if (column_of.emplace(key, columns.size()).second) columns.push_back(key);
    if (std::find(rows.begin(), rows.end(), r.lambda2) == rows.end()) rows.push_back(r.lambda2);
  }
  std::sort(rows.begin(), rows.end());

  std::vector<std::vector<std::string>> cells(rows.size(),
                                              std::vector<std::string>(columns.size(), "-"));
  for (const auto& r : results) {
    const std::string key =
        to_string(r.function_id) + "/" + to_string(r.distribution) + "/" + to_string(r.method);
    const auto row = static_cast<std::size_t>(
        std::find(rows.begin(), rows.end(), r.lambda2) - rows.begin());
    cells[row][column_of[key]] = sci(r.rmse, 2);
  }

  std::size_t width = 10;
  for (const auto& c : columns) width = std::max(width, c.size() + 2);
  auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };

  std::string header = "lambda2";
  for (const auto& c : columns) header += pad(c);
  out << header << '\n' << std::string(header.size(), '-') << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    char l2[16];
    std::snprintf(l2, sizeof l2, "%7.2f", rows[i]);
    out << l2;
    for (const auto& cell : cells[i]) out << pad(cell);
    out << '\n';
  }
}

void emit_errors(const std::vector<ExperimentResult>& results, std::ostream& out) {
  require_nonempty(results);
  out << "function,distribution,method,lambda2,x,abs_error\n";
  for (const auto& r : results) {
    if (r.grid.size() == 0) {
      throw Error(ErrorKind::Config, "per-point errors were not retained (set keep_errors)");
    }
    for (Index i = 0; i < r.grid.size(); ++i) {
      out << to_string(r.function_id) << ',' << to_string(r.distribution) << ','
          << to_string(r.method) << ',' << sci(r.lambda2) << ',' << sci(r.grid(i)) << ','
          << sci(r.abs_error(i)) << '\n';
    }
  }
}

}  // namespace vskx
