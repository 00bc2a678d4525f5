#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spar::io {

// CSV output: comma separators, '.' decimal point, 17 significant digits,
// header row, LF line endings. Numbers render bit-exactly reproducibly.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values, const std::string& flags = "") {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << num(values[i]);
    }
    if (!flags.empty()) out_ << ',' << flags;
    out_ << '\n';
  }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  std::ofstream out_;
};

struct NumericTable {
  std::vector<std::vector<double>> rows;
};

// Strict numeric CSV reader (optionally with a header line); malformed rows
// are reported with their line numbers.
inline NumericTable read_numeric_csv(const std::string& path, std::size_t min_cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
  NumericTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    bool ok = true;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      const std::string cell =
          line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) ok = false;
      } catch (...) {
        ok = false;
      }
      if (!ok) break;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!ok) {
      if (lineno == 1) continue;  // tolerate a header row
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-numeric row");
    }
    if (row.size() < min_cols)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected at least " +
                               std::to_string(min_cols) + " columns");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace spar::io
