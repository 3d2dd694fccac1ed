#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qforge {

inline constexpr const char* kVersion = "0.1.0";

// Floating-point formatting for output schemas: '.' decimal separator, no
// grouping, 17 significant digits so values round-trip exactly.
inline std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Minimal CSV emitter: '#'-prefixed comment lines (config echo), a header
// row with units in the column names, then data rows.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
  }

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void header(const std::vector<std::string>& names) {
    write_row_(names);
  }

  void row(const std::vector<std::string>& values) { write_row_(values); }

  void number_row(const std::vector<double>& values,
                  const std::string& suffix = "") {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += fmt_double(values[i]);
    }
    if (!suffix.empty()) {
      line += ',';
      line += suffix;
    }
    out_ << line << "\n";
  }

 private:
  void write_row_(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << "\n";
  }

  std::ofstream out_;
};

}  // namespace qforge
