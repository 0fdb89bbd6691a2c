#pragma once

// Output helpers for the CLI: effective-config echo, CSV and JSON-lines
// emission. Every file starts with a '#'-prefixed metadata block that is
// itself a valid config file once the "# " prefix is stripped, so any run
// can be reproduced from its own output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace cli {

inline std::string fmt17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

// Insertion-ordered key/value list used for the config echo.
class ConfigEcho {
public:
  void set(const std::string& key, const std::string& value) {
    for (auto& kv : entries_) {
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    }
    entries_.emplace_back(key, value);
  }
  void set(const std::string& key, double value) { set(key, fmt17(value)); }
  void set(const std::string& key, long value) { set(key, std::to_string(value)); }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

class Writer {
public:
  // Empty path selects standard output.
  explicit Writer(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output path: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

inline void write_header(std::ostream& os, const std::string& command,
                         const ConfigEcho& config) {
  os << "# cqmsc " << command << "\n";
  os << "# schema_version = 1\n";
  os << "# config-begin\n";
  os << "# command = " << command << "\n";
  for (const auto& [key, value] : config.entries()) {
    os << "# " << key << " = " << value << "\n";
  }
  os << "# config-end\n";
}

// A table cell: numbers print bare in both formats, text is quoted in the
// JSON-lines format.
struct Cell {
  std::string text;
  bool is_text;
  Cell(double value) : text(fmt17(value)), is_text(false) {}  // NOLINT(google-explicit-constructor)
  Cell(const std::string& value) : text(value), is_text(true) {}  // NOLINT
  Cell(const char* value) : text(value), is_text(true) {}  // NOLINT
};

class CsvTable {
public:
  CsvTable(std::ostream& os, const std::string& command, const ConfigEcho& config,
           std::vector<std::string> columns, bool json_lines)
      : os_(os), columns_(std::move(columns)), json_lines_(json_lines) {
    if (json_lines_) {
      os_ << "{\"schema_version\":1,\"command\":\"" << command << "\",\"config\":{";
      bool first = true;
      for (const auto& [key, value] : config.entries()) {
        if (!first) os_ << ",";
        os_ << "\"" << key << "\":\"" << value << "\"";
        first = false;
      }
      os_ << "}}\n";
    } else {
      write_header(os_, command, config);
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        os_ << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
      }
    }
  }

  void row(const std::vector<Cell>& cells) {
    if (json_lines_) {
      os_ << "{";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os_ << "\"" << columns_[i] << "\":";
        if (cells[i].is_text) {
          os_ << "\"" << cells[i].text << "\"";
        } else {
          os_ << (cells[i].text == "nan" || cells[i].text == "-nan" ? "null" : cells[i].text);
        }
        if (i + 1 < cells.size()) os_ << ",";
      }
      os_ << "}\n";
      return;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os_ << cells[i].text << (i + 1 < cells.size() ? "," : "\n");
    }
  }

private:
  std::ostream& os_;
  std::vector<std::string> columns_;
  bool json_lines_;
};

}  // namespace cli
