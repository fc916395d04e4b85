#pragma once

#include <string>
#include <vector>

namespace relaynet {

struct CsvTable {
  std::string schema;  // e.g. "rea-map/1"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

std::string to_csv(const CsvTable& table, const std::string& config_hash);
void write_csv(const std::string& path, const CsvTable& table, const std::string& config_hash);
void write_text(const std::string& path, const std::string& text);

}  // namespace relaynet
