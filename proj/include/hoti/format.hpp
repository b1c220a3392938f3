#pragma once

#include <string>
#include <vector>

namespace hoti {

inline constexpr const char* kSchemaVersion = "1.0";

// Rounds to 12 significant digits so that serialized numbers are stable.
double round_sig(double v, int digits = 12);
std::string format_number(double v, int digits = 12);

class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& contents);

} // namespace hoti
