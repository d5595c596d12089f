#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "ucilab/errors.hpp"

namespace ucilab {

// 17-significant-digit decimal rendering; the CSV reproducibility contract.
std::string fmt17(double v);

// CSV with a fixed header row, '.' decimal separator, '\n' line endings.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells);

 private:
  std::ofstream out_;
  std::size_t width_;
};

// Two-column gnuplot series: "x y\n" per line, 17 significant digits.
void write_series(const std::string& path, const std::vector<std::pair<double, double>>& xy);

} // namespace ucilab
