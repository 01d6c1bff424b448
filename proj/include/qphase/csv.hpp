#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace qphase {

/// Shortest round-trip decimal form of v (std::to_chars); the same value
/// always prints the same bytes, which is what makes reruns byte-identical.
std::string format_double(double v);

/// Streaming CSV writer: fixed header, one row per call, '\n' line ends.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    /// For rows with non-numeric leading cells (e.g. state names).
    void row_mixed(const std::vector<std::string>& cells);

    bool good() const { return static_cast<bool>(out_); }

  private:
    std::ofstream out_;
    std::size_t width_;
};

}  // namespace qphase
