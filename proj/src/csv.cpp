#include "qphase/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace qphase {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), width_(header.size()) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_)
        throw std::invalid_argument("csv: row width != header width");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != width_)
        throw std::invalid_argument("csv: row width != header width");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace qphase
