// emit.hpp — Deterministic CSV and SVG emission for the command-line tool

#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace openbcs::cli {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits, fixed scientific: round-trips and stays byte-stable.
std::string fmt(double v);
std::string fmt_int(long v);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// CSV with a leading comment line that records the resolved configuration.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& command,
              const KeyValues& config);

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void comment(const std::string& text);

private:
    std::ofstream out_;
};

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

// Minimal static line chart; log_y plots log10 of the values.
void svg_line_chart(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series, bool log_y = false);

}  // namespace openbcs::cli
