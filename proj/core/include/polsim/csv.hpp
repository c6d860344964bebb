// csv.hpp — deterministic tabular output for CLI artifacts.

#pragma once

#include <string>
#include <vector>

namespace polsim::csv {

struct Dataset {
    std::vector<std::string> header;      //
    std::vector<std::vector<double>> rows; // rectangular, row-major
};

// Scientific notation with 13 significant digits and a compact exponent:
// 1.0 -> "1.000000000000e0", 2.5e-5 -> "2.500000000000e-5". Negative zero is
// canonicalized to "0.000000000000e0" so reruns are byte-identical.
std::string format_sci(double x);

// Serializes the dataset: UTF-8, comma separators, header first, one '\n' per
// row. Bit-identical for identical inputs.
std::string to_csv(const Dataset& data);

// Writes to_csv(data) to path; throws on I/O failure or a ragged dataset.
void write_csv(const Dataset& data, const std::string& path);

// Writes arbitrary text to path; throws on I/O failure.
void write_text(const std::string& text, const std::string& path);

} // namespace polsim::csv
