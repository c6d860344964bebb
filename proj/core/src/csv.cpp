// csv.cpp — deterministic CSV formatting and file output.

#include "polsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace polsim::csv {

std::string format_sci(double x) {
    if (x == 0.0) {
        x = 0.0; // fold -0 into +0
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12e", x);
    const std::string raw = buf;
    const std::size_t epos = raw.find('e');
    if (epos == std::string::npos) {
        return raw; // nan/inf carry no exponent
    }
    const std::string mantissa = raw.substr(0, epos);
    std::string exponent = raw.substr(epos + 1);
    bool negative = false;
    if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
        negative = exponent[0] == '-';
        exponent.erase(0, 1);
    }
    std::size_t first = 0;
    while (first + 1 < exponent.size() && exponent[first] == '0') {
        ++first;
    }
    exponent.erase(0, first);
    return mantissa + "e" + (negative ? "-" : "") + exponent;
}

std::string to_csv(const Dataset& data) {
    std::string out;
    for (std::size_t i = 0; i < data.header.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += data.header[i];
    }
    out += '\n';
    for (const auto& row : data.rows) {
        if (row.size() != data.header.size()) {
            throw std::invalid_argument("to_csv: ragged dataset row");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += format_sci(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Dataset& data, const std::string& path) {
    write_text(to_csv(data), path);
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("write_text: cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write_text: write failed for '" + path + "'");
    }
}

} // namespace polsim::csv
