// csv.hpp — Deterministic CSV cells: comma-separated, '.' decimal point,
// LF line endings, 17 significant digits.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace udq {

// Fixed 17 significant digits (round-trip exact for double); locale-free via
// std::to_chars, so repeated runs emit identical bytes.
std::string format_double(double v);

// Quotes a cell only when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& cell);

void write_csv_line(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace udq
