#pragma once

#include <optional>
#include <string>

namespace corraudit {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_shortest(double x);

/// `digits` significant digits, trailing zeros trimmed.
std::string format_significant(double x, int digits = 4);

/// Fixed notation with `decimals` places; never prints "-0.00".
std::string format_fixed(double x, int decimals);

std::optional<double> parse_double(std::string_view text);

}  // namespace corraudit
