#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small parsing/formatting helpers shared by the file formats.
namespace ivts {

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split(std::string_view s, char sep);

/// Whole-field parse; throws DataError on junk or trailing characters.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

} // namespace ivts
