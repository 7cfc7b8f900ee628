#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sweep {

/// Shortest decimal string that parses back to exactly the same double
/// (at most 17 significant digits). Used everywhere a float is serialized.
std::string format_double(double value);

/// Strict parse of a full string as a double. Throws FormatError on
/// trailing garbage, empty input, or out-of-range values.
double parse_double(std::string_view text);

/// Strict parse of a full string as a signed 64-bit integer.
std::int64_t parse_int(std::string_view text);

/// True when the value is integral and exactly representable as int64
/// (|value| <= 2^53), so it can round-trip through an integer field.
bool is_exact_integer(double value);

} // namespace sweep
