#include "sweep/numeric.hpp"

#include "sweep/errors.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace sweep {

std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw FormatError("not a valid number: '" + std::string(text) + "'");
    }
    return value;
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw FormatError("not a valid integer: '" + std::string(text) + "'");
    }
    return value;
}

bool is_exact_integer(double value) {
    if (!std::isfinite(value) || value != std::floor(value)) {
        return false;
    }
    return std::fabs(value) <= 9007199254740992.0; // 2^53
}

} // namespace sweep
