#include "bubble/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bubble {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("to_chars failure");
    return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    if (res.ec != std::errc()) throw std::runtime_error("to_chars failure");
    return std::string(buf, res.ptr);
}

double round_sig(double v, int figures) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    const double mag = std::pow(10.0, figures - 1 - std::floor(std::log10(std::fabs(v))));
    return std::round(v * mag) / mag;
}

}  // namespace bubble
