#pragma once

#include <string>

namespace bubble {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

/// Fixed-point representation with the given number of decimals.
std::string format_fixed(double v, int decimals);

/// Rounds to the given number of significant figures.
double round_sig(double v, int figures);

}  // namespace bubble
