#pragma once

#include <string>
#include <string_view>

namespace bubble {

enum class Frequency { annual, quarterly, monthly, irregular };

/// Years between consecutive observations (0 for irregular).
double frequency_spacing(Frequency f);
std::string_view frequency_name(Frequency f);
Frequency frequency_from_name(std::string_view name);

/// One calendar period: a year ("1997"), a quarter ("1997Q2") or a month
/// ("2003-07"). Observation time stamps are period midpoints in decimal
/// years: quarter n of year Y maps to Y + (n-1)/4 + 1/8, month m to
/// Y + (m-1)/12 + 1/24, and a year to Y + 1/2.
struct Period {
    int year = 0;
    Frequency freq = Frequency::annual;
    int index = 1;  // 1-based quarter or month; ignored for annual

    static Period parse(std::string_view token);

    double start_time() const;
    double end_time() const;
    double mid_time() const;
    bool contains(double t) const;  // t in [start_time, end_time)
    /// The immediately following period.
    Period next() const;
    std::string str() const;

    bool operator==(const Period&) const = default;
};

/// The period of frequency f that contains time t (inverse of mid_time for
/// calendar frequencies). Throws for irregular.
Period period_containing(double t, Frequency f);

}  // namespace bubble
