#include "bubble/period.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "bubble/errors.hpp"

namespace bubble {

double frequency_spacing(Frequency f) {
    switch (f) {
        case Frequency::annual: return 1.0;
        case Frequency::quarterly: return 0.25;
        case Frequency::monthly: return 1.0 / 12.0;
        case Frequency::irregular: return 0.0;
    }
    throw DataError("unknown frequency");
}

std::string_view frequency_name(Frequency f) {
    switch (f) {
        case Frequency::annual: return "annual";
        case Frequency::quarterly: return "quarterly";
        case Frequency::monthly: return "monthly";
        case Frequency::irregular: return "irregular";
    }
    throw DataError("unknown frequency");
}

Frequency frequency_from_name(std::string_view name) {
    if (name == "annual") return Frequency::annual;
    if (name == "quarterly") return Frequency::quarterly;
    if (name == "monthly") return Frequency::monthly;
    if (name == "irregular") return Frequency::irregular;
    throw DataError("unknown frequency name '" + std::string(name) + "'");
}

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

[[noreturn]] void bad_period(std::string_view token) {
    throw DataError("invalid period '" + std::string(token) +
                    "' (expected YYYY, YYYYQn or YYYY-MM)");
}

}  // namespace

Period Period::parse(std::string_view token) {
    Period p;
    auto qpos = token.find_first_of("Qq");
    auto dash = token.find('-');
    if (qpos != std::string_view::npos) {
        int q = 0;
        if (!parse_int(token.substr(0, qpos), p.year) ||
            !parse_int(token.substr(qpos + 1), q) || q < 1 || q > 4)
            bad_period(token);
        p.freq = Frequency::quarterly;
        p.index = q;
    } else if (dash != std::string_view::npos && dash > 0) {
        int m = 0;
        if (!parse_int(token.substr(0, dash), p.year) ||
            !parse_int(token.substr(dash + 1), m) || m < 1 || m > 12)
            bad_period(token);
        p.freq = Frequency::monthly;
        p.index = m;
    } else {
        if (!parse_int(token, p.year)) bad_period(token);
        p.freq = Frequency::annual;
        p.index = 1;
    }
    if (p.year < 1 || p.year > 9999) bad_period(token);
    return p;
}

double Period::start_time() const {
    switch (freq) {
        case Frequency::annual: return year;
        case Frequency::quarterly: return year + (index - 1) * 0.25;
        case Frequency::monthly: return year + (index - 1) / 12.0;
        default: throw DataError("irregular period has no calendar bounds");
    }
}

double Period::end_time() const { return start_time() + frequency_spacing(freq); }

double Period::mid_time() const {
    const int eff = freq == Frequency::annual ? 1 : index;
    return year + (eff - 0.5) * frequency_spacing(freq);
}

bool Period::contains(double t) const { return t >= start_time() && t < end_time(); }

Period Period::next() const {
    Period p = *this;
    const int per_year = freq == Frequency::quarterly ? 4
                       : freq == Frequency::monthly   ? 12
                                                      : 1;
    if (freq == Frequency::annual || index == per_year) {
        ++p.year;
        p.index = 1;
    } else {
        ++p.index;
    }
    return p;
}

std::string Period::str() const {
    char buf[16];
    switch (freq) {
        case Frequency::annual:
            std::snprintf(buf, sizeof(buf), "%04d", year);
            break;
        case Frequency::quarterly:
            std::snprintf(buf, sizeof(buf), "%04dQ%d", year, index);
            break;
        case Frequency::monthly:
            std::snprintf(buf, sizeof(buf), "%04d-%02d", year, index);
            break;
        default:
            throw DataError("irregular period has no canonical form");
    }
    return buf;
}

Period period_containing(double t, Frequency f) {
    if (f == Frequency::irregular)
        throw DataError("irregular frequency has no calendar periods");
    Period p;
    p.freq = f;
    p.year = static_cast<int>(std::floor(t));
    const double frac = t - p.year;
    switch (f) {
        case Frequency::annual: p.index = 1; break;
        case Frequency::quarterly:
            p.index = std::clamp(static_cast<int>(frac * 4.0) + 1, 1, 4);
            break;
        case Frequency::monthly:
            p.index = std::clamp(static_cast<int>(frac * 12.0) + 1, 1, 12);
            break;
        default: break;
    }
    return p;
}

}  // namespace bubble
