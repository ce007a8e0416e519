#include "bubble/series.hpp"

#include <algorithm>
#include <cmath>

#include "bubble/errors.hpp"
#include "bubble/format.hpp"

namespace bubble {

std::string_view basis_name(Basis b) {
    return b == Basis::nominal ? "nominal" : "deflated";
}

Basis basis_from_name(std::string_view name) {
    if (name == "nominal") return Basis::nominal;
    if (name == "deflated") return Basis::deflated;
    throw DataError("unknown basis '" + std::string(name) + "'");
}

PriceSeries::PriceSeries(std::string label, Frequency frequency, Basis basis,
                         std::vector<Observation> observations,
                         std::optional<DeflationRecord> deflation)
    : label_(std::move(label)),
      frequency_(frequency),
      basis_(basis),
      deflation_(std::move(deflation)),
      observations_(std::move(observations)) {
    if (observations_.empty())
        throw DataError("series '" + label_ + "' has no observations");
    if (basis_ == Basis::deflated && !deflation_)
        throw DataError("series '" + label_ +
                        "' is deflated but carries no deflation record");
    const double spacing = frequency_spacing(frequency_);
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& o = observations_[i];
        if (!std::isfinite(o.value) || o.value < 0.0)
            throw DataError("series '" + label_ + "': value " +
                            format_double(o.value) + " at t=" + format_double(o.t) +
                            " is negative or not finite");
        if (i == 0) continue;
        const double dt = o.t - observations_[i - 1].t;
        if (dt <= 0.0)
            throw DataError("series '" + label_ +
                            "': observation times not strictly increasing at t=" +
                            format_double(o.t));
        if (frequency_ != Frequency::irregular && std::fabs(dt - spacing) > 1e-9)
            throw DataError("series '" + label_ + "': gap or irregular spacing (" +
                            format_double(dt) + " years) before t=" +
                            format_double(o.t) + " for " +
                            std::string(frequency_name(frequency_)) + " data");
    }
}

std::ptrdiff_t PriceSeries::index_at(double t, double tol) const {
    auto it = std::lower_bound(observations_.begin(), observations_.end(), t - tol,
                               [](const Observation& o, double v) { return o.t < v; });
    if (it == observations_.end() || std::fabs(it->t - t) > tol) return -1;
    return it - observations_.begin();
}

double PriceSeries::value_at(double t, double tol) const {
    const auto i = index_at(t, tol);
    if (i < 0)
        throw DataError("series '" + label_ + "' has no observation at t=" +
                        format_double(t));
    return observations_[static_cast<std::size_t>(i)].value;
}

PriceSeries PriceSeries::with_label(std::string label) const {
    return PriceSeries(std::move(label), frequency_, basis_, observations_, deflation_);
}

Frequency frequency_for_step(double step) {
    for (Frequency f : {Frequency::annual, Frequency::quarterly, Frequency::monthly})
        if (std::fabs(step - frequency_spacing(f)) <= 1e-9) return f;
    return Frequency::irregular;
}

}  // namespace bubble
