#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bubble/period.hpp"

namespace bubble {

struct Observation {
    double t = 0.0;  // decimal years (period midpoint for calendar data)
    double value = 0.0;
};

enum class Basis { nominal, deflated };
std::string_view basis_name(Basis b);
Basis basis_from_name(std::string_view name);

/// Attached to a deflated series: the CPI series that produced it and the
/// base period the values were rebased to.
struct DeflationRecord {
    std::string cpi_label;
    std::string base;
};

/// An immutable, validated index series (prices, rents, sales counts).
///
/// Invariants enforced at construction: at least one observation; times
/// strictly increasing; for calendar frequencies the spacing matches the
/// frequency within 1e-9 years; all values finite and >= 0; a deflated
/// basis carries a deflation record.
class PriceSeries {
public:
    PriceSeries(std::string label, Frequency frequency, Basis basis,
                std::vector<Observation> observations,
                std::optional<DeflationRecord> deflation = std::nullopt);

    const std::string& label() const { return label_; }
    Frequency frequency() const { return frequency_; }
    Basis basis() const { return basis_; }
    const std::optional<DeflationRecord>& deflation() const { return deflation_; }
    const std::vector<Observation>& observations() const { return observations_; }

    std::size_t size() const { return observations_.size(); }
    const Observation& front() const { return observations_.front(); }
    const Observation& back() const { return observations_.back(); }

    /// Index of the observation at time t (within tol), or -1 when absent.
    std::ptrdiff_t index_at(double t, double tol = 1e-9) const;
    /// Value of the observation at time t; throws when absent.
    double value_at(double t, double tol = 1e-9) const;

    PriceSeries with_label(std::string label) const;

private:
    std::string label_;
    Frequency frequency_;
    Basis basis_;
    std::optional<DeflationRecord> deflation_;
    std::vector<Observation> observations_;
};

/// Classifies a uniform step as the calendar frequency it matches within
/// 1e-9 years, otherwise irregular.
Frequency frequency_for_step(double step);

}  // namespace bubble
