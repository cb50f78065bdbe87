#pragma once

#include <optional>
#include <utility>

#include "unruh_qfi/detectors.hpp"
#include "unruh_qfi/errors.hpp"

namespace unruh_qfi {

/// Exactly one of mass (Schwarzschild, geometric units) or surface gravity.
struct HawkingQuery {
    std::optional<double> mass;
    std::optional<double> kappa_gravity;
    /// (chi_1, chi_2): Killing-field norms at two radii.
    std::optional<std::pair<double, double>> chi_ratio;
};

struct HawkingResult {
    double kappa_gravity = 0.0;
    /// Temperature at infinity, kappa / 2 pi.
    double temperature = 0.0;
    /// T(r1) / T(r2) when chi_ratio was given.
    std::optional<double> temperature_ratio;
};

/// T(r1)/T(r2) = chi_2/chi_1 for static observers at two radii.
inline double redshift_temperature_ratio(double chi1, double chi2) {
    if (!(chi1 > 0.0) || !(chi2 > 0.0)) throw DomainError("Killing-field norms must be positive");
    return chi2 / chi1;
}

inline HawkingResult hawking_temperature(const HawkingQuery& q) {
    if (q.mass.has_value() == q.kappa_gravity.has_value())
        throw DomainError("hawking_temperature: give exactly one of mass or surface gravity");

    HawkingResult r;
    if (q.mass) {
        if (!(*q.mass > 0.0)) throw DomainError("hawking_temperature: mass must be positive");
        r.kappa_gravity = 1.0 / (4.0 * *q.mass);
        r.temperature = 1.0 / (8.0 * kPi * *q.mass);
    } else {
        if (!(*q.kappa_gravity > 0.0)) throw DomainError("hawking_temperature: surface gravity must be positive");
        r.kappa_gravity = *q.kappa_gravity;
        r.temperature = *q.kappa_gravity / (2.0 * kPi);
    }
    if (q.chi_ratio) r.temperature_ratio = redshift_temperature_ratio(q.chi_ratio->first, q.chi_ratio->second);
    return r;
}

}  // namespace unruh_qfi
