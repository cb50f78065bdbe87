#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "unruh_qfi/detectors.hpp"
#include "unruh_qfi/eigh.hpp"
#include "unruh_qfi/qfi.hpp"
#include "unruh_qfi/rng.hpp"

namespace unruh_qfi {

/// Outcome of one closed-form-versus-oracle comparison.
struct CheckResult {
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    int points = 0;

    bool passed() const { return worst < tolerance; }
};

inline double relative_difference(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Grids the closed forms are checked on.
inline constexpr std::array<double, 6> kValidationAccelerations{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
inline constexpr std::array<double, 3> kValidationMus{0.001, 0.01, 0.1};
inline constexpr std::array<double, 5> kValidationAngles{0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kHalfPi};

/**
 * Cross-checks every closed form against the generic spectral route:
 * diagonal edge forms and the general two-detector formula against
 * qfi_spectral, the general-angle single-detector eigenvalues against eigh,
 * the vanishing two-detector quantum part, the single/two identity, and the
 * SLD contract at random points.
 */
inline std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 2024) {
    std::vector<CheckResult> out;

    CheckResult edge{"single-detector edge forms vs spectral QFI", 0.0, 1e-8, 0};
    CheckResult two{"two-detector closed form vs spectral QFI", 0.0, 1e-8, 0};
    CheckResult quantum{"two-detector quantum part vanishes", 0.0, 1e-12, 0};
    CheckResult identity{"single(eta=pi/2) equals two(theta=0)", 0.0, 1e-12, 0};
    for (const double a : kValidationAccelerations) {
        for (const double mu : kValidationMus) {
            for (const double eta : {0.0, kHalfPi}) {
                const SingleDetectorParams p{1.0, a, mu, eta};
                const double closed = qfi_single(p).total;
                const double oracle = qfi_spectral(single_detector_family(p), p.temperature()).total;
                edge.worst = std::max(edge.worst, relative_difference(closed, oracle));
                ++edge.points;
            }
            for (const double theta : kValidationAngles) {
                const TwoDetectorParams p{1.0, a, mu, theta};
                const double closed = qfi_two(p).total;
                const auto oracle = qfi_spectral(two_detector_family(p), p.temperature());
                two.worst = std::max(two.worst, relative_difference(closed, oracle.total));
                quantum.worst = std::max(quantum.worst, std::abs(oracle.quantum_part));
                ++two.points;
                ++quantum.points;
            }
            const double js = qfi_single(SingleDetectorParams{1.0, a, mu, kHalfPi}).total;
            const double jt = qfi_two(TwoDetectorParams{1.0, a, mu, 0.0}).total;
            identity.worst = std::max(identity.worst, relative_difference(js, jt));
            ++identity.points;
        }
    }
    out.push_back(edge);
    out.push_back(two);
    out.push_back(quantum);
    out.push_back(identity);

    CounterRng rng(seed);
    const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };

    CheckResult spectrum{"general-eta eigenvalues vs eigh", 0.0, 1e-9, 0};
    for (int i = 0; i < 100; ++i) {
        const SingleDetectorParams p{1.0, uniform(0.1, 20.0), uniform(0.001, 0.1), uniform(0.01, kHalfPi - 0.01)};
        const auto closed = single_detector_eigensystem(p);
        const auto eig = eigh(single_detector_state(p));
        spectrum.worst = std::max({spectrum.worst, std::abs(closed.eigenvalues[1] - eig.eigenvalues[0]),
                                   std::abs(closed.eigenvalues[0] - eig.eigenvalues[1])});
        ++spectrum.points;
    }
    out.push_back(spectrum);

    CheckResult lyapunov{"SLD Lyapunov residual", 0.0, 1e-10, 0};
    CheckResult moment{"Tr[rho L^2] equals spectral QFI", 0.0, 1e-9, 0};
    const auto check_sld = [&](const auto& family, double t) {
        const auto l = sld(family, t);
        lyapunov.worst = std::max(lyapunov.worst, verify_lyapunov(l, family.state(t), family.derivative(t)));
        const double j = qfi_spectral(family, t).total;
        moment.worst = std::max(moment.worst, relative_difference(sld_second_moment(l, family.state(t)), j));
        ++lyapunov.points;
        ++moment.points;
    };
    for (int i = 0; i < 100; ++i) {
        const SingleDetectorParams p{1.0, uniform(0.2, 20.0), uniform(0.001, 0.1), uniform(0.0, kHalfPi)};
        check_sld(single_detector_family(p), p.temperature());
        const TwoDetectorParams q{1.0, uniform(0.2, 20.0), uniform(0.001, 0.1), uniform(0.0, kHalfPi)};
        check_sld(two_detector_family(q), q.temperature());
    }
    out.push_back(lyapunov);
    out.push_back(moment);
    return out;
}

}  // namespace unruh_qfi
