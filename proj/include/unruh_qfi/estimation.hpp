#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "unruh_qfi/detectors.hpp"
#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/qfi.hpp"
#include "unruh_qfi/rng.hpp"

namespace unruh_qfi {

using DetectorModel = std::variant<SingleDetectorParams, TwoDetectorParams>;

inline void validate(const DetectorModel& m) {
    std::visit([](const auto& p) { p.validate(); }, m);
}

inline double temperature_of(const DetectorModel& m) {
    return std::visit([](const auto& p) { return p.temperature(); }, m);
}

inline QfiBreakdown qfi_of(const DetectorModel& m) {
    return std::visit(
        [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SingleDetectorParams>)
                return qfi_single(p);
            else
                return qfi_two(p);
        },
        m);
}

/// Outcome histogram of n i.i.d. measurements. Outcomes never observed are absent.
struct ShotRecord {
    std::map<std::size_t, std::uint64_t> outcome_counts;
    std::uint64_t n_shots = 0;
    std::uint64_t seed = 0;

    bool operator==(const ShotRecord&) const = default;
};

/// Born-rule probabilities Tr[Pi_x rho], clamped to [0, 1] and renormalized.
template <std::size_t N>
std::vector<double> outcome_probabilities(const HermitianMatrix<N>& rho, const Povm<N>& povm) {
    std::vector<double> p;
    p.reserve(povm.size());
    double total = 0.0;
    for (const auto& e : povm.elements()) {
        p.push_back(std::clamp(expectation(rho, e), 0.0, 1.0));
        total += p.back();
    }
    if (std::abs(total - 1.0) > 1e-8) {
        throw DomainError("outcome probabilities sum to " + std::to_string(total) + ", not 1");
    }
    for (auto& x : p) x /= total;
    return p;
}

/// Inverse-CDF sampling; shot i consumes draw i of CounterRng(seed).
template <std::size_t N>
ShotRecord sample_measurements(const HermitianMatrix<N>& rho, const Povm<N>& povm, std::uint64_t n_shots,
                               std::uint64_t seed) {
    const auto p = outcome_probabilities(rho, povm);
    std::vector<double> cdf(p.size());
    std::size_t last_possible = 0;
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        cdf[k] = acc;
        if (p[k] > 0.0) last_possible = k;
    }

    std::vector<std::uint64_t> counts(p.size(), 0);
    CounterRng rng(seed);
    for (std::uint64_t i = 0; i < n_shots; ++i) {
        const double u = rng.uniform();
        std::size_t k = 0;
        while (k < cdf.size() && !(u < cdf[k])) ++k;
        if (k >= cdf.size()) k = last_possible;
        ++counts[k];
    }

    ShotRecord r{{}, n_shots, seed};
    for (std::size_t k = 0; k < counts.size(); ++k)
        if (counts[k] > 0) r.outcome_counts[k] = counts[k];
    return r;
}

enum class Measurement {
    /// Projectors on the SLD eigenvectors; estimator xi I + L/J.
    sld_eigenbasis,
    /// Computational-basis projectors; locally unbiased classical estimator.
    computational_basis,
};

inline std::string to_string(Measurement m) {
    return m == Measurement::sld_eigenbasis ? "sld" : "computational";
}

struct EstimationReport {
    double parameter_true = 0.0;
    double estimate_mean = 0.0;
    /// Variance of the mean estimate: shot_variance / n_shots.
    double estimate_variance = 0.0;
    /// Sample variance of the single-shot estimates (n - 1 denominator).
    double shot_variance = 0.0;
    double qfi_used = 0.0;
    double crb_per_shot = 0.0;
    /// Fisher information of the measurement actually performed.
    double measurement_fisher = 0.0;
    std::uint64_t n_shots = 0;
    double standard_error = 0.0;
    std::uint64_t seed = 0;
    Measurement measurement = Measurement::sld_eigenbasis;
    ShotRecord shots;
    /// Estimate attached to each POVM outcome.
    std::vector<double> outcome_estimates;

    bool operator==(const EstimationReport&) const = default;
};

namespace detail {

template <std::size_t N>
EstimationReport estimate_on_family(const StateFamily<N>& family, double xi, double qfi, std::uint64_t n_shots,
                                    std::uint64_t seed, Measurement measurement) {
    const HermitianMatrix<N> rho = family.state(xi);
    const SldOperator<N> l = sld(family, xi);

    EstimationReport rep;
    rep.parameter_true = xi;
    rep.qfi_used = qfi;
    rep.crb_per_shot = 1.0 / qfi;
    rep.n_shots = n_shots;
    rep.seed = seed;
    rep.measurement = measurement;

    if (measurement == Measurement::sld_eigenbasis) {
        const Povm<N> povm = sld_eigenprojectors(l);
        const HermitianMatrix<N> estimator = optimal_estimator(xi, qfi, l);
        for (const auto& e : povm.elements()) rep.outcome_estimates.push_back(expectation(e, estimator));
        rep.measurement_fisher = classical_fisher(family, xi, povm);
        rep.shots = sample_measurements(rho, povm, n_shots, seed);
    } else {
        const Povm<N> povm = Povm<N>::computational_basis();
        const double fc = classical_fisher(family, xi, povm);
        if (!(fc > 0.0)) throw DomainError("run_estimation: computational-basis measurement carries no information");
        const HermitianMatrix<N> drho = family.derivative(xi);
        for (const auto& e : povm.elements()) {
            const double p = expectation(rho, e);
            rep.outcome_estimates.push_back(p > 1e-12 ? xi + expectation(drho, e) / p / fc : xi);
        }
        rep.measurement_fisher = fc;
        rep.shots = sample_measurements(rho, povm, n_shots, seed);
    }

    double sum = 0.0;
    for (const auto& [k, c] : rep.shots.outcome_counts) sum += static_cast<double>(c) * rep.outcome_estimates[k];
    const double n = static_cast<double>(n_shots);
    rep.estimate_mean = sum / n;
    double ss = 0.0;
    for (const auto& [k, c] : rep.shots.outcome_counts) {
        const double d = rep.outcome_estimates[k] - rep.estimate_mean;
        ss += static_cast<double>(c) * d * d;
    }
    rep.shot_variance = ss / (n - 1.0);
    rep.estimate_variance = rep.shot_variance / n;
    rep.standard_error = std::sqrt(rep.estimate_variance);
    return rep;
}

}  // namespace detail

/**
 * Simulate the estimation protocol at the true Unruh temperature: prepare
 * rho(T), measure n_shots times, apply the estimator, report mean and spread.
 */
inline EstimationReport run_estimation(const DetectorModel& model, std::uint64_t n_shots, std::uint64_t seed,
                                       Measurement measurement = Measurement::sld_eigenbasis) {
    validate(model);
    if (n_shots < 2) throw DomainError("run_estimation: need at least 2 shots");
    const double t = temperature_of(model);
    if (!(t > 0.0)) throw DomainError("run_estimation: acceleration must be positive");
    const double qfi = qfi_of(model).total;
    if (!(qfi > 0.0)) throw DomainError("run_estimation: QFI is zero, the estimator is undefined");

    return std::visit(
        [&](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SingleDetectorParams>)
                return detail::estimate_on_family(single_detector_family(p), t, qfi, n_shots, seed, measurement);
            else
                return detail::estimate_on_family(two_detector_family(p), t, qfi, n_shots, seed, measurement);
        },
        model);
}

/// n * J * var(mean) - 1: zero when the Cramer-Rao bound var >= 1/(n J) is saturated.
inline double cramer_rao_gap(const EstimationReport& r) {
    return r.estimate_variance * static_cast<double>(r.n_shots) * r.qfi_used - 1.0;
}

}  // namespace unruh_qfi
