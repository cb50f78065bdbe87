#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unruh_qfi/detectors.hpp"
#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/estimation.hpp"
#include "unruh_qfi/golden_section.hpp"

namespace unruh_qfi {

enum class Model { single, two };
enum class Axis { acceleration, eta, theta, mu };
/// fig1 multiplies Fisher columns by 100 (units of 1e-2 omega^-2).
enum class OutputScale { natural, fig1 };

inline std::string to_string(Model m) { return m == Model::single ? "single" : "two"; }

inline std::string to_string(Axis a) {
    switch (a) {
        case Axis::acceleration: return "acceleration";
        case Axis::eta: return "eta";
        case Axis::theta: return "theta";
        case Axis::mu: return "mu";
    }
    return "?";
}

inline std::string to_string(OutputScale s) { return s == OutputScale::natural ? "natural" : "fig1"; }

inline double scale_factor(OutputScale s) { return s == OutputScale::fig1 ? 100.0 : 1.0; }

/// Parameter values held fixed while one axis varies. eta is read by the
/// single model, theta by the two-detector model.
struct FixedParams {
    double omega = 1.0;
    double acceleration = 1.0;
    double mu = 0.01;
    double eta = kHalfPi;
    double theta = 0.0;
};

inline DetectorModel make_model(Model m, const FixedParams& p) {
    if (m == Model::single) return SingleDetectorParams{p.omega, p.acceleration, p.mu, p.eta};
    return TwoDetectorParams{p.omega, p.acceleration, p.mu, p.theta};
}

inline FixedParams with_axis(FixedParams p, Axis axis, double value) {
    switch (axis) {
        case Axis::acceleration: p.acceleration = value; break;
        case Axis::eta: p.eta = value; break;
        case Axis::theta: p.theta = value; break;
        case Axis::mu: p.mu = value; break;
    }
    return p;
}

struct SweepSpec {
    Model model = Model::single;
    Axis axis = Axis::acceleration;
    double min = 0.1;
    double max = 20.0;
    std::size_t n_points = 200;
    FixedParams fixed{};
    OutputScale scale = OutputScale::natural;

    void validate() const {
        if (!(min < max)) throw DomainError("sweep: axis minimum must be below maximum");
        if (n_points < 2) throw DomainError("sweep: need at least 2 points");
        if (model == Model::single && axis == Axis::theta) throw DomainError("sweep: theta axis needs the two-detector model");
        if (model == Model::two && axis == Axis::eta) throw DomainError("sweep: eta axis needs the single-detector model");
        // Fixed parameters other than the swept one must be in range.
        ::unruh_qfi::validate(make_model(model, with_axis(fixed, axis, min)));
    }

    double point(std::size_t i) const {
        if (i + 1 == n_points) return max;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }
};

struct SweepRow {
    double axis_value = 0.0;
    double qfi_total = 0.0;
    double qfi_classical = 0.0;
    double qfi_quantum = 0.0;
    /// Populated for the two-detector model only.
    std::optional<double> concurrence;
    /// Set when the grid point failed model preconditions; values are NaN.
    std::string flag;

    bool flagged() const { return !flag.empty(); }
};

struct SweepTable {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
};

inline SweepRow evaluate_point(Model model, const FixedParams& p, double axis_value, OutputScale scale) {
    SweepRow row;
    row.axis_value = axis_value;
    try {
        const DetectorModel dm = make_model(model, p);
        const QfiBreakdown q = qfi_of(dm);
        const double k = scale_factor(scale);
        row.qfi_total = k * q.total;
        row.qfi_classical = k * q.classical_part;
        row.qfi_quantum = k * q.quantum_part;
        if (model == Model::two) row.concurrence = concurrence(two_detector_state(std::get<TwoDetectorParams>(dm)));
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.qfi_total = row.qfi_classical = row.qfi_quantum = nan;
        if (model == Model::two) row.concurrence = nan;
        row.flag = e.what();
    }
    return row;
}

/// One row per grid point in axis order; failing points are flagged and the sweep continues.
inline SweepTable sweep(const SweepSpec& spec) {
    spec.validate();
    SweepTable table{spec, {}, {}};
    table.rows.reserve(spec.n_points);
    bool warned = false;
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        const double x = spec.point(i);
        const FixedParams p = with_axis(spec.fixed, spec.axis, x);
        if (p.mu > kPerturbativeMu && !warned) {
            table.warnings.push_back("mu > 0.1: outside the first-order perturbative regime");
            warned = true;
        }
        table.rows.push_back(evaluate_point(spec.model, p, x, spec.scale));
    }
    return table;
}

struct MaxResult {
    double j_max = 0.0;
    double a_max = 0.0;
    FixedParams at_params{};
    double bracket_width = 0.0;
    /// Coarse-grid local maxima above 1% of the grid maximum, as (a, J).
    std::vector<std::pair<double, double>> candidates;

    bool multimodal() const { return candidates.size() > 1; }
};

struct MaxOptions {
    std::size_t coarse_points = 256;
    /// Final bracket width in units of 1/omega.
    double tolerance = 1e-7;
    double candidate_fraction = 0.01;
};

/**
 * Peak of the QFI over acceleration: coarse grid, then golden-section
 * refinement around the best grid point. Every strict local maximum above
 * 1% of the grid maximum is reported in `candidates`.
 */
inline MaxResult find_max(Model model, const FixedParams& fixed, double a_lo, double a_hi, const MaxOptions& opt = {}) {
    if (!(a_lo >= 0.0 && a_lo < a_hi)) throw DomainError("find_max: invalid acceleration domain");
    ::unruh_qfi::validate(make_model(model, with_axis(fixed, Axis::acceleration, a_lo)));

    const auto qfi_at = [&](double a) { return qfi_of(make_model(model, with_axis(fixed, Axis::acceleration, a))).total; };

    const std::size_t n = std::max<std::size_t>(opt.coarse_points, 3);
    std::vector<double> grid(n);
    std::vector<double> j(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = i + 1 == n ? a_hi : a_lo + (a_hi - a_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        j[i] = qfi_at(grid[i]);
    }
    const std::size_t g = static_cast<std::size_t>(std::max_element(j.begin(), j.end()) - j.begin());
    if (!(j[g] > 1e-300)) throw DomainError("find_max: QFI vanishes on the whole domain");

    MaxResult r;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (j[i] > j[i - 1] && j[i] > j[i + 1] && j[i] >= opt.candidate_fraction * j[g]) r.candidates.emplace_back(grid[i], j[i]);

    const double lo = grid[g == 0 ? 0 : g - 1];
    const double hi = grid[g + 1 == n ? n - 1 : g + 1];
    const auto refined = golden_section_maximize(qfi_at, lo, hi, opt.tolerance * fixed.omega);
    if (refined.value >= j[g]) {
        r.a_max = refined.x;
        r.j_max = refined.value;
    } else {
        r.a_max = grid[g];
        r.j_max = j[g];
    }
    r.bracket_width = refined.width;
    r.at_params = with_axis(fixed, Axis::acceleration, r.a_max);
    return r;
}

struct MaxCurveRow {
    double angle = 0.0;
    MaxResult result;
};

/// (J_max, a_max) as a function of the probe angle (eta for single, theta for two).
inline std::vector<MaxCurveRow> max_curve(Model model, const FixedParams& fixed, double angle_lo, double angle_hi,
                                          std::size_t n_points, double a_lo, double a_hi, const MaxOptions& opt = {}) {
    if (n_points < 2 || !(angle_lo < angle_hi)) throw DomainError("max_curve: invalid angle grid");
    const Axis axis = model == Model::single ? Axis::eta : Axis::theta;
    std::vector<MaxCurveRow> rows;
    rows.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = i + 1 == n_points
                             ? angle_hi
                             : angle_lo + (angle_hi - angle_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        rows.push_back({x, find_max(model, with_axis(fixed, axis, x), a_lo, a_hi, opt)});
    }
    return rows;
}

}  // namespace unruh_qfi
