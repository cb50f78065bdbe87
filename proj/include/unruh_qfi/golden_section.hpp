#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "unruh_qfi/errors.hpp"

namespace unruh_qfi {

struct GoldenSectionResult {
    double x = 0.0;
    double value = 0.0;
    /// Width of the final bracket.
    double width = 0.0;
    int evaluations = 0;
};

/// Maximum of a unimodal f on [lo, hi], shrinking the bracket below `tol`.
template <typename F>
    requires std::invocable<F, double>
GoldenSectionResult golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iterations = 500) {
    if (!(lo < hi)) throw DomainError("golden_section_maximize: empty bracket");
    if (!(tol > 0.0)) throw DomainError("golden_section_maximize: tolerance must be positive");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;

    for (int it = 0; it < max_iterations && (b - a) >= tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    if (b - a >= tol) throw NumericalError("golden_section_maximize: bracket did not shrink below tolerance");

    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    ++evals;
    GoldenSectionResult r{mid, fm, b - a, evals};
    if (fc > r.value) r = {c, fc, b - a, evals};
    if (fd > r.value) r = {d, fd, b - a, evals};
    return r;
}

}  // namespace unruh_qfi
