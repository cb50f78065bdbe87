#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>

#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/matrix.hpp"

namespace unruh_qfi {

/// 1e-5 * max(1, |x|)
inline double default_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

/// (f(x + h) - f(x - h)) / 2h, entry-wise, re-symmetrized.
template <std::size_t N, typename F>
    requires std::invocable<F, double>
HermitianMatrix<N> central_diff(F&& f, double x, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("central_diff: step must be positive, got " + std::to_string(h));
    const HermitianMatrix<N> plus = f(x + h);
    const HermitianMatrix<N> minus = f(x - h);
    return HermitianMatrix<N>::symmetrize((plus.matrix() - minus.matrix()) * complex{0.5 / h, 0.0});
}

template <std::size_t N, typename F>
    requires std::invocable<F, double>
HermitianMatrix<N> central_diff(F&& f, double x) {
    return central_diff<N>(std::forward<F>(f), x, default_step(x));
}

}  // namespace unruh_qfi
