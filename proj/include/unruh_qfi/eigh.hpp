#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/matrix.hpp"

namespace unruh_qfi {

/// Eigenvalues in descending order; eigenvectors[k] belongs to eigenvalues[k].
template <std::size_t N>
struct EigenDecomposition {
    std::array<double, N> eigenvalues{};
    std::array<Vector<N>, N> eigenvectors{};

    /// V diag(lambda) V^dagger
    ComplexMatrix<N> reconstruct() const {
        ComplexMatrix<N> m;
        for (std::size_t k = 0; k < N; ++k)
            m += ComplexMatrix<N>::outer(eigenvectors[k], eigenvectors[k]) * complex{eigenvalues[k], 0.0};
        return m;
    }

    double max_eigenvalue() const { return eigenvalues.front(); }
    double min_eigenvalue() const { return eigenvalues.back(); }

    /// <eigenvectors[i]| A |eigenvectors[j]> for all i, j.
    ComplexMatrix<N> in_eigenbasis(const ComplexMatrix<N>& a) const {
        ComplexMatrix<N> m;
        for (std::size_t j = 0; j < N; ++j) {
            const Vector<N> av = a * eigenvectors[j];
            for (std::size_t i = 0; i < N; ++i) m(i, j) = inner(eigenvectors[i], av);
        }
        return m;
    }
};

struct EighOptions {
    /// Convergence when the off-diagonal Frobenius norm drops below
    /// tolerance * max(1, ||A||_F).
    double tolerance = 1e-14;
    int max_sweeps = 100;
    /// Eigenvalues closer than this form a degenerate cluster.
    double cluster_gap = 1e-10;
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const ComplexMatrix<N>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q). The unitary is a phase
// on column q (making a(p, q) real and positive) followed by the classic
// real symmetric rotation.
template <std::size_t N>
void jacobi_rotate(ComplexMatrix<N>& a, ComplexMatrix<N>& v, std::size_t p, std::size_t q) {
    const complex b = a(p, q);
    const double abs_b = std::abs(b);
    if (abs_b == 0.0) return;
    const complex phase_conj = std::conj(b) / abs_b;

    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * abs_b);
    double t;
    if (std::abs(tau) > 1e150) {
        t = 0.5 / tau;
    } else {
        t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const complex u_pp{c, 0.0};
    const complex u_pq{s, 0.0};
    const complex u_qp = -s * phase_conj;
    const complex u_qq = c * phase_conj;

    for (std::size_t k = 0; k < N; ++k) {
        const complex akp = a(k, p);
        const complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
        const complex vkp = v(k, p);
        const complex vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
    for (std::size_t k = 0; k < N; ++k) {
        const complex apk = a(p, k);
        const complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

// Rotate so the largest-magnitude component (first one, on ties) is real
// and positive.
template <std::size_t N>
void normalize_phase(Vector<N>& x) {
    double best = 0.0;
    for (const auto& c : x) best = std::max(best, std::abs(c));
    if (best == 0.0) return;
    for (const auto& c : x) {
        if (std::abs(c) >= best * (1.0 - 1e-9)) {
            const complex ph = std::conj(c) / std::abs(c);
            for (auto& y : x) y *= ph;
            return;
        }
    }
}

// Tie rule for exactly equal eigenvalues: smaller complex argument of the
// first component where the two vectors differ goes first.
template <std::size_t N>
bool tie_before(const Vector<N>& x, const Vector<N>& y) {
    for (std::size_t k = 0; k < N; ++k) {
        if (std::abs(x[k] - y[k]) > 1e-12) {
            const double ax = std::arg(x[k]);
            const double ay = std::arg(y[k]);
            if (ax != ay) return ax < ay;
            return std::abs(x[k]) > std::abs(y[k]);
        }
    }
    return false;
}

}  // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
 *
 * Eigenvectors are phase-normalized and, inside each degenerate cluster,
 * re-orthonormalized with modified Gram-Schmidt. Callers must not rely on
 * which basis is picked inside a cluster. Deterministic: identical input
 * bits give identical output bits.
 */
template <std::size_t N>
EigenDecomposition<N> eigh(const HermitianMatrix<N>& h, const EighOptions& opt = {}) {
    ComplexMatrix<N> a = h.matrix();
    ComplexMatrix<N> v = ComplexMatrix<N>::identity();
    const double tol = opt.tolerance * std::max(1.0, a.frobenius_norm());

    double off = detail::off_diagonal_norm(a);
    for (int sweep = 0; sweep < opt.max_sweeps && off >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
        off = detail::off_diagonal_norm(a);
    }
    if (off >= tol) {
        throw ConvergenceError("eigh: no convergence after " + std::to_string(opt.max_sweeps) +
                                   " sweeps, off-diagonal norm " + std::to_string(off),
                               off);
    }

    EigenDecomposition<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.eigenvalues[k] = a(k, k).real();
        for (std::size_t i = 0; i < N; ++i) out.eigenvectors[k][i] = v(i, k);
        detail::normalize_phase(out.eigenvectors[k]);
    }

    // Insertion sort, N <= 4.
    for (std::size_t i = 1; i < N; ++i) {
        for (std::size_t j = i; j > 0; --j) {
            const double lj = out.eigenvalues[j];
            const double lp = out.eigenvalues[j - 1];
            const bool swap = lj > lp || (lj == lp && detail::tie_before(out.eigenvectors[j], out.eigenvectors[j - 1]));
            if (!swap) break;
            std::swap(out.eigenvalues[j], out.eigenvalues[j - 1]);
            std::swap(out.eigenvectors[j], out.eigenvectors[j - 1]);
        }
    }

    // Modified Gram-Schmidt inside clusters.
    std::size_t start = 0;
    while (start < N) {
        std::size_t end = start + 1;
        while (end < N && out.eigenvalues[end - 1] - out.eigenvalues[end] < opt.cluster_gap) ++end;
        if (end - start > 1) {
            for (std::size_t k = start; k < end; ++k) {
                auto& x = out.eigenvectors[k];
                for (std::size_t m = start; m < k; ++m) {
                    const complex proj = inner(out.eigenvectors[m], x);
                    for (std::size_t i = 0; i < N; ++i) x[i] -= proj * out.eigenvectors[m][i];
                }
                const double nx = norm(x);
                for (auto& c : x) c /= nx;
            }
        }
        start = end;
    }
    return out;
}

}  // namespace unruh_qfi
