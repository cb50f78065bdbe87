#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "unruh_qfi/eigh.hpp"
#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/finite_difference.hpp"
#include "unruh_qfi/matrix.hpp"

namespace unruh_qfi {

/**
 * One-parameter family of density matrices xi -> rho(xi).
 *
 * derivative_at is optional; when empty the derivative is taken by central
 * differences with the default step. Both callables must be pure.
 */
template <std::size_t N>
struct StateFamily {
    using Map = std::function<HermitianMatrix<N>(double)>;

    Map state_at;
    Map derivative_at{};

    HermitianMatrix<N> state(double xi) const { return state_at(xi); }

    HermitianMatrix<N> derivative(double xi) const {
        if (derivative_at) return derivative_at(xi);
        return central_diff<N>(state_at, xi);
    }

    /// Same family, derivative forced through finite differences.
    StateFamily without_analytic_derivative() const { return StateFamily{state_at, {}}; }
};

/// Fisher information split into the eigenvalue-derivative (classical) and
/// eigenvector-rotation (quantum) contributions.
struct QfiBreakdown {
    double classical_part = 0.0;
    double quantum_part = 0.0;
    double total = 0.0;

    static QfiBreakdown from_parts(double classical, double quantum) {
        return {classical, quantum, classical + quantum};
    }
};

template <std::size_t N>
struct SldOperator {
    HermitianMatrix<N> matrix;
    double parameter_value = 0.0;
};

/// Positive operator-valued measure: PSD elements summing to the identity.
template <std::size_t N>
class Povm {
public:
    static constexpr double kTolerance = 1e-10;

    explicit Povm(std::vector<HermitianMatrix<N>> elements) : elements_(std::move(elements)) {
        if (elements_.empty()) throw DomainError("Povm: no elements");
        ComplexMatrix<N> sum;
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            const double lo = eigh(elements_[k]).min_eigenvalue();
            if (lo < -kTolerance) {
                throw DomainError("Povm: element " + std::to_string(k) + " has negative eigenvalue " + std::to_string(lo));
            }
            sum += elements_[k].matrix();
        }
        const double dev = mat_distance(sum, ComplexMatrix<N>::identity());
        if (dev > kTolerance) throw DomainError("Povm: elements sum to identity only within " + std::to_string(dev));
    }

    /// Rank-one projectors onto the computational basis.
    static Povm computational_basis() {
        std::vector<HermitianMatrix<N>> e;
        for (std::size_t k = 0; k < N; ++k) {
            Vector<N> v{};
            v[k] = 1.0;
            e.push_back(HermitianMatrix<N>::projector(v));
        }
        return Povm(std::move(e));
    }

    const std::vector<HermitianMatrix<N>>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

private:
    std::vector<HermitianMatrix<N>> elements_;
};

struct QfiOptions {
    /// Eigenvalues below this are treated as exactly zero.
    double support_cutoff = 1e-12;
    double degeneracy_gap = 1e-10;
    /// Largest cross element tolerated inside a degenerate pair.
    double degenerate_cross_limit = 1e-8;
    /// Trace and positivity tolerance applied to rho(xi).
    double state_tolerance = 1e-10;
};

/// Tr[rho A] for Hermitian A.
template <std::size_t N>
double expectation(const HermitianMatrix<N>& rho, const HermitianMatrix<N>& a) {
    return trace_product(rho, a);
}

namespace detail {

template <std::size_t N>
struct SpectralData {
    HermitianMatrix<N> rho;
    HermitianMatrix<N> drho;
    EigenDecomposition<N> eig;
    ComplexMatrix<N> drho_eigen;  // <i| d rho |j>
    std::array<bool, N> in_support{};
};

template <std::size_t N>
void require_density_matrix(const HermitianMatrix<N>& rho, const EigenDecomposition<N>& eig, double tol,
                            const char* who) {
    const double tr = rho.trace();
    if (std::abs(tr - 1.0) > tol) throw DomainError(std::string(who) + ": state trace " + std::to_string(tr) + " != 1");
    if (eig.min_eigenvalue() < -tol) {
        throw DomainError(std::string(who) + ": state has negative eigenvalue " + std::to_string(eig.min_eigenvalue()));
    }
}

template <std::size_t N>
SpectralData<N> analyse(const StateFamily<N>& family, double xi, const QfiOptions& opt, const char* who) {
    SpectralData<N> s{family.state(xi), family.derivative(xi), {}, {}, {}};
    s.eig = eigh(s.rho);
    require_density_matrix(s.rho, s.eig, opt.state_tolerance, who);
    s.drho_eigen = s.eig.in_eigenbasis(s.drho.matrix());
    for (std::size_t i = 0; i < N; ++i) s.in_support[i] = s.eig.eigenvalues[i] >= opt.support_cutoff;

    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            const double pi = s.eig.eigenvalues[i];
            const double pj = s.eig.eigenvalues[j];
            if (pi + pj < opt.support_cutoff) continue;
            if (std::abs(pi - pj) < opt.degeneracy_gap && std::abs(s.drho_eigen(i, j)) > opt.degenerate_cross_limit) {
                throw IllDefinedDerivativeError(std::string(who) + ": degenerate eigenvalues " + std::to_string(pi) +
                                                " with cross derivative element " +
                                                std::to_string(std::abs(s.drho_eigen(i, j))));
            }
        }
    }
    return s;
}

// Pair (i, j) takes part in the off-diagonal sums.
template <std::size_t N>
bool active_pair(const SpectralData<N>& s, std::size_t i, std::size_t j, const QfiOptions& opt) {
    const double pi = s.eig.eigenvalues[i];
    const double pj = s.eig.eigenvalues[j];
    return pi + pj >= opt.support_cutoff && std::abs(pi - pj) >= opt.degeneracy_gap;
}

}  // namespace detail

/**
 * Quantum Fisher information from the spectral decomposition of rho(xi):
 *
 *   classical = sum_i (d p_i)^2 / p_i
 *   quantum   = 2 sum_{i<j} 2 (p_i - p_j)^2 / (p_i + p_j) |<i|d j>|^2
 *
 * with <i|d j> = <i| d rho |j> / (p_j - p_i). Eigenvalues under the support
 * cutoff contribute no classical term.
 */
template <std::size_t N>
QfiBreakdown qfi_spectral(const StateFamily<N>& family, double xi, const QfiOptions& opt = {}) {
    const auto s = detail::analyse(family, xi, opt, "qfi_spectral");
    const auto& p = s.eig.eigenvalues;
    double classical = 0.0;
    double quantum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        if (s.in_support[i]) {
            const double dp = s.drho_eigen(i, i).real();
            classical += dp * dp / p[i];
        }
        for (std::size_t j = i + 1; j < N; ++j) {
            if (!detail::active_pair(s, i, j, opt)) continue;
            const double gap = p[i] - p[j];
            const double overlap2 = std::norm(s.drho_eigen(i, j)) / (gap * gap);
            quantum += 2.0 * 2.0 * gap * gap / (p[i] + p[j]) * overlap2;
        }
    }
    return QfiBreakdown::from_parts(classical, quantum);
}

/// Symmetric logarithmic derivative assembled from the eigenbasis closed form,
/// projected onto the support of rho.
template <std::size_t N>
SldOperator<N> sld(const StateFamily<N>& family, double xi, const QfiOptions& opt = {}) {
    const auto s = detail::analyse(family, xi, opt, "sld");
    const auto& p = s.eig.eigenvalues;
    ComplexMatrix<N> l_eigen;
    for (std::size_t i = 0; i < N; ++i) {
        if (s.in_support[i]) l_eigen(i, i) = s.drho_eigen(i, i).real() / p[i];
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j || !detail::active_pair(s, i, j, opt)) continue;
            // 2 (p_i - p_j)/(p_i + p_j) <j|d i>, with <j|d i> = <j|d rho|i>/(p_i - p_j)
            l_eigen(j, i) = 2.0 * s.drho_eigen(j, i) / (p[i] + p[j]);
        }
    }
    ComplexMatrix<N> l;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (l_eigen(i, j) == complex{0.0, 0.0}) continue;
            l += ComplexMatrix<N>::outer(s.eig.eigenvectors[i], s.eig.eigenvectors[j]) * l_eigen(i, j);
        }
    return {HermitianMatrix<N>::symmetrize(l), xi};
}

/**
 * Max-entry magnitude of d rho - (L rho + rho L)/2 after removing the block
 * acting purely inside the kernel of rho (where the SLD is unconstrained).
 */
template <std::size_t N>
double verify_lyapunov(const SldOperator<N>& l, const HermitianMatrix<N>& rho, const HermitianMatrix<N>& drho,
                       const QfiOptions& opt = {}) {
    const ComplexMatrix<N> lr = l.matrix * rho;
    const ComplexMatrix<N> residual = drho.matrix() - (lr + lr.adjoint()) * complex{0.5, 0.0};
    const auto eig = eigh(rho);
    ComplexMatrix<N> kernel;
    for (std::size_t k = 0; k < N; ++k)
        if (eig.eigenvalues[k] < opt.support_cutoff) kernel += ComplexMatrix<N>::outer(eig.eigenvectors[k], eig.eigenvectors[k]);
    const ComplexMatrix<N> restricted = residual - kernel * residual * kernel;
    return mat_distance(restricted, ComplexMatrix<N>{});
}

/// Tr[rho L^2]
template <std::size_t N>
double sld_second_moment(const SldOperator<N>& l, const HermitianMatrix<N>& rho) {
    return (rho.matrix() * l.matrix.matrix() * l.matrix.matrix()).trace().real();
}

/// Classical Fisher information of the outcome distribution p_x = Tr[Pi_x rho].
template <std::size_t N>
double classical_fisher(const StateFamily<N>& family, double xi, const Povm<N>& povm, double cutoff = 1e-12) {
    const HermitianMatrix<N> rho = family.state(xi);
    const HermitianMatrix<N> drho = family.derivative(xi);
    double f = 0.0;
    for (std::size_t k = 0; k < povm.size(); ++k) {
        const double px = expectation(rho, povm.elements()[k]);
        const double dpx = expectation(drho, povm.elements()[k]);
        if (px < cutoff) {
            if (std::abs(dpx) > 1e-8) {
                throw NumericalError("classical_fisher: outcome " + std::to_string(k) + " has probability " +
                                     std::to_string(px) + " but derivative " + std::to_string(dpx));
            }
            continue;
        }
        f += dpx * dpx / px;
    }
    return f;
}

/// Projectors onto the eigenvectors of the SLD; the measurement attaining the QFI.
template <std::size_t N>
Povm<N> sld_eigenprojectors(const SldOperator<N>& l) {
    const auto eig = eigh(l.matrix);
    std::vector<HermitianMatrix<N>> e;
    e.reserve(N);
    for (const auto& v : eig.eigenvectors) e.push_back(HermitianMatrix<N>::projector(v));
    return Povm<N>(std::move(e));
}

/// xi * I + L / J. Unbiased at xi with variance 1/J on rho(xi).
template <std::size_t N>
HermitianMatrix<N> optimal_estimator(double xi, double qfi, const SldOperator<N>& l) {
    if (!(qfi > 0.0)) throw DomainError("optimal_estimator: QFI must be positive, got " + std::to_string(qfi));
    return xi * HermitianMatrix<N>::identity() + (1.0 / qfi) * l.matrix;
}

}  // namespace unruh_qfi
