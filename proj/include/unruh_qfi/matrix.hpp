#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>

#include "unruh_qfi/errors.hpp"

namespace unruh_qfi {

using complex = std::complex<double>;

template <std::size_t N>
using Vector = std::array<complex, N>;

/// <u|v>, conjugate-linear in the first argument.
template <std::size_t N>
complex inner(const Vector<N>& u, const Vector<N>& v) {
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

template <std::size_t N>
double norm(const Vector<N>& v) {
    return std::sqrt(std::real(inner(v, v)));
}

/**
 * Dense fixed-size complex matrix, row-major. Dimension is a template
 * parameter restricted to 2..4: everything in this library lives on one or
 * two qubits, so mismatched dimensions are compile errors rather than
 * runtime checks.
 */
template <std::size_t N>
class ComplexMatrix {
    static_assert(N >= 2 && N <= 4, "ComplexMatrix supports dimensions 2 to 4");

public:
    static constexpr std::size_t dim = N;

    ComplexMatrix() = default;

    /// Row-wise construction; rejects ragged grids and non-finite entries.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
        if (rows.size() != N) throw DomainError("ComplexMatrix: expected " + std::to_string(N) + " rows");
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != N) throw DomainError("ComplexMatrix: row " + std::to_string(i) + " has wrong length");
            std::size_t j = 0;
            for (const auto& v : row) data_[i * N + j++] = v;
            ++i;
        }
        require_finite();
    }

    static ComplexMatrix identity() {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::array<double, N>& d) {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    /// |u><v|
    static ComplexMatrix outer(const Vector<N>& u, const Vector<N>& v) {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = u[i] * std::conj(v[j]);
        return m;
    }

    complex& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    /// Entry-wise complex conjugate (not the adjoint).
    ComplexMatrix conjugate() const {
        ComplexMatrix m;
        for (std::size_t k = 0; k < N * N; ++k) m.data_[k] = std::conj(data_[k]);
        return m;
    }

    complex trace() const {
        complex t{0.0, 0.0};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
    }

    void require_finite() const {
        if (!all_finite()) throw DomainError("ComplexMatrix: non-finite entry");
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix& operator*=(complex s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
    friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const complex aik = a(i, k);
                for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend Vector<N> operator*(const ComplexMatrix& a, const Vector<N>& v) {
        Vector<N> r{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    bool operator==(const ComplexMatrix&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m) {
        for (std::size_t i = 0; i < N; ++i) {
            os << (i == 0 ? "[" : " ");
            for (std::size_t j = 0; j < N; ++j) os << m(i, j) << (j + 1 < N ? ", " : "");
            os << (i + 1 < N ? "\n" : "]");
        }
        return os;
    }

private:
    std::array<complex, N * N> data_{};
};

/// max_ij |A_ij - B_ij|
template <std::size_t N>
double mat_distance(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

/// Largest |A_ij - conj(A_ji)| over all entries, diagonal included.
template <std::size_t N>
double hermitian_asymmetry(const ComplexMatrix<N>& a) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

/**
 * Complex Hermitian matrix. Construction from a general matrix checks
 * Hermiticity to an absolute tolerance and then stores the exactly
 * symmetrized copy (A + A^dagger)/2, so downstream code sees exact symmetry.
 */
template <std::size_t N>
class HermitianMatrix {
public:
    static constexpr std::size_t dim = N;
    static constexpr double kTolerance = 1e-12;

    HermitianMatrix() = default;

    explicit HermitianMatrix(const ComplexMatrix<N>& m, double tol = kTolerance) {
        m.require_finite();
        const double asym = hermitian_asymmetry(m);
        if (asym > tol) {
            throw NotHermitianError("HermitianMatrix: max |A_ij - conj(A_ji)| = " + std::to_string(asym) +
                                        " exceeds tolerance",
                                    asym);
        }
        m_ = symmetrized(m);
    }

    HermitianMatrix(std::initializer_list<std::initializer_list<complex>> rows)
        : HermitianMatrix(ComplexMatrix<N>(rows)) {}

    /// (A + A^dagger)/2 without any tolerance check.
    static HermitianMatrix symmetrize(const ComplexMatrix<N>& m) {
        m.require_finite();
        HermitianMatrix h;
        h.m_ = symmetrized(m);
        return h;
    }

    static HermitianMatrix identity() { return diagonal(filled(1.0)); }

    static HermitianMatrix diagonal(const std::array<double, N>& d) {
        HermitianMatrix h;
        h.m_ = ComplexMatrix<N>::diagonal(d);
        h.m_.require_finite();
        return h;
    }

    /// |v><v|
    static HermitianMatrix projector(const Vector<N>& v) { return symmetrize(ComplexMatrix<N>::outer(v, v)); }

    const ComplexMatrix<N>& matrix() const { return m_; }
    operator const ComplexMatrix<N>&() const { return m_; }

    const complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    double trace() const { return m_.trace().real(); }

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
        HermitianMatrix h;
        h.m_ = a.m_ + b.m_;
        return h;
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
        HermitianMatrix h;
        h.m_ = a.m_ - b.m_;
        return h;
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
        HermitianMatrix h;
        h.m_ = a.m_ * complex{s, 0.0};
        return h;
    }
    friend HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }

    friend ComplexMatrix<N> operator*(const HermitianMatrix& a, const HermitianMatrix& b) { return a.m_ * b.m_; }

    bool operator==(const HermitianMatrix&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const HermitianMatrix& h) { return os << h.m_; }

private:
    static std::array<double, N> filled(double v) {
        std::array<double, N> a;
        a.fill(v);
        return a;
    }

    static ComplexMatrix<N> symmetrized(const ComplexMatrix<N>& m) {
        ComplexMatrix<N> s;
        for (std::size_t i = 0; i < N; ++i) {
            s(i, i) = complex{m(i, i).real(), 0.0};
            for (std::size_t j = i + 1; j < N; ++j) {
                const complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                s(i, j) = v;
                s(j, i) = std::conj(v);
            }
        }
        return s;
    }

    ComplexMatrix<N> m_{};
};

/// Re Tr[A B] for Hermitian A, B.
template <std::size_t N>
double trace_product(const HermitianMatrix<N>& a, const HermitianMatrix<N>& b) {
    double t = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) t += std::real(a(i, j) * b(j, i));
    return t;
}

}  // namespace unruh_qfi
