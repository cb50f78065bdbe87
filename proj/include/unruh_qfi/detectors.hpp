#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "unruh_qfi/eigh.hpp"
#include "unruh_qfi/errors.hpp"
#include "unruh_qfi/matrix.hpp"
#include "unruh_qfi/qfi.hpp"

namespace unruh_qfi {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Distance from an angle edge (0 or pi/2) below which the diagonal
/// closed forms replace the general-angle path.
inline constexpr double kEdgeWindow = 1e-6;

/// mu above this leaves the first-order regime the states are derived in.
inline constexpr double kPerturbativeMu = 0.1;

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

inline void validate_common(double omega, double acceleration, double mu, double angle, const char* angle_name) {
    require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
    require(std::isfinite(acceleration) && acceleration >= 0.0, "acceleration must be non-negative");
    require(std::isfinite(mu) && mu >= 0.0 && mu < 1.0, "mu must lie in [0, 1)");
    require(std::isfinite(angle) && angle >= -1e-12 && angle <= kHalfPi + 1e-12,
            std::string(angle_name) + " must lie in [0, pi/2]");
}

}  // namespace detail

/// a = 2 pi T; rejects negative accelerations.
inline double unruh_temperature(double acceleration) {
    if (!(acceleration >= 0.0)) throw DomainError("unruh_temperature: negative acceleration");
    return acceleration / (2.0 * kPi);
}

/// e^{-omega/T}, taken as 0 at T = 0.
inline double boltzmann_factor(double omega, double temperature) {
    if (temperature == 0.0) return 0.0;
    return std::exp(-omega / temperature);
}

/// f = 1 - e^{-omega/T} via expm1, so it stays accurate when omega/T is tiny.
/// Exactly 1 at T = 0.
inline double planck_factor(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("planck_factor: omega must be positive");
    if (!(temperature >= 0.0)) throw DomainError("planck_factor: temperature must be non-negative");
    if (temperature == 0.0) return 1.0;
    return -std::expm1(-omega / temperature);
}

struct SingleDetectorParams {
    double omega = 1.0;
    double acceleration = 0.0;
    double mu = 0.01;
    /// Initial state sin(eta)|0> + cos(eta)|1>.
    double eta = kHalfPi;

    double temperature() const { return unruh_temperature(acceleration); }
    bool perturbative_warning() const { return mu > kPerturbativeMu; }
    void validate() const { detail::validate_common(omega, acceleration, mu, eta, "eta"); }
};

struct TwoDetectorParams {
    double omega = 1.0;
    double acceleration = 0.0;
    double mu = 0.01;
    /// Initial state sin(theta)|01> + cos(theta)|10>, second slot accelerated.
    double theta = 0.0;

    double temperature() const { return unruh_temperature(acceleration); }
    bool perturbative_warning() const { return mu > kPerturbativeMu; }
    void validate() const { detail::validate_common(omega, acceleration, mu, theta, "theta"); }
};

/// Physical coupling: strength epsilon, switching time delta, Gaussian width.
struct CouplingProfile {
    double epsilon = 0.0;
    double delta = 0.0;
    double kappa_width = 0.0;

    void validate(double omega) const {
        detail::require(omega > 0.0, "omega must be positive");
        detail::require(epsilon > 0.0, "epsilon must be positive");
        detail::require(delta > 0.0, "delta must be positive");
        detail::require(kappa_width >= 0.0, "kappa_width must be non-negative");
        detail::require(kappa_width < 0.1 / omega, "kappa_width must satisfy kappa_width < 0.1/omega");
        detail::require(delta * omega >= 2.0 * kPi, "delta must satisfy delta*omega >= 2*pi");
    }
};

/// mu = epsilon^2 omega delta / (2 pi) * exp(-omega^2 kappa^2)
inline double mu_from_physical(const CouplingProfile& profile, double omega) {
    profile.validate(omega);
    return profile.epsilon * profile.epsilon * omega * profile.delta / (2.0 * kPi) *
           std::exp(-omega * omega * profile.kappa_width * profile.kappa_width);
}

// ---------------------------------------------------------------------------
// Single detector

/// Reduced detector state at temperature T, other parameters from p.
inline HermitianMatrix<2> single_detector_state_at(const SingleDetectorParams& p, double temperature) {
    const double e = boltzmann_factor(p.omega, temperature);
    const double f = planck_factor(p.omega, temperature);
    const double c0 = std::sin(p.eta);
    const double c1 = std::cos(p.eta);
    const double norm = 1.0 / (f + p.mu * e * c0 * c0 + p.mu * c1 * c1);
    return HermitianMatrix<2>::symmetrize(ComplexMatrix<2>{
        {norm * (f * c0 * c0 + p.mu * c1 * c1), norm * f * c0 * c1},
        {norm * f * c0 * c1, norm * (p.mu * e * c0 * c0 + f * c1 * c1)},
    });
}

inline HermitianMatrix<2> single_detector_state(const SingleDetectorParams& p) {
    p.validate();
    return single_detector_state_at(p, p.temperature());
}

/// d rho_d / dT from the hand-differentiated entries; zero at T = 0.
inline HermitianMatrix<2> single_detector_state_derivative(const SingleDetectorParams& p, double temperature) {
    if (temperature == 0.0) return HermitianMatrix<2>{};
    const double e = boltzmann_factor(p.omega, temperature);
    const double f = planck_factor(p.omega, temperature);
    const double de = e * p.omega / (temperature * temperature);
    const double df = -de;
    const double c0 = std::sin(p.eta);
    const double c1 = std::cos(p.eta);
    const double s00 = f * c0 * c0 + p.mu * c1 * c1;
    const double s01 = f * c0 * c1;
    const double s11 = p.mu * e * c0 * c0 + f * c1 * c1;
    const double tr = s00 + s11;
    const double d00 = df * c0 * c0;
    const double d01 = df * c0 * c1;
    const double d11 = p.mu * de * c0 * c0 + df * c1 * c1;
    const double dtr = d00 + d11;
    // (S/tr)' = (S' tr - S tr') / tr^2
    const double k = 1.0 / (tr * tr);
    return HermitianMatrix<2>::symmetrize(ComplexMatrix<2>{
        {k * (d00 * tr - s00 * dtr), k * (d01 * tr - s01 * dtr)},
        {k * (d01 * tr - s01 * dtr), k * (d11 * tr - s11 * dtr)},
    });
}

/// T -> rho_d(T) with its analytic derivative.
inline StateFamily<2> single_detector_family(const SingleDetectorParams& p) {
    p.validate();
    return StateFamily<2>{
        [p](double t) { return single_detector_state_at(p, t); },
        [p](double t) { return single_detector_state_derivative(p, t); },
    };
}

/// Closed-form eigen-system of rho_d for interior eta (both eigenvectors real).
struct SingleDetectorSpectrum {
    double lambda_shift = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0, lambda4 = 0.0, lambda5 = 0.0;
    double n1 = 0.0, n2 = 0.0;
    /// (1/2 - lambda, 1/2 + lambda)
    std::array<double, 2> eigenvalues{};
    /// V1 pairs with 1/2 - lambda, V2 with 1/2 + lambda.
    std::array<std::array<double, 2>, 2> eigenvectors{};
};

inline SingleDetectorSpectrum single_detector_eigensystem(const SingleDetectorParams& p) {
    p.validate();
    if (p.eta < kEdgeWindow || p.eta > kHalfPi - kEdgeWindow) {
        throw DomainError("single_detector_eigensystem: eta within 1e-6 of 0 or pi/2; the state is diagonal there, "
                          "use the edge-case closed forms");
    }
    const double t = p.temperature();
    if (t == 0.0) throw DomainError("single_detector_eigensystem: requires a > 0");
    const double e = boltzmann_factor(p.omega, t);
    const double f = planck_factor(p.omega, t);
    const double mu = p.mu;
    const double c2 = std::cos(2.0 * p.eta);
    const double c4 = std::cos(4.0 * p.eta);
    const double s2 = std::sin(2.0 * p.eta);

    SingleDetectorSpectrum s;
    s.lambda1 = e * e * (8.0 + mu * (4.0 + 3.0 * mu)) - 2.0 * e * (8.0 + mu * mu) + (8.0 + mu * (-4.0 + 3.0 * mu));
    s.lambda2 = 4.0 * mu * f * (-2.0 + mu + e * (2.0 + mu)) * c2;
    s.lambda3 = mu * (1.0 + e) * (-4.0 + mu + e * (4.0 + mu)) * c4;
    s.lambda4 = 2.0 * std::numbers::sqrt2 * ((e + 1.0) * mu + f * (2.0 + mu * c2));
    s.lambda5 = -2.0 * e * (mu - (2.0 + mu) * c2) + 2.0 * (mu + (-2.0 + mu) * c2);

    const double root = std::sqrt(std::max(0.0, s.lambda1 + s.lambda2 + s.lambda3));
    s.lambda_shift = root / s.lambda4;
    s.eigenvalues = {0.5 - s.lambda_shift, 0.5 + s.lambda_shift};

    const double x1 = (s.lambda5 - std::numbers::sqrt2 * root) / (4.0 * f * s2);
    const double x2 = (s.lambda5 + std::numbers::sqrt2 * root) / (4.0 * f * s2);
    s.n1 = std::sqrt(x1 * x1 + 1.0);
    s.n2 = std::sqrt(x2 * x2 + 1.0);
    s.eigenvectors = {{{x1 / s.n1, 1.0 / s.n1}, {x2 / s.n2, 1.0 / s.n2}}};
    return s;
}

/// QFI for the diagonal state reached from |0> (eta = pi/2, or theta = 0 for
/// two detectors): e^{-w/T} mu w^2 / (T^4 f (f + e^{-w/T} mu)^2).
inline double qfi_closed_form_ground(double omega, double temperature, double mu) {
    const double e = boltzmann_factor(omega, temperature);
    if (e == 0.0) return 0.0;
    const double f = planck_factor(omega, temperature);
    const double t2 = temperature * temperature;
    const double d = f + e * mu;
    return e * mu * omega * omega / (t2 * t2 * f * d * d);
}

/// QFI for the diagonal state reached from |1> (eta = 0, or theta = pi/2):
/// e^{-2w/T} mu w^2 / (T^4 f (f + mu)^2).
inline double qfi_closed_form_excited(double omega, double temperature, double mu) {
    const double e = boltzmann_factor(omega, temperature);
    if (e == 0.0) return 0.0;
    const double f = planck_factor(omega, temperature);
    const double t2 = temperature * temperature;
    const double d = f + mu;
    return e * e * mu * omega * omega / (t2 * t2 * f * d * d);
}

/**
 * QFI of rho_d with respect to T. Near eta = 0 and eta = pi/2 the diagonal
 * closed forms are used (quantum part zero); elsewhere the spectral engine
 * runs on T -> rho_d(T). Zero at a = 0 by limit.
 */
inline QfiBreakdown qfi_single(const SingleDetectorParams& p, const QfiOptions& opt = {}) {
    p.validate();
    const double t = p.temperature();
    if (t == 0.0) return {};
    if (p.eta > kHalfPi - kEdgeWindow) return QfiBreakdown::from_parts(qfi_closed_form_ground(p.omega, t, p.mu), 0.0);
    if (p.eta < kEdgeWindow) return QfiBreakdown::from_parts(qfi_closed_form_excited(p.omega, t, p.mu), 0.0);
    return qfi_spectral(single_detector_family(p), t, opt);
}

// ---------------------------------------------------------------------------
// Two detectors, basis {|00>, |01>, |10>, |11>}

inline HermitianMatrix<4> two_detector_state_at(const TwoDetectorParams& p, double temperature) {
    const double e = boltzmann_factor(p.omega, temperature);
    const double f = planck_factor(p.omega, temperature);
    const double s = std::sin(p.theta);
    const double c = std::cos(p.theta);
    const double n = 1.0 + (s * s * p.mu + c * c * e * p.mu) / f;
    std::array<double, 4> d{s * s * p.mu / f / n, s * s / n, c * c / n, c * c * e * p.mu / f / n};
    ComplexMatrix<4> m = ComplexMatrix<4>::diagonal(d);
    m(1, 2) = s * c / n;
    m(2, 1) = s * c / n;
    return HermitianMatrix<4>::symmetrize(m);
}

inline HermitianMatrix<4> two_detector_state(const TwoDetectorParams& p) {
    p.validate();
    return two_detector_state_at(p, p.temperature());
}

inline HermitianMatrix<4> two_detector_state_derivative(const TwoDetectorParams& p, double temperature) {
    if (temperature == 0.0) return HermitianMatrix<4>{};
    const double e = boltzmann_factor(p.omega, temperature);
    const double f = planck_factor(p.omega, temperature);
    const double de = e * p.omega / (temperature * temperature);
    const double s = std::sin(p.theta);
    const double c = std::cos(p.theta);
    // Unnormalized diagonal corners and their T-derivatives (df = -de, e + f = 1).
    const double m00 = s * s * p.mu / f;
    const double m33 = c * c * e * p.mu / f;
    const double dm00 = s * s * p.mu * de / (f * f);
    const double dm33 = c * c * p.mu * de / (f * f);
    const double n = 1.0 + m00 + m33;
    const double dn = dm00 + dm33;
    const double k = 1.0 / (n * n);
    // (M/n)' = (M' n - M n') / n^2, central block of M is T-independent.
    ComplexMatrix<4> d = ComplexMatrix<4>::diagonal(
        {k * (dm00 * n - m00 * dn), -k * s * s * dn, -k * c * c * dn, k * (dm33 * n - m33 * dn)});
    d(1, 2) = -k * s * c * dn;
    d(2, 1) = -k * s * c * dn;
    return HermitianMatrix<4>::symmetrize(d);
}

inline StateFamily<4> two_detector_family(const TwoDetectorParams& p) {
    p.validate();
    return StateFamily<4>{
        [p](double t) { return two_detector_state_at(p, t); },
        [p](double t) { return two_detector_state_derivative(p, t); },
    };
}

/// rho_dd = diag(alpha, beta, gamma, 0) in a T-independent basis.
struct TwoDetectorSpectrum {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    /// cos(t)|10> + sin(t)|01>, |00>, |11>, -sin(t)|10> + cos(t)|01>
    std::array<std::array<double, 4>, 4> basis{};
};

/// The eigenbasis depends on theta only.
inline std::array<std::array<double, 4>, 4> two_detector_basis(double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return {{{0.0, s, c, 0.0}, {1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, c, -s, 0.0}}};
}

inline TwoDetectorSpectrum two_detector_spectrum(const TwoDetectorParams& p) {
    p.validate();
    const double t = p.temperature();
    const double e = boltzmann_factor(p.omega, t);
    const double f = planck_factor(p.omega, t);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double d = f + p.mu * (s2 + e * c2);
    return {f / d, p.mu * s2 / d, p.mu * e * c2 / d, two_detector_basis(p.theta)};
}

/// Closed-form QFI of rho_dd for any theta (reduces to the edge forms at 0, pi/2).
inline double qfi_closed_form_two(double omega, double temperature, double mu, double theta) {
    const double e = boltzmann_factor(omega, temperature);
    if (e == 0.0) return 0.0;
    const double f = planck_factor(omega, temperature);
    const double c2 = std::cos(2.0 * theta);
    const double c4 = std::cos(4.0 * theta);
    const double t2 = temperature * temperature;
    const double num =
        e * mu * omega * omega *
        (e * (4.0 * (1.0 - c2) + mu * (-1.0 + c4)) + 4.0 * (1.0 + c2) + mu * (1.0 - c4));
    const double base = e * (-2.0 + mu * (1.0 + c2)) + 2.0 + mu * (1.0 - c2);
    return num / (2.0 * t2 * t2 * f * base * base);
}

/**
 * QFI of rho_dd with respect to T. The eigenbasis is T-independent, so the
 * quantum part is identically zero. Exactly at theta = 0 and theta = pi/2 the
 * diagonal edge forms are used; zero at a = 0 by limit.
 */
inline QfiBreakdown qfi_two(const TwoDetectorParams& p) {
    p.validate();
    const double t = p.temperature();
    if (t == 0.0) return {};
    if (p.theta <= 0.0) return QfiBreakdown::from_parts(qfi_closed_form_ground(p.omega, t, p.mu), 0.0);
    if (p.theta >= kHalfPi) return QfiBreakdown::from_parts(qfi_closed_form_excited(p.omega, t, p.mu), 0.0);
    return QfiBreakdown::from_parts(qfi_closed_form_two(p.omega, t, p.mu, p.theta), 0.0);
}

// ---------------------------------------------------------------------------

/**
 * Wootters concurrence max(0, s1 - s2 - s3 - s4), s_i the descending square
 * roots of the eigenvalues of rho (Y x Y) rho* (Y x Y). Those eigenvalues are
 * taken from the Hermitian sqrt(rho) rho~ sqrt(rho), which has the same
 * spectrum.
 */
inline double concurrence(const HermitianMatrix<4>& rho, double tol = 1e-10) {
    const auto eig = eigh(rho);
    if (std::abs(rho.trace() - 1.0) > tol) throw DomainError("concurrence: trace differs from 1");
    if (eig.min_eigenvalue() < -tol) throw DomainError("concurrence: state is not positive semidefinite");

    ComplexMatrix<4> sqrt_rho;
    for (std::size_t k = 0; k < 4; ++k) {
        const double w = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
        sqrt_rho += ComplexMatrix<4>::outer(eig.eigenvectors[k], eig.eigenvectors[k]) * complex{w, 0.0};
    }
    // sigma_y x sigma_y is real: antidiagonal (-1, 1, 1, -1).
    ComplexMatrix<4> yy;
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const ComplexMatrix<4> flipped = yy * rho.matrix().conjugate() * yy;
    const auto r = eigh(HermitianMatrix<4>::symmetrize(sqrt_rho * flipped * sqrt_rho));

    std::array<double, 4> s{};
    for (std::size_t k = 0; k < 4; ++k) s[k] = std::sqrt(std::max(0.0, r.eigenvalues[k]));
    const double c = s[0] - s[1] - s[2] - s[3];
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace unruh_qfi
