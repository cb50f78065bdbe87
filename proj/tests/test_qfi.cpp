#include <gtest/gtest.h>

#include <cmath>

#include "unruh_qfi/qfi.hpp"
#include "unruh_qfi/rng.hpp"

using namespace unruh_qfi;

namespace {

StateFamily<2> diagonal_family() {
    return {[](double x) { return HermitianMatrix<2>::diagonal({x, 1.0 - x}); },
            [](double) { return HermitianMatrix<2>::diagonal({1.0, -1.0}); }};
}

StateFamily<2> constant_family() {
    return {[](double) { return HermitianMatrix<2>::diagonal({0.3, 0.7}); }, {}};
}

StateFamily<2> thermal_qubit() {
    return {[](double t) {
                const double p = std::exp(-1.0 / t) / (1.0 + std::exp(-1.0 / t));
                return HermitianMatrix<2>::diagonal({1.0 - p, p});
            },
            {}};
}

/// rho(xi) = U(xi) diag(p, 1-p) U(xi)^dagger with U = exp(-i xi sigma_x / 2).
StateFamily<2> rotated_family(double p) {
    return {[p](double xi) {
                const complex c = std::cos(xi / 2), s = complex{0.0, -std::sin(xi / 2)};
                const ComplexMatrix<2> u{{c, s}, {s, c}};
                return HermitianMatrix<2>::symmetrize(u * ComplexMatrix<2>::diagonal({p, 1.0 - p}) * u.adjoint());
            },
            {}};
}

}  // namespace

TEST(QfiSpectral, DiagonalFamily) {
    const auto q = qfi_spectral(diagonal_family(), 0.5);
    EXPECT_NEAR(q.classical_part, 4.0, 1e-12);
    EXPECT_EQ(q.quantum_part, 0.0);
    EXPECT_NEAR(q.total, 4.0, 1e-12);
}

TEST(QfiSpectral, ThermalQubit) {
    const auto q = qfi_spectral(thermal_qubit(), 1.0);
    const double p = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    EXPECT_NEAR(q.total, p * (1.0 - p), 1e-9);  // oracle: (dp/dT)^2 / (p(1-p)), dp/dT = p(1-p) at T = 1
    EXPECT_NEAR(q.total, 0.196612, 1e-6);
    EXPECT_NEAR(q.quantum_part, 0.0, 1e-12);
}

TEST(QfiSpectral, ConstantFamilyIsZero) {
    EXPECT_NEAR(qfi_spectral(constant_family(), 0.2).total, 0.0, 1e-12);
}

TEST(QfiSpectral, UnitaryFamilyIsPurelyQuantum) {
    for (const double p : {1.0, 0.9, 0.75, 0.6}) {
        const auto q = qfi_spectral(rotated_family(p), 0.0);
        EXPECT_NEAR(q.total, (2 * p - 1) * (2 * p - 1), 1e-8) << "p=" << p;
        EXPECT_NEAR(q.classical_part, 0.0, 1e-8);
    }
}

TEST(QfiSpectral, RejectsNonDensityMatrix) {
    const StateFamily<2> bad{[](double) { return HermitianMatrix<2>::diagonal({0.7, 0.7}); }, {}};
    EXPECT_THROW(qfi_spectral(bad, 0.0), DomainError);
    const StateFamily<2> negative{[](double) { return HermitianMatrix<2>::diagonal({1.2, -0.2}); }, {}};
    EXPECT_THROW(qfi_spectral(negative, 0.0), DomainError);
}

TEST(QfiSpectral, DegenerateCrossTermIsIllDefined) {
    const StateFamily<2> f{[](double) { return HermitianMatrix<2>::identity() * 0.5; },
                           [](double) { return HermitianMatrix<2>{ComplexMatrix<2>{{0.0, 1.0}, {1.0, 0.0}}}; }};
    EXPECT_THROW(qfi_spectral(f, 0.0), IllDefinedDerivativeError);
}

TEST(Sld, DiagonalFamily) {
    const auto l = sld(diagonal_family(), 0.25);
    EXPECT_NEAR(l.matrix(0, 0).real(), 4.0, 1e-12);
    EXPECT_NEAR(l.matrix(1, 1).real(), -4.0 / 3.0, 1e-12);
    EXPECT_NEAR(std::abs(l.matrix(0, 1)), 0.0, 1e-15);
    EXPECT_EQ(l.parameter_value, 0.25);
}

TEST(Sld, ConstantFamilyIsZero) {
    const auto l = sld(constant_family(), 0.0);
    EXPECT_LT(mat_distance(l.matrix.matrix(), ComplexMatrix<2>{}), 1e-9);
}

TEST(VerifyLyapunov, ExactDiagonal) {
    const auto f = diagonal_family();
    EXPECT_LT(verify_lyapunov(sld(f, 0.25), f.state(0.25), f.derivative(0.25)), 1e-14);
}

TEST(VerifyLyapunov, ZeroCase) {
    const auto rho = HermitianMatrix<2>::diagonal({0.3, 0.7});
    const SldOperator<2> zero{HermitianMatrix<2>::diagonal({0.0, 0.0}), 0.0};
    EXPECT_EQ(verify_lyapunov(zero, rho, HermitianMatrix<2>::diagonal({0.0, 0.0})), 0.0);
}

TEST(VerifyLyapunov, DetectsPerturbation) {
    const auto f = diagonal_family();
    auto l = sld(f, 0.25);
    l.matrix = l.matrix + HermitianMatrix<2>::diagonal({0.1, 0.0});
    const double r = verify_lyapunov(l, f.state(0.25), f.derivative(0.25));
    EXPECT_NEAR(r, 0.1 * 0.25, 1e-12);
    EXPECT_GT(r, 1e-3);
}

TEST(Sld, PureStateKernelIgnored) {
    const auto f = rotated_family(1.0);
    const double xi = 0.4;
    const auto l = sld(f, xi);
    EXPECT_LT(verify_lyapunov(l, f.state(xi), f.derivative(xi)), 1e-9);
    EXPECT_NEAR(sld_second_moment(l, f.state(xi)), qfi_spectral(f, xi).total, 1e-8);
}

TEST(ClassicalFisher, ComputationalBasisOptimalForDiagonal) {
    const auto f = diagonal_family();
    EXPECT_NEAR(classical_fisher(f, 0.5, Povm<2>::computational_basis()), 4.0, 1e-12);
}

TEST(ClassicalFisher, TrivialPovmIsZero) {
    const Povm<2> trivial({HermitianMatrix<2>::identity()});
    EXPECT_EQ(classical_fisher(diagonal_family(), 0.5, trivial), 0.0);
}

TEST(ClassicalFisher, BoundedByQfiAndAttainedBySld) {
    CounterRng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double p = 0.55 + 0.4 * rng.uniform();
        const double xi = rng.uniform();
        const auto f = rotated_family(p);
        const double j = qfi_spectral(f, xi).total;
        const double phi = 2 * 3.141592653589793 * rng.uniform();
        const Vector<2> v{std::cos(phi), std::sin(phi)};
        const Vector<2> w{-std::sin(phi), std::cos(phi)};
        const Povm<2> random({HermitianMatrix<2>::projector(v), HermitianMatrix<2>::projector(w)});
        EXPECT_LE(classical_fisher(f, xi, random), j * (1 + 1e-9));
        EXPECT_NEAR(classical_fisher(f, xi, sld_eigenprojectors(sld(f, xi))), j, 1e-7 * j);
    }
}

TEST(Povm, RejectsInvalidSets) {
    EXPECT_THROW(Povm<2>({HermitianMatrix<2>::diagonal({1.0, 0.0})}), DomainError);
    EXPECT_THROW(Povm<2>({HermitianMatrix<2>::diagonal({1.5, 1.0}), HermitianMatrix<2>::diagonal({-0.5, 0.0})}),
                 DomainError);
    EXPECT_THROW(Povm<2>(std::vector<HermitianMatrix<2>>{}), DomainError);
}

TEST(OptimalEstimator, DirectSubstitution) {
    const SldOperator<2> l{HermitianMatrix<2>::diagonal({4.0, -4.0 / 3.0}), 1.0};
    const auto est = optimal_estimator(1.0, 4.0, l);
    EXPECT_NEAR(est(0, 0).real(), 2.0, 1e-15);
    EXPECT_NEAR(est(1, 1).real(), 2.0 / 3.0, 1e-15);
    EXPECT_THROW(optimal_estimator(1.0, 0.0, l), DomainError);
}

TEST(OptimalEstimator, UnbiasedWithVarianceInverseQfi) {
    const auto f = diagonal_family();
    const double xi = 0.3;
    const auto l = sld(f, xi);
    const double j = qfi_spectral(f, xi).total;
    const auto est = optimal_estimator(xi, j, l);
    const auto rho = f.state(xi);
    const double mean = expectation(rho, est);
    const double second = (rho.matrix() * est.matrix() * est.matrix()).trace().real();
    EXPECT_NEAR(mean, xi, 1e-14);
    EXPECT_NEAR(second - mean * mean, 1.0 / j, 1e-12);
}

TEST(StateFamily, FallsBackToFiniteDifference) {
    const auto f = diagonal_family().without_analytic_derivative();
    EXPECT_NEAR(f.derivative(0.4)(0, 0).real(), 1.0, 1e-9);
    EXPECT_NEAR(qfi_spectral(f, 0.5).total, 4.0, 1e-8);
}
