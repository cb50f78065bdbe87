#include <gtest/gtest.h>

#include <cmath>

#include "unruh_qfi/eigh.hpp"
#include "unruh_qfi/rng.hpp"

using namespace unruh_qfi;

namespace {

template <std::size_t N>
HermitianMatrix<N> random_hermitian(CounterRng& rng, double scale = 1.0) {
    ComplexMatrix<N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            m(i, j) = scale * complex{2.0 * rng.uniform() - 1.0, i == j ? 0.0 : 2.0 * rng.uniform() - 1.0};
    return HermitianMatrix<N>::symmetrize(m);
}

template <std::size_t N>
double orthonormality_defect(const EigenDecomposition<N>& e) {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            worst = std::max(worst, std::abs(inner(e.eigenvectors[i], e.eigenvectors[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

template <std::size_t N>
void check_contract(const HermitianMatrix<N>& h) {
    const auto e = eigh(h);
    const double scale = std::max(1.0, h.matrix().frobenius_norm());
    EXPECT_LT(mat_distance(e.reconstruct(), h.matrix()), 1e-12 * scale);
    EXPECT_LT(orthonormality_defect(e), 1e-12);
    for (std::size_t k = 0; k + 1 < N; ++k) EXPECT_GE(e.eigenvalues[k], e.eigenvalues[k + 1]);
    for (std::size_t k = 0; k < N; ++k) {
        // largest-magnitude component real and positive
        std::size_t big = 0;
        for (std::size_t i = 1; i < N; ++i)
            if (std::abs(e.eigenvectors[k][i]) > std::abs(e.eigenvectors[k][big]) + 1e-12) big = i;
        EXPECT_NEAR(e.eigenvectors[k][big].imag(), 0.0, 1e-12);
        EXPECT_GT(e.eigenvectors[k][big].real(), 0.0);
    }
}

}  // namespace

TEST(Eigh, Identity) {
    const auto e = eigh(HermitianMatrix<2>::identity());
    EXPECT_DOUBLE_EQ(e.eigenvalues[0], 1.0);
    EXPECT_DOUBLE_EQ(e.eigenvalues[1], 1.0);
    EXPECT_LT(orthonormality_defect(e), 1e-15);
}

TEST(Eigh, AlreadyDiagonal) {
    const auto e = eigh(HermitianMatrix<2>::diagonal({1.0, 2.0}));
    EXPECT_DOUBLE_EQ(e.eigenvalues[0], 2.0);
    EXPECT_DOUBLE_EQ(e.eigenvalues[1], 1.0);
    EXPECT_NEAR(std::abs(e.eigenvectors[0][1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(e.eigenvectors[1][0]), 1.0, 1e-15);
}

TEST(Eigh, PauliX) {
    const HermitianMatrix<2> x{ComplexMatrix<2>{{0.0, 1.0}, {1.0, 0.0}}};
    const auto e = eigh(x);
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
    EXPECT_NEAR(e.eigenvalues[1], -1.0, 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.eigenvectors[0][0]), r, 1e-15);
    EXPECT_NEAR(std::abs(e.eigenvectors[0][1]), r, 1e-15);
    EXPECT_NEAR(std::abs(inner(e.eigenvectors[1], Vector<2>{r, -r})), 1.0, 1e-15);
}

TEST(Eigh, PauliYComplexEigenvectors) {
    const HermitianMatrix<2> y{ComplexMatrix<2>{{0.0, complex{0.0, -1.0}}, {complex{0.0, 1.0}, 0.0}}};
    check_contract(y);
}

TEST(Eigh, RandomContractAllDimensions) {
    CounterRng rng(7);
    for (int i = 0; i < 200; ++i) {
        check_contract(random_hermitian<2>(rng));
        check_contract(random_hermitian<3>(rng));
        check_contract(random_hermitian<4>(rng, 1e3));
    }
}

TEST(Eigh, DegenerateClusterStaysOrthonormal) {
    // unitary rotation of diag(1, 1, 0.5, 0.5)
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix<4> u{{r, 0.0, r, 0.0}, {0.0, r, 0.0, complex{0.0, r}}, {r, 0.0, -r, 0.0}, {0.0, r, 0.0, complex{0.0, -r}}};
    const auto d = ComplexMatrix<4>::diagonal({1.0, 1.0, 0.5, 0.5});
    const auto h = HermitianMatrix<4>::symmetrize(u * d * u.adjoint());
    const auto e = eigh(h);
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[3], 0.5, 1e-14);
    EXPECT_LT(orthonormality_defect(e), 1e-13);
    EXPECT_LT(mat_distance(e.reconstruct(), h.matrix()), 1e-13);
}

TEST(Eigh, InEigenbasisDiagonalizes) {
    CounterRng rng(99);
    const auto h = random_hermitian<3>(rng);
    const auto e = eigh(h);
    const auto d = e.in_eigenbasis(h.matrix());
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(d(i, i).real(), e.eigenvalues[i], 1e-13);
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) {
                EXPECT_LT(std::abs(d(i, j)), 1e-13);
            }
    }
}

TEST(Eigh, Deterministic) {
    CounterRng rng(3);
    const auto h = random_hermitian<4>(rng);
    const auto a = eigh(h);
    const auto b = eigh(h);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(Eigh, ConvergenceFailureReported) {
    CounterRng rng(5);
    const auto h = random_hermitian<4>(rng);
    EXPECT_THROW(eigh(h, EighOptions{1e-14, 0, 1e-10}), ConvergenceError);
}

TEST(CounterRng, SplitMixReferenceVector) {
    CounterRng rng(0);
    EXPECT_EQ(rng(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(CounterRng::at(0, 0), 0xE220A8397B1DCDAFULL);
}

TEST(CounterRng, CounterAddressable) {
    CounterRng a(42);
    for (int i = 0; i < 10; ++i) a();
    CounterRng b(42, 10);
    EXPECT_EQ(a(), b());
    EXPECT_NE(CounterRng(42).split(1).key(), CounterRng(42).split(2).key());
}

TEST(CounterRng, UniformInUnitInterval) {
    CounterRng rng(1);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 5 * std::sqrt(1.0 / 12 / 100000));
}
