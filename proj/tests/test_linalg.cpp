#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcorr/linalg.hpp"
#include "qcorr/model.hpp"
#include "test_support.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace qcorr;

namespace {

constexpr std::size_t kQubits4[4] = {2, 2, 2, 2};

ComplexMatrix diag(std::initializer_list<double> v) {
    std::vector<double> values(v);
    return ComplexMatrix::diagonal(values);
}

}  // namespace

TEST_CASE("tensor of identities and projectors") {
    CHECK(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
          ComplexMatrix::identity(4));
    const ComplexMatrix p = tensor(diag({1, 0}), diag({1, 0}));
    CHECK(p.max_abs_diff(diag({1, 0, 0, 0})) == 0.0);
    CHECK(p.hermitian());
}

TEST_CASE("sigma_y x sigma_y is the anti-diagonal spin flip") {
    // Expanded by hand: (-i)(i) = 1 on the inner anti-diagonal, (-i)(-i) = -1 outer.
    const ComplexMatrix yy = tensor(pauli::y(), pauli::y());
    const ComplexMatrix expected(4, {0, 0, 0, -1,  //
                                     0, 0, 1, 0,   //
                                     0, 1, 0, 0,   //
                                     -1, 0, 0, 0},
                                 true);
    CHECK(yy.max_abs_diff(expected) == 0.0);
}

TEST_CASE("tensor rejects dimensions above 16") {
    const ComplexMatrix four = ComplexMatrix::identity(4);
    CHECK_NOTHROW(tensor(four, four));
    CHECK_THROWS_AS(tensor(tensor(four, four), ComplexMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("tensor is associative") {
    std::mt19937_64 rng(7);
    // Small Gaussian integers keep every product exact, so equality tests
    // only the index bookkeeping.
    std::uniform_int_distribution<int> n(-9, 9);
    auto random_matrix = [&](std::size_t d) {
        ComplexMatrix m(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                m(i, j) = {static_cast<double>(n(rng)), static_cast<double>(n(rng))};
        return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(2), b = random_matrix(2), c = random_matrix(4);
        CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    }
}

TEST_CASE("partial trace of a product state returns the factor") {
    const ComplexMatrix a(2, {0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.7}, true);
    const ComplexMatrix b = diag({0.25, 0.75});
    const std::size_t dims[2] = {2, 2};
    const std::size_t keep_a[1] = {0};
    const std::size_t keep_b[1] = {1};
    CHECK(partial_trace(tensor(a, b), keep_a, dims).max_abs_diff(a) < 1e-15);
    CHECK(partial_trace(tensor(a, b), keep_b, dims).max_abs_diff(b) < 1e-15);
}

TEST_CASE("partial trace of the two-excitation state") {
    const double alpha = 1.0 / std::sqrt(10.0);
    const double beta = 3.0 / std::sqrt(10.0);
    const std::size_t keep[2] = {0, 1};

    SUBCASE("t = 0 leaves the initial spin state") {
        const auto rho = partial_trace(build_state(Family::two_exc, alpha, beta, {1.0, 0.0}).density(),
                                       keep, kQubits4);
        ComplexMatrix expected(4);
        expected(0, 0) = alpha * alpha;
        expected(0, 3) = expected(3, 0) = alpha * beta;
        expected(3, 3) = beta * beta;
        CHECK(rho.max_abs_diff(expected) < 1e-15);
    }
    SUBCASE("xi^2 = chi^2 = 1/2") {
        const double h = std::sqrt(0.5);
        const auto rho = partial_trace(build_state(Family::two_exc, alpha, beta, {h, h}).density(),
                                       keep, kQubits4);
        const double b2 = beta * beta;
        CHECK(rho(0, 0).real() == doctest::Approx(alpha * alpha + b2 / 4).epsilon(1e-14));
        CHECK(rho(1, 1).real() == doctest::Approx(b2 / 4).epsilon(1e-14));
        CHECK(rho(2, 2).real() == doctest::Approx(b2 / 4).epsilon(1e-14));
        CHECK(rho(3, 3).real() == doctest::Approx(b2 / 4).epsilon(1e-14));
        CHECK(rho(0, 3).real() == doctest::Approx(alpha * beta / 2).epsilon(1e-14));
    }
}

TEST_CASE("partial trace rejects malformed input") {
    const ComplexMatrix rho = ComplexMatrix::identity(4) * 0.25;
    const std::size_t good[2] = {2, 2};
    const std::size_t bad[2] = {2, 3};
    const std::size_t keep[1] = {0};
    const std::size_t keep_bad[1] = {2};
    const std::size_t keep_dup[2] = {0, 0};
    CHECK_NOTHROW(partial_trace(rho, keep, good));
    CHECK_THROWS_AS(partial_trace(rho, keep, bad), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, keep_bad, good), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, keep_dup, good), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(4), keep, good), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues: closed-form cases") {
    const auto d = hermitian_eigenvalues(diag({0.3, 0.7}));
    CHECK(d[0] == doctest::Approx(0.7));
    CHECK(d[1] == doctest::Approx(0.3));

    const auto p = hermitian_eigenvalues(ComplexMatrix(2, {0.5, 0.5, 0.5, 0.5}, true));
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(p[1]) < 1e-15);

    // Spin-pair matrix at beta2 = 1/2, xi2 = 1/2 with alpha = beta: the inner
    // block is (1/8) I, the outer block [[a, z], [z, d]] with a = 5/8,
    // d = 1/8, z = 1/4 has eigenvalues (a + d)/2 +- sqrt(((a - d)/2)^2 + z^2).
    const double h = std::sqrt(0.5);
    const auto rho = build_state(Family::two_exc, h, h, {h, h}).density();
    const std::size_t keep[2] = {0, 1};
    const auto ev = hermitian_eigenvalues(partial_trace(rho, keep, kQubits4));
    const double a = 5.0 / 8, dd = 1.0 / 8, z = 0.25;
    const double mid = 0.5 * (a + dd);
    const double rad = std::sqrt(0.25 * (a - dd) * (a - dd) + z * z);
    CHECK(ev[0] == doctest::Approx(mid + rad).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(ev[2] == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(ev[3] == doctest::Approx(mid - rad).epsilon(1e-12));
}

TEST_CASE("hermitian eigen reconstruction and agreement with Eigen") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n;
    for (std::size_t dim : {2u, 4u, 8u, 16u}) {
        ComplexMatrix m(dim);
        Eigen::MatrixXcd em(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i; j < dim; ++j) {
                const Complex v = i == j ? Complex(n(rng)) : Complex(n(rng), n(rng));
                m(i, j) = v;
                m(j, i) = std::conj(v);
            }
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) em(i, j) = m(i, j);

        const EigenDecomposition eig = hermitian_eigen(m);
        ComplexMatrix lambda(dim);
        for (std::size_t k = 0; k < dim; ++k) lambda(k, k) = eig.values[k];
        CHECK(m.max_abs_diff(eig.vectors * lambda * eig.vectors.adjoint()) < 1e-9);
        for (std::size_t k = 1; k < dim; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(em);
        for (std::size_t k = 0; k < dim; ++k) {
            CHECK(eig.values[k] == doctest::Approx(ref.eigenvalues()(dim - 1 - k)).epsilon(1e-11));
        }
    }
}

TEST_CASE("hermitian eigen rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, {0, 1, 0, 0})), std::invalid_argument);
}

TEST_CASE("shannon binary entropy") {
    CHECK(shannon_binary(0.5) == 1.0);
    CHECK(shannon_binary(0.0) == 0.0);
    CHECK(shannon_binary(1.0) == 0.0);
    CHECK(shannon_binary(-5e-13) == 0.0);
    CHECK(shannon_binary(0.9) == doctest::Approx(0.468996).epsilon(1e-6));
    CHECK_THROWS_AS(shannon_binary(-1e-9), std::invalid_argument);
    CHECK_THROWS_AS(shannon_binary(1.001), std::invalid_argument);
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(diag({1, 0})) == 0.0);
    CHECK(von_neumann_entropy(diag({0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(diag({0.25, 0.75})) == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK(von_neumann_entropy(ComplexMatrix(2, {0.5, 0.5, 0.5, 0.5}, true)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // Round-off negativity is absorbed, genuine negativity rejected.
    CHECK(von_neumann_entropy(diag({1.0 + 5e-11, -5e-11})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(von_neumann_entropy(diag({1.1, -0.1})), std::invalid_argument);
    CHECK_THROWS_AS(von_neumann_entropy(diag({0.5, 0.6})), std::invalid_argument);
}

TEST_CASE("PureState4 rejects unnormalized amplitudes") {
    std::array<Complex, 16> amps{};
    amps[0] = 1.0;
    CHECK_NOTHROW(PureState4{amps});
    amps[1] = 0.1;
    CHECK_THROWS_AS(PureState4{amps}, std::invalid_argument);
}

TEST_CASE("random pure states: trace, positivity, Schmidt symmetry") {
    std::mt19937_64 rng(20240601);
    const std::size_t pair_sets[3][2][2] = {
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    for (int sample = 0; sample < 1000; ++sample) {
        const ComplexMatrix rho = testing::random_pure_state(rng).density();
        for (const auto& split : pair_sets) {
            const auto a = partial_trace(rho, split[0], kQubits4);
            const auto b = partial_trace(rho, split[1], kQubits4);
            REQUIRE(std::abs(a.trace() - 1.0) < 1e-10);
            REQUIRE(std::abs(b.trace() - 1.0) < 1e-10);
            REQUIRE(hermitian_eigenvalues(a).back() > -1e-12);
            REQUIRE(std::abs(von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-8);
        }
        const std::size_t one[1] = {1};
        const std::size_t three[3] = {0, 2, 3};
        REQUIRE(std::abs(von_neumann_entropy(partial_trace(rho, one, kQubits4)) -
                         von_neumann_entropy(partial_trace(rho, three, kQubits4))) < 1e-8);
    }
}
