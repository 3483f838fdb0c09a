#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcorr/correlations.hpp"
#include "qcorr/model.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qcorr;

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen from a 30-digit mpmath evaluation of the binary-entropy expressions.
constexpr double kBellHalfDecay = 0.210402087766276763;  // H(1/4) - H((1 + sqrt(1/2)) / 2)
constexpr double kTwoH09 = 0.937991187178562443;         // 2 H(9/10)
constexpr double kH01 = 0.468995593589281221;            // H(1/10)

ComplexMatrix spin_pair(Family family, double alpha, double beta, double xi2) {
    const double xi = std::sqrt(xi2);
    const double chi = std::sqrt(1.0 - xi2);
    return reduced(build_state(family, alpha, beta, {xi, chi}), Partition::s1s2);
}

ComplexMatrix reservoir_pair(Family family, double alpha, double beta, double xi2) {
    const double xi = std::sqrt(xi2);
    const double chi = std::sqrt(1.0 - xi2);
    return reduced(build_state(family, alpha, beta, {xi, chi}), Partition::r1r2);
}

ComplexMatrix bell() {
    ComplexMatrix rho(4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    rho.mark_hermitian();
    return rho;
}

// Entropy reduction for a fixed axis, computed the slow way: full 4x4
// projectors, explicit conditional states and general entropies.
double slow_measured_information(const ComplexMatrix& rho, const MeasurementAxis& axis) {
    const std::size_t dims[2] = {2, 2};
    const std::size_t keep_a[1] = {0};
    double conditional = 0.0;
    for (const ComplexMatrix& p : axis.projectors()) {
        const ComplexMatrix big = tensor(ComplexMatrix::identity(2), p);
        ComplexMatrix post = big * rho * big;
        const double prob = post.trace().real();
        if (prob < 1e-14) continue;
        post = post * (1.0 / prob);
        post.mark_hermitian();
        conditional += prob * von_neumann_entropy(partial_trace(post, keep_a, dims));
    }
    return von_neumann_entropy(partial_trace(rho, keep_a, dims)) - conditional;
}

}  // namespace

TEST_CASE("measurement axis projectors") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const MeasurementAxis axis{kPi * u(rng), 2 * kPi * u(rng)};
        const auto [plus, minus] = axis.projectors();
        CHECK((plus * plus).max_abs_diff(plus) < 1e-12);
        CHECK((minus * minus).max_abs_diff(minus) < 1e-12);
        CHECK((plus * minus).max_abs_diff(ComplexMatrix(2)) < 1e-12);
        CHECK((plus + minus).max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
    }
}

TEST_CASE("mutual information") {
    const ComplexMatrix a(2, {0.3, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.7}, true);
    const ComplexMatrix b(2, {0.6, 0.0, 0.0, 0.4}, true);
    CHECK(std::abs(mutual_information(tensor(a, b))) < 1e-12);
    CHECK(mutual_information(bell()) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mutual_information(spin_pair(Family::two_exc, 1 / std::sqrt(10.0), 3 / std::sqrt(10.0),
                                       1.0)) == doctest::Approx(kTwoH09).epsilon(1e-12));
    CHECK_THROWS_AS(mutual_information(ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("brute-force classical correlation: simple states") {
    const ComplexMatrix product = tensor(ComplexMatrix(2, {0.3, 0.1, 0.1, 0.7}, true),
                                         ComplexMatrix(2, {0.5, 0.0, 0.0, 0.5}, true));
    const auto c0 = classical_correlation_bruteforce(product, Side::second);
    CHECK(std::abs(c0.value) < 1e-12);
    // Exact ties resolve to the smallest (theta, phi).
    CHECK(c0.axis.theta == 0.0);
    CHECK(c0.axis.phi == 0.0);

    ComplexMatrix classical(4);
    classical(0, 0) = classical(3, 3) = 0.5;
    classical.mark_hermitian();
    const auto c1 = classical_correlation_bruteforce(classical, Side::second);
    CHECK(c1.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c1.axis.theta == 0.0);
    CHECK(std::abs(discord(classical, Side::second)) < 1e-12);

    CHECK(classical_correlation_bruteforce(bell(), Side::second).value ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(discord(bell(), Side::second) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("brute-force classical correlation matches the closed form at half decay") {
    const double h = std::sqrt(0.5);
    const ComplexMatrix rho = spin_pair(Family::two_exc, h, h, 0.5);
    const auto c = classical_correlation_bruteforce(rho, Side::second, 64, 4);
    CHECK(c.value == doctest::Approx(kBellHalfDecay).epsilon(1e-6));
    CHECK(classical_correlation_closed_two_exc(0.5, 0.5, 0.5) ==
          doctest::Approx(kBellHalfDecay).epsilon(1e-13));
    // Optimum lies on the equatorial family.
    CHECK(measured_information(rho, Side::second, {kPi / 2, 0.0}) ==
          doctest::Approx(c.value).epsilon(1e-9));
}

TEST_CASE("fast measurement objective agrees with explicit projectors") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix rho = testing::random_two_qubit_state(rng);
        const MeasurementAxis axis{kPi * u(rng), 2 * kPi * u(rng)};
        CHECK(measured_information(rho, Side::second, axis) ==
              doctest::Approx(slow_measured_information(rho, axis)).epsilon(1e-10));
    }
}

TEST_CASE("measured side matters for asymmetric states") {
    // Classical-quantum state: Q measured on the classical side is zero.
    ComplexMatrix rho(4);
    rho(0, 0) = rho(1, 1) = rho(0, 1) = rho(1, 0) = 0.25;  // |0><0| x |+><+| / 2
    rho(2, 2) = 0.5;                                       // |1><1| x |0><0| / 2
    rho.mark_hermitian();
    CHECK(std::abs(discord(rho, Side::first)) < 1e-9);
    CHECK(discord(rho, Side::second) > 1e-3);
}

TEST_CASE("closed forms at t = 0 and trivial limits") {
    for (double b2 : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        CHECK(classical_correlation_closed_two_exc(b2, 1.0, 0.0) ==
              doctest::Approx(shannon_binary(b2)).epsilon(1e-14));
        CHECK(quantum_correlation_closed_two_exc(b2, 1.0, 0.0) ==
              classical_correlation_closed_two_exc(b2, 1.0, 0.0));
        const auto r = correlations_closed_reservoir_two_exc(b2, 1.0, 0.0);
        CHECK(std::abs(r.classical) < 1e-14);
        CHECK(std::abs(r.quantum) < 1e-14);
        const auto r1 = correlations_closed_reservoir_one_exc(1.0 - b2, 1.0, 0.0);
        CHECK(std::abs(r1.classical) < 1e-14);
        CHECK(std::abs(r1.quantum) < 1e-14);
        CHECK(quantum_correlation_closed_one_exc(1.0 - b2, 1.0, 0.0) ==
              doctest::Approx(shannon_binary(1.0 - b2)).epsilon(1e-14));
    }
    CHECK(classical_correlation_closed_two_exc(0.0, 0.3, 0.7) == 0.0);
    CHECK(quantum_correlation_closed_two_exc(0.5, 0.5, 0.5) ==
          doctest::Approx(kBellHalfDecay).epsilon(1e-13));
    CHECK(quantum_correlation_closed_one_exc(0.5, 1.0, 0.0) == doctest::Approx(1.0));

    // Full transfer to the reservoirs.
    const auto full = correlations_closed_reservoir_two_exc(0.5, 0.0, 1.0);
    CHECK(full.classical == doctest::Approx(1.0));
    CHECK(full.quantum == doctest::Approx(1.0));
    const auto full1 = correlations_closed_reservoir_one_exc(0.1, 0.0, 1.0);
    CHECK(full1.classical == doctest::Approx(kH01).epsilon(1e-13));
    CHECK(full1.quantum == doctest::Approx(kH01).epsilon(1e-13));
}

TEST_CASE("closed forms reject invalid arguments") {
    CHECK_THROWS_AS(classical_correlation_closed_two_exc(1.2, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(classical_correlation_closed_two_exc(0.5, 0.5, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(quantum_correlation_closed_one_exc(0.5, -0.1, 1.1), std::invalid_argument);
}

TEST_CASE("closed forms against the brute-force pipeline") {
    const OptimizerSettings opt{64, 4};
    const double a10 = 1 / std::sqrt(10.0);
    const double b10 = 3 / std::sqrt(10.0);

    SUBCASE("reservoirs, two excitations, beta2 = 9/10, xi2 = 1/2") {
        const ComplexMatrix rho = reservoir_pair(Family::two_exc, a10, b10, 0.5);
        const auto closed = correlations_closed_reservoir_two_exc(0.9, 0.5, 0.5);
        const double c = classical_correlation_bruteforce(rho, Side::second, opt).value;
        CHECK(c == doctest::Approx(closed.classical).epsilon(1e-6));
        CHECK(mutual_information(rho) - c == doctest::Approx(closed.quantum).epsilon(1e-6));
    }
    SUBCASE("spins, one excitation, alpha2 = 1/10, xi2 = 1/2") {
        const ComplexMatrix rho = spin_pair(Family::one_exc, a10, b10, 0.5);
        CHECK(discord(rho, Side::second, opt) ==
              doctest::Approx(quantum_correlation_closed_one_exc(0.1, 0.5, 0.5)).epsilon(1e-6));
        CHECK(classical_correlation_bruteforce(rho, Side::second, opt).value ==
              doctest::Approx(classical_correlation_closed_two_exc(0.9, 0.5, 0.5)).epsilon(1e-6));
    }
    SUBCASE("reservoirs, one excitation, alpha2 = 1/10, xi2 = 1/2") {
        const ComplexMatrix rho = reservoir_pair(Family::one_exc, a10, b10, 0.5);
        const auto closed = correlations_closed_reservoir_one_exc(0.1, 0.5, 0.5);
        CHECK(classical_correlation_bruteforce(rho, Side::second, opt).value ==
              doctest::Approx(closed.classical).epsilon(1e-6));
        CHECK(discord(rho, Side::second, opt) == doctest::Approx(closed.quantum).epsilon(1e-6));
    }
}

TEST_CASE("two-excitation family: brute force equals the closed form and Q = C") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double b2 = u(rng);
        const double xi2 = u(rng);
        const ComplexMatrix rho = spin_pair(Family::two_exc, std::sqrt(1 - b2), std::sqrt(b2), xi2);
        const double closed = classical_correlation_closed_two_exc(b2, xi2, 1 - xi2);
        const double c = classical_correlation_bruteforce(rho, Side::second).value;
        const double q = mutual_information(rho) - c;
        CHECK(std::abs(c - closed) < 1e-6);
        CHECK(std::abs(q - c) < 1e-6);
    }
}

TEST_CASE("optimizer convergence on random X-states") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const ComplexMatrix rho = testing::random_x_state(rng);
        const double coarse = classical_correlation_bruteforce(rho, Side::second, 64, 4).value;
        const double fine = classical_correlation_bruteforce(rho, Side::second, 128, 5).value;
        worst = std::max(worst, std::abs(coarse - fine));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("non-negativity and I = C + Q on random mixed states") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const ComplexMatrix rho = testing::random_two_qubit_state(rng);
        for (Side side : {Side::first, Side::second}) {
            const double c = classical_correlation_bruteforce(rho, side).value;
            const double q = discord(rho, side);
            CHECK(c >= -1e-8);
            CHECK(q >= -1e-8);
            CHECK(std::abs(c + q - mutual_information(rho)) < 1e-6);
        }
    }
}

TEST_CASE("Wootters concurrence: reference states") {
    CHECK(concurrence_wootters(bell()) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix product = tensor(ComplexMatrix(2, {0.3, 0.1, 0.1, 0.7}, true),
                                         ComplexMatrix(2, {0.2, Complex(0, 0.1), Complex(0, -0.1), 0.8}, true));
    CHECK(concurrence_wootters(product) < 1e-12);
    CHECK(concurrence_wootters(ComplexMatrix::identity(4) * 0.25) == 0.0);
    CHECK_THROWS_AS(concurrence_wootters(ComplexMatrix::identity(4)), std::invalid_argument);

    // Sudden-death point of the flat two-excitation state with beta2 = 9/10:
    // e^{-gt} (|ab| - b2 (1 - e^{-gt})) = 0 at gt = ln(3/2), i.e. xi2 = 2/3.
    const Amplitudes amps = amplitudes_flat(std::log(1.5));
    const ComplexMatrix rho = reduced(
        build_state(Family::two_exc, 1 / std::sqrt(10.0), 3 / std::sqrt(10.0), amps),
        Partition::s1s2);
    CHECK(concurrence_wootters(rho) < 1e-12);
}

TEST_CASE("concurrence closed forms") {
    const double h = std::sqrt(0.5);
    CHECK(concurrence_closed(Family::two_exc, h, h, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(concurrence_closed(Family::one_exc, h, h, 1.0, 0.0) == doctest::Approx(1.0));
    const double xi = std::sqrt(2.0 / 3.0);
    CHECK(concurrence_closed(Family::two_exc, 1 / std::sqrt(10.0), 3 / std::sqrt(10.0), xi,
                             std::sqrt(1.0 / 3.0)) == doctest::Approx(0.0));
    // One excitation: no sudden death.
    for (double gt = 0.0; gt < 30.0; gt += 0.5) {
        const Amplitudes a = amplitudes_flat(gt);
        CHECK(concurrence_closed(Family::one_exc, 1 / std::sqrt(10.0), 3 / std::sqrt(10.0), a.xi,
                                 a.chi) > 0.0);
    }
}

TEST_CASE("Wootters matches the closed forms along both spectra") {
    const Complex a10 = 1 / std::sqrt(10.0);
    const Complex b10 = 3 / std::sqrt(10.0);
    const SpectralDensity lorentz = SpectralDensity::lorentz(std::sqrt(200.0), 1.0);
    for (Family family : {Family::two_exc, Family::one_exc}) {
        for (double t : uniform_grid(0.0, 10.0, 50)) {
            const Amplitudes a = amplitudes_flat(t);
            const auto rho = reduced(build_state(family, a10, b10, a), Partition::s1s2);
            CHECK(std::abs(concurrence_wootters(rho) - concurrence_closed(family, a10, b10, a.xi, a.chi)) < 1e-9);
        }
        for (double t : uniform_grid(0.0, 2.0, 50)) {
            const Amplitudes a = amplitudes(lorentz, t);
            const auto rho = reduced(build_state(family, a10, b10, a), Partition::s1s2);
            CHECK(std::abs(concurrence_wootters(rho) - concurrence_closed(family, a10, b10, a.xi, a.chi)) < 1e-9);
        }
    }
}
