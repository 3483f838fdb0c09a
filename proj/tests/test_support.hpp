// test_support.hpp - random state generators shared by the test suites

#pragma once

#include "qcorr/linalg.hpp"

#include <cmath>
#include <random>

namespace qcorr::testing {

// Haar-random four-party pure state from normalized complex Gaussians.
inline PureState4 random_pure_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::array<Complex, PureState4::kSize> amps{};
    double n = 0.0;
    for (auto& a : amps) {
        a = {normal(rng), normal(rng)};
        n += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(n);
    return PureState4(amps);
}

// Valid two-qubit X-state: random diagonal, coherences inside the positivity
// bounds |rho_03| <= sqrt(rho_00 rho_33), |rho_12| <= sqrt(rho_11 rho_22).
inline ComplexMatrix random_x_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double p[4];
    double sum = 0.0;
    for (double& x : p) {
        x = -std::log(1.0 - u(rng));
        sum += x;
    }
    for (double& x : p) x /= sum;
    ComplexMatrix rho(4);
    for (int i = 0; i < 4; ++i) rho(i, i) = p[i];
    const Complex z = std::polar(u(rng) * std::sqrt(p[0] * p[3]), 2.0 * M_PI * u(rng));
    const Complex w = std::polar(u(rng) * std::sqrt(p[1] * p[2]), 2.0 * M_PI * u(rng));
    rho(0, 3) = z;
    rho(3, 0) = std::conj(z);
    rho(1, 2) = w;
    rho(2, 1) = std::conj(w);
    rho.mark_hermitian();
    return rho;
}

// Random mixed two-qubit state: partial trace of a random four-party state.
inline ComplexMatrix random_two_qubit_state(std::mt19937_64& rng) {
    static constexpr std::size_t dims[4] = {2, 2, 2, 2};
    static constexpr std::size_t keep[2] = {0, 1};
    return partial_trace(random_pure_state(rng).density(), keep, dims);
}

}  // namespace qcorr::testing
