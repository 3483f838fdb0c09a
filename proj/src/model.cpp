// model.cpp - amplitudes, global state, reduced states

#include "qcorr/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcorr {

SpectralDensity SpectralDensity::flat(double gamma) {
    SpectralDensity s{SpectralKind::flat, gamma, 0.0, 0.0};
    s.validate();
    return s;
}

SpectralDensity SpectralDensity::lorentz(double coupling, double width) {
    SpectralDensity s{SpectralKind::lorentz, 0.0, coupling, width};
    s.validate();
    return s;
}

void SpectralDensity::validate() const {
    if (kind == SpectralKind::flat) {
        if (!(gamma > 0.0)) throw std::invalid_argument("flat spectral density needs gamma > 0");
    } else {
        if (!(coupling > 0.0)) throw std::invalid_argument("Lorentz spectral density needs W > 0");
        if (!(width > 0.0)) throw std::invalid_argument("Lorentz spectral density needs lambda > 0");
    }
}

namespace {

Amplitudes from_xi(double xi) {
    return {xi, std::sqrt(std::max(0.0, 1.0 - xi * xi))};
}

void require_time(double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("time must be non-negative, got " + std::to_string(t));
    }
}

}  // namespace

Amplitudes amplitudes_flat(double gamma_t) {
    require_time(gamma_t);
    return {std::exp(-0.5 * gamma_t), std::sqrt(-std::expm1(-gamma_t))};
}

Amplitudes amplitudes_lorentz(double lambda_t, double coupling_over_width) {
    require_time(lambda_t);
    if (!(coupling_over_width > 0.0)) {
        throw std::invalid_argument("W/lambda must be positive");
    }
    const double r = coupling_over_width;
    const double d2 = 1.0 - 4.0 * r * r;
    const double half = 0.5 * lambda_t;

    if (std::abs(d2) <= 1e-12) {
        return from_xi(std::exp(-half) * (1.0 + half));
    }
    if (d2 > 0.0) {
        // e^{-x} cosh(d x) and e^{-x} sinh(d x) written as decaying
        // exponentials so large times do not overflow.
        const double d = std::sqrt(d2);
        const double slow = std::exp(-half * (1.0 - d));
        const double fast = std::exp(-half * (1.0 + d));
        return from_xi(0.5 * (slow + fast) + 0.5 * (slow - fast) / d);
    }
    const double omega = std::sqrt(-d2);
    const double envelope = std::exp(-half);
    return from_xi(envelope * (std::sin(omega * half) / omega + std::cos(omega * half)));
}

Amplitudes amplitudes(const SpectralDensity& spectral, double t) {
    return spectral.kind == SpectralKind::flat
               ? amplitudes_flat(t)
               : amplitudes_lorentz(t, spectral.coupling_over_width());
}

void Scenario::validate() const {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10) {
        throw std::invalid_argument("|alpha|^2 + |beta|^2 must equal 1");
    }
    spectral.validate();
    if (time_grid.empty()) throw std::invalid_argument("time grid is empty");
    if (time_grid.front() < 0.0) throw std::invalid_argument("time grid starts before 0");
    for (std::size_t i = 1; i < time_grid.size(); ++i) {
        if (!(time_grid[i] > time_grid[i - 1])) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
}

PureState4 build_state(Family family, Complex alpha, Complex beta, const Amplitudes& amps) {
    const double xi = amps.xi;
    const double chi = amps.chi;
    std::array<Complex, PureState4::kSize> psi{};
    if (family == Family::two_exc) {
        psi[PureState4::index(0, 0, 0, 0)] += alpha;
        // (xi|1>_s|0>_r + chi|0>_s|1>_r) for each spin-reservoir pair
        const struct {
            int s, r;
            double c;
        } branch[2] = {{1, 0, xi}, {0, 1, chi}};
        for (const auto& b1 : branch)
            for (const auto& b2 : branch)
                psi[PureState4::index(b1.s, b2.s, b1.r, b2.r)] += beta * b1.c * b2.c;
    } else {
        psi[PureState4::index(0, 1, 0, 0)] += alpha * xi;
        psi[PureState4::index(0, 0, 0, 1)] += alpha * chi;
        psi[PureState4::index(1, 0, 0, 0)] += beta * xi;
        psi[PureState4::index(0, 0, 1, 0)] += beta * chi;
    }
    return PureState4(psi);
}

PureState4 build_state(const Scenario& scenario, const Amplitudes& amps) {
    return build_state(scenario.family, scenario.alpha, scenario.beta, amps);
}

ComplexMatrix reduced(const PureState4& state, Partition partition) {
    static constexpr std::size_t dims[4] = {2, 2, 2, 2};
    const auto [first, second] = subsystems(partition);
    const std::size_t keep[2] = {static_cast<std::size_t>(first), static_cast<std::size_t>(second)};
    return partial_trace(state.density(), keep, dims);
}

std::vector<double> uniform_grid(double start, double end, int steps) {
    if (steps < 2) throw std::invalid_argument("time grid needs at least 2 points");
    if (!(end > start)) throw std::invalid_argument("time grid end must exceed start");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = start + (end - start) * i / (steps - 1);
    }
    return grid;
}

}  // namespace qcorr
