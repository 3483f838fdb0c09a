// model.hpp - two spins, each damped by its own zero-temperature bosonic
// reservoir. Each reservoir is reduced to its collective single-excitation
// mode, so the whole system is four qubits (s1, s2, r1, r2).

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/types.hpp"

#include <vector>

namespace qcorr {

enum class SpectralKind { flat, lorentz };

// Flat: J(w) = gamma. Lorentz: J(w) = (W^2 lambda / pi) / ((w - w0)^2 + lambda^2),
// resonant with the spins.
struct SpectralDensity {
    SpectralKind kind{SpectralKind::flat};
    double gamma{1.0};
    double coupling{0.0};  // W
    double width{0.0};     // lambda

    static SpectralDensity flat(double gamma);
    static SpectralDensity lorentz(double coupling, double width);

    void validate() const;
    double coupling_over_width() const { return coupling / width; }

    bool operator==(const SpectralDensity&) const = default;
};

// Survival (xi) and leakage (chi) amplitudes of one excitation. xi is signed:
// it changes sign in the underdamped Lorentz regime.
struct Amplitudes {
    double xi{1.0};
    double chi{0.0};
};

/// xi = exp(-gt/2), chi = sqrt(1 - exp(-gt)).
Amplitudes amplitudes_flat(double gamma_t);

/// Resonant Lorentzian reservoir in units of lambda t. Picks the overdamped,
/// critically damped, or underdamped expression from d^2 = 1 - 4 (W/lambda)^2.
Amplitudes amplitudes_lorentz(double lambda_t, double coupling_over_width);

/// Dispatch on the spectral kind; `t` is gamma t (flat) or lambda t (Lorentz).
Amplitudes amplitudes(const SpectralDensity& spectral, double t);

struct Scenario {
    Family family{Family::two_exc};
    Complex alpha{1.0};
    Complex beta{0.0};
    SpectralDensity spectral;
    std::vector<double> time_grid;

    void validate() const;
};

/// Global pure state at the given amplitudes.
///   two_exc: alpha |0000> + beta (xi|10> + chi|01>)_{s1 r1} (xi|10> + chi|01>)_{s2 r2}
///   one_exc: alpha |0>_{s1 r1} (xi|10> + chi|01>)_{s2 r2} + beta (xi|10> + chi|01>)_{s1 r1} |0>_{s2 r2}
PureState4 build_state(Family family, Complex alpha, Complex beta, const Amplitudes& amps);
PureState4 build_state(const Scenario& scenario, const Amplitudes& amps);

/// Two-party reduced density matrix, parties in label order.
ComplexMatrix reduced(const PureState4& state, Partition partition);

/// Uniform grid of `steps` points on [start, end].
std::vector<double> uniform_grid(double start, double end, int steps);

}  // namespace qcorr
