// correlations.hpp - mutual information, classical correlation, discord and
// concurrence of two-qubit states, by brute-force measurement search and by
// closed form for the two model families.

#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/types.hpp"

#include <array>

namespace qcorr {

// Axis n = (sin t cos p, sin t sin p, cos t) of the projective measurement
// {(I + n.sigma)/2, (I - n.sigma)/2}.
struct MeasurementAxis {
    double theta{0.0};
    double phi{0.0};

    std::array<double, 3> direction() const;
    std::array<ComplexMatrix, 2> projectors() const;
};

struct OptimizerSettings {
    int grid{64};
    int refine_iters{4};
};

struct ClassicalCorrelation {
    double value{0.0};  // bits
    MeasurementAxis axis;
};

/// S(A) + S(B) - S(AB) in bits.
double mutual_information(const ComplexMatrix& rho);

/// Maximum over orthogonal projective measurements on `side` of the entropy
/// reduction of the other party. Uniform (theta, phi) grid, then local
/// refinement rounds that each shrink the search box five-fold.
ClassicalCorrelation classical_correlation_bruteforce(const ComplexMatrix& rho, Side side,
                                                      int grid, int refine_iters);
ClassicalCorrelation classical_correlation_bruteforce(const ComplexMatrix& rho, Side side,
                                                      const OptimizerSettings& settings = {});

/// Entropy reduction for one fixed measurement axis.
double measured_information(const ComplexMatrix& rho, Side side, const MeasurementAxis& axis);

/// Mutual information minus classical correlation; optimizer slack in
/// [-1e-8, 0) is reported as 0.
double discord(const ComplexMatrix& rho, Side side, int grid, int refine_iters);
double discord(const ComplexMatrix& rho, Side side, const OptimizerSettings& settings = {});

struct CorrelationPair {
    double classical{0.0};
    double quantum{0.0};
};

// Closed forms, expressed through beta2 = |beta|^2, xi2 = xi^2, chi2 = chi^2.
// They assume measurement on the second party.
double classical_correlation_closed_two_exc(double beta2, double xi2, double chi2);
double quantum_correlation_closed_two_exc(double beta2, double xi2, double chi2);
CorrelationPair correlations_closed_reservoir_two_exc(double beta2, double xi2, double chi2);
double quantum_correlation_closed_one_exc(double alpha2, double xi2, double chi2);
CorrelationPair correlations_closed_reservoir_one_exc(double alpha2, double xi2, double chi2);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4).
double concurrence_wootters(const ComplexMatrix& rho);

/// Closed-form spin-pair concurrence of the model families:
/// two_exc: 2 max(0, |a b| xi^2 - |b|^2 xi^2 chi^2); one_exc: 2 |a b| xi^2.
double concurrence_closed(Family family, Complex alpha, Complex beta, double xi, double chi);

}  // namespace qcorr
