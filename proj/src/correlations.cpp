// correlations.cpp - two-qubit correlation measures

#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

namespace {

constexpr std::size_t kQubit[2] = {2, 2};

void require_two_qubit_state(const ComplexMatrix& rho, const char* where) {
    if (rho.dim() != 4) {
        throw std::invalid_argument(std::string(where) + ": expected a 4x4 density matrix");
    }
    if (!rho.is_hermitian(1e-10)) {
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument(std::string(where) + ": trace differs from 1");
    }
}

// 2x2 Hermitian block [[a, b], [conj(b), d]].
struct Herm2 {
    double a{0.0};
    double d{0.0};
    Complex b{};
};

// Entropy of block / trace(block); also returns the trace.
double normalized_entropy(const Herm2& m, double trace) {
    const double diff = m.a - m.d;
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(m.b));
    const double top = std::clamp(0.5 * (1.0 + disc / trace), 0.5, 1.0);
    return shannon_binary(top);
}

// Reduced state of the unmeasured party and the three operators
// Tr_measured[(sigma_k on measured) rho], so that the post-measurement
// (unnormalized) conditional state for outcome s = +-1 along n is
// (unmeasured + s * sum_k n_k m_k) / 2.
struct MeasurementModel {
    Herm2 unmeasured;
    std::array<Herm2, 3> m;
    std::array<double, 3> m_trace{};
    double unmeasured_entropy{0.0};

    MeasurementModel(const ComplexMatrix& rho, Side side) {
        // idx(u, v): u indexes the unmeasured qubit, v the measured one.
        auto idx = [side](std::size_t u, std::size_t v) {
            return side == Side::second ? 2 * u + v : 2 * v + u;
        };
        const ComplexMatrix sig[3] = {pauli::x(), pauli::y(), pauli::z()};
        auto contract = [&](const ComplexMatrix* op, std::size_t u, std::size_t u2) {
            Complex sum = 0.0;
            for (std::size_t v = 0; v < 2; ++v) {
                for (std::size_t v2 = 0; v2 < 2; ++v2) {
                    const Complex w = op ? (*op)(v, v2) : Complex(v == v2 ? 1.0 : 0.0);
                    if (w != Complex{}) sum += w * rho(idx(u, v2), idx(u2, v));
                }
            }
            return sum;
        };
        unmeasured = {contract(nullptr, 0, 0).real(), contract(nullptr, 1, 1).real(),
                      contract(nullptr, 0, 1)};
        for (int k = 0; k < 3; ++k) {
            m[k] = {contract(&sig[k], 0, 0).real(), contract(&sig[k], 1, 1).real(),
                    contract(&sig[k], 0, 1)};
            m_trace[k] = m[k].a + m[k].d;
        }
        unmeasured_entropy = normalized_entropy(unmeasured, unmeasured.a + unmeasured.d);
    }

    double conditional_entropy(double nx, double ny, double nz) const {
        const Herm2 dir{nx * m[0].a + ny * m[1].a + nz * m[2].a,
                        nx * m[0].d + ny * m[1].d + nz * m[2].d,
                        nx * m[0].b + ny * m[1].b + nz * m[2].b};
        const double dir_trace = nx * m_trace[0] + ny * m_trace[1] + nz * m_trace[2];
        double total = 0.0;
        for (double s : {1.0, -1.0}) {
            const double p = 0.5 * (unmeasured.a + unmeasured.d + s * dir_trace);
            if (p < 1e-14) continue;
            const Herm2 cond{0.5 * (unmeasured.a + s * dir.a), 0.5 * (unmeasured.d + s * dir.d),
                             0.5 * (unmeasured.b + s * dir.b)};
            total += p * normalized_entropy(cond, p);
        }
        return total;
    }

    double information(double theta, double phi) const {
        const double st = std::sin(theta);
        return unmeasured_entropy -
               conditional_entropy(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
    }
};

struct Candidate {
    double value;
    double theta;
    double phi;

    // Larger value wins; exact ties go to the lexicographically smaller axis so
    // the result does not depend on evaluation order.
    bool beats(const Candidate& other) const {
        if (value != other.value) return value > other.value;
        if (theta != other.theta) return theta < other.theta;
        return phi < other.phi;
    }
};

}  // namespace

std::array<double, 3> MeasurementAxis::direction() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<ComplexMatrix, 2> MeasurementAxis::projectors() const {
    const auto n = direction();
    const ComplexMatrix ns = pauli::x() * n[0] + pauli::y() * n[1] + pauli::z() * n[2];
    const ComplexMatrix id = ComplexMatrix::identity(2);
    ComplexMatrix plus = (id + ns) * 0.5;
    ComplexMatrix minus = (id - ns) * 0.5;
    plus.mark_hermitian();
    minus.mark_hermitian();
    return {plus, minus};
}

double mutual_information(const ComplexMatrix& rho) {
    require_two_qubit_state(rho, "mutual_information");
    const std::size_t a[1] = {0};
    const std::size_t b[1] = {1};
    return von_neumann_entropy(partial_trace(rho, a, kQubit)) +
           von_neumann_entropy(partial_trace(rho, b, kQubit)) - von_neumann_entropy(rho);
}

double measured_information(const ComplexMatrix& rho, Side side, const MeasurementAxis& axis) {
    require_two_qubit_state(rho, "measured_information");
    return MeasurementModel(rho, side).information(axis.theta, axis.phi);
}

ClassicalCorrelation classical_correlation_bruteforce(const ComplexMatrix& rho, Side side,
                                                      int grid, int refine_iters) {
    require_two_qubit_state(rho, "classical_correlation_bruteforce");
    if (grid < 2) throw std::invalid_argument("classical_correlation_bruteforce: grid must be >= 2");
    if (refine_iters < 0) {
        throw std::invalid_argument("classical_correlation_bruteforce: refine_iters must be >= 0");
    }
    const MeasurementModel model(rho, side);
    constexpr double pi = std::numbers::pi;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> cos_phi(grid), sin_phi(grid);
    for (int j = 0; j < grid; ++j) {
        const double phi = two_pi * j / grid;
        cos_phi[j] = std::cos(phi);
        sin_phi[j] = std::sin(phi);
    }

    Candidate best{-1.0, 0.0, 0.0};
    for (int i = 0; i < grid; ++i) {
        const double theta = pi * i / (grid - 1);
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        for (int j = 0; j < grid; ++j) {
            const Candidate c{model.unmeasured_entropy -
                                  model.conditional_entropy(st * cos_phi[j], st * sin_phi[j], ct),
                              theta, two_pi * j / grid};
            if (c.beats(best)) best = c;
        }
    }

    constexpr int kLocal = 5;  // 11 x 11 local grid, spacing = half-width / 5
    double half_theta = pi / (grid - 1);
    double half_phi = two_pi / grid;
    for (int round = 0; round < refine_iters; ++round) {
        const Candidate centre = best;
        for (int i = -kLocal; i <= kLocal; ++i) {
            const double theta = centre.theta + half_theta * i / kLocal;
            if (theta < 0.0 || theta > pi) continue;
            for (int j = -kLocal; j <= kLocal; ++j) {
                double phi = std::fmod(centre.phi + half_phi * j / kLocal, two_pi);
                if (phi < 0.0) phi += two_pi;
                const Candidate c{model.information(theta, phi), theta, phi};
                if (c.beats(best)) best = c;
            }
        }
        half_theta /= 5.0;
        half_phi /= 5.0;
    }
    return {std::max(best.value, 0.0), {best.theta, best.phi}};
}

ClassicalCorrelation classical_correlation_bruteforce(const ComplexMatrix& rho, Side side,
                                                      const OptimizerSettings& settings) {
    return classical_correlation_bruteforce(rho, side, settings.grid, settings.refine_iters);
}

double discord(const ComplexMatrix& rho, Side side, int grid, int refine_iters) {
    const double q = mutual_information(rho) -
                     classical_correlation_bruteforce(rho, side, grid, refine_iters).value;
    return (q < 0.0 && q >= -1e-8) ? 0.0 : q;
}

double discord(const ComplexMatrix& rho, Side side, const OptimizerSettings& settings) {
    return discord(rho, side, settings.grid, settings.refine_iters);
}

namespace {

void require_unit(double x, const char* name) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
        throw std::invalid_argument(std::string(name) + " = " + std::to_string(x) +
                                    " outside [0, 1]");
    }
}

void require_amplitudes(double xi2, double chi2) {
    require_unit(xi2, "xi2");
    require_unit(chi2, "chi2");
    if (std::abs(xi2 + chi2 - 1.0) > 1e-10) {
        throw std::invalid_argument("xi2 + chi2 must equal 1");
    }
}

// sqrt(1 - 4 beta2 xi2 chi2), clipped at 0 for round-off.
double coherence_root(double beta2, double xi2, double chi2) {
    const double arg = 1.0 - 4.0 * beta2 * xi2 * chi2;
    if (arg < -1e-12) throw std::invalid_argument("negative argument under square root");
    return std::sqrt(std::max(arg, 0.0));
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double classical_correlation_closed_two_exc(double beta2, double xi2, double chi2) {
    require_unit(beta2, "beta2");
    require_amplitudes(xi2, chi2);
    const double root = coherence_root(beta2, xi2, chi2);
    return shannon_binary(clamp_unit(beta2 * xi2)) - shannon_binary(0.5 * (1.0 + root));
}

double quantum_correlation_closed_two_exc(double beta2, double xi2, double chi2) {
    return classical_correlation_closed_two_exc(beta2, xi2, chi2);
}

CorrelationPair correlations_closed_reservoir_two_exc(double beta2, double xi2, double chi2) {
    require_unit(beta2, "beta2");
    require_amplitudes(xi2, chi2);
    const double root = coherence_root(beta2, xi2, chi2);
    const double c = shannon_binary(clamp_unit(beta2 * chi2)) - shannon_binary(0.5 * (1.0 + root));
    return {c, c};
}

double quantum_correlation_closed_one_exc(double alpha2, double xi2, double chi2) {
    require_unit(alpha2, "alpha2");
    require_amplitudes(xi2, chi2);
    const double beta2 = clamp_unit(1.0 - alpha2);
    const double root = coherence_root(beta2, xi2, chi2);
    return -shannon_binary(clamp_unit(xi2)) + shannon_binary(clamp_unit(alpha2 * xi2)) +
           shannon_binary(0.5 * (1.0 + root));
}

CorrelationPair correlations_closed_reservoir_one_exc(double alpha2, double xi2, double chi2) {
    require_unit(alpha2, "alpha2");
    require_amplitudes(xi2, chi2);
    const double beta2 = clamp_unit(1.0 - alpha2);
    const double root = coherence_root(beta2, xi2, chi2);
    return {shannon_binary(clamp_unit(beta2 * chi2)) - shannon_binary(0.5 * (1.0 - root)),
            shannon_binary(0.5 * (1.0 + root)) - shannon_binary(clamp_unit(chi2)) +
                shannon_binary(clamp_unit(alpha2 * chi2))};
}

double concurrence_wootters(const ComplexMatrix& rho) {
    require_two_qubit_state(rho, "concurrence_wootters");
    const EigenDecomposition eig = hermitian_eigen(rho);

    // Square root of rho on its numerical support. Eigenvalues below 1e-14
    // are round-off from rank-deficient states.
    ComplexMatrix root(4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double lambda = eig.values[k];
        if (lambda < -1e-8) {
            throw std::invalid_argument("concurrence_wootters: negative eigenvalue");
        }
        if (lambda <= 1e-14) continue;
        const double s = std::sqrt(lambda);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                root(i, j) += s * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }

    // Singular values of sqrt(rho) (Y x Y) sqrt(rho)^T are the Wootters
    // lambdas; read them off the Hermitian dilation [[0, B], [B^H, 0]].
    const ComplexMatrix flip = tensor(pauli::y(), pauli::y());
    ComplexMatrix root_t(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) root_t(i, j) = root(j, i);
    const ComplexMatrix b = root * flip * root_t;

    ComplexMatrix dilation(8);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            dilation(i, 4 + j) = b(i, j);
            dilation(4 + j, i) = std::conj(b(i, j));
        }
    }
    const std::vector<double> sv = hermitian_eigenvalues(dilation);
    return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

double concurrence_closed(Family family, Complex alpha, Complex beta, double xi, double chi) {
    const double ab = std::abs(alpha * beta);
    const double xi2 = xi * xi;
    if (family == Family::one_exc) return 2.0 * ab * xi2;
    return 2.0 * std::max(0.0, ab * xi2 - std::norm(beta) * xi2 * chi * chi);
}

}  // namespace qcorr
