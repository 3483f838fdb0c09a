// linalg.cpp - dense complex matrices, partial trace, Jacobi eigensolver

#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcorr {

namespace {

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("matrix dimension " + std::to_string(dim) +
                                    " outside supported range [1, 16]");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    check_dim(dim);
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries, bool hermitian)
    : dim_(dim), entries_(std::move(entries)), hermitian_(hermitian) {
    check_dim(dim);
    if (entries_.size() != dim * dim) {
        throw std::invalid_argument("entry count does not match dimension");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    m.hermitian_ = true;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    m.hermitian_ = true;
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        }
    }
    return true;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    out.hermitian_ = hermitian_;
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(*this);
    for (auto& e : out.entries_) e = std::conj(e);
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
    }
    return worst;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    ComplexMatrix out(*this);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] += rhs.entries_[k];
    out.hermitian_ = hermitian_ && rhs.hermitian_;
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    ComplexMatrix out(*this);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] -= rhs.entries_[k];
    out.hermitian_ = hermitian_ && rhs.hermitian_;
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    ComplexMatrix out(*this);
    for (auto& e : out.entries_) e *= scale;
    out.hermitian_ = hermitian_ && scale.imag() == 0.0;
    return out;
}

namespace pauli {

ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}, true); }
ComplexMatrix y() {
    return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}, true);
}
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}, true); }

}  // namespace pauli

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t dim = a.dim() * b.dim();
    if (dim > kMaxDim) {
        throw std::invalid_argument("tensor product dimension " + std::to_string(dim) +
                                    " exceeds 16");
    }
    ComplexMatrix out(dim);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < b.dim(); ++k)
                for (std::size_t l = 0; l < b.dim(); ++l)
                    out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
    out.mark_hermitian(a.hermitian() && b.hermitian());
    return out;
}

ComplexMatrix outer(std::span<const Complex> v) {
    ComplexMatrix out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[i] * std::conj(v[j]);
    out.mark_hermitian();
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
    if (dims.empty()) throw std::invalid_argument("partial_trace: empty dims");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != rho.dim()) {
        throw std::invalid_argument("partial_trace: product of dims " + std::to_string(total) +
                                    " != matrix dimension " + std::to_string(rho.dim()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw std::invalid_argument("partial_trace: subsystem index out of range");
        if (kept[k]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
        kept[k] = true;
    }
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("partial_trace: input trace differs from 1");
    }
    if (!rho.is_hermitian(1e-10)) {
        throw std::invalid_argument("partial_trace: input is not Hermitian");
    }

    // Decompose every full index into (kept part, traced part), each taken
    // big-endian over the respective subsystems in original order.
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kept_dim : traced_dim) *= dims[s];

    std::vector<std::size_t> full_index(kept_dim * traced_dim);
    for (std::size_t full = 0; full < total; ++full) {
        std::size_t rem = full;
        std::size_t kidx = 0, kstride = 1, tidx = 0, tstride = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                kidx += digit * kstride;
                kstride *= dims[s];
            } else {
                tidx += digit * tstride;
                tstride *= dims[s];
            }
        }
        full_index[kidx * traced_dim + tidx] = full;
    }

    ComplexMatrix out(kept_dim);
    for (std::size_t a = 0; a < kept_dim; ++a) {
        for (std::size_t b = 0; b < kept_dim; ++b) {
            Complex sum = 0.0;
            for (std::size_t c = 0; c < traced_dim; ++c) {
                sum += rho(full_index[a * traced_dim + c], full_index[b * traced_dim + c]);
            }
            out(a, b) = sum;
        }
    }
    out.mark_hermitian();
    return out;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
    if (!m.is_hermitian(1e-10)) {
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    }
    const std::size_t n = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    v.mark_hermitian(false);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr double kTol = 1e-13;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= kTol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag < 1e-300) continue;
                const Complex phase = a(p, q) / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J = [[c, s e], [-s conj(e), c]] on (p, q); A <- J^H A J.
                const Complex jpp = c;
                const Complex jpq = s * phase;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigen(m).values;
}

double shannon_binary(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
        throw std::invalid_argument("shannon_binary: argument " + std::to_string(x) +
                                    " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    if (std::abs(rho.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("von_neumann_entropy: trace differs from 1");
    }
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(rho)) {
        if (lambda < -1e-8) {
            throw std::invalid_argument("von_neumann_entropy: negative eigenvalue " +
                                        std::to_string(lambda));
        }
        lambda = std::clamp(lambda, 0.0, 1.0);
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

PureState4::PureState4(const std::array<Complex, kSize>& amplitudes) : amplitudes_(amplitudes) {
    if (std::abs(norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument("PureState4: state is not normalized");
    }
}

double PureState4::norm_squared() const {
    double n = 0.0;
    for (const auto& a : amplitudes_) n += std::norm(a);
    return n;
}

ComplexMatrix PureState4::density() const { return outer(amplitudes_); }

}  // namespace qcorr
