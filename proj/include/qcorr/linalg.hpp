// linalg.hpp - small dense complex linear algebra for density operators

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 16;

// Dense square complex matrix, row-major. Dimensions are limited to 16,
// which covers every operator on the two-spin, two-reservoir system.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries, bool hermitian = false);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    std::span<const Complex> entries() const { return entries_; }

    // Set by constructors that produce Hermitian operators by construction
    // (outer products, partial traces, tensor products of Hermitian factors).
    bool hermitian() const { return hermitian_; }
    void mark_hermitian(bool flag = true) { hermitian_ = flag; }

    bool is_hermitian(double tol) const;
    Complex trace() const;
    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    double max_abs_diff(const ComplexMatrix& other) const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(Complex scale) const;

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t dim_{0};
    std::vector<Complex> entries_;
    bool hermitian_{false};
};

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Kronecker product. Rejects results larger than 16x16.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v><v| for a normalized or unnormalized vector.
ComplexMatrix outer(std::span<const Complex> v);

/// Reduced operator over the subsystems listed in `keep` (original order
/// preserved). `dims` gives the local dimension of every subsystem.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

struct EigenDecomposition {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius norm drops
/// below 1e-13.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0.
double shannon_binary(double x);

/// Entropy in bits. Rejects operators that are not states.
double von_neumann_entropy(const ComplexMatrix& rho);

// Four-party pure state over (s1, s2, r1, r2). Index of basis label
// (b_s1, b_s2, b_r1, b_r2) is big-endian: 8 b_s1 + 4 b_s2 + 2 b_r1 + b_r2.
class PureState4 {
public:
    static constexpr std::size_t kSize = 16;

    PureState4() = default;
    explicit PureState4(const std::array<Complex, kSize>& amplitudes);

    static constexpr std::size_t index(int s1, int s2, int r1, int r2) {
        return static_cast<std::size_t>(8 * s1 + 4 * s2 + 2 * r1 + r2);
    }

    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    double norm_squared() const;
    ComplexMatrix density() const;

private:
    std::array<Complex, kSize> amplitudes_{};
};

}  // namespace qcorr
