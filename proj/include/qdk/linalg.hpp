#pragma once

// Dense complex linear algebra for the small operators (n <= 16) used
// throughout the library: products, Kronecker products, partial traces,
// a cyclic Jacobi Hermitian eigensolver and spectral matrix functions.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdk {

using Complex = std::complex<double>;

enum class Subsystem { A, B };

inline Subsystem other_side(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }
inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

/// Row-major dense complex matrix. Entries are always finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    /// Zero matrix of the given shape.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Throws ValidationError on size mismatch or non-finite entries.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Nested-list literal; every row must have the same length.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v);
    /// |u><v|.
    static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::span<const Complex> data() const { return entries_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// (M + M^dagger) / 2.
    ComplexMatrix hermitian_part() const;
    /// Largest |M_ij - conj(M_ji)|.
    double hermiticity_defect() const;
    double frobenius_norm() const;
    std::vector<Complex> column(std::size_t c) const;
    std::vector<Complex> apply(std::span<const Complex> v) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column k
/// of `vectors` belongs to `values[k]`.
struct Spectrum {
    std::vector<double> values;
    ComplexMatrix vectors;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator on `keep` of an operator on C^dim_a (x) C^dim_b.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep);

/// Inputs within 1e-10 of Hermitian are symmetrized first; anything further
/// off throws ValidationError.
Spectrum hermitian_eig(const ComplexMatrix& m);

/// V diag(f(lambda)) V^dagger. Throws ValidationError if f yields a
/// non-finite value on the spectrum.
ComplexMatrix spectral_apply(const ComplexMatrix& m, const std::function<double(double)>& f);

/// Same, on an already computed spectrum.
ComplexMatrix spectral_apply(const Spectrum& s, const std::function<double(double)>& f);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kHermitianTolerance = 1e-10;

}  // namespace qdk
