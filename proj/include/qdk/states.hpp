#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qdk/linalg.hpp"

namespace qdk {

inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kPureNormTolerance = 1e-12;

/// A validated density operator on C^dim_a (x) C^dim_b: Hermitian, unit
/// trace, eigenvalues >= -1e-10. Single-system states use dim_b == 1.
///
/// Only obtainable through validate_density (or constructors that call it),
/// so holding one is proof of validity. The spectrum computed during
/// validation is kept.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const { return mat_; }
    std::size_t dim_a() const { return dim_a_; }
    std::size_t dim_b() const { return dim_b_; }
    std::size_t dim() const { return mat_.rows(); }
    std::size_t dim_of(Subsystem s) const { return s == Subsystem::A ? dim_a_ : dim_b_; }
    const Spectrum& spectrum() const { return spectrum_; }

private:
    DensityMatrix(ComplexMatrix m, std::size_t dim_a, std::size_t dim_b, Spectrum s)
        : mat_(std::move(m)), dim_a_(dim_a), dim_b_(dim_b), spectrum_(std::move(s)) {}
    friend DensityMatrix validate_density(const ComplexMatrix&, std::size_t, std::size_t);

    ComplexMatrix mat_;
    std::size_t dim_a_;
    std::size_t dim_b_;
    Spectrum spectrum_;
};

/// Unit vector on C^dim_a (x) C^dim_b (index a * dim_b + b).
class PureState {
public:
    /// Throws ValidationError unless the norm is 1 within 1e-12.
    PureState(std::vector<Complex> amplitudes, std::size_t dim_a, std::size_t dim_b);

    const std::vector<Complex>& amplitudes() const { return amps_; }
    std::size_t dim_a() const { return dim_a_; }
    std::size_t dim_b() const { return dim_b_; }

private:
    std::vector<Complex> amps_;
    std::size_t dim_a_;
    std::size_t dim_b_;
};

/// Symmetrizes within tolerance, then checks trace and positivity.
DensityMatrix validate_density(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

DensityMatrix density_from_pure(const PureState& psi);

/// Marginal on `keep`, as a single-system state (dim_b == 1).
DensityMatrix reduced_state(const DensityMatrix& rho, Subsystem keep);

/// rho_a (x) rho_b with dims (rho_a.dim(), rho_b.dim()).
DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

/// Qubit state (I + x X + y Y + z Z) / 2; requires |r| <= 1.
DensityMatrix qubit_state(double x, double y, double z);

std::vector<Complex> basis_ket(std::size_t dim, std::size_t index);
/// (|0> + |1>) / sqrt(2)
std::vector<Complex> ket_plus();
/// (|0> - |1>) / sqrt(2)
std::vector<Complex> ket_minus();
/// Kronecker product of two kets.
std::vector<Complex> kron(std::span<const Complex> u, std::span<const Complex> v);

using StateParams = std::map<std::string, double, std::less<>>;

/// Catalog of named two-qubit states:
///   bell-phi-plus      (|00> + |11>) / sqrt(2)
///   pure        a      a|00> + sqrt(1 - a^2)|11>,  0 <= a <= 1
///   cc-mixture         (|00><00| + |11><11|) / 2
///   lo-output          (|00><00| + |1+><1+|) / 2
///   werner      p      p Phi+ + (1 - p) I/4,  0 <= p <= 1
///   product     ax ay az bx by bz   product of two Bloch-vector qubits
///                                   (omitted components are 0)
/// Throws UnknownNameError for other names, ValidationError for unknown or
/// out-of-range parameters.
DensityMatrix named_state(std::string_view name, const StateParams& params = {});

std::vector<std::string> named_state_names();

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
PureState random_pure(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) for a (dim_a dim_b) x rank complex Gaussian G.
DensityMatrix random_density(std::size_t dim_a, std::size_t dim_b, std::size_t rank,
                             std::uint64_t seed);

}  // namespace qdk
