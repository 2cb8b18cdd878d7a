#pragma once

// Entropic functionals. All logarithms are base 2; every value is in bits.
// Eigenvalues below 1e-10 count as exact zeros (0 log 0 = 0).

#include <span>
#include <vector>

#include "qdk/states.hpp"

namespace qdk {

inline constexpr double kZeroEigenvalue = 1e-10;

/// Non-negative weights summing to 1 within 1e-10.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> probs);
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

private:
    std::vector<double> probs_;
};

/// An entropy in bits that may be the +infinity sentinel. Only relative
/// entropies produce the sentinel; bits() refuses to hand it out as a
/// floating-point value.
class EntropyValue {
public:
    static EntropyValue finite(double bits) { return EntropyValue(bits, false); }
    static EntropyValue infinite() { return EntropyValue(0.0, true); }

    bool is_infinite() const { return infinite_; }
    /// Throws std::domain_error on the sentinel.
    double bits() const;

    friend EntropyValue operator+(EntropyValue a, EntropyValue b) {
        return (a.infinite_ || b.infinite_) ? infinite() : finite(a.bits_ + b.bits_);
    }
    friend bool operator<(EntropyValue a, EntropyValue b) {
        if (a.infinite_) return false;
        return b.infinite_ || a.bits_ < b.bits_;
    }
    friend bool operator<=(EntropyValue a, EntropyValue b) { return !(b < a); }

private:
    EntropyValue(double bits, bool infinite) : bits_(bits), infinite_(infinite) {}
    double bits_;
    bool infinite_;
};

double shannon(const ProbabilityVector& p);

/// Shannon entropy of an operator spectrum, zeroing eigenvalues < 1e-10.
double spectrum_entropy(std::span<const double> eigenvalues);

double von_neumann(const DensityMatrix& rho);

/// S(sigma || rho) = tr(sigma log sigma - sigma log rho). Infinite when
/// sigma has more than 1e-10 weight outside the support of rho.
EntropyValue relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho);

/// I_Q = S(A) + S(B) - S(AB).
double mutual_information(const DensityMatrix& rho);

/// S(AB) - S(conditioned_on). Negative for entangled pure states.
double naive_conditional(const DensityMatrix& rho, Subsystem conditioned_on);

/// S(rho || rho_A (x) rho_B); agrees with mutual_information.
EntropyValue mutual_information_as_relent(const DensityMatrix& rho);

}  // namespace qdk
