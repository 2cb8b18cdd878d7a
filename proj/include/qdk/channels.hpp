#pragma once

// Completely positive trace-preserving maps in Kraus form and their local
// action on one side of a bipartite state.

#include <cstdint>
#include <span>
#include <vector>

#include "qdk/states.hpp"

namespace qdk {

inline constexpr double kCompletenessTolerance = 1e-10;

/// Kraus operators K_i (all d_out x d_in) with sum K_i^dagger K_i = I.
class KrausChannel {
public:
    /// Throws ValidationError if the set is empty, ragged, or incomplete
    /// beyond 1e-10 (largest entry of sum K^dagger K - I).
    explicit KrausChannel(std::vector<ComplexMatrix> ops);

    const std::vector<ComplexMatrix>& operators() const { return ops_; }
    std::size_t dim_in() const { return ops_.front().cols(); }
    std::size_t dim_out() const { return ops_.front().rows(); }
    /// Largest entry of sum K^dagger K - I.
    double completeness_residual() const;

private:
    std::vector<ComplexMatrix> ops_;
};

inline KrausChannel validate_channel(std::vector<ComplexMatrix> ops) { return KrausChannel(std::move(ops)); }

/// A channel acting on one side of a bipartite system, identity on the other.
struct LocalChannel {
    KrausChannel channel;
    Subsystem side = Subsystem::B;
};

/// Whole-system action; the output keeps the input's split when the
/// dimension is unchanged and is single-system (dim_b == 1) otherwise.
DensityMatrix apply(const DensityMatrix& rho, const KrausChannel& ch);

DensityMatrix apply(const DensityMatrix& rho, const LocalChannel& ch);

/// Local operation: the channels applied in sequence.
DensityMatrix apply(const DensityMatrix& rho, std::span<const LocalChannel> op);

KrausChannel identity_channel(std::size_t dim);

/// Measure in {|0>, |1>} and prepare |0> or |+>: Kraus set {|0><0|, |+><1|}.
/// Turns (|00><00| + |11><11|)/2 into (|00><00| + |1+><1+|)/2 when applied
/// to B.
KrausChannel counterexample_channel();

/// rho -> I/2 on a qubit, Kraus set {I, X, Y, Z} / 2.
KrausChannel fully_depolarizing_qubit();

/// Rows of a Haar-random (dim * kraus_count) x dim isometry, cut into
/// kraus_count blocks. kraus_count == 1 gives a Haar-random unitary.
KrausChannel random_local_channel(std::size_t dim, std::size_t kraus_count, std::uint64_t seed);

}  // namespace qdk
