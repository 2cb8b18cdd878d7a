#pragma once

// Classical correlations C = S(unmeasured) - min S(unmeasured | measurement)
// and discord D = I_Q - C, plus the basis-invariance test for zero discord.

#include <optional>

#include "qdk/measurement.hpp"

namespace qdk {

struct CorrelationBreakdown {
    double mutual_information = 0.0;
    double measured_conditional = 0.0;
    double classical = 0.0;
    double discord = 0.0;
    ProjectiveMeasurement argmin;
    Subsystem measured = Subsystem::B;
    bool converged = false;
};

/// Discords in (-1e-6, 0) are reported as 0 (with C set to I_Q); anything
/// more negative raises ConsistencyError.
inline constexpr double kDiscordClamp = 1e-6;

double classical_correlations(const DensityMatrix& rho, const OptimizerConfig& cfg,
                              Subsystem measured = Subsystem::B);

CorrelationBreakdown discord(const DensityMatrix& rho, const OptimizerConfig& cfg,
                             Subsystem measured = Subsystem::B);

struct ZeroDiscordVerdict {
    bool zero_discord = false;
    /// min over bases of |pinch(rho) - rho|_F.
    double pinch_distance = 0.0;
    /// The invariant basis, present iff zero_discord.
    std::optional<ProjectiveMeasurement> witness;
    /// Discord from the entropic route, for the cross-check.
    double discord = 0.0;
    /// (discord < tol) == zero_discord
    bool agrees_with_discord = false;
};

/// Zero discord iff some basis on the measured side leaves rho invariant
/// under dephasing, up to `tol` in Frobenius norm.
ZeroDiscordVerdict is_zero_discord(const DensityMatrix& rho, double tol, const OptimizerConfig& cfg,
                                   Subsystem measured = Subsystem::B);

struct PureStateIdentities {
    double classical = 0.0;
    double discord = 0.0;
    /// S(rho_A), the entanglement of a pure state.
    double entanglement = 0.0;
    double mutual_information = 0.0;
    bool classical_equals_entanglement = false;
    bool sum_equals_mutual_information = false;
    bool discord_equals_entanglement = false;

    bool all_hold() const {
        return classical_equals_entanglement && sum_equals_mutual_information && discord_equals_entanglement;
    }
};

inline constexpr double kPureIdentityTolerance = 1e-4;

PureStateIdentities pure_state_identities(const PureState& psi, const OptimizerConfig& cfg);

}  // namespace qdk
