#include "qdk/discord.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"

namespace qdk {

CorrelationBreakdown discord(const DensityMatrix& rho, const OptimizerConfig& cfg, Subsystem measured) {
    const auto conditional = measured_conditional_entropy(rho, cfg, measured);
    const double unmeasured_entropy = von_neumann(reduced_state(rho, other_side(measured)));
    const double iq = mutual_information(rho);

    double classical = std::max(0.0, unmeasured_entropy - conditional.value);
    double d = iq - classical;
    if (d < -kDiscordClamp) {
        std::ostringstream os;
        os << "discord " << d << " below -" << kDiscordClamp << ": measurement search failed";
        throw ConsistencyError(os.str());
    }
    if (d < 0.0) {
        classical = iq;
        d = 0.0;
    }
    return {iq, conditional.value, classical, d, conditional.argmin, measured, conditional.converged};
}

double classical_correlations(const DensityMatrix& rho, const OptimizerConfig& cfg, Subsystem measured) {
    return discord(rho, cfg, measured).classical;
}

ZeroDiscordVerdict is_zero_discord(const DensityMatrix& rho, double tol, const OptimizerConfig& cfg,
                                   Subsystem measured) {
    const auto search = minimize_over_measurements(
        rho.dim_of(measured), [&](const ProjectiveMeasurement& m) { return pinch_distance(rho, m, measured); },
        cfg);
    ZeroDiscordVerdict v;
    v.pinch_distance = search.value;
    v.zero_discord = search.value < tol;
    if (v.zero_discord) v.witness = search.argmin;
    v.discord = discord(rho, cfg, measured).discord;
    v.agrees_with_discord = (v.discord < tol) == v.zero_discord;
    return v;
}

PureStateIdentities pure_state_identities(const PureState& psi, const OptimizerConfig& cfg) {
    const auto rho = density_from_pure(psi);
    const auto breakdown = discord(rho, cfg);
    PureStateIdentities r;
    r.classical = breakdown.classical;
    r.discord = breakdown.discord;
    r.entanglement = von_neumann(reduced_state(rho, Subsystem::A));
    r.mutual_information = breakdown.mutual_information;
    r.classical_equals_entanglement = std::abs(r.classical - r.entanglement) < kPureIdentityTolerance;
    r.sum_equals_mutual_information =
        std::abs(r.classical + r.entanglement - r.mutual_information) < kPureIdentityTolerance;
    r.discord_equals_entanglement = std::abs(r.discord - r.entanglement) < kPureIdentityTolerance;
    return r;
}

}  // namespace qdk
