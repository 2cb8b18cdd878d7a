#include "qdk/report.hpp"

#include <cmath>

#include "qdk/discord.hpp"
#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/relent.hpp"

namespace qdk {

MeasureReport compute_report(const DensityMatrix& rho, std::string id, const OptimizerConfig& cfg,
                             const ReportOptions& opts) {
    MeasureReport r;
    r.id = std::move(id);
    r.dim_a = rho.dim_a();
    r.dim_b = rho.dim_b();
    r.entropy_a = von_neumann(reduced_state(rho, Subsystem::A));
    r.entropy_b = von_neumann(reduced_state(rho, Subsystem::B));
    r.entropy_ab = von_neumann(rho);
    r.mutual_information = mutual_information(rho);
    r.naive_conditional_on_a = naive_conditional(rho, Subsystem::A);
    r.naive_conditional_on_b = naive_conditional(rho, Subsystem::B);

    const auto d = discord(rho, cfg, opts.measured);
    r.measured = opts.measured;
    r.measured_conditional = d.measured_conditional;
    r.classical = d.classical;
    r.discord = d.discord;
    r.argmin_angles = d.argmin.parameters();
    r.measurement_converged = d.converged;

    const auto verdict = is_zero_discord(rho, opts.zero_tolerance, cfg, opts.measured);
    r.zero_discord = verdict.zero_discord;
    r.pinch_distance = verdict.pinch_distance;

    if (opts.relative_entropies) {
        r.relative_entropies = true;
        const auto e = rel_ent_of_entanglement(rho, cfg);
        const auto c = rel_ent_of_discord(rho, cfg);
        r.rel_ent_entanglement = e.value;
        r.rel_ent_discord = c.value;
        r.entanglement_converged = e.converged;
        r.classical_distance_converged = c.converged;
    }
    check_consistency(r);
    return r;
}

void check_consistency(const MeasureReport& r) {
    if (std::abs(r.mutual_information - (r.entropy_a + r.entropy_b - r.entropy_ab)) > 1e-9)
        throw ConsistencyError("report: I_Q != S(A) + S(B) - S(AB)");
    if (std::abs(r.discord - (r.mutual_information - r.classical)) > 1e-9)
        throw ConsistencyError("report: discord != I_Q - C");
}

}  // namespace qdk
