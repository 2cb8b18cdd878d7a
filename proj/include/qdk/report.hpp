#pragma once

#include <string>
#include <vector>

#include "qdk/measurement.hpp"

namespace qdk {

struct ReportOptions {
    Subsystem measured = Subsystem::B;
    /// Threshold for the zero-discord verdict.
    double zero_tolerance = 1e-4;
    bool relative_entropies = true;
};

/// Every correlation measure of one state, in bits.
struct MeasureReport {
    std::string id;
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    double entropy_a = 0.0;
    double entropy_b = 0.0;
    double entropy_ab = 0.0;
    double mutual_information = 0.0;
    double naive_conditional_on_a = 0.0;
    double naive_conditional_on_b = 0.0;
    Subsystem measured = Subsystem::B;
    double measured_conditional = 0.0;
    double classical = 0.0;
    double discord = 0.0;
    std::vector<double> argmin_angles;
    bool zero_discord = false;
    double pinch_distance = 0.0;
    bool relative_entropies = false;
    double rel_ent_entanglement = 0.0;
    double rel_ent_discord = 0.0;
    bool measurement_converged = false;
    bool entanglement_converged = true;
    bool classical_distance_converged = true;

    bool all_converged() const {
        return measurement_converged && entanglement_converged && classical_distance_converged;
    }
};

MeasureReport compute_report(const DensityMatrix& rho, std::string id, const OptimizerConfig& cfg,
                             const ReportOptions& opts = {});

/// Throws ConsistencyError unless I_Q = S(A) + S(B) - S(AB) and
/// discord = I_Q - C, both within 1e-9.
void check_consistency(const MeasureReport& r);

}  // namespace qdk
