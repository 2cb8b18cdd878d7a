#pragma once

// Behaviour of correlation measures under local operations.

#include <span>
#include <string>
#include <string_view>

#include "qdk/channels.hpp"
#include "qdk/measurement.hpp"

namespace qdk {

enum class Measure { MutualInformation, RelEntEntanglement, Discord, RelEntDiscord };

/// "mutual_information", "rel_ent_of_entanglement", "discord", "rel_ent_of_discord".
std::string_view to_string(Measure m);
/// Accepts the names above; throws UnknownNameError otherwise.
Measure parse_measure(std::string_view name);

/// Analytic measures tolerate 1e-9, optimized ones 5e-3.
double monotonicity_slack(Measure m);

double evaluate_measure(const DensityMatrix& rho, Measure m, const OptimizerConfig& cfg);

struct MonotonicityTrial {
    double before = 0.0;
    double after = 0.0;
    bool violated = false;
};

/// Measure before and after the local operation; violated when it grew by
/// more than monotonicity_slack.
MonotonicityTrial monotonicity_trial(const DensityMatrix& rho, std::span<const LocalChannel> op, Measure m,
                                     const OptimizerConfig& cfg);

inline MonotonicityTrial monotonicity_trial(const DensityMatrix& rho, const LocalChannel& ch, Measure m,
                                            const OptimizerConfig& cfg) {
    return monotonicity_trial(rho, std::span<const LocalChannel>(&ch, 1), m, cfg);
}

struct NonMonotonicityCertificate {
    Measure measure = Measure::RelEntDiscord;
    MonotonicityTrial trial;
    /// Input below 1e-4 and output above 5e-3: a measure created from
    /// (essentially) nothing by a local operation.
    bool certified = false;
};

inline constexpr double kCertificateInputCeiling = 1e-4;
inline constexpr double kCertificateOutputFloor = 5e-3;

/// Runs the channel on side B of (|00><00| + |11><11|)/2 and reports whether
/// the measure was created. Defaults reproduce the discord-creating map
/// |0> -> |0>, |1> -> |+>.
NonMonotonicityCertificate non_monotonicity_certificate(const OptimizerConfig& cfg,
                                                        Measure m = Measure::RelEntDiscord);
NonMonotonicityCertificate non_monotonicity_certificate(const OptimizerConfig& cfg, const LocalChannel& ch,
                                                        Measure m);

}  // namespace qdk
