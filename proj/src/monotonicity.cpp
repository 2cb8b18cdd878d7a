#include "qdk/monotonicity.hpp"

#include "qdk/discord.hpp"
#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/relent.hpp"

namespace qdk {

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::MutualInformation: return "mutual_information";
        case Measure::RelEntEntanglement: return "rel_ent_of_entanglement";
        case Measure::Discord: return "discord";
        case Measure::RelEntDiscord: return "rel_ent_of_discord";
    }
    return "?";
}

Measure parse_measure(std::string_view name) {
    for (Measure m : {Measure::MutualInformation, Measure::RelEntEntanglement, Measure::Discord,
                      Measure::RelEntDiscord})
        if (to_string(m) == name) return m;
    throw UnknownNameError("unknown measure '" + std::string(name) + "'");
}

double monotonicity_slack(Measure m) { return m == Measure::MutualInformation ? 1e-9 : 5e-3; }

double evaluate_measure(const DensityMatrix& rho, Measure m, const OptimizerConfig& cfg) {
    switch (m) {
        case Measure::MutualInformation: return mutual_information(rho);
        case Measure::RelEntEntanglement: return rel_ent_of_entanglement(rho, cfg).value;
        case Measure::Discord: return discord(rho, cfg).discord;
        case Measure::RelEntDiscord: return rel_ent_of_discord(rho, cfg).value;
    }
    throw UnknownNameError("unknown measure");
}

MonotonicityTrial monotonicity_trial(const DensityMatrix& rho, std::span<const LocalChannel> op, Measure m,
                                     const OptimizerConfig& cfg) {
    MonotonicityTrial t;
    t.before = evaluate_measure(rho, m, cfg);
    t.after = evaluate_measure(apply(rho, op), m, cfg);
    t.violated = t.after > t.before + monotonicity_slack(m);
    return t;
}

NonMonotonicityCertificate non_monotonicity_certificate(const OptimizerConfig& cfg, const LocalChannel& ch,
                                                        Measure m) {
    NonMonotonicityCertificate c;
    c.measure = m;
    c.trial = monotonicity_trial(named_state("cc-mixture"), ch, m, cfg);
    c.certified = c.trial.before < kCertificateInputCeiling && c.trial.after > kCertificateOutputFloor &&
                  c.trial.violated;
    return c;
}

NonMonotonicityCertificate non_monotonicity_certificate(const OptimizerConfig& cfg, Measure m) {
    return non_monotonicity_certificate(cfg, LocalChannel{counterexample_channel(), Subsystem::B}, m);
}

}  // namespace qdk
