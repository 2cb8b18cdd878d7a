#pragma once

// Subcommand implementations behind the qdk executable. Each returns the
// process exit code; library exceptions propagate to main, which maps them.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "format.hpp"
#include "qdk/measurement.hpp"
#include "qdk/report.hpp"

namespace qdk::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kAssertionFailed = 2,
    kNotConverged = 3,
    kUnknownName = 4,
};

struct Settings {
    OptimizerConfig optimizer;
    Subsystem measured = Subsystem::B;
    Format format = Format::Text;
    bool strict = false;
    unsigned threads = 1;
    /// Column keys after alias resolution; empty means every column.
    std::vector<std::string> measures;
};

struct StateSource {
    std::string name;
    std::vector<std::string> params;
    std::string file;
};

/// "k=v" pairs; throws ValidationError on malformed entries or duplicates.
StateParams parse_params(const std::vector<std::string>& pairs);

/// Named state or state file (exactly one); `id` receives a printable label.
DensityMatrix load_source(const StateSource& src, std::string& id);

/// Maps user-facing measure names and aliases to column keys; throws
/// UnknownNameError for anything else.
std::vector<std::string> resolve_measures(const std::vector<std::string>& names);
std::vector<std::string> measure_names();

std::vector<std::string> demo_names();
std::vector<std::string> scan_families();
std::vector<std::string> property_suites();

/// Strict mode turns optimizer non-convergence into kNotConverged.
int convergence_exit_code(bool converged, bool strict);

/// Seed of sample `index` in a campaign seeded with `base`.
std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index);

int cmd_compute(const StateSource& src, const Settings& s, std::ostream& out);
int cmd_demo(const std::string& name, const Settings& s, std::ostream& out);
int cmd_scan(const std::string& family, double from, double to, double step, const Settings& s,
             std::ostream& out);
int cmd_property(const std::string& suite, std::size_t count, const Settings& s, std::ostream& out);
int cmd_random(std::size_t dim_a, std::size_t dim_b, std::size_t rank, bool pure, const Settings& s,
               std::ostream& out);

}  // namespace qdk::cli
