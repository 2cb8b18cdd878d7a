#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "parallel.hpp"
#include "qdk/errors.hpp"

using namespace qdk;
using namespace qdk::cli;

int main(int argc, char** argv) {
    CLI::App app{"Bipartite quantum correlation toolkit: entropies, mutual information, classical\n"
                 "correlations, discord and relative-entropy distances. All entropic values in bits.\n"
                 "Options read QDK_<NAME> environment variables; flags take precedence."};
    app.require_subcommand(1);
    app.fallthrough();

    OptimizerConfig defaults;
    std::string orientation = "B", format = "text";
    int grid = defaults.grid_theta;
    unsigned threads = default_threads();
    bool strict = false;
    std::vector<std::string> measures;
    OptimizerConfig cfg;

    app.add_option("--orientation", orientation, "Subsystem that is measured (A or B)")
        ->envname("QDK_ORIENTATION")
        ->check(CLI::IsMember({"A", "B"}))
        ->capture_default_str();
    app.add_option("--restarts", cfg.restarts, "Random starts for relative-entropy and qudit searches")
        ->envname("QDK_RESTARTS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--grid", grid, "Qubit measurement seeding grid: N polar x 2N azimuthal points")
        ->envname("QDK_GRID")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--tol", cfg.tolerance, "Optimizer convergence tolerance")
        ->envname("QDK_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for random starts and sampled states")
        ->envname("QDK_SEED")
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for samples and scan rows (default: all cores)")
        ->envname("QDK_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")
        ->envname("QDK_FORMAT")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--measure", measures, "Restrict output to these measures (repeatable)")->envname("QDK_MEASURE");
    app.add_flag("--strict", strict, "Exit 3 when an optimizer stops before converging")->envname("QDK_STRICT");

    StateSource source;
    const auto add_source = [&](CLI::App* sub) {
        sub->add_option("--state", source.name, "Named state (bell-phi-plus, pure, cc-mixture, lo-output, werner, product)");
        sub->add_option("--param", source.params, "Named-state parameter key=value (repeatable)");
        sub->add_option("--file", source.file, "State file (JSON: dimA, dimB, matrix of [re, im])");
    };

    auto* compute = app.add_subcommand("compute", "Full correlation report for one state");
    add_source(compute);

    std::string demo_name;
    auto* demo = app.add_subcommand("demo", "Narrated scenario with a CSV block; exit 0 iff its checks hold");
    demo->add_option("name", demo_name, "discord-from-LO | pure-state-identities | negative-conditional | "
                                        "henderson-vedral-gap")
        ->required();

    std::string family;
    std::string range = "0..1";
    double step = 0.05;
    auto* scan = app.add_subcommand("scan", "CSV of measures along a one-parameter family");
    scan->add_option("family", family, "werner (parameter p) | pure (parameter a)")->required();
    scan->add_option("--range", range, "Parameter range from..to")->capture_default_str();
    scan->add_option("--step", step, "Parameter step")->capture_default_str();

    std::string suite;
    std::size_t count = 100;
    auto* property = app.add_subcommand("property", "Randomized invariant suite; exit 0 iff no violations");
    property->add_option("suite", suite, "Suite name (see the README for the list)")->required();
    property->add_option("count", count, "Number of samples")->capture_default_str();

    std::size_t dim_a = 2, dim_b = 2, rank = 0;
    bool pure = false;
    auto* random = app.add_subcommand("random", "Sample a state, print it and its report");
    random->add_option("--dim-a", dim_a, "Dimension of A")->check(CLI::Range(1, 4))->capture_default_str();
    random->add_option("--dim-b", dim_b, "Dimension of B")->check(CLI::Range(1, 4))->capture_default_str();
    random->add_option("--rank", rank, "Rank of the sampled density matrix (0 = full)")->capture_default_str();
    random->add_flag("--pure", pure, "Sample a Haar-random pure state instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        Settings s;
        cfg.grid_theta = grid;
        cfg.grid_phi = 2 * grid;
        cfg.validate();
        s.optimizer = cfg;
        s.measured = orientation == "A" ? Subsystem::A : Subsystem::B;
        s.format = parse_format(format);
        s.strict = strict;
        s.threads = threads;
        s.measures = resolve_measures(measures);

        if (*compute) return cmd_compute(source, s, std::cout);
        if (*demo) return cmd_demo(demo_name, s, std::cout);
        if (*scan) {
            const auto dots = range.find("..");
            if (dots == std::string::npos) throw ValidationError("--range expects from..to, got '" + range + "'");
            double from = 0.0, to = 0.0;
            try {
                std::size_t used = 0;
                from = std::stod(range.substr(0, dots), &used);
                if (used != dots) throw std::invalid_argument(range);
                const std::string rest = range.substr(dots + 2);
                to = std::stod(rest, &used);
                if (used != rest.size()) throw std::invalid_argument(range);
            } catch (const std::logic_error&) {
                throw ValidationError("--range expects from..to, got '" + range + "'");
            }
            return cmd_scan(family, from, to, step, s, std::cout);
        }
        if (*property) return cmd_property(suite, count, s, std::cout);
        if (*random) return cmd_random(dim_a, dim_b, rank, pure, s, std::cout);
    } catch (const UnknownNameError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnknownName;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInputError;
    } catch (const DimensionError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInputError;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency check failed: " << e.what() << '\n';
        return kAssertionFailed;
    }
    return kInputError;
}
