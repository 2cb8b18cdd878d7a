#include <doctest.h>

#include <sstream>

#include "commands.hpp"
#include "parallel.hpp"
#include "qdk/errors.hpp"

using namespace qdk;
using namespace qdk::cli;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

Settings csv_settings(std::vector<std::string> measures) {
    Settings s;
    s.format = Format::Csv;
    s.optimizer.restarts = 6;
    s.measures = resolve_measures(measures);
    return s;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(fixed6(1.0) == "1.000000");
    CHECK(fixed6(-1e-9) == "0.000000");
    CHECK(fixed6(-0.25) == "-0.250000");
    CHECK(fixed6(1234.5678915) == "1234.567892");
    CHECK(round6(0.1234564) == 0.123456);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), ValidationError);
}

TEST_CASE("strict mode") {
    CHECK(convergence_exit_code(true, true) == kSuccess);
    CHECK(convergence_exit_code(false, false) == kSuccess);
    CHECK(convergence_exit_code(false, true) == kNotConverged);
}

TEST_CASE("csv rows end in a bare LF") {
    std::ostringstream out;
    write_csv_row(out, {"a", "b"});
    CHECK(out.str() == "a,b\n");
}

TEST_CASE("parameters and measures") {
    const auto p = parse_params({"p=0.25", "a=1e-1"});
    CHECK(p.at("p") == 0.25);
    CHECK(p.at("a") == 0.1);
    CHECK_THROWS_AS(parse_params({"p"}), ValidationError);
    CHECK_THROWS_AS(parse_params({"p=abc"}), ValidationError);
    CHECK_THROWS_AS(parse_params({"p=0.1", "p=0.2"}), ValidationError);
    CHECK_THROWS_AS(parse_params({"p=inf"}), ValidationError);

    CHECK(resolve_measures({"C", "discord", "D"}) == std::vector<std::string>{"classical", "discord"});
    CHECK_THROWS_AS(resolve_measures({"negativity"}), UnknownNameError);

    std::string id;
    CHECK_THROWS_AS(load_source({}, id), ValidationError);
    CHECK_THROWS_AS(load_source({"werner", {}, "x.json"}, id), ValidationError);
    load_source({"werner", {"p=0.5"}, ""}, id);
    CHECK(id == "werner p=0.500000");
}

TEST_CASE("compute on named states") {
    std::ostringstream out;
    CHECK(cmd_compute({"bell-phi-plus", {}, ""}, csv_settings({"I_Q", "D", "C"}), out) == kSuccess);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"state", "dimA", "dimB", "measured", "mutual_information_bits",
                                              "classical_bits", "discord_bits", "argmin_angles_rad", "converged"});
    CHECK(rows[1][4] == "2.000000");
    CHECK(rows[1][5] == "1.000000");
    CHECK(rows[1][6] == "1.000000");

    std::ostringstream w;
    cmd_compute({"werner", {"p=0"}, ""}, csv_settings({}), w);
    const auto wr = parse_csv(w.str());
    for (const char* key : {"mutual_information_bits", "classical_bits", "discord_bits",
                            "rel_ent_of_entanglement_bits", "rel_ent_of_discord_bits"}) {
        const auto it = std::find(wr[0].begin(), wr[0].end(), key);
        REQUIRE(it != wr[0].end());
        CHECK(wr[1][static_cast<std::size_t>(it - wr[0].begin())] == "0.000000");
    }
}

TEST_CASE("compute from a state file") {
    std::ostringstream out;
    cmd_compute({"", {}, QDK_DATA_DIR "/states/cc_mixture.json"}, csv_settings({"D", "zero_discord"}), out);
    const auto rows = parse_csv(out.str());
    CHECK(rows[1][4] == "0.000000");
    CHECK(rows[1][5] == "true");
}

TEST_CASE("werner scan") {
    std::ostringstream out;
    CHECK(cmd_scan("werner", 0.0, 1.0, 0.05, csv_settings({"discord"}), out) == kSuccess);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == std::vector<std::string>{"p", "discord_bits"});
    CHECK(rows[1][1] == "0.000000");
    CHECK(rows[21][0] == "1.000000");
    CHECK(rows[21][1] == "1.000000");
    double prev_p = -1.0, prev_d = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double p = std::stod(rows[i][0]), d = std::stod(rows[i][1]);
        CHECK(p > prev_p);
        CHECK(d >= 0.0);
        CHECK(d >= prev_d);
        prev_p = p;
        prev_d = d;
    }
}

TEST_CASE("pure scan: classical correlations equal discord") {
    std::ostringstream out;
    cmd_scan("pure", 0.0, 1.0, 0.1, csv_settings({"C", "D"}), out);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::abs(std::stod(rows[i][1]) - std::stod(rows[i][2])) < 1e-4);
}

TEST_CASE("scan input errors") {
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_scan("werner", 0.0, 1.0, 0.0, csv_settings({}), out), ValidationError);
    CHECK_THROWS_AS(cmd_scan("werner", 1.0, 0.0, 0.1, csv_settings({}), out), ValidationError);
    CHECK_THROWS_AS(cmd_scan("werner", 0.0, 2.0, 0.5, csv_settings({}), out), ValidationError);
    CHECK_THROWS_AS(cmd_scan("ghz", 0.0, 1.0, 0.5, csv_settings({}), out), UnknownNameError);
}

TEST_CASE("identical invocations give identical bytes, regardless of threads") {
    auto s = csv_settings({"I_Q", "C", "D", "E"});
    std::ostringstream a, b;
    s.threads = 1;
    cmd_scan("werner", 0.0, 1.0, 0.25, s, a);
    s.threads = 4;
    cmd_scan("werner", 0.0, 1.0, 0.25, s, b);
    CHECK(a.str() == b.str());

    std::ostringstream c, d;
    cmd_property("discord-nonnegative", 40, s, c);
    s.threads = 1;
    cmd_property("discord-nonnegative", 40, s, d);
    CHECK(c.str() == d.str());
}

TEST_CASE("parallel_map keeps index order and rethrows the first failure") {
    const auto v = parallel_map<std::size_t>(100, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
    CHECK_THROWS_WITH(parallel_map<int>(50, 3,
                                        [](std::size_t i) -> int {
                                            if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
                                            return 0;
                                        }),
                      "7");
}

TEST_CASE("property suites") {
    Settings s;
    s.optimizer.seed = 7;
    for (const auto& suite : property_suites()) {
        if (suite == "lo-monotonicity-entanglement" || suite == "entanglement-below-classical") continue;
        std::ostringstream out;
        CHECK_MESSAGE(cmd_property(suite, 30, s, out) == kSuccess, suite);
        CHECK(out.str().find("0 violations") != std::string::npos);
    }
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_property("nope", 10, s, out), UnknownNameError);
    CHECK_THROWS_AS(cmd_property("discord-nonnegative", 0, s, out), ValidationError);
    CHECK(sample_seed(7, 0) != sample_seed(7, 1));
    CHECK(sample_seed(7, 0) != sample_seed(8, 0));
}

TEST_CASE("demos") {
    Settings s;
    s.optimizer.restarts = 6;
    for (const auto& name : demo_names()) {
        std::ostringstream out;
        CHECK_MESSAGE(cmd_demo(name, s, out) == kSuccess, name);
        CHECK(out.str().find("holds") != std::string::npos);
    }
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_demo("nope", s, out), UnknownNameError);
}
