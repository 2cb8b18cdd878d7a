#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "swap.hpp"
#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/measurement.hpp"
#include "qdk/rng.hpp"

using namespace qdk;

namespace {

constexpr double kPi = std::numbers::pi;

double max_orthonormality_defect(const ProjectiveMeasurement& m) {
    double worst = 0.0;
    const auto& v = m.vectors();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            Complex ip = 0.0;
            for (std::size_t k = 0; k < v[i].size(); ++k) ip += std::conj(v[i][k]) * v[j][k];
            worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_CASE("measurement construction") {
    const auto z = computational_measurement(2);
    CHECK(z.vectors()[0] == std::vector<Complex>{1.0, 0.0});
    CHECK(z.vectors()[1] == std::vector<Complex>{0.0, 1.0});

    const auto x = measurement_from_angles(kPi / 2, 0.0);
    CHECK(std::abs(x.vectors()[0][0] - Complex(1 / std::numbers::sqrt2)) < 1e-15);
    CHECK(std::abs(x.vectors()[0][1] - Complex(1 / std::numbers::sqrt2)) < 1e-15);

    CHECK(measurement_parameter_count(2) == 2);
    CHECK(measurement_parameter_count(3) == 6);
    CHECK(measurement_parameter_count(4) == 12);

    Rng rng(5);
    for (std::size_t d = 2; d <= 4; ++d)
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> p(measurement_parameter_count(d));
            for (auto& t : p) t = rng.uniform(-10.0, 10.0);
            CHECK(max_orthonormality_defect(measurement_from_parameters(d, p)) < 1e-12);
        }

    CHECK_THROWS_AS(ProjectiveMeasurement(ComplexMatrix{{1, 1}, {0, 1}}, {}), ValidationError);
    CHECK_THROWS_AS(measurement_from_parameters(3, std::vector<double>{0.1, 0.2}), DimensionError);
    CHECK_THROWS_AS(avg_conditional_entropy(named_state("bell-phi-plus"), computational_measurement(3)),
                    DimensionError);
}

TEST_CASE("conditional ensembles") {
    const auto bell = named_state("bell-phi-plus");
    const auto ens = condition_on_B(bell, computational_measurement(2));
    REQUIRE(ens.outcomes.size() == 2);
    CHECK(ens.outcomes[0].probability == doctest::Approx(0.5));
    CHECK(ens.outcomes[0].state->matrix() == ComplexMatrix::diagonal({1, 0}));
    CHECK(ens.outcomes[1].state->matrix() == ComplexMatrix::diagonal({0, 1}));

    const auto prod = named_state("product", {{"bz", 1.0}});
    const auto pe = condition_on_B(prod, computational_measurement(2));
    CHECK(pe.outcomes[1].probability < kNullOutcome);
    CHECK_FALSE(pe.outcomes[1].state.has_value());
    CHECK(avg_conditional_entropy(prod, computational_measurement(2)) == doctest::Approx(1.0));
}

TEST_CASE("conditional ensemble averages back to the unmeasured marginal") {
    Rng rng(11);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t db = 2 + seed % 2;
        const auto rho = random_density(2, db, 1 + seed % (2 * db), 300 + seed);
        std::vector<double> p(measurement_parameter_count(db));
        for (auto& t : p) t = rng.uniform(0.0, 2 * kPi);
        for (Subsystem side : {Subsystem::B, Subsystem::A}) {
            const std::size_t dm = rho.dim_of(side);
            std::vector<double> q(measurement_parameter_count(dm));
            for (auto& t : q) t = rng.uniform(0.0, 2 * kPi);
            const auto ens = condition_on(rho, measurement_from_parameters(dm, q), side);
            ComplexMatrix avg(rho.dim_of(other_side(side)), rho.dim_of(other_side(side)));
            double total = 0.0;
            for (const auto& o : ens.outcomes) {
                total += o.probability;
                if (o.state) avg += o.state->matrix() * o.probability;
            }
            CHECK(std::abs(total - 1.0) < 1e-12);
            CHECK(frobenius_distance(avg, reduced_state(rho, other_side(side)).matrix()) < 1e-10);
        }
    }
}

TEST_CASE("Bell conditional entropy vanishes in every basis") {
    const auto bell = named_state("bell-phi-plus");
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double theta = kPi * i / 19.0, phi = 2 * kPi * j / 20.0;
            REQUIRE(avg_conditional_entropy(bell, measurement_from_angles(theta, phi)) < 1e-9);
        }
}

TEST_CASE("measured conditional on named states") {
    const OptimizerConfig cfg;
    const auto bell = measured_conditional_entropy(named_state("bell-phi-plus"), cfg);
    CHECK(bell.value < 1e-9);
    CHECK(bell.argmin.parameters() == std::vector<double>{0.0, 0.0});

    const auto cc = measured_conditional_entropy(named_state("cc-mixture"), cfg);
    CHECK(std::abs(cc.value) < 1e-9);
    const auto grid = oracle::grid_measured_conditional(named_state("cc-mixture").matrix(), 0.01);
    CHECK(grid.theta == 0.0);
    REQUIRE(cc.argmin.parameters().size() == 2);
    CHECK(std::abs(cc.argmin.parameters()[0] - grid.theta) < 1e-3);

    const auto prod = measured_conditional_entropy(named_state("product", {{"az", 0.6}, {"by", 0.8}}), cfg);
    CHECK(std::abs(prod.value - von_neumann(qubit_state(0, 0, 0.6))) < 1e-9);
}

TEST_CASE("measured conditional is bracketed by the naive conditional and the marginal entropy") {
    const OptimizerConfig cfg;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto rho = random_density(2, 2, 1 + seed % 4, 700 + seed);
        const double v = measured_conditional_entropy(rho, cfg).value;
        CHECK(v >= naive_conditional(rho, Subsystem::B) - 1e-9);
        CHECK(v >= -1e-12);
        CHECK(v <= von_neumann(reduced_state(rho, Subsystem::A)) + 1e-9);
    }
}

TEST_CASE("search result is no worse than random measurements") {
    const OptimizerConfig cfg;
    Rng rng(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(2, 2, 2, 900 + seed);
        const double best = measured_conditional_entropy(rho, cfg).value;
        for (int k = 0; k < 50; ++k) {
            const auto m = measurement_from_angles(rng.uniform(0.0, kPi), rng.uniform(0.0, 2 * kPi));
            REQUIRE(best <= avg_conditional_entropy(rho, m) + 1e-10);
        }
    }
}

TEST_CASE("search matches a fine brute-force grid") {
    const OptimizerConfig cfg;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto rho = random_density(2, 2, 1 + seed % 4, 1300 + seed);
        const double found = measured_conditional_entropy(rho, cfg).value;
        const double grid = oracle::grid_measured_conditional(rho.matrix(), 0.005).value;
        CHECK(found <= grid + 1e-10);
        CHECK(grid - found < 1e-4);
    }
}

TEST_CASE("measuring A equals measuring B on the swapped state") {
    const OptimizerConfig cfg;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(2, 2, 1 + seed % 4, 1700 + seed);
        const auto on_a = measured_conditional_entropy(rho, cfg, Subsystem::A);
        CHECK(on_a.measured == Subsystem::A);
        const double swapped = measured_conditional_entropy(test::swap_sides(rho), cfg, Subsystem::B).value;
        CHECK(std::abs(on_a.value - swapped) < 1e-7);
    }
}

TEST_CASE("qutrit measurements") {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    // Classical on B in the computational basis: min = sum_j p_j S(rho_j).
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const double p[3] = {0.5, 0.3, 0.2};
        ComplexMatrix m(6, 6);
        double expected = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const auto rj = random_density(2, 1, 2, 40 * seed + j);
            expected += p[j] * von_neumann(rj);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t a2 = 0; a2 < 2; ++a2) m(a * 3 + j, a2 * 3 + j) = p[j] * rj.matrix()(a, a2);
        }
        const auto rho = validate_density(m, 2, 3);
        const auto res = measured_conditional_entropy(rho, cfg);
        CHECK(std::abs(res.value - expected) < 1e-6);
        CHECK(max_orthonormality_defect(res.argmin) < 1e-10);
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto rho = random_density(2, 3, 3, 2100 + seed);
        const double v = measured_conditional_entropy(rho, cfg).value;
        CHECK(v >= naive_conditional(rho, Subsystem::B) - 1e-9);
        CHECK(v <= avg_conditional_entropy(rho, computational_measurement(3)) + 1e-12);
    }
}

TEST_CASE("pinching") {
    const auto cc = named_state("cc-mixture");
    CHECK(pinch_distance(cc, computational_measurement(2)) < 1e-15);
    CHECK(pinch_B(cc, computational_measurement(2)).matrix() == cc.matrix());
    const auto bell = named_state("bell-phi-plus");
    CHECK(pinch_distance(bell, computational_measurement(2)) == doctest::Approx(std::sqrt(0.5)));
    CHECK(frobenius_distance(pinch_B(bell, computational_measurement(2)).matrix(), cc.matrix()) < 1e-15);
}

TEST_CASE("search is deterministic") {
    const OptimizerConfig cfg;
    const auto rho = random_density(2, 2, 3, 77);
    const auto a = measured_conditional_entropy(rho, cfg);
    const auto b = measured_conditional_entropy(rho, cfg);
    CHECK(a.value == b.value);
    CHECK(a.argmin.parameters() == b.argmin.parameters());
}

TEST_CASE("invalid configuration") {
    OptimizerConfig cfg;
    cfg.grid_theta = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK_THROWS_AS(measured_conditional_entropy(named_state("bell-phi-plus"), cfg), ValidationError);
}
