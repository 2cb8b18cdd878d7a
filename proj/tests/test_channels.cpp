#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdk/channels.hpp"
#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/monotonicity.hpp"

using namespace qdk;

TEST_CASE("Kraus validation") {
    CHECK_NOTHROW(validate_channel({ComplexMatrix::identity(2)}));
    CHECK_THROWS_AS(validate_channel({}), ValidationError);
    CHECK_THROWS_AS(validate_channel({ComplexMatrix::diagonal({1, 0})}), ValidationError);
    CHECK_THROWS_AS(validate_channel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}), ValidationError);
    CHECK_THROWS_AS(validate_channel({ComplexMatrix::identity(2) * 1.001}), ValidationError);
    CHECK(counterexample_channel().completeness_residual() < 1e-15);
    CHECK(fully_depolarizing_qubit().completeness_residual() < 1e-15);
}

TEST_CASE("channel actions") {
    const auto cc = named_state("cc-mixture");
    const auto out = apply(cc, LocalChannel{counterexample_channel(), Subsystem::B});
    ComplexMatrix expected = kron(ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({1, 0})) * 0.5;
    expected += kron(ComplexMatrix::diagonal({0, 1}), ComplexMatrix::outer(ket_plus())) * 0.5;
    CHECK(frobenius_distance(out.matrix(), expected) < 1e-15);
    CHECK(frobenius_distance(out.matrix(), named_state("lo-output").matrix()) < 1e-15);

    const auto bell = named_state("bell-phi-plus");
    CHECK(apply(bell, LocalChannel{identity_channel(2), Subsystem::A}).matrix() == bell.matrix());
    const auto dep = apply(bell, LocalChannel{fully_depolarizing_qubit(), Subsystem::B});
    CHECK(frobenius_distance(dep.matrix(), 0.25 * ComplexMatrix::identity(4)) < 1e-15);

    const std::vector<LocalChannel> both{{fully_depolarizing_qubit(), Subsystem::A},
                                         {identity_channel(2), Subsystem::B}};
    CHECK(frobenius_distance(apply(bell, std::span<const LocalChannel>(both)).matrix(),
                             0.25 * ComplexMatrix::identity(4)) < 1e-15);

    CHECK_THROWS_AS(apply(bell, LocalChannel{identity_channel(3), Subsystem::B}), DimensionError);
    CHECK_THROWS_AS(apply(bell, identity_channel(2)), DimensionError);
}

TEST_CASE("random channels") {
    const auto u = random_local_channel(2, 1, 3);
    CHECK(u.operators().size() == 1);
    const auto& m = u.operators()[0];
    CHECK(frobenius_distance(m.adjoint() * m, ComplexMatrix::identity(2)) < 1e-12);

    for (std::size_t k = 1; k <= 4; ++k) {
        const auto ch = random_local_channel(4, k, 10 + k);
        CHECK(ch.operators().size() == k);
        CHECK(ch.completeness_residual() < 1e-12);
    }
    CHECK(random_local_channel(2, 2, 5).operators() == random_local_channel(2, 2, 5).operators());
    CHECK_THROWS_AS(random_local_channel(2, 0, 1), ValidationError);
}

TEST_CASE("local channels map states to states") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto rho = random_density(2, 2, 1 + seed % 4, 20000 + seed);
        const LocalChannel ch{random_local_channel(2, 1 + seed % 4, 30000 + seed),
                              seed % 2 ? Subsystem::A : Subsystem::B};
        const auto out = apply(rho, ch);
        REQUIRE(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
        REQUIRE(out.spectrum().values.front() >= -1e-10);
        REQUIRE(out.matrix().hermiticity_defect() < 1e-12);
        // the untouched side keeps its marginal
        const Subsystem kept = other_side(ch.side);
        REQUIRE(frobenius_distance(reduced_state(out, kept).matrix(), reduced_state(rho, kept).matrix()) < 1e-12);
    }
}

TEST_CASE("mutual information never grows under local operations") {
    const OptimizerConfig cfg;
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto rho = random_density(2, 2, 1 + seed % 4, 40000 + seed);
        const std::vector<LocalChannel> op{{random_local_channel(2, 1 + seed % 3, 2 * seed), Subsystem::A},
                                           {random_local_channel(2, 1 + (seed / 3) % 3, 2 * seed + 1), Subsystem::B}};
        const auto t = monotonicity_trial(rho, op, Measure::MutualInformation, cfg);
        if (t.violated) ++violations;
        CHECK(t.after <= t.before + 1e-9);
    }
    CHECK(violations == 0);
}

TEST_CASE("entanglement distance never grows under local operations") {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto rho = random_density(2, 2, 1 + seed % 4, 50000 + seed);
        const LocalChannel ch{random_local_channel(2, 1 + seed % 3, 60000 + seed), Subsystem::B};
        const auto t = monotonicity_trial(rho, ch, Measure::RelEntEntanglement, cfg);
        CHECK_FALSE(t.violated);
    }
}

TEST_CASE("monotonicity trial bookkeeping") {
    const OptimizerConfig cfg;
    const auto t = monotonicity_trial(named_state("cc-mixture"), LocalChannel{counterexample_channel(), Subsystem::B},
                                      Measure::Discord, cfg);
    CHECK(t.before < 1e-6);
    CHECK(t.after > 0.2);
    CHECK(t.violated);
    const auto mi = monotonicity_trial(named_state("cc-mixture"),
                                       LocalChannel{counterexample_channel(), Subsystem::B},
                                       Measure::MutualInformation, cfg);
    CHECK(mi.before == doctest::Approx(1.0));
    CHECK(mi.after == doctest::Approx(mutual_information(named_state("lo-output"))));
    CHECK_FALSE(mi.violated);

    CHECK(monotonicity_slack(Measure::MutualInformation) == 1e-9);
    CHECK(monotonicity_slack(Measure::RelEntDiscord) == 5e-3);
    for (Measure m : {Measure::MutualInformation, Measure::RelEntEntanglement, Measure::Discord,
                      Measure::RelEntDiscord})
        CHECK(parse_measure(to_string(m)) == m);
    CHECK_THROWS_AS(parse_measure("negativity"), UnknownNameError);
}
