#include <doctest.h>

#include "fixtures.hpp"
#include "privfn/errors.hpp"
#include "privfn/information.hpp"
#include "privfn/noninteractive.hpp"
#include "privfn/privacy.hpp"

using namespace privfn;

TEST_CASE("channel invariants and JSON") {
    CHECK_THROWS_AS(Channel(Alphabet({"u0"}), {{Rational(1, 2)}}), DomainError);
    const auto ch = parse_channel(fixtures::slurp("channel_yprime.json"));
    CHECK(ch.x_size() == 4);
    CHECK(ch.u_size() == 2);
    const std::string once = serialize_channel(ch);
    CHECK(once == serialize_channel(parse_channel(once)));
}

TEST_CASE("identity channel on f = x") {
    // U = X, f(x,y) = x: conditioning on F pins U, so privacy is free
    const auto t = fixtures::make_triple(
        3, 2, [](int x, int) { return x; }, [](int x, int y) { return x * 2 + y; },
        [](int, int) { return 0; });
    const auto dist = JointDistribution::uniform(t.x_alphabet, t.y_alphabet);
    const auto identity = deterministic_channel({{0}, {1}, {2}}, 3);
    const auto report = check_perfect(identity, dist, t);
    CHECK(report.markov_ok);
    CHECK(report.zero_cond_entropy_ok);
    CHECK(report.privacy_ok);
    CHECK(report.ok());
}

TEST_CASE("roles-swapped 2x4 instance under the uniform distribution") {
    const auto t = fixtures::triple("tableII_swapped.json");
    const auto uniform = fixtures::distribution("tableII_swapped_uniform.json");
    const auto ch = parse_channel(fixtures::slurp("channel_yprime.json"));

    SUBCASE("the y' channel passes both conditions") {
        const auto report = check_perfect(ch, uniform, t);
        CHECK(report.ok());
    }

    SUBCASE("the search finds exactly the y' partition") {
        const auto result = search_deterministic_u(uniform, t);
        REQUIRE(result.found());
        const std::vector<std::vector<int>> expected{{0, 1}, {2, 3}};
        CHECK(*result.partition == expected);
        CHECK(result.report.ok());
        CHECK_FALSE(result.covers_randomized);
    }
}

TEST_CASE("roles-swapped instance under the correlated distribution fails everywhere") {
    const auto t = fixtures::triple("tableII_swapped.json");
    const auto correlated = fixtures::distribution("tableII_swapped_correlated.json");
    const auto ch = parse_channel(fixtures::slurp("channel_yprime.json"));

    SUBCASE("the y' channel now leaks: given x = 0, U determines G") {
        const auto report = check_perfect(ch, correlated, t);
        CHECK(report.zero_cond_entropy_ok);
        CHECK_FALSE(report.privacy_ok);
        REQUIRE(report.violating_ugfy.has_value());
    }

    SUBCASE("all 15 partitions of the four sender inputs fail") {
        const auto parts = set_partitions(4);
        REQUIRE(parts.size() == 15);
        for (const auto& part : parts) {
            const auto report = check_perfect(deterministic_channel(part, 4), correlated, t);
            CHECK_FALSE(report.ok());
        }
        const auto result = search_deterministic_u(correlated, t);
        CHECK_FALSE(result.found());
        CHECK(result.partitions_tried == 15);
    }
}

TEST_CASE("constant f admits the coarsest partition") {
    const auto t = fixtures::make_triple(
        4, 3, [](int, int) { return 9; }, [](int x, int y) { return x + y; },
        [](int, int) { return 0; });
    const auto dist = JointDistribution::uniform(t.x_alphabet, t.y_alphabet);
    const auto result = search_deterministic_u(dist, t);
    REQUIRE(result.found());
    CHECK(result.partition->size() == 1); // canonical order puts {X} first
}

TEST_CASE("constant g makes privacy vacuous: any channel meeting H(F|U,Y)=0 passes") {
    const auto t = fixtures::make_triple(
        3, 2, [](int x, int) { return x; }, [](int, int) { return 0; },
        [](int, int) { return 0; });
    const auto dist = JointDistribution::uniform(t.x_alphabet, t.y_alphabet);
    for (const auto& part : set_partitions(3)) {
        const auto report = check_perfect(deterministic_channel(part, 3), dist, t);
        if (report.zero_cond_entropy_ok) CHECK(report.privacy_ok);
    }
}

TEST_CASE("set partition enumeration is canonical and complete") {
    CHECK(set_partitions(1).size() == 1);
    CHECK(set_partitions(2).size() == 2);
    CHECK(set_partitions(3).size() == 5);
    CHECK(set_partitions(4).size() == 15);
    CHECK(set_partitions(5).size() == 52);
    // first is the single block, last is all singletons
    const auto parts = set_partitions(3);
    CHECK(parts.front().size() == 1);
    CHECK(parts.back().size() == 3);

    Limits tight;
    tight.max_partition_ground = 3;
    const auto t = fixtures::make_triple(
        4, 2, [](int, int) { return 0; }, [](int, int) { return 0; }, [](int, int) { return 0; });
    const auto dist = JointDistribution::uniform(t.x_alphabet, t.y_alphabet);
    CHECK_THROWS_AS(search_deterministic_u(dist, t, tight), CapError);
}

TEST_CASE("a passing channel induces a one-shot protocol with zero error and zero leakage") {
    const auto t = fixtures::triple("tableII_swapped.json");
    const auto uniform = fixtures::distribution("tableII_swapped_uniform.json");
    const auto ch = parse_channel(fixtures::slurp("channel_yprime.json"));
    REQUIRE(check_perfect(ch, uniform, t).ok());

    const auto tree = induced_protocol(ch, uniform, t);
    validate_tree(tree, 4, 2);

    // zero error on the support
    const auto correctness = check_correct(tree, t);
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 2; ++y) {
            if (uniform.p(x, y) > 0) CHECK(correctness.at(x, y) == 0);
        }
    }

    // I(M;G|Z,Y) with Z = F: exactly zero
    const auto joint = build_augmented_joint(tree, t, uniform);
    CHECK(exact_cond_independent(joint, {Var::M}, {Var::G}, {Var::F, Var::Y}));

    // and the correlated distribution breaks the same protocol's privacy
    const auto correlated = fixtures::distribution("tableII_swapped_correlated.json");
    const auto joint_corr = build_augmented_joint(tree, t, correlated);
    CHECK_FALSE(exact_cond_independent(joint_corr, {Var::M}, {Var::G}, {Var::F, Var::Y}));
}

TEST_CASE("search is deterministic in the input") {
    const auto t = fixtures::triple("tableII_swapped.json");
    const auto uniform = fixtures::distribution("tableII_swapped_uniform.json");
    const auto r1 = search_deterministic_u(uniform, t);
    const auto r2 = search_deterministic_u(uniform, t);
    REQUIRE(r1.found());
    CHECK(*r1.partition == *r2.partition);
    CHECK(r1.partitions_tried == r2.partitions_tried);
}
