#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mediatorless/game.hpp"
#include "mediatorless/game_io.hpp"

using namespace mediatorless;

TEST_CASE("profile space round trip") {
    ProfileSpace s({2, 3, 2});
    CHECK(s.size() == 12);
    for (std::int64_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s.profile_of(i)) == i);
    // position 0 most significant
    CHECK(s.index_of({0, 0, 0}) == 0);
    CHECK(s.index_of({0, 0, 1}) == 1);
    CHECK(s.index_of({1, 0, 0}) == 6);
}

TEST_CASE("game b honest profile pays 1 to both") {
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);
    CHECK(expected_utility(g, mu, 0) == Rat(1));
    CHECK(expected_utility(g, mu, 1) == Rat(1));
}

TEST_CASE("zero payoff point mass") {
    GameSpec g = game_b();
    // both always play 1: payoff only when t1*t2 == 1, i.e. 1/4 of the prior
    CorrelatedProfile mu = CorrelatedProfile::point_mass(g, g.action_space().index_of({1, 1}));
    CHECK(expected_utility(g, mu, 0) == Rat(1, 4));
    // a profile that never matches anything scores 0: game A all-zero profile
    GameSpec a = game_a();
    CorrelatedProfile zeros = CorrelatedProfile::point_mass(a, a.action_space().index_of({0, 0, 0}));
    for (int i = 0; i < 3; ++i) CHECK(expected_utility(a, zeros, i) == Rat(0));
}

TEST_CASE("coalition expectation matches single-player expectation for K={i}") {
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);
    for (int i = 0; i < g.n; ++i) {
        CoalitionMask k{{i}, 1};
        CHECK(coalition_expected_utility(g, mu, k, i) == expected_utility(g, mu, i));
    }
}

TEST_CASE("coalition expectation for the full pair in game b") {
    // Direct enumeration over the 4 type profiles gives 1 for each member.
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);
    CoalitionMask k{{0, 1}, 2};
    CHECK(coalition_expected_utility(g, mu, k, 0) == Rat(1));
    CHECK(coalition_expected_utility(g, mu, k, 1) == Rat(1));
}

TEST_CASE("coalition expectation collapses for normal-form games") {
    GameSpec g = prisoners_dilemma();
    CorrelatedProfile mu = CorrelatedProfile::point_mass(g, g.action_space().index_of({0, 0}));
    CoalitionMask k{{0, 1}, 2};
    CHECK(coalition_expected_utility(g, mu, k, 0) == Rat(3));
    CHECK(coalition_expected_utility(g, mu, k, 1) == Rat(3));
}

TEST_CASE("player outside coalition is a usage error") {
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);
    CoalitionMask k{{0}, 1};
    CHECK_THROWS_AS((void)coalition_expected_utility(g, mu, k, 1), std::invalid_argument);
}

TEST_CASE("validate flags prior and missing utilities") {
    GameSpec g = game_a();
    CHECK(validate(g).empty());

    GameSpec bad_prior = game_b();
    bad_prior.prior[0] = Rat(9, 10) - Rat(3, 4);  // total now 9/10
    auto v1 = validate(bad_prior);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].field == "prior");

    GameSpec missing = game_b();
    missing.utility_defined[3] = false;
    auto v2 = validate(missing);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].field == "utilities");
    CHECK(v2[0].reason.find("action profile 3") != std::string::npos);
}

TEST_CASE("utility evaluation is linear in mu") {
    GameSpec g = game_b();
    CorrelatedProfile a = product_profile(g);
    CorrelatedProfile b = CorrelatedProfile::point_mass(g, 0);
    for (Rat lambda : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)}) {
        CorrelatedProfile mix;
        mix.dist = a.dist;
        for (std::size_t t = 0; t < mix.dist.size(); ++t)
            for (std::size_t x = 0; x < mix.dist[t].size(); ++x)
                mix.dist[t][x] = lambda * a.dist[t][x] + (1 - lambda) * b.dist[t][x];
        for (int i = 0; i < g.n; ++i) {
            Rat lhs = expected_utility(g, mix, i);
            Rat rhs = lambda * expected_utility(g, a, i) + (1 - lambda) * expected_utility(g, b, i);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("evaluation is exact and repeatable") {
    GameSpec g = product_game(3);
    CorrelatedProfile mu = product_profile(g);
    CHECK(expected_utility(g, mu, 0) == expected_utility(g, mu, 0));
}

TEST_CASE("game json round trip") {
    GameSpec g = game_b();
    Json j = game_to_json(g);
    CHECK(j["schema"] == "mediatorless-game-v1");
    GameSpec back = game_from_json(j);
    CHECK(back.n == g.n);
    CHECK(back.prior == g.prior);
    CHECK(back.utilities == g.utilities);
    CHECK(validate(back).empty());
}

TEST_CASE("mu json round trip") {
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);
    CorrelatedProfile back = mu_from_json(mu_to_json(mu, g), g);
    CHECK(back.dist == mu.dist);
}

TEST_CASE("coalition enumeration is lexicographic") {
    auto cs = enumerate_coalitions(3, 2);
    REQUIRE(cs.size() == 6);
    CHECK(cs[0].members == std::vector<int>{0});
    CHECK(cs[1].members == std::vector<int>{0, 1});
    CHECK(cs[2].members == std::vector<int>{0, 2});
    CHECK(cs[3].members == std::vector<int>{1});
    CHECK(cs[4].members == std::vector<int>{1, 2});
    CHECK(cs[5].members == std::vector<int>{2});
    CHECK(enumerate_coalitions(3, 0).empty());
}
