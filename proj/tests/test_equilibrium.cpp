#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mediatorless/equilibrium.hpp"
#include "mediatorless/lp.hpp"
#include "mediatorless/prng.hpp"

using namespace mediatorless;

namespace {

MixedProfile pure_profile(const GameSpec& g, const std::vector<int>& actions) {
    MixedProfile p;
    for (int i = 0; i < g.n; ++i) {
        std::vector<Rat> dist(g.action_space().size_at(i), Rat(0));
        dist[actions[i]] = Rat(1);
        p.strategies.push_back(dist);
    }
    return p;
}

}  // namespace

TEST_CASE("lp solver basics") {
    // max x + y st x + 2y <= 4, 3x + y <= 6 -> x=8/5, y=6/5, obj=14/5
    std::vector<LpConstraint> rows{{{Rat(1), Rat(2)}, Relation::le, Rat(4)},
                                   {{Rat(3), Rat(1)}, Relation::le, Rat(6)}};
    LpResult r = solve_lp({Rat(1), Rat(1)}, rows);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Rat(14, 5));
    CHECK(r.x[0] == Rat(8, 5));
    CHECK(r.x[1] == Rat(6, 5));

    // infeasible: x <= -1
    std::vector<LpConstraint> bad{{{Rat(1)}, Relation::le, Rat(-1)}};
    CHECK(solve_lp({Rat(1)}, bad).status == LpStatus::infeasible);

    // unbounded: max x st x >= 1
    std::vector<LpConstraint> unb{{{Rat(1)}, Relation::ge, Rat(1)}};
    CHECK(solve_lp({Rat(1)}, unb).status == LpStatus::unbounded);

    // equality mix
    std::vector<LpConstraint> eq{{{Rat(1), Rat(1)}, Relation::eq, Rat(1)},
                                 {{Rat(1), Rat(0)}, Relation::ge, Rat(1, 3)}};
    LpResult r2 = solve_lp({Rat(0), Rat(1)}, eq);
    REQUIRE(r2.status == LpStatus::optimal);
    CHECK(r2.objective == Rat(2, 3));
}

TEST_CASE("game a: all-zero passes k=1 and fails k=2 with pair certificate") {
    GameSpec g = game_a();
    MixedProfile zeros = pure_profile(g, {0, 0, 0});

    CheckResult r1 = check_k_nash(g, zeros, 1, ResilienceMode::resilient);
    CHECK(r1.pass);

    CheckResult r2 = check_k_nash(g, zeros, 2, ResilienceMode::resilient);
    REQUIRE(!r2.pass);
    REQUIRE(r2.certificate.has_value());
    const DeviationCertificate& c = *r2.certificate;
    CHECK(c.coalition.members == std::vector<int>{0, 1});
    // both members switch to action 1 and gain exactly 1
    ProfileSpace ak({2, 2});
    CHECK(c.joint_mixed[0][ak.index_of({1, 1})] == Rat(1));
    REQUIRE(c.gains.size() == 2);
    CHECK(c.gains[0] == Rat(1));
    CHECK(c.gains[1] == Rat(1));
}

TEST_CASE("k=0 passes vacuously") {
    GameSpec g = game_a();
    MixedProfile zeros = pure_profile(g, {0, 0, 0});
    CHECK(check_k_nash(g, zeros, 0, ResilienceMode::resilient).pass);
    CHECK(check_k_nash(g, zeros, 0, ResilienceMode::strongly_resilient).pass);
}

TEST_CASE("bayesian game passed to check_k_nash is a usage error") {
    GameSpec g = game_b();
    MixedProfile p;
    CHECK_THROWS_AS((void)check_k_nash(g, p, 1, ResilienceMode::resilient), std::invalid_argument);
}

TEST_CASE("mixed coalition deviation caught only by the LP route") {
    // Matching pennies for the coalition: a fair coin over the two profitable
    // joint actions helps both members while every pure joint deviation helps
    // only one. Build a 3-player game where players 0,1 form the coalition:
    // base profile (0,0,0) pays 0 to everyone; joint action (1,0) pays
    // (2,-1), (0,1) pays (-1,2); the mix pays (1/2, 1/2) to both.
    GameSpec g;
    g.n = 3;
    g.type_labels.assign(3, {"-"});
    g.action_labels.assign(3, {"0", "1"});
    g.prior = {Rat(1)};
    g.init_tables();
    ProfileSpace as = g.action_space();
    for (std::int64_t a = 0; a < as.size(); ++a) g.set_utility(0, a, {Rat(0), Rat(0), Rat(0)});
    g.set_utility(0, as.index_of({1, 0, 0}), {Rat(2), Rat(-1), Rat(0)});
    g.set_utility(0, as.index_of({0, 1, 0}), {Rat(-1), Rat(2), Rat(0)});

    MixedProfile zeros = pure_profile(g, {0, 0, 0});
    // strong mode: individual gains exist, so it fails even at k=1
    CHECK(!check_k_nash(g, zeros, 1, ResilienceMode::strongly_resilient).pass);
    // player 0 switching alone gains 2, so resilient k=1 already fails
    CHECK(!check_k_nash(g, zeros, 1, ResilienceMode::resilient).pass);

    // Make each lone deviation self-harming: the deviator pays, its partner
    // profits. Every pure joint deviation now leaves a member worse off, but
    // the fifty-fifty mix of (1,0) and (0,1) gives both an expected +1.
    GameSpec g2 = g;
    g2.set_utility(0, as.index_of({1, 0, 0}), {Rat(-1), Rat(3), Rat(0)});
    g2.set_utility(0, as.index_of({0, 1, 0}), {Rat(3), Rat(-1), Rat(0)});
    g2.set_utility(0, as.index_of({1, 1, 0}), {Rat(-2), Rat(-2), Rat(0)});
    CHECK(check_k_nash(g2, zeros, 1, ResilienceMode::resilient).pass);
    CHECK(check_k_nash(g2, zeros, 1, ResilienceMode::strongly_resilient).pass);
    CHECK(!check_k_nash(g2, zeros, 2, ResilienceMode::strongly_resilient).pass);
    CheckResult r = check_k_nash(g2, zeros, 2, ResilienceMode::resilient);
    REQUIRE(!r.pass);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->coalition.members == std::vector<int>{0, 1});
    REQUIRE(r.certificate->gains.size() == 2);
    CHECK(r.certificate->gains[0] > 0);
    CHECK(r.certificate->gains[1] > 0);
    // the witness must be a genuine mixture; no pure deviation works
    int support = 0;
    for (const Rat& x : r.certificate->joint_mixed[0])
        if (x > 0) ++support;
    CHECK(support >= 2);
}

TEST_CASE("correlated checker on a coordination lottery") {
    GameSpec g = coordination_game();
    ProfileSpace as = g.action_space();
    std::vector<Rat> dist(as.size(), Rat(0));
    dist[as.index_of({0, 0})] = Rat(1, 2);
    dist[as.index_of({1, 1})] = Rat(1, 2);
    CHECK(check_k_correlated(g, dist, 1, ResilienceMode::resilient).pass);
    CHECK(check_k_correlated(g, dist, 1, ResilienceMode::strongly_resilient).pass);
}

TEST_CASE("correlated checker flags the game a pair deviation") {
    GameSpec g = game_a();
    ProfileSpace as = g.action_space();
    std::vector<Rat> dist(as.size(), Rat(0));
    dist[as.index_of({0, 0, 0})] = Rat(1);
    CHECK(check_k_correlated(g, dist, 1, ResilienceMode::resilient).pass);
    CheckResult r = check_k_correlated(g, dist, 2, ResilienceMode::resilient);
    REQUIRE(!r.pass);
    CHECK(r.certificate->kind == "correlated-swap");
    CHECK(r.certificate->coalition.members == std::vector<int>{0, 1});
    CHECK(r.certificate->swap_to == std::vector<int>{1, 1});
}

TEST_CASE("correlated checker flags a dominated point mass") {
    // Brute force over all single-player swaps: defecting from (C,C) pays.
    GameSpec g = prisoners_dilemma();
    ProfileSpace as = g.action_space();
    std::vector<Rat> dist(as.size(), Rat(0));
    dist[as.index_of({0, 0})] = Rat(1);
    CheckResult r = check_k_correlated(g, dist, 1, ResilienceMode::resilient);
    REQUIRE(!r.pass);
    CHECK(r.certificate->coalition.members == std::vector<int>{0});
    CHECK(r.certificate->swap_from == std::vector<int>{0});
    CHECK(r.certificate->swap_to == std::vector<int>{1});
    CHECK(r.certificate->gains[0] == Rat(2));
}

TEST_CASE("comm checker accepts the game b recommendation") {
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);
    CHECK(check_k_comm(g, mu, 1, ResilienceMode::resilient).pass);
    CHECK(check_k_comm(g, mu, 2, ResilienceMode::resilient).pass);
}

TEST_CASE("comm checker rejects the inverted recommendation") {
    // Brute force over psi and phi: flipping the recommended bit restores
    // the good payoff, with the identity misreport.
    GameSpec g = game_b();
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    CorrelatedProfile bad;
    bad.dist.assign(ts.size(), std::vector<Rat>(as.size(), Rat(0)));
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        std::vector<int> tp = ts.profile_of(t);
        int wrong = 1 - (tp[0] & tp[1]);
        bad.dist[t][as.index_of({wrong, wrong})] = Rat(1);
    }
    CheckResult r = check_k_comm(g, bad, 1, ResilienceMode::resilient);
    REQUIRE(!r.pass);
    CHECK(r.certificate->kind == "comm-lie-and-swap");
    CHECK(r.certificate->coalition.members == std::vector<int>{0});
    CHECK(r.certificate->misreport == r.certificate->true_types);  // identity psi
    // with true type 0 the only recommendation ever received is 1; the
    // witness remap must flip it back to 0 (the first such phi in lex order)
    CHECK(r.certificate->true_types == std::vector<int>{0});
    CHECK(r.certificate->phi[1] == 0);
}

TEST_CASE("constant-utility game passes everything") {
    GameSpec g = game_b();
    for (std::size_t i = 0; i < g.utilities.size(); ++i) g.utilities[i] = Rat(7);
    CorrelatedProfile mu = product_profile(g);
    CHECK(check_k_comm(g, mu, 2, ResilienceMode::resilient).pass);
    CHECK(check_k_comm(g, mu, 2, ResilienceMode::strongly_resilient).pass);
    BayesianProfile all0;
    for (int i = 0; i < g.n; ++i)
        all0.strategies.push_back({{Rat(1), Rat(0)}, {Rat(1), Rat(0)}});
    CHECK(check_k_bayesian_nash(g, all0, 2, ResilienceMode::strongly_resilient).pass);
}

TEST_CASE("bayesian nash checker on game b") {
    GameSpec g = game_b();
    // everyone plays 0 regardless of type: a Bayesian Nash equilibrium
    BayesianProfile all0;
    for (int i = 0; i < g.n; ++i)
        all0.strategies.push_back({{Rat(1), Rat(0)}, {Rat(1), Rat(0)}});
    CHECK(check_k_bayesian_nash(g, all0, 1, ResilienceMode::resilient).pass);

    // player 0 plays 1 - t0 (always wrong when t0=0); switching back gains
    BayesianProfile anti = all0;
    anti.strategies[0] = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    CheckResult r = check_k_bayesian_nash(g, anti, 1, ResilienceMode::resilient);
    REQUIRE(!r.pass);
    CHECK(r.certificate->coalition.members == std::vector<int>{0});
    CHECK(r.certificate->gains[0] > 0);
}

TEST_CASE("sampler table reproduces mu exactly") {
    GameSpec g = coordination_game();
    ProfileSpace as = g.action_space();
    CorrelatedProfile mu;
    mu.dist.assign(1, std::vector<Rat>(as.size(), Rat(0)));
    mu.dist[0][as.index_of({0, 0})] = Rat(1, 3);
    mu.dist[0][as.index_of({1, 1})] = Rat(2, 3);
    SamplerTable t = build_sampler(mu, g);
    CHECK(t.modulus == 3);
    CHECK(t.lookup(0, 1) == as.index_of({0, 0}));
    CHECK(t.lookup(0, 2) == as.index_of({1, 1}));
    CHECK(t.lookup(0, 3) == as.index_of({1, 1}));
}

TEST_CASE("point mass sampler has modulus 1") {
    GameSpec g = coordination_game();
    CorrelatedProfile mu = CorrelatedProfile::point_mass(g, 2);
    SamplerTable t = build_sampler(mu, g);
    CHECK(t.modulus == 1);
    CHECK(t.lookup(0, 1) == 2);
}

TEST_CASE("uniform-over-four sampler") {
    GameSpec g = coordination_game();
    ProfileSpace as = g.action_space();
    CorrelatedProfile mu;
    mu.dist.assign(1, std::vector<Rat>(as.size(), Rat(1, 4)));
    SamplerTable t = build_sampler(mu, g);
    CHECK(t.modulus == 4);
    for (std::uint64_t r = 1; r <= 4; ++r) CHECK(t.lookup(0, r) == static_cast<std::int64_t>(r - 1));
}

TEST_CASE("sampler frequencies are exact on random mus") {
    Rng rng(42);
    GameSpec g = coordination_game();
    ProfileSpace as = g.action_space();
    for (int trial = 0; trial < 20; ++trial) {
        // random rational distribution with denominators up to 12
        std::vector<Rat> row(as.size(), Rat(0));
        Rat left(1);
        for (std::int64_t a = 0; a + 1 < as.size(); ++a) {
            std::uint64_t den = 1 + rng.below(12);
            std::uint64_t num = rng.below(den + 1);
            Rat p = Rat(num, den) * left;
            row[a] = p;
            left -= p;
        }
        row[as.size() - 1] = left;
        CorrelatedProfile mu;
        mu.dist = {row};
        SamplerTable t = build_sampler(mu, g);
        for (std::int64_t a = 0; a < as.size(); ++a) {
            std::uint64_t freq = 0;
            for (std::uint64_t r = 1; r <= t.modulus; ++r)
                if (t.lookup(0, r) == a) ++freq;
            CHECK(Rat(freq, t.modulus) == row[a]);
        }
    }
}

TEST_CASE("punishment equilibrium for the prisoners dilemma") {
    GameSpec g = prisoners_dilemma();
    CorrelatedProfile cc = CorrelatedProfile::point_mass(g, g.action_space().index_of({0, 0}));
    auto tau = find_punishment_equilibrium(g, cc, 1);
    REQUIRE(tau.has_value());
    CHECK(tau->maps == std::vector<std::vector<int>>{{1}, {1}});
}

TEST_CASE("no punishment in constant games") {
    GameSpec g = prisoners_dilemma();
    for (std::size_t i = 0; i < g.utilities.size(); ++i) g.utilities[i] = Rat(1);
    CorrelatedProfile mu = CorrelatedProfile::point_mass(g, 0);
    CHECK(!find_punishment_equilibrium(g, mu, 1).has_value());
}

TEST_CASE("punishment search on game b enumerates all pure maps") {
    GameSpec g = game_b();
    CorrelatedProfile mu = product_profile(g);  // utility 1 for both
    auto tau = find_punishment_equilibrium(g, mu, 1);
    // Oracle: enumerate all 16 pure profiles; accept iff the checker passes
    // and both players are strictly below 1.
    bool found_by_oracle = false;
    for (int m0 = 0; m0 < 4 && !found_by_oracle; ++m0)
        for (int m1 = 0; m1 < 4 && !found_by_oracle; ++m1) {
            PureBayesianProfile p;
            p.maps = {{m0 / 2, m0 % 2}, {m1 / 2, m1 % 2}};
            BayesianProfile b = p.as_bayesian(g);
            CorrelatedProfile ind = b.induced(g);
            bool worse = expected_utility(g, ind, 0) < 1 && expected_utility(g, ind, 1) < 1;
            if (worse && check_k_bayesian_nash(g, b, 1, ResilienceMode::resilient).pass)
                found_by_oracle = true;
        }
    CHECK(tau.has_value() == found_by_oracle);
    if (tau) {
        BayesianProfile b = tau->as_bayesian(g);
        CorrelatedProfile ind = b.induced(g);
        CHECK(expected_utility(g, ind, 0) < 1);
        CHECK(expected_utility(g, ind, 1) < 1);
        CHECK(check_k_bayesian_nash(g, b, 1, ResilienceMode::resilient).pass);
    }
}

TEST_CASE("monotonicity and strong-implies-weak over a small corpus") {
    GameSpec a = game_a();
    MixedProfile zeros = pure_profile(a, {0, 0, 0});
    for (int k = 3; k >= 1; --k) {
        for (ResilienceMode m : {ResilienceMode::resilient, ResilienceMode::strongly_resilient}) {
            bool at_k = check_k_nash(a, zeros, k, m).pass;
            bool at_k1 = check_k_nash(a, zeros, k - 1, m).pass;
            if (at_k) CHECK(at_k1);
        }
        if (check_k_nash(a, zeros, k, ResilienceMode::strongly_resilient).pass)
            CHECK(check_k_nash(a, zeros, k, ResilienceMode::resilient).pass);
    }
    GameSpec b = game_b();
    CorrelatedProfile mu = product_profile(b);
    for (int k = 2; k >= 1; --k)
        for (ResilienceMode m : {ResilienceMode::resilient, ResilienceMode::strongly_resilient})
            if (check_k_comm(b, mu, k, m).pass) CHECK(check_k_comm(b, mu, k - 1, m).pass);
}

TEST_CASE("certificates are byte-for-byte deterministic") {
    GameSpec g = game_a();
    MixedProfile zeros = pure_profile(g, {0, 0, 0});
    CheckResult r1 = check_k_nash(g, zeros, 2, ResilienceMode::resilient);
    CheckResult r2 = check_k_nash(g, zeros, 2, ResilienceMode::resilient);
    REQUIRE(!r1.pass);
    CHECK(r1.certificate->to_json(g).dump() == r2.certificate->to_json(g).dump());
}
