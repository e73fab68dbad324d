#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mediatorless/broadcast.hpp"
#include "mediatorless/network.hpp"

using namespace mediatorless;

TEST_CASE("sync round delivers everything next round, absent as bot") {
    SyncNetwork net(3);
    net.advance_round();
    // nothing sent: everyone sees bots only
    for (int p = 0; p < 3; ++p) {
        int bots = 0;
        for (const HRecv& r : net.inbox(p)) bots += r.bot ? 1 : 0;
        CHECK(bots == 2);
    }
    net.send(0, 1, SubMsg{7, kind_plain, {42}});
    net.send(0, 2, SubMsg{7, kind_plain, {43}});
    net.advance_round();
    bool got = false;
    for (const HRecv& r : net.inbox(1))
        if (!r.bot && r.from == 0) {
            got = true;
            CHECK(r.msg.vals == std::vector<std::uint64_t>{42});
        }
    CHECK(got);
}

TEST_CASE("adversary rules rewrite only coalition traffic") {
    AdversaryScript s;
    s.coalition = {{1}, 1};
    AdversaryRule r;
    r.action = AdversaryRule::Action::add_offset;
    r.offset = 1;
    r.modulus = 7;
    s.rules.push_back(r);

    SyncNetwork net(3);
    net.send(0, 2, SubMsg{0, kind_plain, {3}});
    net.send(1, 2, SubMsg{0, kind_plain, {3}});
    net.advance_round(s);
    for (const HRecv& rv : net.inbox(2)) {
        if (rv.bot) continue;
        if (rv.from == 0) CHECK(rv.msg.vals[0] == 3);  // honest untouched
        if (rv.from == 1) CHECK(rv.msg.vals[0] == 4);  // corrupted
    }
}

TEST_CASE("adversary equivocation is delivered verbatim and authenticated") {
    AdversaryScript s;
    s.coalition = {{0}, 1};
    AdversaryRule r;
    r.action = AdversaryRule::Action::equivocate;
    r.offset = 1;
    r.modulus = 100;
    s.rules.push_back(r);
    SyncNetwork net(3);
    net.send(0, 1, SubMsg{0, kind_plain, {10}});
    net.send(0, 2, SubMsg{0, kind_plain, {10}});
    net.advance_round(s);
    std::uint64_t v1 = 0, v2 = 0;
    for (const HRecv& rv : net.inbox(1))
        if (!rv.bot && rv.from == 0) v1 = rv.msg.vals[0];
    for (const HRecv& rv : net.inbox(2))
        if (!rv.bot && rv.from == 0) v2 = rv.msg.vals[0];
    CHECK(v1 == 12);  // 10 + 1*(1+1)
    CHECK(v2 == 13);  // 10 + 1*(2+1)
}

TEST_CASE("adversary json round trip") {
    AdversaryScript s;
    s.name = "silence-after-2";
    s.coalition = {{2}, 1};
    AdversaryRule r;
    r.round_lo = 2;
    r.action = AdversaryRule::Action::drop;
    s.rules.push_back(r);
    AdversaryScript back = adversary_from_json(adversary_to_json(s));
    CHECK(back.name == s.name);
    CHECK(back.coalition.members == s.coalition.members);
    CHECK(back.rules.size() == 1);
    CHECK(back.rules[0].round_lo == 2);
}

TEST_CASE("sync reliable broadcast with honest sender") {
    for (int sender = 0; sender < 4; ++sender) {
        SyncNetwork net(4);
        auto out = sync_reliable_broadcast(net, 1, sender, {9, 9}, AdversaryScript::honest());
        for (int p = 0; p < 4; ++p) {
            REQUIRE(out[p].has_value());
            CHECK(*out[p] == std::vector<std::uint64_t>{9, 9});
        }
        CHECK(net.round() == sync_broadcast_rounds(1));
    }
}

TEST_CASE("sync broadcast agreement under an equivocating sender battery") {
    // Exhaustive two-faced sender: every partition of recipients between two
    // values, every per-round drop pattern of the relay messages.
    for (int mask = 0; mask < 8; ++mask) {
        for (int drop_round = 0; drop_round <= 3; ++drop_round) {
            AdversaryScript s;
            s.coalition = {{0}, 1};
            s.rewrite = [mask, drop_round](int round, int, int to, std::vector<SubMsg>& msgs) {
                for (auto& m : msgs) {
                    if (m.kind == kind_rbc_init && ((mask >> (to - 1)) & 1)) m.vals = {77};
                    if (round == drop_round && m.kind == kind_eig) msgs.clear();
                }
            };
            SyncNetwork net(4);
            auto out = sync_reliable_broadcast(net, 1, 0, {5}, s);
            // all honest outputs identical
            CHECK(out[1] == out[2]);
            CHECK(out[2] == out[3]);
        }
    }
}

TEST_CASE("k=0 broadcast is a direct send") {
    SyncNetwork net(2);
    auto out = sync_reliable_broadcast(net, 0, 0, {3}, AdversaryScript::honest());
    REQUIRE(out[1].has_value());
    CHECK(*out[1] == std::vector<std::uint64_t>{3});
}

TEST_CASE("sync consensus validity and agreement") {
    {
        SyncNetwork net(4);
        auto out = sync_consensus(net, 1, {1, 1, 1, 1}, AdversaryScript::honest());
        for (int p = 0; p < 4; ++p) CHECK(out[p] == 1);
    }
    {
        SyncNetwork net(4);
        auto out = sync_consensus(net, 1, {0, 1, 0, 1}, AdversaryScript::honest());
        for (int p = 1; p < 4; ++p) CHECK(out[p] == out[0]);
    }
}

TEST_CASE("sync consensus under randomized byzantine batteries") {
    // One byzantine player flips and equivocates its relays; agreement and
    // unanimity-validity must hold on every seed.
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(seed);
        int corrupt = static_cast<int>(rng.below(4));
        AdversaryScript s;
        s.coalition = {{corrupt}, 1};
        std::uint64_t salt = rng.next_u64();
        s.rewrite = [salt](int round, int from, int to, std::vector<SubMsg>& msgs) {
            for (auto& m : msgs)
                for (auto& v : m.vals)
                    v ^= (salt >> ((round + to + from) % 23)) & 1;
        };
        std::vector<int> prefs(4);
        for (auto& p : prefs) p = rng.coin() ? 1 : 0;
        bool unanimous = true;
        for (int i = 0; i < 4; ++i)
            if (i != corrupt) unanimous = unanimous && prefs[i] == prefs[(corrupt + 1) % 4];

        SyncNetwork net(4);
        auto out = sync_consensus(net, 1, prefs, s);
        int ref = -1;
        for (int p = 0; p < 4; ++p) {
            if (p == corrupt) continue;
            if (ref < 0) ref = out[p];
            CHECK(out[p] == ref);
        }
        if (unanimous) CHECK(ref == prefs[(corrupt + 1) % 4]);
    }
}

TEST_CASE("async fifo delivers oldest first and runs to quiescence") {
    struct PingProc : AsyncProc {
        int n, self;
        bool sent = false;
        int got = 0;
        PingProc(int n, int self) : n(n), self(self) {}
        void on_activate(AsyncContext& ctx, const std::vector<HRecv>& delivered) override {
            if (!sent) {
                sent = true;
                for (int to = 0; to < n; ++to)
                    if (to != self) ctx.send(to, SubMsg{0, kind_plain, {1}});
            }
            for (const HRecv& r : delivered)
                if (!r.bot) ++got;
        }
        bool done() const override { return sent && got >= n - 1; }
    };
    std::vector<PingProc> procs{{3, 0}, {3, 1}, {3, 2}};
    std::vector<AsyncProc*> raw{&procs[0], &procs[1], &procs[2]};
    AsyncNetwork net(3);
    auto policy = make_fifo_policy();
    net.run(raw, *policy);
    for (auto& p : procs) CHECK(p.done());
}

TEST_CASE("async watchdog forces starved deliveries") {
    // A policy that always schedules player 0 would starve the message; the
    // watchdog must force it through within the lag bound.
    struct NullPolicy : SchedulerPolicy {
        AsyncEvent decide(const SchedulerView& v) override {
            return {AsyncEvent::Kind::schedule_player, v.live_players.front(), -1};
        }
        std::string name() const override { return "null"; }
    };
    struct OnceProc : AsyncProc {
        bool sent = false, got = false;
        int self;
        explicit OnceProc(int s) : self(s) {}
        void on_activate(AsyncContext& ctx, const std::vector<HRecv>& delivered) override {
            if (self == 0 && !sent) {
                sent = true;
                ctx.send(1, SubMsg{0, kind_plain, {5}});
            }
            for (const HRecv& r : delivered)
                if (!r.bot) got = true;
        }
        bool done() const override { return self == 0 ? sent : got; }
    };
    OnceProc a(0), b(1);
    std::vector<AsyncProc*> raw{&a, &b};
    AsyncNetwork net(2, 16);
    NullPolicy policy;
    net.run(raw, policy, AdversaryScript::honest(), 5000);
    CHECK(b.done());
}

TEST_CASE("async bracha broadcast honest sender") {
    auto policy = make_random_policy(11);
    auto out = async_reliable_broadcast(4, 1, 0, {123}, *policy, AdversaryScript::honest());
    for (int p = 0; p < 4; ++p) {
        REQUIRE(out[p].has_value());
        CHECK(*out[p] == std::vector<std::uint64_t>{123});
    }
}

TEST_CASE("async bracha equivocating sender: all honest agree") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        AdversaryScript s;
        s.coalition = {{0}, 1};
        s.rewrite = [seed](int, int, int to, std::vector<SubMsg>& msgs) {
            for (auto& m : msgs)
                if (m.kind == kind_rbc_init && to % 2 == static_cast<int>(seed % 2)) m.vals = {999};
        };
        auto policy = make_random_policy(seed);
        auto out = async_reliable_broadcast(4, 1, 0, {5}, *policy, s, 50000);
        std::vector<BcastValue> honest{out[1], out[2], out[3]};
        for (const auto& v : honest)
            if (v.has_value())
                for (const auto& w : honest)
                    if (w.has_value()) CHECK(*v == *w);
    }
}

TEST_CASE("async consensus validity, agreement, randomized battery") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed + 7000);
        int corrupt = static_cast<int>(rng.below(4));
        AdversaryScript s;
        s.coalition = {{corrupt}, 1};
        std::uint64_t salt = rng.next_u64();
        s.rewrite = [salt](int, int from, int to, std::vector<SubMsg>& msgs) {
            for (auto& m : msgs)
                for (auto& v : m.vals) v ^= (salt >> ((from * 3 + to) % 29)) & 1;
        };
        std::vector<int> prefs(4);
        for (auto& p : prefs) p = rng.coin() ? 1 : 0;
        auto policy = make_random_policy(seed * 31 + 1);
        AsyncConsensusResult res = async_consensus(4, 1, prefs, *policy, s, seed);
        int ref = -1;
        bool unanimous = true;
        for (int p = 0; p < 4; ++p) {
            if (p == corrupt) continue;
            REQUIRE(res.outputs[p] >= 0);
            if (ref < 0) ref = res.outputs[p];
            CHECK(res.outputs[p] == ref);
            unanimous = unanimous && prefs[p] == prefs[corrupt == 0 ? 1 : 0];
        }
        if (unanimous) CHECK(ref == prefs[corrupt == 0 ? 1 : 0]);
    }
}
