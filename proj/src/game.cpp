#include "mediatorless/game.hpp"

#include <algorithm>

namespace mediatorless {

std::vector<Violation> validate(const GameSpec& game) {
    std::vector<Violation> out;
    if (game.n < 1) out.push_back({"players", "need n >= 1"});
    if (static_cast<int>(game.type_labels.size()) != game.n)
        out.push_back({"types", "need one type set per player"});
    if (static_cast<int>(game.action_labels.size()) != game.n)
        out.push_back({"actions", "need one action set per player"});
    for (int i = 0; i < static_cast<int>(game.type_labels.size()); ++i)
        if (game.type_labels[i].empty())
            out.push_back({"types", "empty type set for player " + std::to_string(i)});
    for (int i = 0; i < static_cast<int>(game.action_labels.size()); ++i)
        if (game.action_labels[i].empty())
            out.push_back({"actions", "empty action set for player " + std::to_string(i)});
    if (!out.empty()) return out;  // shape is broken; later checks would index out of range

    ProfileSpace ts = game.type_space();
    ProfileSpace as = game.action_space();
    if (static_cast<std::int64_t>(game.prior.size()) != ts.size()) {
        out.push_back({"prior", "prior must cover every type profile"});
    } else {
        Rat sum(0);
        for (std::int64_t t = 0; t < ts.size(); ++t) {
            if (game.prior[t] < 0)
                out.push_back({"prior", "negative probability at type profile " + std::to_string(t)});
            sum += game.prior[t];
        }
        if (sum != 1)
            out.push_back({"prior", "probabilities sum to " + rat_to_string(sum) + ", not 1"});
    }
    std::int64_t cells = ts.size() * as.size();
    if (static_cast<std::int64_t>(game.utility_defined.size()) != cells ||
        game.utilities.size() != static_cast<std::size_t>(cells) * game.n) {
        out.push_back({"utilities", "utility table has wrong shape"});
        return out;
    }
    for (std::int64_t t = 0; t < ts.size(); ++t)
        for (std::int64_t a = 0; a < as.size(); ++a)
            if (!game.utility_defined[t * as.size() + a])
                out.push_back({"utilities", "missing entry for type profile " + std::to_string(t) +
                                                ", action profile " + std::to_string(a)});
    return out;
}

namespace {
void check_profile_domain(const GameSpec& game, const CorrelatedProfile& profile) {
    if (static_cast<std::int64_t>(profile.dist.size()) != game.type_space().size())
        throw std::invalid_argument("profile does not cover the game's type profiles");
    for (const auto& row : profile.dist)
        if (static_cast<std::int64_t>(row.size()) != game.action_space().size())
            throw std::invalid_argument("profile row does not cover the game's action profiles");
}
}  // namespace

Rat expected_utility(const GameSpec& game, const CorrelatedProfile& profile, int player) {
    check_profile_domain(game, profile);
    ProfileSpace ts = game.type_space();
    ProfileSpace as = game.action_space();
    Rat total(0);
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        if (game.prior[t] == 0) continue;
        Rat inner(0);
        for (std::int64_t a = 0; a < as.size(); ++a)
            if (profile.dist[t][a] != 0) inner += profile.dist[t][a] * game.utility(t, a, player);
        total += game.prior[t] * inner;
    }
    return total;
}

Rat coalition_expected_utility(const GameSpec& game, const CorrelatedProfile& profile,
                               const CoalitionMask& coalition, int player) {
    if (!coalition.contains(player))
        throw std::invalid_argument("player is not a member of the coalition");
    check_profile_domain(game, profile);
    ProfileSpace ts = game.type_space();
    ProfileSpace as = game.action_space();

    // Group type profiles by the coalition's pooled component.
    std::vector<int> k_sizes;
    for (int m : coalition.members) k_sizes.push_back(ts.size_at(m));
    ProfileSpace ks(k_sizes);

    std::vector<Rat> q_k(ks.size(), Rat(0));
    std::vector<std::vector<std::int64_t>> group(ks.size());
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        std::vector<int> tp = ts.profile_of(t);
        std::vector<int> kp;
        for (int m : coalition.members) kp.push_back(tp[m]);
        std::int64_t ki = ks.index_of(kp);
        q_k[ki] += game.prior[t];
        group[ki].push_back(t);
    }

    Rat total(0);
    for (std::int64_t ki = 0; ki < ks.size(); ++ki) {
        if (q_k[ki] == 0) continue;
        Rat cond(0);
        for (std::int64_t t : group[ki]) {
            Rat inner(0);
            for (std::int64_t a = 0; a < as.size(); ++a)
                if (profile.dist[t][a] != 0) inner += profile.dist[t][a] * game.utility(t, a, player);
            cond += (game.prior[t] / q_k[ki]) * inner;
        }
        total += q_k[ki] * cond;
    }
    return total;
}

std::vector<CoalitionMask> enumerate_coalitions(int n, int k) {
    // Lexicographic over member lists: {0}, {0,1}, {0,1,2}, {0,2}, {1}, ...
    std::vector<CoalitionMask> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        for (int i = next; i < n; ++i) {
            cur.push_back(i);
            out.push_back({cur, k});
            if (static_cast<int>(cur.size()) < k) self(self, i + 1);
            cur.pop_back();
        }
    };
    if (k > 0) rec(rec, 0);
    return out;
}

namespace {
std::vector<std::string> binary_labels() { return {"0", "1"}; }
std::vector<std::string> singleton() { return {"-"}; }
}  // namespace

GameSpec game_a(int n) {
    GameSpec g;
    g.name = "game-a";
    g.n = n;
    g.type_labels.assign(n, singleton());
    g.action_labels.assign(n, binary_labels());
    g.prior = {Rat(1)};
    g.init_tables();
    ProfileSpace as = g.action_space();
    for (std::int64_t a = 0; a < as.size(); ++a) {
        std::vector<int> ap = as.profile_of(a);
        int ones = 0;
        for (int x : ap) ones += x;
        std::vector<Rat> pay(n, Rat(0));
        if (ones >= 2)
            for (int i = 0; i < n; ++i) pay[i] = ap[i] == 1 ? Rat(1) : Rat(-1);
        g.set_utility(0, a, pay);
    }
    return g;
}

GameSpec game_b() { return product_game(2); }

GameSpec product_game(int n) {
    GameSpec g;
    g.name = n == 2 ? "game-b" : "product-" + std::to_string(n);
    g.n = n;
    g.type_labels.assign(n, binary_labels());
    g.action_labels.assign(n, binary_labels());
    ProfileSpace ts = g.type_space();
    g.prior.assign(ts.size(), Rat(1, ts.size()));
    g.init_tables();
    ProfileSpace as = g.action_space();
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        std::vector<int> tp = ts.profile_of(t);
        int prod = 1;
        for (int x : tp) prod &= x;
        for (std::int64_t a = 0; a < as.size(); ++a) {
            std::vector<int> ap = as.profile_of(a);
            std::vector<Rat> pay(n, Rat(0));
            for (int i = 0; i < n; ++i) pay[i] = ap[i] == prod ? Rat(1) : Rat(0);
            g.set_utility(t, a, pay);
        }
    }
    return g;
}

CorrelatedProfile product_profile(const GameSpec& g) {
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    CorrelatedProfile mu;
    mu.dist.assign(ts.size(), std::vector<Rat>(as.size(), Rat(0)));
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        std::vector<int> tp = ts.profile_of(t);
        int prod = 1;
        for (int x : tp) prod &= x;
        std::vector<int> ap(g.n, prod);
        mu.dist[t][as.index_of(ap)] = Rat(1);
    }
    return mu;
}

GameSpec prisoners_dilemma() {
    GameSpec g;
    g.name = "prisoners-dilemma";
    g.n = 2;
    g.type_labels.assign(2, singleton());
    g.action_labels.assign(2, std::vector<std::string>{"C", "D"});
    g.prior = {Rat(1)};
    g.init_tables();
    ProfileSpace as = g.action_space();
    g.set_utility(0, as.index_of({0, 0}), {Rat(3), Rat(3)});
    g.set_utility(0, as.index_of({0, 1}), {Rat(0), Rat(5)});
    g.set_utility(0, as.index_of({1, 0}), {Rat(5), Rat(0)});
    g.set_utility(0, as.index_of({1, 1}), {Rat(1), Rat(1)});
    return g;
}

GameSpec coordination_game() {
    GameSpec g;
    g.name = "coordination";
    g.n = 2;
    g.type_labels.assign(2, singleton());
    g.action_labels.assign(2, binary_labels());
    g.prior = {Rat(1)};
    g.init_tables();
    ProfileSpace as = g.action_space();
    for (std::int64_t a = 0; a < as.size(); ++a) {
        std::vector<int> ap = as.profile_of(a);
        Rat v = ap[0] == ap[1] ? Rat(1) : Rat(0);
        g.set_utility(0, a, {v, v});
    }
    return g;
}

GameSpec race_game(int n) {
    GameSpec g;
    g.name = "race-" + std::to_string(n);
    g.n = n;
    g.type_labels.assign(n, singleton());
    std::vector<std::string> acts;
    for (int i = 1; i <= n; ++i) acts.push_back(std::to_string(i));
    g.action_labels.assign(n, acts);
    g.prior = {Rat(1)};
    g.init_tables();
    ProfileSpace as = g.action_space();
    for (std::int64_t a = 0; a < as.size(); ++a) {
        std::vector<int> ap = as.profile_of(a);
        std::vector<int> count(n, 0);
        for (int x : ap) ++count[x];
        int best = *std::max_element(count.begin(), count.end());
        std::vector<Rat> pay(n, Rat(0));
        for (int i = 0; i < n; ++i)
            if (count[i] == best) pay[i] = Rat(1);
        g.set_utility(0, a, pay);
    }
    return g;
}

}  // namespace mediatorless
