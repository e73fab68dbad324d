#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mediatorless/rational.hpp"

namespace mediatorless {

// Index tuples over per-position finite sets, enumerated lexicographically
// with position 0 most significant. Type and action profiles both live here.
class ProfileSpace {
public:
    ProfileSpace() = default;
    explicit ProfileSpace(std::vector<int> sizes) : sizes_(std::move(sizes)) {
        total_ = 1;
        for (int s : sizes_) total_ *= static_cast<std::int64_t>(s);
    }

    std::int64_t size() const { return total_; }
    int positions() const { return static_cast<int>(sizes_.size()); }
    int size_at(int pos) const { return sizes_[pos]; }
    const std::vector<int>& sizes() const { return sizes_; }

    std::int64_t index_of(const std::vector<int>& profile) const {
        std::int64_t idx = 0;
        for (std::size_t i = 0; i < sizes_.size(); ++i) idx = idx * sizes_[i] + profile[i];
        return idx;
    }

    std::vector<int> profile_of(std::int64_t index) const {
        std::vector<int> p(sizes_.size());
        for (std::size_t i = sizes_.size(); i-- > 0;) {
            p[i] = static_cast<int>(index % sizes_[i]);
            index /= sizes_[i];
        }
        return p;
    }

private:
    std::vector<int> sizes_;
    std::int64_t total_ = 1;
};

// Exact-rational Bayesian game; normal-form games have singleton type sets.
struct GameSpec {
    std::string name;
    int n = 0;
    std::vector<std::vector<std::string>> type_labels;    // per player, size >= 1
    std::vector<std::vector<std::string>> action_labels;  // per player
    std::vector<Rat> prior;                               // by type-profile index
    std::vector<Rat> utilities;                           // [(t*|A| + a)*n + i]
    std::vector<bool> utility_defined;                    // per (t,a) pair

    ProfileSpace type_space() const {
        std::vector<int> s;
        for (const auto& t : type_labels) s.push_back(static_cast<int>(t.size()));
        return ProfileSpace(s);
    }
    ProfileSpace action_space() const {
        std::vector<int> s;
        for (const auto& a : action_labels) s.push_back(static_cast<int>(a.size()));
        return ProfileSpace(s);
    }
    bool is_normal_form() const {
        for (const auto& t : type_labels)
            if (t.size() != 1) return false;
        return true;
    }

    void init_tables() {
        std::int64_t cells = type_space().size() * action_space().size();
        utilities.assign(static_cast<std::size_t>(cells) * n, Rat(0));
        utility_defined.assign(cells, false);
    }
    void set_utility(std::int64_t t_idx, std::int64_t a_idx, const std::vector<Rat>& payoffs) {
        std::int64_t cell = t_idx * action_space().size() + a_idx;
        for (int i = 0; i < n; ++i) utilities[static_cast<std::size_t>(cell) * n + i] = payoffs[i];
        utility_defined[cell] = true;
    }
    const Rat& utility(std::int64_t t_idx, std::int64_t a_idx, int player) const {
        std::int64_t cell = t_idx * action_space().size() + a_idx;
        return utilities[static_cast<std::size_t>(cell) * n + player];
    }
};

// The object being implemented: map from type profiles to distributions over
// action profiles, all exact.
struct CorrelatedProfile {
    std::vector<std::vector<Rat>> dist;  // [t_idx][a_idx]

    static CorrelatedProfile point_mass(const GameSpec& g, std::int64_t a_idx) {
        CorrelatedProfile mu;
        mu.dist.assign(g.type_space().size(), std::vector<Rat>(g.action_space().size(), Rat(0)));
        for (auto& row : mu.dist) row[a_idx] = Rat(1);
        return mu;
    }
};

struct CoalitionMask {
    std::vector<int> members;  // sorted, 0-based player indices
    int k = 0;

    bool contains(int i) const {
        for (int m : members)
            if (m == i) return true;
        return false;
    }
    std::vector<int> complement(int n) const {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            if (!contains(i)) out.push_back(i);
        return out;
    }
};

struct Violation {
    std::string field;
    std::string reason;
};

std::vector<Violation> validate(const GameSpec& game);

// Sum over t of q(t) * sum over a of mu(t)(a) * u_i(t, a), exact.
Rat expected_utility(const GameSpec& game, const CorrelatedProfile& profile, int player);

// The type-pooled coalition expectation, conditioning on the coalition's
// pooled type profile exactly as displayed in the definition.
Rat coalition_expected_utility(const GameSpec& game, const CorrelatedProfile& profile,
                               const CoalitionMask& coalition, int player);

// Enumerates all coalitions K with 1 <= |K| <= k in deterministic order:
// by size, then lexicographically by members.
std::vector<CoalitionMask> enumerate_coalitions(int n, int k);

// --- bundled example games ---

// Intro game: actions {0,1}; if two or more play 1 those players get 1 and
// the rest get -1; otherwise everyone gets 0.
GameSpec game_a(int n = 3);

// Two players with binary types (uniform prior) and binary actions; payoff 1
// iff own action equals t1*t2.
GameSpec game_b();

// n players, binary types (uniform prior) and actions; payoff 1 iff own
// action equals the product of all types.
GameSpec product_game(int n);

// The honest recommendation for game_b / product_game: everyone plays the
// product of the types with probability 1.
CorrelatedProfile product_profile(const GameSpec& g);

// Prisoner's dilemma: actions {cooperate, defect}.
GameSpec prisoners_dilemma();

// 2x2 coordination game: payoff 1 to both iff actions match.
GameSpec coordination_game();

// Race game of the asynchronous setting: actions {1..n}; players whose index
// appears most often get 1, the rest 0.
GameSpec race_game(int n);

}  // namespace mediatorless
