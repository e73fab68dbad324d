#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mediatorless/game.hpp"

namespace mediatorless {

// File schemas. Games: "mediatorless-game-v1"; strategy/profile files:
// "mediatorless-profile-v1" with a kind discriminator.
using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json game_to_json(const GameSpec& g);
GameSpec game_from_json(const Json& j);
GameSpec load_game(const std::string& path);
void save_game(const GameSpec& g, const std::string& path);

// Per-player mixed strategies (normal form): strategies[i] is a distribution
// over A_i.
struct MixedProfile {
    std::vector<std::vector<Rat>> strategies;
};

// Per-player Bayesian strategies: strategies[i][t] is a distribution over A_i
// for each type index t of player i.
struct BayesianProfile {
    std::vector<std::vector<std::vector<Rat>>> strategies;

    // The correlated strategy profile induced by independent play.
    CorrelatedProfile induced(const GameSpec& g) const;
};

enum class ProfileKind { nash, correlated, comm, bayesian_nash };

struct ProfileFile {
    ProfileKind kind;
    MixedProfile mixed;            // kind == nash
    std::vector<Rat> action_dist;  // kind == correlated, by action-profile index
    CorrelatedProfile mu;          // kind == comm
    BayesianProfile bayesian;      // kind == bayesian_nash
};

ProfileFile load_profile(const std::string& path, const GameSpec& g);
Json profile_to_json(const ProfileFile& p, const GameSpec& g);

CorrelatedProfile mu_from_json(const Json& j, const GameSpec& g);
Json mu_to_json(const CorrelatedProfile& mu, const GameSpec& g);
CorrelatedProfile load_mu(const std::string& path, const GameSpec& g);

Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

}  // namespace mediatorless
