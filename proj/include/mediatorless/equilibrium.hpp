#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mediatorless/game.hpp"
#include "mediatorless/game_io.hpp"

namespace mediatorless {

// resilient: the defining inequality must hold for some coalition member
// (no deviation makes everyone strictly better off).
// strongly_resilient: it must hold for all members (no one can gain at all).
enum class ResilienceMode { resilient, strongly_resilient };

inline const char* mode_name(ResilienceMode m) {
    return m == ResilienceMode::resilient ? "resilient" : "strong";
}

struct DeviationCertificate {
    CoalitionMask coalition;
    std::string kind;  // nash-joint-mixed | correlated-swap | comm-lie-and-swap

    // nash-joint-mixed: one distribution over joint coalition actions per
    // pooled coalition type (normal-form games have a single row).
    std::vector<std::vector<Rat>> joint_mixed;
    // correlated-swap
    std::vector<int> swap_from;  // recommendation a'_K
    std::vector<int> swap_to;    // replacement a''_K
    // comm-lie-and-swap
    std::vector<int> true_types;  // t_K
    std::vector<int> misreport;   // psi(t_K)
    std::vector<int> phi;         // action remap, indexed by A_K profile index

    std::vector<int> improved_players;
    std::vector<Rat> gains;  // one per improved player

    Json to_json(const GameSpec& g) const;
};

struct CheckResult {
    bool pass = false;
    std::optional<DeviationCertificate> certificate;
};

struct EnumerationBudgetExceeded : std::runtime_error {
    explicit EnumerationBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1u << 22;

// Normal-form game, independent mixed strategies. Coalition deviations range
// over joint (correlated) mixtures; resilient mode solves an exact LP
// maximizing the minimum member gain, strong mode enumerates pure joint
// deviations.
CheckResult check_k_nash(const GameSpec& game, const MixedProfile& profile, int k,
                         ResilienceMode mode);

// Normal-form game, distribution over action profiles, checked exactly as the
// defining inequality is written: every recommendation with positive
// probability against every deterministic swap.
CheckResult check_k_correlated(const GameSpec& game, const std::vector<Rat>& dist, int k,
                               ResilienceMode mode);

// Bayesian game, correlated strategy profile mu; quantifies over misreports
// psi (pointwise) and deterministic action remaps phi: A_K -> A_K.
CheckResult check_k_comm(const GameSpec& game, const CorrelatedProfile& mu, int k,
                         ResilienceMode mode,
                         std::uint64_t budget = kDefaultEnumerationBudget);

// Bayesian game, per-player type-to-distribution strategies. Deviations are
// coalition maps T_K -> Delta(A_K); resilient mode solves one joint LP per
// coalition across pooled types.
CheckResult check_k_bayesian_nash(const GameSpec& game, const BayesianProfile& profile, int k,
                                  ResilienceMode mode,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

// Deterministic table realizing mu: for each type profile, [1..N] is split
// into consecutive blocks per action profile (lexicographic order) with
// |block| = N * mu(t)(a).
struct SamplerTable {
    std::uint64_t modulus = 1;                   // N
    std::vector<std::vector<std::int64_t>> rows;  // [t_idx][r-1] -> action profile index

    std::int64_t lookup(std::int64_t t_idx, std::uint64_t r) const {  // r in [1..N]
        return rows[t_idx][r - 1];
    }
    Json to_json(const GameSpec& g) const;
};

SamplerTable build_sampler(const CorrelatedProfile& mu, const GameSpec& game);

// Pure Bayesian strategy profile: maps[i][t] is the action player i takes
// with type t.
struct PureBayesianProfile {
    std::vector<std::vector<int>> maps;

    BayesianProfile as_bayesian(const GameSpec& g) const;
};

// First (lexicographic) pure k-resilient Bayesian Nash profile that is
// strictly worse than mu for every player, or nullopt.
std::optional<PureBayesianProfile> find_punishment_equilibrium(
    const GameSpec& game, const CorrelatedProfile& mu, int k,
    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace mediatorless
