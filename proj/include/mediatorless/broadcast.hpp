#pragma once

#include <map>
#include <optional>
#include <set>

#include "mediatorless/network.hpp"

namespace mediatorless {

using BcastValue = std::optional<std::vector<std::uint64_t>>;  // nullopt = bot

// ---------------------------------------------------------------------------
// Synchronous reliable broadcast and consensus.
//
// Agreement is reached with an exponential-information-gathering relay over
// k+1 rounds (sound for n > 3k). Broadcast prepends a dissemination round, so
// a full broadcast window is k+2 rounds. A dishonest sender can only force a
// common bot outcome.
// ---------------------------------------------------------------------------

inline int sync_agreement_rounds(int k) { return k + 1; }
inline int sync_broadcast_rounds(int k) { return k + 2; }

// One player's relay state for one agreement instance.
class EigInstance {
public:
    EigInstance(int n, int k, int self, std::uint32_t instance);

    void set_input(BcastValue v) { vals_[0] = std::move(v); }

    // EIG rounds are 1..k+1; returns this player's relay message (same body
    // to every recipient).
    SubMsg round_send(int eig_round) const;
    void receive(int eig_round, int from, const SubMsg& m);
    // Own relays are applied locally (a player trusts itself).
    void loopback(int eig_round);

    BcastValue decide(const BcastValue& fallback) const;
    std::uint32_t instance() const { return instance_; }

private:
    struct Node {
        std::vector<int> path;
        int parent = -1;
        std::vector<int> children;
    };
    int node_index(const std::vector<int>& path) const;

    int n_, k_, self_;
    std::uint32_t instance_;
    std::vector<Node> nodes_;                    // level by level, canonical order
    std::vector<std::vector<int>> level_nodes_;  // node ids per level
    std::vector<BcastValue> vals_;
};

// Runs any number of concurrent agreement instances over a sync network.
// All players are simulated here; coalition deviations enter through the
// network's adversary rewrite.
class SyncAgreementHub {
public:
    SyncAgreementHub(int n, int k) : n_(n), k_(k) {}

    // input as seen by `player` for `instance`
    void set_input(int player, std::uint32_t instance, BcastValue v);
    void run(SyncNetwork& net, const AdversaryScript& adversary);
    BcastValue outcome(int player, std::uint32_t instance, const BcastValue& fallback) const;

private:
    int n_, k_;
    std::map<std::pair<int, std::uint32_t>, EigInstance> inst_;
};

// Broadcast: sender disseminates, then everyone agrees on what was received.
std::vector<BcastValue> sync_reliable_broadcast(SyncNetwork& net, int k, int sender,
                                                const std::vector<std::uint64_t>& value,
                                                const AdversaryScript& adversary);

// A wave of concurrent broadcasts, one per speaker, sharing one
// dissemination round and one agreement window (k+2 rounds total).
// result[viewer][speaker]; honest viewers agree on every speaker's outcome.
std::vector<std::vector<BcastValue>> sync_broadcast_wave(
    SyncNetwork& net, int k, const std::vector<std::vector<std::uint64_t>>& payload_per_speaker,
    std::uint32_t instance_base, const AdversaryScript& adversary);

// Binary consensus on preferences; unanimous honest preference is decisive.
std::vector<int> sync_consensus(SyncNetwork& net, int k, const std::vector<int>& preferences,
                                const AdversaryScript& adversary);

// ---------------------------------------------------------------------------
// Asynchronous Bracha reliable broadcast (echo/ready with amplification).
// ---------------------------------------------------------------------------

class BrachaRbc {
public:
    BrachaRbc(int n, int k, int self, int sender, std::uint32_t instance)
        : n_(n), k_(k), self_(self), sender_(sender), instance_(instance) {}

    // Messages to send; the caller fans them out (including to self).
    std::vector<SubMsg> start(const std::vector<std::uint64_t>& value);
    std::vector<SubMsg> on_message(int from, const SubMsg& m);
    const BcastValue& delivered() const { return delivered_; }

private:
    std::vector<SubMsg> maybe_progress();

    int n_, k_, self_, sender_;
    std::uint32_t instance_;
    bool echoed_ = false, readied_ = false;
    std::optional<std::vector<std::uint64_t>> init_value_;
    std::map<std::vector<std::uint64_t>, std::set<int>> echoes_, readies_;
    BcastValue delivered_;
};

// Drives one broadcast over the async network; returns per-player outcomes
// (nullopt where nothing was delivered).
std::vector<BcastValue> async_reliable_broadcast(int n, int k, int sender,
                                                 const std::vector<std::uint64_t>& value,
                                                 SchedulerPolicy& policy,
                                                 const AdversaryScript& adversary,
                                                 std::int64_t max_events = 100000);

// Randomized binary consensus over Bracha broadcasts: per round, three
// relay steps with majority / supermajority / decide-adopt-coin rules.
// Decides with probability 1 under the fair scheduler; n > 3k.
struct AsyncConsensusResult {
    std::vector<int> outputs;       // -1 where undecided (never, within bound)
    std::int64_t events = 0;
    int rounds = 0;
};

AsyncConsensusResult async_consensus(int n, int k, const std::vector<int>& preferences,
                                     SchedulerPolicy& policy, const AdversaryScript& adversary,
                                     std::uint64_t seed, std::int64_t max_events = 2'000'000);

}  // namespace mediatorless
