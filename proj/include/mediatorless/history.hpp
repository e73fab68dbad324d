#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mediatorless {

// Smallest unit of protocol communication. `instance` routes to a protocol
// sub-machine (a VSS instance, a broadcast instance, a gate); `kind` is the
// message type within it.
struct SubMsg {
    std::uint32_t instance = 0;
    std::uint16_t kind = 0;
    std::vector<std::uint64_t> vals;

    bool operator==(const SubMsg&) const = default;
};

// Message kinds, shared across modules so adversary rules can name them.
enum MsgKind : std::uint16_t {
    kind_plain = 0,
    kind_eig = 1,         // synchronous broadcast/consensus relay
    kind_rbc_init = 2,    // asynchronous Bracha phases
    kind_rbc_echo = 3,
    kind_rbc_ready = 4,
    kind_vss_row = 5,
    kind_vss_cross = 6,
    kind_mask_deal = 7,   // multiplication mask contributions
    kind_gate_reveal = 8,
    kind_phase3_share = 9,
    kind_cons_step = 10,  // consensus step value (inside RBC payloads)
    kind_toy = 11,        // belief toy protocols
};

const char* msg_kind_name(std::uint16_t kind);
std::uint16_t msg_kind_from_name(const std::string& name);

struct HSend {
    int to = -1;
    SubMsg msg;
    bool lie = false;  // filled by the belief toolkit
};

struct HRecv {
    int from = -1;
    bool bot = false;  // nothing arrived from this sender
    SubMsg msg;
};

struct HRound {
    std::vector<std::uint64_t> randomness;  // draws recorded before first use
    std::vector<HSend> sends;
    std::vector<HRecv> recvs;
};

struct LocalHistory {
    std::vector<HRound> rounds;
    int final_action = -1;
};

struct GlobalHistory {
    std::vector<LocalHistory> players;

    int rounds() const {
        std::size_t r = 0;
        for (const auto& p : players) r = std::max(r, p.rounds.size());
        return static_cast<int>(r);
    }
    // Every received message appears as a send in the sender's history.
    bool cross_consistent() const;
};

// Transcript dump, schema mediatorless-transcript-v1.
nlohmann::ordered_json transcript_to_json(const GlobalHistory& h);

}  // namespace mediatorless
