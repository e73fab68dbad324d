#include "mediatorless/history.hpp"

#include <stdexcept>

namespace mediatorless {

namespace {
struct KindName {
    std::uint16_t kind;
    const char* name;
};
constexpr KindName kKindNames[] = {
    {kind_plain, "plain"},        {kind_eig, "eig"},
    {kind_rbc_init, "rbc-init"},  {kind_rbc_echo, "rbc-echo"},
    {kind_rbc_ready, "rbc-ready"},{kind_vss_row, "vss-row"},
    {kind_vss_cross, "vss-cross"},{kind_mask_deal, "mask-deal"},
    {kind_gate_reveal, "gate-reveal"}, {kind_phase3_share, "phase3-share"},
    {kind_cons_step, "cons-step"},{kind_toy, "toy"},
};
}  // namespace

const char* msg_kind_name(std::uint16_t kind) {
    for (const auto& k : kKindNames)
        if (k.kind == kind) return k.name;
    return "unknown";
}

std::uint16_t msg_kind_from_name(const std::string& name) {
    for (const auto& k : kKindNames)
        if (name == k.name) return k.kind;
    throw std::invalid_argument("unknown message kind: " + name);
}

bool GlobalHistory::cross_consistent() const {
    for (std::size_t i = 0; i < players.size(); ++i) {
        const LocalHistory& h = players[i];
        for (std::size_t r = 0; r < h.rounds.size(); ++r) {
            for (const HRecv& rv : h.rounds[r].recvs) {
                if (rv.bot) continue;
                if (rv.from < 0 || rv.from >= static_cast<int>(players.size())) return false;
                // a message received at round r was sent at round r-1
                if (r == 0) return false;
                const LocalHistory& sender = players[rv.from];
                if (sender.rounds.size() < r) return false;
                bool found = false;
                for (const HSend& s : sender.rounds[r - 1].sends)
                    found = found || (s.to == static_cast<int>(i) && s.msg == rv.msg);
                if (!found) return false;
            }
        }
    }
    return true;
}

nlohmann::ordered_json transcript_to_json(const GlobalHistory& h) {
    nlohmann::ordered_json j;
    j["schema"] = "mediatorless-transcript-v1";
    nlohmann::ordered_json msgs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < h.players.size(); ++i) {
        for (std::size_t r = 0; r < h.players[i].rounds.size(); ++r) {
            for (const HSend& s : h.players[i].rounds[r].sends) {
                nlohmann::ordered_json m;
                m["round"] = r;
                m["from"] = i;
                m["to"] = s.to;
                m["payload"]["instance"] = s.msg.instance;
                m["payload"]["kind"] = msg_kind_name(s.msg.kind);
                m["payload"]["vals"] = s.msg.vals;
                m["lie"] = s.lie;
                msgs.push_back(m);
            }
        }
    }
    j["messages"] = msgs;
    nlohmann::ordered_json actions = nlohmann::ordered_json::array();
    for (const auto& p : h.players) actions.push_back(p.final_action);
    j["final_actions"] = actions;
    return j;
}

}  // namespace mediatorless
