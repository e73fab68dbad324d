#pragma once

#include <optional>

#include "mediatorless/broadcast.hpp"
#include "mediatorless/field.hpp"
#include "mediatorless/network.hpp"
#include "mediatorless/shamir.hpp"

namespace mediatorless {

// Little push/pull codec for packing structured payloads into SubMsg values.
struct WireWriter {
    std::vector<std::uint64_t> out;
    void put(std::uint64_t v) { out.push_back(v); }
    void put_vec(const std::vector<std::uint64_t>& v) {
        put(v.size());
        for (auto x : v) put(x);
    }
};
struct WireReader {
    const std::vector<std::uint64_t>* in = nullptr;
    std::size_t pos = 0;
    bool ok = true;
    explicit WireReader(const std::vector<std::uint64_t>& v) : in(&v) {}
    std::uint64_t get() {
        if (pos >= in->size()) {
            ok = false;
            return 0;
        }
        return (*in)[pos++];
    }
    std::vector<std::uint64_t> get_vec(std::size_t max_len = 1 << 16) {
        std::uint64_t len = get();
        if (!ok || len > max_len || pos + len > in->size()) {
            ok = false;
            return {};
        }
        std::vector<std::uint64_t> v(in->begin() + pos, in->begin() + pos + len);
        pos += len;
        return v;
    }
    bool done() const { return ok && pos == in->size(); }
};

// ---------------------------------------------------------------------------
// Verifiable secret sharing, synchronous, n > 3k.
//
// Bivariate-polynomial dealing with cross-checks, then k+1 cycles of
// broadcast complaint/resolution waves and a public decision. A dealer that
// cannot clear the public record is disqualified and everyone falls back to
// the default sharing of 0. Player i's share is its effective row at 0.
// ---------------------------------------------------------------------------

struct VssInstanceSpec {
    int dealer = 0;
    FieldElem value;  // dealt value when the dealer plays honestly
};

struct VssOutcome {
    bool disqualified = false;
    std::vector<FieldElem> shares;         // per player
    std::vector<std::optional<Polynomial>> rows;  // effective row per player
    std::vector<int> culprits;
    int complaints = 0;
};

// Fixed round budget for a batch of concurrent instances.
int vss_round_budget(int k);

// Runs the given instances concurrently over the network. All players follow
// the protocol; coalition behavior is injected through the adversary script
// (dealing happens with kind_vss_row / kind_vss_cross messages, waves with
// broadcast kinds).
std::vector<VssOutcome> vss_deal(SyncNetwork& net, int k, std::uint64_t q,
                                 const std::vector<VssInstanceSpec>& instances, Rng& rng,
                                 const AdversaryScript& adversary,
                                 std::uint32_t instance_base = 1000);

}  // namespace mediatorless
