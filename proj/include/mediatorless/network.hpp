#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mediatorless/game.hpp"
#include "mediatorless/history.hpp"
#include "mediatorless/prng.hpp"

namespace mediatorless {

// ---------------------------------------------------------------------------
// Adversary scripts (schema mediatorless-adversary-v1)
//
// Coalition members run the honest logic, then every outgoing message passes
// through the script, which may drop it, overwrite values, add an offset, or
// equivocate (a per-recipient offset). A custom rewrite hook covers behaviors
// the rule language cannot express.
// ---------------------------------------------------------------------------

struct AdversaryRule {
    int round_lo = 0;
    int round_hi = std::numeric_limits<int>::max();
    int kind = -1;       // -1 = any
    int recipient = -1;  // -1 = any
    enum class Action { drop, set_values, add_offset, equivocate } action = Action::drop;
    std::vector<std::uint64_t> values;   // set_values
    std::uint64_t offset = 0;            // add_offset / equivocate
    std::uint64_t modulus = 0;           // 0 = plain wrap-around add
};

struct AdversaryScript {
    std::string name = "honest";
    CoalitionMask coalition;
    std::vector<AdversaryRule> rules;
    // Optional hook; applied after the declarative rules.
    std::function<void(int round, int from, int to, std::vector<SubMsg>&)> rewrite;

    bool is_member(int i) const { return coalition.contains(i); }
    void apply(int round, int from, int to, std::vector<SubMsg>& msgs) const;

    static AdversaryScript honest() { return AdversaryScript{}; }
};

nlohmann::ordered_json adversary_to_json(const AdversaryScript& s);
AdversaryScript adversary_from_json(const nlohmann::ordered_json& j);

// ---------------------------------------------------------------------------
// Synchronous round-based transport. All messages sent in round r arrive at
// the start of round r+1; not sending is delivered as bot. Channels are
// authenticated: the engine stamps the true sender.
// ---------------------------------------------------------------------------

class SyncNetwork {
public:
    explicit SyncNetwork(int n, bool record = false)
        : n_(n), record_(record), inboxes_(n), outboxes_(n * n) {
        if (record_) history_.players.resize(n);
        begin_round_records();
    }

    int n() const { return n_; }
    int round() const { return round_; }

    void send(int from, int to, SubMsg msg);
    void record_randomness(int player, std::uint64_t v);

    // Applies the adversary rewrite to coalition outboxes, then delivers.
    void advance_round(const AdversaryScript& adversary = AdversaryScript::honest());

    // Messages delivered to `player` at the start of the current round,
    // ordered by sender then send order. Senders with no traffic contribute
    // a single bot entry.
    const std::vector<HRecv>& inbox(int player) const { return inboxes_[player]; }

    // Convenience: iterate non-bot submessages of one instance/kind.
    template <typename F>
    void for_inbox(int player, std::uint32_t instance, std::uint16_t kind, F&& f) const {
        for (const HRecv& r : inboxes_[player])
            if (!r.bot && r.msg.instance == instance && r.msg.kind == kind) f(r.from, r.msg);
    }

    const GlobalHistory& history() const { return history_; }
    GlobalHistory& mutable_history() { return history_; }
    bool recording() const { return record_; }

private:
    void begin_round_records();

    int n_;
    bool record_;
    int round_ = 0;
    std::vector<std::vector<HRecv>> inboxes_;
    std::vector<std::vector<SubMsg>> outboxes_;  // [from * n + to]
    GlobalHistory history_;
};

// ---------------------------------------------------------------------------
// Asynchronous scheduler-driven transport. Players and the scheduler
// alternate turns; the scheduler sees message identities (sender, sequence
// number) but never payloads. A fairness watchdog forces the oldest starved
// obligation after `fairness_lag` events.
// ---------------------------------------------------------------------------

struct PendingMsg {
    std::int64_t id = 0;
    int sender = -1;
    int recipient = -1;
    std::int64_t seq = 0;  // per-sender send sequence number
    SubMsg msg;
    std::int64_t sent_at_event = 0;
};

struct AsyncEvent {
    enum class Kind { schedule_player, deliver_message } kind = Kind::schedule_player;
    int player = -1;        // schedule_player
    std::int64_t msg_id = -1;  // deliver_message
};

// What the scheduler is allowed to see.
struct SchedulerView {
    std::int64_t event_count = 0;
    // pending message identities in send order
    std::vector<std::tuple<std::int64_t, int, std::int64_t>> pending;  // (id, sender, seq)
    std::vector<int> live_players;
    const std::vector<AsyncEvent>* log = nullptr;
    // total messages ever sent per player (identity information only)
    std::vector<std::int64_t> sent_counts;
};

class SchedulerPolicy {
public:
    virtual ~SchedulerPolicy() = default;
    virtual AsyncEvent decide(const SchedulerView& view) = 0;
    virtual std::string name() const = 0;
};

std::unique_ptr<SchedulerPolicy> make_fifo_policy();
std::unique_ptr<SchedulerPolicy> make_random_policy(std::uint64_t seed);
std::unique_ptr<SchedulerPolicy> make_race_example_policy(std::uint64_t seed);
// custom:file — fixed priority order of players for scheduling, messages FIFO.
std::unique_ptr<SchedulerPolicy> make_custom_policy(const nlohmann::ordered_json& doc);
std::unique_ptr<SchedulerPolicy> make_policy_by_name(const std::string& name, std::uint64_t seed);

class AsyncContext;

// A simulated process: players 0..n-1, optionally a mediator at index n.
class AsyncProc {
public:
    virtual ~AsyncProc() = default;
    virtual void on_activate(AsyncContext& ctx, const std::vector<HRecv>& delivered) = 0;
    virtual bool done() const = 0;
};

class AsyncNetwork {
public:
    AsyncNetwork(int player_count, std::int64_t fairness_lag = 64)
        : n_(player_count), lag_(fairness_lag) {}

    // Runs until all procs are done, the stop predicate fires, or no
    // obligations remain; throws on policy errors. Returns the number of
    // events executed.
    std::int64_t run(std::vector<AsyncProc*> procs, SchedulerPolicy& policy,
                     const AdversaryScript& adversary = AdversaryScript::honest(),
                     std::int64_t max_events = 1'000'000,
                     const std::function<bool()>& stop = nullptr);

    const std::vector<AsyncEvent>& log() const { return log_; }

private:
    friend class AsyncContext;
    void post(int from, int to, SubMsg msg, const AdversaryScript& adversary);

    int n_;
    std::int64_t lag_;
    std::int64_t next_id_ = 0;
    std::int64_t events_ = 0;
    std::vector<std::int64_t> seqs_;
    std::vector<PendingMsg> pending_;
    std::vector<std::vector<HRecv>> mailboxes_;  // delivered, not yet consumed
    std::vector<std::int64_t> last_scheduled_;
    std::vector<AsyncEvent> log_;
};

// Handed to a process during its turn.
class AsyncContext {
public:
    AsyncContext(AsyncNetwork& net, int self, const AdversaryScript& adversary)
        : net_(net), self_(self), adversary_(adversary) {}

    int self() const { return self_; }
    void send(int to, SubMsg msg) { net_.post(self_, to, std::move(msg), adversary_); }

private:
    AsyncNetwork& net_;
    int self_;
    const AdversaryScript& adversary_;
};

}  // namespace mediatorless
