#include "mediatorless/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mediatorless {

// --- adversary -------------------------------------------------------------

void AdversaryScript::apply(int round, int from, int to, std::vector<SubMsg>& msgs) const {
    if (!is_member(from)) return;
    std::vector<SubMsg> out;
    for (SubMsg& m : msgs) {
        bool dropped = false;
        for (const AdversaryRule& r : rules) {
            if (round < r.round_lo || round > r.round_hi) continue;
            if (r.kind >= 0 && r.kind != m.kind) continue;
            if (r.recipient >= 0 && r.recipient != to) continue;
            switch (r.action) {
                case AdversaryRule::Action::drop:
                    dropped = true;
                    break;
                case AdversaryRule::Action::set_values:
                    m.vals = r.values;
                    break;
                case AdversaryRule::Action::add_offset:
                    for (auto& v : m.vals)
                        v = r.modulus ? (v + r.offset) % r.modulus : v + r.offset;
                    break;
                case AdversaryRule::Action::equivocate:
                    for (auto& v : m.vals) {
                        std::uint64_t d = r.offset * static_cast<std::uint64_t>(to + 1);
                        v = r.modulus ? (v + d) % r.modulus : v + d;
                    }
                    break;
            }
            if (dropped) break;
        }
        if (!dropped) out.push_back(std::move(m));
    }
    msgs = std::move(out);
    if (rewrite) rewrite(round, from, to, msgs);
}

namespace {
const char* action_name(AdversaryRule::Action a) {
    switch (a) {
        case AdversaryRule::Action::drop: return "drop";
        case AdversaryRule::Action::set_values: return "set";
        case AdversaryRule::Action::add_offset: return "offset";
        case AdversaryRule::Action::equivocate: return "equivocate";
    }
    return "drop";
}
AdversaryRule::Action action_from_name(const std::string& s) {
    if (s == "drop") return AdversaryRule::Action::drop;
    if (s == "set") return AdversaryRule::Action::set_values;
    if (s == "offset") return AdversaryRule::Action::add_offset;
    if (s == "equivocate") return AdversaryRule::Action::equivocate;
    throw std::invalid_argument("unknown adversary action: " + s);
}
}  // namespace

nlohmann::ordered_json adversary_to_json(const AdversaryScript& s) {
    nlohmann::ordered_json j;
    j["schema"] = "mediatorless-adversary-v1";
    j["name"] = s.name;
    j["coalition"] = s.coalition.members;
    j["k"] = s.coalition.k;
    nlohmann::ordered_json rules = nlohmann::ordered_json::array();
    for (const AdversaryRule& r : s.rules) {
        nlohmann::ordered_json e;
        e["rounds"] = {r.round_lo, r.round_hi == std::numeric_limits<int>::max() ? -1 : r.round_hi};
        if (r.kind >= 0) e["kind"] = msg_kind_name(static_cast<std::uint16_t>(r.kind));
        if (r.recipient >= 0) e["recipient"] = r.recipient;
        e["action"] = action_name(r.action);
        if (r.action == AdversaryRule::Action::set_values) e["values"] = r.values;
        if (r.action == AdversaryRule::Action::add_offset ||
            r.action == AdversaryRule::Action::equivocate) {
            e["offset"] = r.offset;
            e["modulus"] = r.modulus;
        }
        rules.push_back(e);
    }
    j["rules"] = rules;
    return j;
}

AdversaryScript adversary_from_json(const nlohmann::ordered_json& j) {
    if (j.value("schema", "") != "mediatorless-adversary-v1")
        throw std::invalid_argument("not a mediatorless-adversary-v1 document");
    AdversaryScript s;
    s.name = j.value("name", "scripted");
    s.coalition.members = j.at("coalition").get<std::vector<int>>();
    s.coalition.k = j.value("k", static_cast<int>(s.coalition.members.size()));
    for (const auto& e : j.value("rules", nlohmann::ordered_json::array())) {
        AdversaryRule r;
        if (e.contains("rounds")) {
            auto v = e.at("rounds").get<std::vector<int>>();
            r.round_lo = v.at(0);
            r.round_hi = v.at(1) < 0 ? std::numeric_limits<int>::max() : v.at(1);
        }
        if (e.contains("kind")) r.kind = msg_kind_from_name(e.at("kind").get<std::string>());
        if (e.contains("recipient")) r.recipient = e.at("recipient").get<int>();
        r.action = action_from_name(e.at("action").get<std::string>());
        if (e.contains("values")) r.values = e.at("values").get<std::vector<std::uint64_t>>();
        r.offset = e.value("offset", 0ull);
        r.modulus = e.value("modulus", 0ull);
        s.rules.push_back(r);
    }
    return s;
}

// --- synchronous transport ---------------------------------------------------

void SyncNetwork::begin_round_records() {
    if (!record_) return;
    for (auto& p : history_.players) p.rounds.emplace_back();
}

void SyncNetwork::send(int from, int to, SubMsg msg) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
        throw std::invalid_argument("send endpoint out of range");
    outboxes_[from * n_ + to].push_back(std::move(msg));
}

void SyncNetwork::record_randomness(int player, std::uint64_t v) {
    if (record_) history_.players[player].rounds.back().randomness.push_back(v);
}

void SyncNetwork::advance_round(const AdversaryScript& adversary) {
    for (auto& box : inboxes_) box.clear();
    for (int from = 0; from < n_; ++from) {
        for (int to = 0; to < n_; ++to) {
            auto& out = outboxes_[from * n_ + to];
            adversary.apply(round_, from, to, out);
            if (record_)
                for (const SubMsg& m : out)
                    history_.players[from].rounds.back().sends.push_back({to, m, false});
            for (SubMsg& m : out) inboxes_[to].push_back({from, false, std::move(m)});
            out.clear();
        }
    }
    // synthesize bot entries and order by sender
    for (int to = 0; to < n_; ++to) {
        auto& box = inboxes_[to];
        std::stable_sort(box.begin(), box.end(),
                         [](const HRecv& a, const HRecv& b) { return a.from < b.from; });
        std::vector<HRecv> with_bots;
        std::size_t i = 0;
        for (int from = 0; from < n_; ++from) {
            if (from == to) continue;
            bool any = false;
            while (i < box.size() && box[i].from == from) {
                with_bots.push_back(std::move(box[i]));
                ++i;
                any = true;
            }
            if (!any) with_bots.push_back({from, true, {}});
        }
        // self-deliveries (loopback) are allowed and kept at the end
        while (i < box.size()) {
            with_bots.push_back(std::move(box[i]));
            ++i;
        }
        box = std::move(with_bots);
    }
    ++round_;
    if (record_) {
        for (int to = 0; to < n_; ++to)
            history_.players[to].rounds.push_back(HRound{{}, {}, inboxes_[to]});
    }
}

// --- asynchronous transport --------------------------------------------------

namespace {

class FifoPolicy : public SchedulerPolicy {
public:
    AsyncEvent decide(const SchedulerView& v) override {
        if (!v.pending.empty())
            return {AsyncEvent::Kind::deliver_message, -1, std::get<0>(v.pending.front())};
        return {AsyncEvent::Kind::schedule_player,
                v.live_players[next_++ % v.live_players.size()], -1};
    }
    std::string name() const override { return "fifo"; }

private:
    std::size_t next_ = 0;
};

class RandomPolicy : public SchedulerPolicy {
public:
    explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
    AsyncEvent decide(const SchedulerView& v) override {
        std::size_t total = v.pending.size() + v.live_players.size();
        std::size_t pick = static_cast<std::size_t>(rng_.below(total));
        if (pick < v.pending.size())
            return {AsyncEvent::Kind::deliver_message, -1, std::get<0>(v.pending[pick])};
        return {AsyncEvent::Kind::schedule_player,
                v.live_players[pick - v.pending.size()], -1};
    }
    std::string name() const override { return "random"; }

private:
    Rng rng_;
};

// The race-game scheduler: schedules players in index order first; a player
// that has sent two or more messages gets its first message delivered before
// anyone else's (ties broken at random), then everything else in random
// order interleaved with scheduling.
class RaceExamplePolicy : public SchedulerPolicy {
public:
    explicit RaceExamplePolicy(std::uint64_t seed) : rng_(seed) {}

    AsyncEvent decide(const SchedulerView& v) override {
        // first pass: schedule every live player once, in order
        for (int p : v.live_players)
            if (scheduled_.insert(p).second) return {AsyncEvent::Kind::schedule_player, p, -1};
        if (!v.pending.empty()) {
            // find double-senders among pending first messages
            std::vector<std::int64_t> firsts;
            for (const auto& [id, sender, seq] : v.pending)
                if (seq == 0 && v.sent_counts[sender] >= 2) firsts.push_back(id);
            if (!firsts.empty())
                return {AsyncEvent::Kind::deliver_message, -1,
                        firsts[rng_.below(firsts.size())]};
            std::size_t pick = static_cast<std::size_t>(rng_.below(v.pending.size()));
            return {AsyncEvent::Kind::deliver_message, -1, std::get<0>(v.pending[pick])};
        }
        return {AsyncEvent::Kind::schedule_player,
                v.live_players[rng_.below(v.live_players.size())], -1};
    }
    std::string name() const override { return "race-example"; }

private:
    Rng rng_;
    std::set<int> scheduled_;
};

// Delivers FIFO; schedules by a fixed priority order over players.
class CustomPolicy : public SchedulerPolicy {
public:
    explicit CustomPolicy(std::vector<int> priority) : priority_(std::move(priority)) {}
    AsyncEvent decide(const SchedulerView& v) override {
        if (!v.pending.empty())
            return {AsyncEvent::Kind::deliver_message, -1, std::get<0>(v.pending.front())};
        for (int p : priority_)
            for (int live : v.live_players)
                if (live == p) return {AsyncEvent::Kind::schedule_player, p, -1};
        return {AsyncEvent::Kind::schedule_player, v.live_players.front(), -1};
    }
    std::string name() const override { return "custom"; }

private:
    std::vector<int> priority_;
};

}  // namespace

std::unique_ptr<SchedulerPolicy> make_fifo_policy() { return std::make_unique<FifoPolicy>(); }
std::unique_ptr<SchedulerPolicy> make_random_policy(std::uint64_t seed) {
    return std::make_unique<RandomPolicy>(seed);
}
std::unique_ptr<SchedulerPolicy> make_race_example_policy(std::uint64_t seed) {
    return std::make_unique<RaceExamplePolicy>(seed);
}
std::unique_ptr<SchedulerPolicy> make_custom_policy(const nlohmann::ordered_json& doc) {
    return std::make_unique<CustomPolicy>(doc.at("priority").get<std::vector<int>>());
}
std::unique_ptr<SchedulerPolicy> make_policy_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "fifo") return make_fifo_policy();
    if (name == "random") return make_random_policy(seed);
    if (name == "race-example") return make_race_example_policy(seed);
    throw std::invalid_argument("unknown scheduler policy: " + name);
}

void AsyncNetwork::post(int from, int to, SubMsg msg, const AdversaryScript& adversary) {
    std::vector<SubMsg> msgs{std::move(msg)};
    adversary.apply(0, from, to, msgs);
    for (SubMsg& m : msgs) {
        PendingMsg p;
        p.id = next_id_++;
        p.sender = from;
        p.recipient = to;
        p.seq = seqs_[from]++;
        p.msg = std::move(m);
        p.sent_at_event = events_;
        pending_.push_back(std::move(p));
    }
}

std::int64_t AsyncNetwork::run(std::vector<AsyncProc*> procs, SchedulerPolicy& policy,
                               const AdversaryScript& adversary, std::int64_t max_events,
                               const std::function<bool()>& stop) {
    seqs_.assign(procs.size(), 0);
    mailboxes_.assign(procs.size(), {});
    last_scheduled_.assign(procs.size(), 0);
    pending_.clear();
    log_.clear();
    events_ = 0;

    auto live = [&] {
        std::vector<int> out;
        for (std::size_t i = 0; i < procs.size(); ++i)
            if (!procs[i]->done()) out.push_back(static_cast<int>(i));
        return out;
    };

    while (events_ < max_events) {
        if (stop && stop()) break;
        std::vector<int> live_players = live();
        if (live_players.empty() && pending_.empty()) break;

        AsyncEvent ev;
        // fairness watchdog: force the oldest starved obligation
        std::optional<AsyncEvent> forced;
        for (const PendingMsg& m : pending_)
            if (events_ - m.sent_at_event >= lag_) {
                forced = AsyncEvent{AsyncEvent::Kind::deliver_message, -1, m.id};
                break;
            }
        if (!forced)
            for (int p : live_players)
                if (events_ - last_scheduled_[p] >= lag_) {
                    forced = AsyncEvent{AsyncEvent::Kind::schedule_player, p, -1};
                    break;
                }
        if (forced) {
            ev = *forced;
        } else if (live_players.empty()) {
            ev = {AsyncEvent::Kind::deliver_message, -1, pending_.front().id};
        } else {
            SchedulerView view;
            view.event_count = events_;
            for (const PendingMsg& m : pending_) view.pending.push_back({m.id, m.sender, m.seq});
            view.live_players = live_players;
            view.log = &log_;
            view.sent_counts = seqs_;
            ev = policy.decide(view);
        }

        if (ev.kind == AsyncEvent::Kind::deliver_message) {
            auto it = std::find_if(pending_.begin(), pending_.end(),
                                   [&](const PendingMsg& m) { return m.id == ev.msg_id; });
            if (it == pending_.end())
                throw std::invalid_argument("scheduler policy delivered a nonpending message");
            mailboxes_[it->recipient].push_back({it->sender, false, std::move(it->msg)});
            pending_.erase(it);
        } else {
            int p = ev.player;
            if (p < 0 || p >= static_cast<int>(procs.size()))
                throw std::invalid_argument("scheduler policy scheduled an unknown player");
            last_scheduled_[p] = events_;
            if (!procs[p]->done()) {
                std::vector<HRecv> delivered = std::move(mailboxes_[p]);
                mailboxes_[p].clear();
                AsyncContext ctx(*this, p, adversary);
                procs[p]->on_activate(ctx, delivered);
            }
        }
        log_.push_back(ev);
        ++events_;
    }
    return events_;
}

}  // namespace mediatorless
