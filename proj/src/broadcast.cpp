#include "mediatorless/broadcast.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace mediatorless {

// --- EIG relay ---------------------------------------------------------------

EigInstance::EigInstance(int n, int k, int self, std::uint32_t instance)
    : n_(n), k_(k), self_(self), instance_(instance) {
    // level 0: root; level l+1: extend by a player not yet on the path
    nodes_.push_back({{}, -1, {}});
    level_nodes_.push_back({0});
    for (int level = 0; level < k_ + 1; ++level) {
        level_nodes_.push_back({});
        for (int id : level_nodes_[level]) {
            for (int j = 0; j < n_; ++j) {
                if (std::find(nodes_[id].path.begin(), nodes_[id].path.end(), j) !=
                    nodes_[id].path.end())
                    continue;
                Node child;
                child.path = nodes_[id].path;
                child.path.push_back(j);
                child.parent = id;
                int cid = static_cast<int>(nodes_.size());
                nodes_.push_back(std::move(child));
                nodes_[id].children.push_back(cid);
                level_nodes_[level + 1].push_back(cid);
            }
        }
    }
    vals_.assign(nodes_.size(), std::nullopt);
}

int EigInstance::node_index(const std::vector<int>& path) const {
    int cur = 0;
    for (int j : path) {
        int next = -1;
        for (int c : nodes_[cur].children)
            if (nodes_[c].path.back() == j) next = c;
        if (next < 0) return -1;
        cur = next;
    }
    return cur;
}

SubMsg EigInstance::round_send(int eig_round) const {
    // relays every level-(r-1) value whose path does not contain the sender
    SubMsg m;
    m.instance = instance_;
    m.kind = kind_eig;
    m.vals.push_back(static_cast<std::uint64_t>(eig_round));
    for (int id : level_nodes_[eig_round - 1]) {
        const Node& nd = nodes_[id];
        if (std::find(nd.path.begin(), nd.path.end(), self_) != nd.path.end()) continue;
        const BcastValue& v = vals_[id];
        m.vals.push_back(v.has_value() ? 1 : 0);
        if (v.has_value()) {
            m.vals.push_back(v->size());
            for (std::uint64_t x : *v) m.vals.push_back(x);
        } else {
            m.vals.push_back(0);
        }
    }
    return m;
}

void EigInstance::receive(int eig_round, int from, const SubMsg& m) {
    if (m.vals.empty() || m.vals[0] != static_cast<std::uint64_t>(eig_round)) return;
    std::size_t pos = 1;
    for (int id : level_nodes_[eig_round - 1]) {
        const Node& nd = nodes_[id];
        if (std::find(nd.path.begin(), nd.path.end(), from) != nd.path.end()) continue;
        if (pos + 1 > m.vals.size()) return;  // malformed tail: defaults stay
        bool present = m.vals[pos++] != 0;
        if (pos >= m.vals.size()) return;
        std::uint64_t len = m.vals[pos++];
        if (pos + len > m.vals.size()) return;
        BcastValue v;
        if (present) v = std::vector<std::uint64_t>(m.vals.begin() + pos, m.vals.begin() + pos + len);
        pos += len;
        std::vector<int> child = nd.path;
        child.push_back(from);
        int cid = node_index(child);
        if (cid >= 0) vals_[cid] = std::move(v);
    }
}

void EigInstance::loopback(int eig_round) {
    for (int id : level_nodes_[eig_round - 1]) {
        const Node& nd = nodes_[id];
        if (std::find(nd.path.begin(), nd.path.end(), self_) != nd.path.end()) continue;
        std::vector<int> child = nd.path;
        child.push_back(self_);
        int cid = node_index(child);
        if (cid >= 0) vals_[cid] = vals_[id];
    }
}

BcastValue EigInstance::decide(const BcastValue& fallback) const {
    // resolve bottom-up with strict majority among children, else fallback
    std::vector<BcastValue> newval(nodes_.size());
    for (int level = k_ + 1; level >= 0; --level) {
        for (int id : level_nodes_[level]) {
            const Node& nd = nodes_[id];
            if (level == k_ + 1 || nd.children.empty()) {
                newval[id] = vals_[id].has_value() ? vals_[id] : fallback;
                continue;
            }
            std::map<BcastValue, int> counts;
            for (int c : nd.children) ++counts[newval[c]];
            BcastValue winner = fallback;
            for (const auto& [v, c] : counts)
                if (2 * c > static_cast<int>(nd.children.size())) winner = v;
            newval[id] = winner;
        }
    }
    return newval[0];
}

// --- synchronous hub ----------------------------------------------------------

void SyncAgreementHub::set_input(int player, std::uint32_t instance, BcastValue v) {
    auto key = std::make_pair(player, instance);
    auto it = inst_.find(key);
    if (it == inst_.end())
        it = inst_.emplace(key, EigInstance(n_, k_, player, instance)).first;
    it->second.set_input(std::move(v));
}

void SyncAgreementHub::run(SyncNetwork& net, const AdversaryScript& adversary) {
    // materialize every (player, instance) pair
    std::set<std::uint32_t> ids;
    for (const auto& [key, e] : inst_) ids.insert(key.second);
    for (int p = 0; p < n_; ++p)
        for (std::uint32_t id : ids)
            inst_.try_emplace({p, id}, EigInstance(n_, k_, p, id));

    for (int r = 1; r <= k_ + 1; ++r) {
        for (int p = 0; p < n_; ++p) {
            for (std::uint32_t id : ids) {
                EigInstance& e = inst_.at({p, id});
                SubMsg m = e.round_send(r);
                for (int to = 0; to < n_; ++to)
                    if (to != p) net.send(p, to, m);
                e.loopback(r);
            }
        }
        net.advance_round(adversary);
        for (int p = 0; p < n_; ++p)
            for (const HRecv& rv : net.inbox(p)) {
                if (rv.bot || rv.msg.kind != kind_eig) continue;
                auto it = inst_.find({p, rv.msg.instance});
                if (it != inst_.end()) it->second.receive(r, rv.from, rv.msg);
            }
    }
}

BcastValue SyncAgreementHub::outcome(int player, std::uint32_t instance,
                                     const BcastValue& fallback) const {
    auto it = inst_.find({player, instance});
    if (it == inst_.end()) return fallback;
    return it->second.decide(fallback);
}

std::vector<BcastValue> sync_reliable_broadcast(SyncNetwork& net, int k, int sender,
                                                const std::vector<std::uint64_t>& value,
                                                const AdversaryScript& adversary) {
    int n = net.n();
    // dissemination round
    SubMsg init;
    init.instance = 0;
    init.kind = kind_rbc_init;
    init.vals = value;
    for (int to = 0; to < n; ++to)
        if (to != sender) net.send(sender, to, init);
    net.advance_round(adversary);

    SyncAgreementHub hub(n, k);
    for (int p = 0; p < n; ++p) {
        BcastValue input;
        if (p == sender) {
            input = value;
        } else {
            for (const HRecv& rv : net.inbox(p))
                if (!rv.bot && rv.from == sender && rv.msg.kind == kind_rbc_init)
                    input = rv.msg.vals;
        }
        hub.set_input(p, 0, input);
    }
    hub.run(net, adversary);
    std::vector<BcastValue> out;
    for (int p = 0; p < n; ++p) out.push_back(hub.outcome(p, 0, std::nullopt));
    return out;
}

std::vector<std::vector<BcastValue>> sync_broadcast_wave(
    SyncNetwork& net, int k, const std::vector<std::vector<std::uint64_t>>& payload_per_speaker,
    std::uint32_t instance_base, const AdversaryScript& adversary) {
    int n = net.n();
    for (int speaker = 0; speaker < n; ++speaker) {
        SubMsg init;
        init.instance = instance_base + static_cast<std::uint32_t>(speaker);
        init.kind = kind_rbc_init;
        init.vals = payload_per_speaker[speaker];
        for (int to = 0; to < n; ++to)
            if (to != speaker) net.send(speaker, to, init);
    }
    net.advance_round(adversary);

    SyncAgreementHub hub(n, k);
    for (int p = 0; p < n; ++p) {
        for (int speaker = 0; speaker < n; ++speaker) {
            std::uint32_t id = instance_base + static_cast<std::uint32_t>(speaker);
            BcastValue input;
            if (speaker == p) input = payload_per_speaker[p];
            hub.set_input(p, id, input);
        }
        for (const HRecv& rv : net.inbox(p))
            if (!rv.bot && rv.msg.kind == kind_rbc_init &&
                rv.msg.instance == instance_base + static_cast<std::uint32_t>(rv.from))
                hub.set_input(p, rv.msg.instance, rv.msg.vals);
    }
    hub.run(net, adversary);
    std::vector<std::vector<BcastValue>> out(n);
    for (int p = 0; p < n; ++p)
        for (int speaker = 0; speaker < n; ++speaker)
            out[p].push_back(
                hub.outcome(p, instance_base + static_cast<std::uint32_t>(speaker), std::nullopt));
    return out;
}

std::vector<int> sync_consensus(SyncNetwork& net, int k, const std::vector<int>& preferences,
                                const AdversaryScript& adversary) {
    int n = net.n();
    SyncAgreementHub hub(n, k);
    for (int p = 0; p < n; ++p)
        hub.set_input(p, 0, std::vector<std::uint64_t>{static_cast<std::uint64_t>(preferences[p])});
    hub.run(net, adversary);
    std::vector<int> out(n, 0);
    BcastValue zero = std::vector<std::uint64_t>{0};
    for (int p = 0; p < n; ++p) {
        BcastValue v = hub.outcome(p, 0, zero);
        out[p] = v.has_value() && !v->empty() && (*v)[0] == 1 ? 1 : 0;
    }
    return out;
}

// --- asynchronous Bracha broadcast --------------------------------------------

std::vector<SubMsg> BrachaRbc::start(const std::vector<std::uint64_t>& value) {
    SubMsg m;
    m.instance = instance_;
    m.kind = kind_rbc_init;
    m.vals = value;
    return {m};
}

std::vector<SubMsg> BrachaRbc::on_message(int from, const SubMsg& m) {
    switch (m.kind) {
        case kind_rbc_init:
            if (from == sender_ && !init_value_) init_value_ = m.vals;
            break;
        case kind_rbc_echo:
            echoes_[m.vals].insert(from);
            break;
        case kind_rbc_ready:
            readies_[m.vals].insert(from);
            break;
        default:
            break;
    }
    return maybe_progress();
}

std::vector<SubMsg> BrachaRbc::maybe_progress() {
    std::vector<SubMsg> out;
    int echo_quorum = (n_ + k_) / 2 + 1;
    if (!echoed_ && init_value_) {
        echoed_ = true;
        SubMsg e;
        e.instance = instance_;
        e.kind = kind_rbc_echo;
        e.vals = *init_value_;
        out.push_back(e);
    }
    if (!readied_) {
        for (const auto& [v, who] : echoes_)
            if (static_cast<int>(who.size()) >= echo_quorum) {
                readied_ = true;
                SubMsg r{instance_, kind_rbc_ready, v};
                out.push_back(r);
                break;
            }
        if (!readied_)
            for (const auto& [v, who] : readies_)
                if (static_cast<int>(who.size()) >= k_ + 1) {
                    readied_ = true;
                    SubMsg r{instance_, kind_rbc_ready, v};
                    out.push_back(r);
                    break;
                }
    }
    if (!delivered_) {
        for (const auto& [v, who] : readies_)
            if (static_cast<int>(who.size()) >= 2 * k_ + 1) {
                delivered_ = v;
                break;
            }
    }
    return out;
}

namespace {

// Fans RBC messages out to everyone, applying self-deliveries immediately.
template <typename Router>
void fan_out(AsyncContext& ctx, int n, std::vector<SubMsg> msgs, Router&& route_self) {
    std::deque<SubMsg> queue(msgs.begin(), msgs.end());
    while (!queue.empty()) {
        SubMsg m = std::move(queue.front());
        queue.pop_front();
        for (int to = 0; to < n; ++to)
            if (to != ctx.self()) ctx.send(to, m);
        for (SubMsg& more : route_self(ctx.self(), m)) queue.push_back(std::move(more));
    }
}

class RbcProc : public AsyncProc {
public:
    RbcProc(int n, int k, int self, int sender, std::optional<std::vector<std::uint64_t>> value)
        : n_(n), self_(self), rbc_(n, k, self, sender, 0), value_(std::move(value)) {}

    void on_activate(AsyncContext& ctx, const std::vector<HRecv>& delivered) override {
        if (value_) {
            fan_out(ctx, n_, rbc_.start(*value_),
                    [&](int from, const SubMsg& m) { return rbc_.on_message(from, m); });
            value_.reset();
        }
        for (const HRecv& rv : delivered) {
            if (rv.bot) continue;
            fan_out(ctx, n_, rbc_.on_message(rv.from, rv.msg),
                    [&](int from, const SubMsg& m) { return rbc_.on_message(from, m); });
        }
    }
    bool done() const override { return rbc_.delivered().has_value(); }
    const BcastValue& delivered() const { return rbc_.delivered(); }

private:
    int n_, self_;
    BrachaRbc rbc_;
    std::optional<std::vector<std::uint64_t>> value_;
};

}  // namespace

std::vector<BcastValue> async_reliable_broadcast(int n, int k, int sender,
                                                 const std::vector<std::uint64_t>& value,
                                                 SchedulerPolicy& policy,
                                                 const AdversaryScript& adversary,
                                                 std::int64_t max_events) {
    std::vector<std::unique_ptr<RbcProc>> procs;
    for (int p = 0; p < n; ++p)
        procs.push_back(std::make_unique<RbcProc>(
            n, k, p, sender,
            p == sender ? std::optional<std::vector<std::uint64_t>>(value) : std::nullopt));
    std::vector<AsyncProc*> raw;
    for (auto& p : procs) raw.push_back(p.get());
    AsyncNetwork net(n);
    net.run(raw, policy, adversary, max_events);
    std::vector<BcastValue> out;
    for (auto& p : procs) out.push_back(p->delivered());
    return out;
}

// --- asynchronous consensus ----------------------------------------------------

namespace {

constexpr int kMaxConsensusRounds = 400;
constexpr std::uint64_t kNoPref = 2;  // step-3 "no supermajority" marker

class ConsensusProc : public AsyncProc {
public:
    ConsensusProc(int n, int k, int self, int pref, std::uint64_t seed)
        : n_(n), k_(k), self_(self), value_(pref), rng_(seed ^ (0x9e37 + self)) {}

    void on_activate(AsyncContext& ctx, const std::vector<HRecv>& delivered) override {
        if (!started_) {
            started_ = true;
            emit_step(ctx);
        }
        for (const HRecv& rv : delivered) {
            if (rv.bot) continue;
            route(ctx, rv.from, rv.msg);
        }
        progress(ctx);
    }

    bool done() const override { return decided_; }
    int output() const { return decided_ ? static_cast<int>(value_) : -1; }
    int rounds() const { return round_; }

private:
    static std::uint32_t inst_id(int round, int step, int origin) {
        return static_cast<std::uint32_t>(((round * 4 + step) << 8) | origin);
    }

    BrachaRbc& rbc_for(std::uint32_t id) {
        auto it = rbcs_.find(id);
        if (it == rbcs_.end()) {
            int origin = static_cast<int>(id & 0xff);
            it = rbcs_.emplace(id, BrachaRbc(n_, k_, self_, origin, id)).first;
        }
        return it->second;
    }

    void route(AsyncContext& ctx, int from, const SubMsg& m) {
        BrachaRbc& rbc = rbc_for(m.instance);
        fan_out(ctx, n_, rbc.on_message(from, m), [&](int f, const SubMsg& mm) {
            return rbc_for(mm.instance).on_message(f, mm);
        });
        harvest(m.instance);
    }

    void harvest(std::uint32_t id) {
        const BcastValue& v = rbc_for(id).delivered();
        if (!v || v->empty()) return;
        int round = static_cast<int>(id >> 8) / 4;
        int step = static_cast<int>(id >> 8) % 4;
        int origin = static_cast<int>(id & 0xff);
        store_[{round, step}][origin] = (*v)[0];
    }

    void emit_step(AsyncContext& ctx) {
        std::uint32_t id = inst_id(round_, step_, self_);
        BrachaRbc& rbc = rbc_for(id);
        fan_out(ctx, n_, rbc.start({value_}), [&](int f, const SubMsg& mm) {
            return rbc_for(mm.instance).on_message(f, mm);
        });
        harvest(id);
    }

    void progress(AsyncContext& ctx) {
        bool moved = true;
        while (moved && !decided_ && round_ < kMaxConsensusRounds) {
            moved = false;
            auto& cur = store_[{round_, step_}];
            // decide-check is stable, so run it against every step-3 store
            for (int r = 0; r <= round_ && !decided_; ++r) {
                auto it = store_.find({r, 3});
                if (it == store_.end()) continue;
                std::map<std::uint64_t, int> counts;
                for (const auto& [o, v] : it->second)
                    if (v != kNoPref) ++counts[v];
                for (const auto& [v, c] : counts)
                    if (c >= 2 * k_ + 1) {
                        decided_ = true;
                        value_ = v;
                    }
            }
            if (decided_) break;
            if (static_cast<int>(cur.size()) < n_ - k_) break;
            if (step_ == 1) {
                std::map<std::uint64_t, int> counts;
                for (const auto& [o, v] : cur) ++counts[std::min<std::uint64_t>(v, 1)];
                std::uint64_t best = 0;
                int bc = -1;
                for (const auto& [v, c] : counts)
                    if (c > bc) {
                        bc = c;
                        best = v;
                    }
                value_ = best;
                step_ = 2;
                emit_step(ctx);
                moved = true;
            } else if (step_ == 2) {
                std::map<std::uint64_t, int> counts;
                for (const auto& [o, v] : cur) ++counts[std::min<std::uint64_t>(v, 1)];
                std::uint64_t best = kNoPref;
                for (const auto& [v, c] : counts)
                    if (2 * c > static_cast<int>(cur.size())) best = v;
                value_ = best;
                step_ = 3;
                emit_step(ctx);
                moved = true;
            } else {  // step 3
                std::map<std::uint64_t, int> counts;
                for (const auto& [o, v] : cur)
                    if (v != kNoPref) ++counts[v];
                std::uint64_t adopt = kNoPref;
                for (const auto& [v, c] : counts)
                    if (c >= k_ + 1) adopt = v;
                value_ = adopt != kNoPref ? adopt : (rng_.coin() ? 1 : 0);
                ++round_;
                step_ = 1;
                emit_step(ctx);
                moved = true;
            }
        }
        if (round_ >= kMaxConsensusRounds)
            throw std::runtime_error("async consensus exceeded the round bound");
    }

    int n_, k_, self_;
    std::uint64_t value_;
    Rng rng_;
    bool started_ = false, decided_ = false;
    int round_ = 0, step_ = 1;
    std::map<std::uint32_t, BrachaRbc> rbcs_;
    std::map<std::pair<int, int>, std::map<int, std::uint64_t>> store_;
};

}  // namespace

AsyncConsensusResult async_consensus(int n, int k, const std::vector<int>& preferences,
                                     SchedulerPolicy& policy, const AdversaryScript& adversary,
                                     std::uint64_t seed, std::int64_t max_events) {
    std::vector<std::unique_ptr<ConsensusProc>> procs;
    for (int p = 0; p < n; ++p)
        procs.push_back(std::make_unique<ConsensusProc>(n, k, p, preferences[p], seed * 1315423911u + p));
    std::vector<AsyncProc*> raw;
    for (auto& p : procs) raw.push_back(p.get());
    AsyncNetwork net(n);
    auto honest_decided = [&] {
        for (int p = 0; p < n; ++p)
            if (!adversary.is_member(p) && !procs[p]->done()) return false;
        return true;
    };
    AsyncConsensusResult res;
    res.events = net.run(raw, policy, adversary, max_events, honest_decided);
    for (auto& p : procs) {
        res.outputs.push_back(p->output());
        res.rounds = std::max(res.rounds, p->rounds());
    }
    return res;
}

}  // namespace mediatorless
