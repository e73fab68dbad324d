#include "mediatorless/vss.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace mediatorless {

int vss_round_budget(int k) {
    // deal + cross + (k+1) complaint/resolve cycles of broadcast waves
    return 2 + 2 * (k + 1) * (k + 2);
}

namespace {

struct PairComplaint {
    int from = -1, against = -1;
    std::uint64_t claim = 0;
    bool has_recv = false;
    std::uint64_t recv = 0;
};

struct PublicRecord {
    std::vector<int> bad_row;                       // wave-1 self declarations
    std::vector<PairComplaint> pairs;               // wave-1 pair complaints
    std::map<std::pair<int, int>, std::uint64_t> points;  // normalized (a<b)
    std::map<int, std::vector<std::uint64_t>> rows;       // published rows
    std::vector<std::vector<int>> unhappy;          // per cycle >= 2
    bool malformed = false;
    bool unresolved = false;
    bool unrequested = false;

    std::vector<int> culprits() const {
        std::vector<int> out = bad_row;
        for (const auto& cyc : unhappy)
            for (int p : cyc) out.push_back(p);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

std::pair<int, int> norm_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

Polynomial row_from_coeffs(const std::vector<std::uint64_t>& coeffs, std::uint64_t q) {
    Polynomial p;
    for (std::uint64_t c : coeffs) p.coeffs.push_back(FieldElem{c % q, q});
    return p;
}

}  // namespace

std::vector<VssOutcome> vss_deal(SyncNetwork& net, int k, std::uint64_t q,
                                 const std::vector<VssInstanceSpec>& instances, Rng& rng,
                                 const AdversaryScript& adversary, std::uint32_t instance_base) {
    const int n = net.n();
    const int m = static_cast<int>(instances.size());
    const std::size_t rowlen = static_cast<std::size_t>(k) + 1;

    // Honest dealing: symmetric bivariate F with F(0,0) = value; row of
    // player i is f_i(x) = F(x, i). Coalition dealers' wires are rewritten by
    // the script afterwards.
    std::vector<std::vector<std::vector<FieldElem>>> F(m);
    for (int inst = 0; inst < m; ++inst) {
        auto& a = F[inst];
        a.assign(rowlen, std::vector<FieldElem>(rowlen, FieldElem{0, q}));
        a[0][0] = instances[inst].value;
        for (std::size_t u = 0; u < rowlen; ++u)
            for (std::size_t v = u; v < rowlen; ++v) {
                if (u == 0 && v == 0) continue;
                FieldElem c = random_field_elem(rng, q);
                a[u][v] = c;
                a[v][u] = c;
            }
    }
    auto f_eval = [&](int inst, std::uint64_t x, std::uint64_t y) {
        FieldElem acc{0, q};
        for (std::size_t u = 0; u < rowlen; ++u)
            for (std::size_t v = 0; v < rowlen; ++v)
                acc = acc + F[inst][u][v] * fe_pow(FieldElem{x, q}, u) * fe_pow(FieldElem{y, q}, v);
        return acc;
    };
    auto row_of = [&](int inst, int player) {
        // coefficients in x of F(x, player+1)
        std::vector<std::uint64_t> coeffs;
        for (std::size_t u = 0; u < rowlen; ++u) {
            FieldElem acc{0, q};
            for (std::size_t v = 0; v < rowlen; ++v)
                acc = acc + F[inst][u][v] * fe_pow(FieldElem{static_cast<std::uint64_t>(player + 1), q}, v);
            coeffs.push_back(acc.v);
        }
        return coeffs;
    };

    // round 1: rows
    for (int inst = 0; inst < m; ++inst) {
        int dealer = instances[inst].dealer;
        for (int i = 0; i < n; ++i) {
            SubMsg msg;
            msg.instance = instance_base + inst;
            msg.kind = kind_vss_row;
            msg.vals = row_of(inst, i);
            if (i == dealer)
                continue;  // own row kept locally
            net.send(dealer, i, msg);
        }
    }
    net.advance_round(adversary);

    // private state: row and crosses, per (player, instance)
    std::vector<std::vector<std::optional<Polynomial>>> row(n);
    std::vector<std::vector<std::vector<std::optional<std::uint64_t>>>> cross(n);
    for (int p = 0; p < n; ++p) {
        row[p].assign(m, std::nullopt);
        cross[p].assign(m, std::vector<std::optional<std::uint64_t>>(n, std::nullopt));
    }
    for (int inst = 0; inst < m; ++inst) {
        // the dealer's own row never crosses the wire
        int dealer = instances[inst].dealer;
        row[dealer][inst] = row_from_coeffs(row_of(inst, dealer), q);
    }
    for (int p = 0; p < n; ++p)
        for (const HRecv& rv : net.inbox(p)) {
            if (rv.bot || rv.msg.kind != kind_vss_row) continue;
            int inst = static_cast<int>(rv.msg.instance - instance_base);
            if (inst < 0 || inst >= m || rv.from != instances[inst].dealer) continue;
            if (rv.msg.vals.size() == rowlen) row[p][inst] = row_from_coeffs(rv.msg.vals, q);
        }

    // round 2: cross checks
    for (int p = 0; p < n; ++p)
        for (int inst = 0; inst < m; ++inst) {
            if (!row[p][inst]) continue;
            for (int j = 0; j < n; ++j) {
                if (j == p) {
                    cross[p][inst][p] = row[p][inst]->eval_at(p + 1).v;
                    continue;
                }
                SubMsg msg;
                msg.instance = instance_base + inst;
                msg.kind = kind_vss_cross;
                msg.vals = {row[p][inst]->eval_at(j + 1).v};
                net.send(p, j, msg);
            }
        }
    net.advance_round(adversary);
    for (int p = 0; p < n; ++p)
        for (const HRecv& rv : net.inbox(p)) {
            if (rv.bot || rv.msg.kind != kind_vss_cross) continue;
            int inst = static_cast<int>(rv.msg.instance - instance_base);
            if (inst < 0 || inst >= m || rv.msg.vals.size() != 1) continue;
            cross[p][inst][rv.from] = rv.msg.vals[0] % q;
        }

    // public record as parsed by each viewer, per instance
    std::vector<std::vector<PublicRecord>> rec(n, std::vector<PublicRecord>(m));
    // effective rows (replaced by publications)
    std::vector<std::vector<std::optional<Polynomial>>> eff = row;
    std::vector<std::vector<bool>> published(n, std::vector<bool>(m, false));
    std::vector<std::vector<bool>> declared(n, std::vector<bool>(m, false));

    std::uint32_t wave_base = instance_base + m + 100;
    for (int cycle = 1; cycle <= k + 1; ++cycle) {
        // ---- report wave ----
        std::vector<std::vector<std::uint64_t>> report(n);
        for (int p = 0; p < n; ++p) {
            WireWriter w;
            for (int inst = 0; inst < m; ++inst) {
                w.put(inst);
                if (cycle == 1) {
                    bool bad = !row[p][inst].has_value() && p != instances[inst].dealer;
                    if (bad) declared[p][inst] = true;
                    w.put(bad ? 1 : 0);
                    std::vector<std::array<std::uint64_t, 4>> pairs;
                    if (!bad && row[p][inst])
                        for (int j = 0; j < n; ++j) {
                            if (j == p) continue;
                            std::uint64_t mine = row[p][inst]->eval_at(j + 1).v;
                            auto got = cross[p][inst][j];
                            if (!got || *got != mine)
                                pairs.push_back({static_cast<std::uint64_t>(j), mine,
                                                 got ? 1ull : 0ull, got ? *got : 0ull});
                        }
                    w.put(pairs.size());
                    for (auto& e : pairs)
                        for (auto x : e) w.put(x);
                } else {
                    // unhappiness: my private row conflicts with public data
                    bool unhappy = false;
                    if (!declared[p][inst] && eff[p][inst] && !published[p][inst]) {
                        const PublicRecord& r = rec[p][inst];
                        for (const auto& [key, v] : r.points) {
                            auto [a, b] = key;
                            int other = a == p ? b : (b == p ? a : -1);
                            if (other >= 0 && eff[p][inst]->eval_at(other + 1).v != v) unhappy = true;
                        }
                        for (const auto& [l, coeffs] : r.rows) {
                            if (l == p) continue;
                            Polynomial g = row_from_coeffs(coeffs, q);
                            if (g.coeffs.size() == rowlen &&
                                g.eval_at(p + 1).v != eff[p][inst]->eval_at(l + 1).v)
                                unhappy = true;
                        }
                    }
                    if (unhappy) declared[p][inst] = true;
                    w.put(unhappy ? 1 : 0);
                }
            }
            report[p] = std::move(w.out);
        }
        auto wave = sync_broadcast_wave(net, k, report, wave_base, adversary);
        wave_base += n;

        // parse reports into every viewer's record
        for (int viewer = 0; viewer < n; ++viewer) {
            for (int speaker = 0; speaker < n; ++speaker) {
                const BcastValue& payload = wave[viewer][speaker];
                if (!payload) continue;
                WireReader r(*payload);
                for (int inst = 0; inst < m; ++inst) {
                    PublicRecord& pr = rec[viewer][inst];
                    if (static_cast<int>(r.get()) != inst || !r.ok) break;
                    if (cycle == 1) {
                        bool bad = r.get() != 0;
                        if (bad) pr.bad_row.push_back(speaker);
                        std::uint64_t np = r.get();
                        if (!r.ok || np > static_cast<std::uint64_t>(n)) break;
                        for (std::uint64_t e = 0; e < np; ++e) {
                            PairComplaint pc;
                            pc.from = speaker;
                            pc.against = static_cast<int>(r.get());
                            pc.claim = r.get() % q;
                            pc.has_recv = r.get() != 0;
                            pc.recv = r.get() % q;
                            if (r.ok && pc.against >= 0 && pc.against < n && pc.against != speaker)
                                pr.pairs.push_back(pc);
                        }
                    } else {
                        if (static_cast<int>(pr.unhappy.size()) < cycle - 1)
                            pr.unhappy.resize(cycle - 1);
                        if (r.get() != 0) pr.unhappy[cycle - 2].push_back(speaker);
                    }
                }
            }
        }

        // ---- resolve wave ----
        std::vector<std::vector<std::uint64_t>> resolve(n);
        for (int p = 0; p < n; ++p) {
            WireWriter w;
            for (int inst = 0; inst < m; ++inst) {
                if (instances[inst].dealer != p) continue;
                const PublicRecord& pr = rec[p][inst];
                w.put(inst);
                std::vector<std::tuple<int, int, std::uint64_t>> pts;
                std::vector<int> rows_to_pub;
                if (cycle == 1) {
                    std::set<std::pair<int, int>> seen;
                    for (const PairComplaint& pc : pr.pairs) {
                        auto key = norm_pair(pc.from, pc.against);
                        if (seen.insert(key).second)
                            pts.push_back({key.first, key.second,
                                           f_eval(inst, key.first + 1, key.second + 1).v});
                    }
                    for (int b : pr.bad_row) rows_to_pub.push_back(b);
                } else {
                    if (static_cast<int>(pr.unhappy.size()) >= cycle - 1)
                        for (int u : pr.unhappy[cycle - 2]) rows_to_pub.push_back(u);
                }
                w.put(pts.size());
                for (auto& [a, b, v] : pts) {
                    w.put(a);
                    w.put(b);
                    w.put(v);
                }
                std::sort(rows_to_pub.begin(), rows_to_pub.end());
                rows_to_pub.erase(std::unique(rows_to_pub.begin(), rows_to_pub.end()),
                                  rows_to_pub.end());
                w.put(rows_to_pub.size());
                for (int who : rows_to_pub) {
                    w.put(who);
                    for (std::uint64_t c : row_of(inst, who)) w.put(c);
                }
            }
            resolve[p] = std::move(w.out);
        }
        auto rwave = sync_broadcast_wave(net, k, resolve, wave_base, adversary);
        wave_base += n;

        for (int viewer = 0; viewer < n; ++viewer) {
            for (int inst = 0; inst < m; ++inst) {
                PublicRecord& pr = rec[viewer][inst];
                int dealer = instances[inst].dealer;
                const BcastValue& payload = rwave[viewer][dealer];
                // expected publications this cycle
                std::set<std::pair<int, int>> expect_pts;
                std::set<int> expect_rows;
                if (cycle == 1) {
                    for (const PairComplaint& pc : pr.pairs)
                        expect_pts.insert(norm_pair(pc.from, pc.against));
                    for (int b : pr.bad_row) expect_rows.insert(b);
                } else if (static_cast<int>(pr.unhappy.size()) >= cycle - 1) {
                    for (int u : pr.unhappy[cycle - 2]) expect_rows.insert(u);
                }
                std::set<std::pair<int, int>> got_pts;
                std::set<int> got_rows;
                if (payload) {
                    WireReader r(*payload);
                    bool found = false;
                    while (r.ok && r.pos < r.in->size()) {
                        int which = static_cast<int>(r.get());
                        std::uint64_t npts = r.get();
                        if (!r.ok || npts > static_cast<std::uint64_t>(n) * n) break;
                        std::vector<std::tuple<int, int, std::uint64_t>> pts;
                        for (std::uint64_t e = 0; e < npts && r.ok; ++e) {
                            int a = static_cast<int>(r.get());
                            int b = static_cast<int>(r.get());
                            std::uint64_t v = r.get() % q;
                            pts.push_back({a, b, v});
                        }
                        std::uint64_t nrows = r.get();
                        if (!r.ok || nrows > static_cast<std::uint64_t>(n)) break;
                        std::vector<std::pair<int, std::vector<std::uint64_t>>> rows;
                        for (std::uint64_t e = 0; e < nrows && r.ok; ++e) {
                            int who = static_cast<int>(r.get());
                            std::vector<std::uint64_t> coeffs;
                            for (std::size_t c = 0; c < rowlen; ++c) coeffs.push_back(r.get() % q);
                            rows.push_back({who, coeffs});
                        }
                        if (!r.ok) break;
                        if (which != inst) continue;
                        found = true;
                        for (auto& [a, b, v] : pts) {
                            if (a < 0 || a >= n || b < 0 || b >= n) {
                                pr.malformed = true;
                                continue;
                            }
                            got_pts.insert(norm_pair(a, b));
                            pr.points[norm_pair(a, b)] = v;
                        }
                        for (auto& [who, coeffs] : rows) {
                            if (who < 0 || who >= n) {
                                pr.malformed = true;
                                continue;
                            }
                            got_rows.insert(who);
                            pr.rows[who] = coeffs;
                        }
                    }
                    if (!found && (!expect_pts.empty() || !expect_rows.empty()))
                        pr.unresolved = true;
                } else if (!expect_pts.empty() || !expect_rows.empty()) {
                    pr.unresolved = true;
                }
                for (const auto& key : expect_pts)
                    if (!got_pts.count(key)) pr.unresolved = true;
                for (int who : expect_rows)
                    if (!got_rows.count(who)) pr.unresolved = true;
                for (const auto& key : got_pts)
                    if (!expect_pts.count(key)) pr.unrequested = true;
                for (int who : got_rows)
                    if (!expect_rows.count(who)) pr.unrequested = true;
                // adopt own published row
                if (pr.rows.count(viewer)) {
                    eff[viewer][inst] = row_from_coeffs(pr.rows[viewer], q);
                    published[viewer][inst] = true;
                }
            }
        }
    }

    // final decision per viewer
    std::vector<VssOutcome> out(m);
    for (int inst = 0; inst < m; ++inst) {
        out[inst].shares.assign(n, FieldElem{0, q});
        out[inst].rows.assign(n, std::nullopt);
        out[inst].disqualified = false;
    }
    for (int inst = 0; inst < m; ++inst) {
        int complaints = 0;
        for (int viewer = 0; viewer < n; ++viewer) {
            PublicRecord& pr = rec[viewer][inst];
            complaints = std::max(complaints,
                                  static_cast<int>(pr.pairs.size() + pr.bad_row.size()));
            bool disq = pr.malformed || pr.unresolved || pr.unrequested;
            // public consistency of publications
            for (const auto& [l, coeffs] : pr.rows) {
                if (coeffs.size() != rowlen) disq = true;
                Polynomial gl = row_from_coeffs(coeffs, q);
                for (const auto& [mth, coeffs2] : pr.rows) {
                    if (mth <= l) continue;
                    Polynomial gm = row_from_coeffs(coeffs2, q);
                    if (gl.eval_at(mth + 1).v != gm.eval_at(l + 1).v) disq = true;
                }
                for (const auto& [key, v] : pr.points) {
                    auto [a, b] = key;
                    int other = a == l ? b : (b == l ? a : -1);
                    if (other >= 0 && gl.eval_at(other + 1).v != v) disq = true;
                }
            }
            std::vector<int> culprits = pr.culprits();
            if (static_cast<int>(culprits.size()) > k) disq = true;
            if (viewer == 0) out[inst].culprits = culprits;

            if (disq) {
                // default sharing of 0
                if (!adversary.is_member(viewer)) out[inst].disqualified = true;
                out[inst].shares[viewer] = FieldElem{0, q};
                Polynomial zero;
                zero.coeffs.assign(rowlen, FieldElem{0, q});
                out[inst].rows[viewer] = zero;
            } else {
                std::optional<Polynomial>& r = eff[viewer][inst];
                if (r) {
                    out[inst].shares[viewer] = r->eval_at(0);
                    out[inst].rows[viewer] = *r;
                } else {
                    out[inst].shares[viewer] = FieldElem{0, q};
                }
            }
        }
        out[inst].complaints = complaints;
    }
    return out;
}

}  // namespace mediatorless
