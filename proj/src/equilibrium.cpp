#include "mediatorless/equilibrium.hpp"

#include <algorithm>

#include "mediatorless/lp.hpp"

namespace mediatorless {

namespace {

// Space of the coalition's joint actions (or types) given member indices.
ProfileSpace member_space(const ProfileSpace& full, const std::vector<int>& members) {
    std::vector<int> sizes;
    for (int m : members) sizes.push_back(full.size_at(m));
    return ProfileSpace(sizes);
}

std::vector<int> merge_profile(const std::vector<int>& members, const std::vector<int>& k_part,
                               const std::vector<int>& base) {
    std::vector<int> out = base;
    for (std::size_t j = 0; j < members.size(); ++j) out[members[j]] = k_part[j];
    return out;
}

void require_normal_form(const GameSpec& g, const char* caller, const char* redirect) {
    if (!g.is_normal_form())
        throw std::invalid_argument(std::string(caller) + " expects a normal-form game; use " +
                                    redirect + " for Bayesian games");
}

// Witness distributions with all-member gains from the resilient-mode LP.
struct MinGainWitness {
    Rat min_gain;
    std::vector<Rat> x;
};

// max over distributions x of min_i sum_j x_j * gains[i][j]; empty if <= 0.
std::optional<MinGainWitness> max_min_gain(const std::vector<std::vector<Rat>>& gains) {
    std::size_t nvars = gains[0].size();
    // vars: x_0..x_{m-1}, eps_plus, eps_minus; maximize eps_plus - eps_minus
    std::vector<Rat> obj(nvars + 2, Rat(0));
    obj[nvars] = Rat(1);
    obj[nvars + 1] = Rat(-1);
    std::vector<LpConstraint> rows;
    for (const auto& gi : gains) {
        LpConstraint c;
        c.a.assign(nvars + 2, Rat(0));
        for (std::size_t j = 0; j < nvars; ++j) c.a[j] = gi[j];
        c.a[nvars] = Rat(-1);
        c.a[nvars + 1] = Rat(1);
        c.rel = Relation::ge;
        c.b = Rat(0);
        rows.push_back(c);
    }
    LpConstraint sum;
    sum.a.assign(nvars + 2, Rat(0));
    for (std::size_t j = 0; j < nvars; ++j) sum.a[j] = Rat(1);
    sum.rel = Relation::eq;
    sum.b = Rat(1);
    rows.push_back(sum);
    LpResult lp = solve_lp(obj, rows);
    if (lp.status != LpStatus::optimal)
        throw std::logic_error("gain LP must be feasible and bounded");
    if (lp.objective <= 0) return std::nullopt;
    MinGainWitness w;
    w.min_gain = lp.objective;
    w.x.assign(lp.x.begin(), lp.x.begin() + nvars);
    return w;
}

}  // namespace

Json DeviationCertificate::to_json(const GameSpec& g) const {
    Json j;
    j["schema"] = "mediatorless-certificate-v1";
    j["coalition"] = coalition.members;
    j["k"] = coalition.k;
    j["kind"] = kind;
    ProfileSpace as = g.action_space();
    ProfileSpace ak = member_space(as, coalition.members);
    if (kind == "nash-joint-mixed") {
        Json rows = Json::array();
        for (const auto& row : joint_mixed) {
            Json r = Json::array();
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(row.size()); ++a) {
                if (row[a] == 0) continue;
                Json e;
                e["joint_action"] = ak.profile_of(a);
                e["num"] = rat_to_json(row[a])["num"];
                e["den"] = rat_to_json(row[a])["den"];
                r.push_back(e);
            }
            rows.push_back(r);
        }
        j["joint_mixed"] = rows;
    } else if (kind == "correlated-swap") {
        j["recommendation"] = swap_from;
        j["swap_to"] = swap_to;
    } else if (kind == "comm-lie-and-swap") {
        j["true_types"] = true_types;
        j["misreport"] = misreport;
        Json remap = Json::array();
        for (std::int64_t a = 0; a < static_cast<std::int64_t>(phi.size()); ++a) {
            Json e;
            e["from"] = ak.profile_of(a);
            e["to"] = ak.profile_of(phi[a]);
            remap.push_back(e);
        }
        j["phi"] = remap;
    }
    j["improved_players"] = improved_players;
    Json gs = Json::array();
    for (const Rat& r : gains) gs.push_back(rat_to_json(r));
    j["gains"] = gs;
    return j;
}

CheckResult check_k_nash(const GameSpec& game, const MixedProfile& profile, int k,
                         ResilienceMode mode) {
    require_normal_form(game, "check_k_nash", "check_k_bayesian_nash");
    ProfileSpace as = game.action_space();
    if (static_cast<int>(profile.strategies.size()) != game.n)
        throw std::invalid_argument("need one mixed strategy per player");
    for (int i = 0; i < game.n; ++i) {
        if (static_cast<int>(profile.strategies[i].size()) != as.size_at(i))
            throw std::invalid_argument("mixed strategy has wrong support size");
        Rat s(0);
        for (const Rat& p : profile.strategies[i]) {
            if (p < 0) throw std::invalid_argument("negative strategy probability");
            s += p;
        }
        if (s != 1) throw std::invalid_argument("mixed strategy does not sum to 1");
    }

    // Probability of each full action profile under independent play.
    std::vector<Rat> prob(as.size(), Rat(1));
    for (std::int64_t a = 0; a < as.size(); ++a) {
        std::vector<int> ap = as.profile_of(a);
        for (int i = 0; i < game.n; ++i) prob[a] *= profile.strategies[i][ap[i]];
    }
    std::vector<Rat> base(game.n, Rat(0));
    for (std::int64_t a = 0; a < as.size(); ++a)
        if (prob[a] != 0)
            for (int i = 0; i < game.n; ++i) base[i] += prob[a] * game.utility(0, a, i);

    for (const CoalitionMask& K : enumerate_coalitions(game.n, k)) {
        ProfileSpace ak = member_space(as, K.members);
        // gains[member][joint deviation]
        std::vector<std::vector<Rat>> gains(K.members.size(), std::vector<Rat>(ak.size(), Rat(0)));
        for (std::int64_t a = 0; a < as.size(); ++a) {
            std::vector<int> ap = as.profile_of(a);
            // weight of the complement's part under sigma_{-K}
            Rat w(1);
            for (int i = 0; i < game.n; ++i)
                if (!K.contains(i)) w *= profile.strategies[i][ap[i]];
            if (w == 0) continue;
            // This full profile arises when the coalition picks exactly its part.
            std::vector<int> kp;
            for (int m : K.members) kp.push_back(ap[m]);
            std::int64_t dev = ak.index_of(kp);
            for (std::size_t mi = 0; mi < K.members.size(); ++mi)
                gains[mi][dev] += w * game.utility(0, a, K.members[mi]);
        }
        for (std::size_t mi = 0; mi < K.members.size(); ++mi)
            for (std::int64_t dev = 0; dev < ak.size(); ++dev)
                gains[mi][dev] -= base[K.members[mi]];

        if (mode == ResilienceMode::strongly_resilient) {
            for (std::int64_t dev = 0; dev < ak.size(); ++dev)
                for (std::size_t mi = 0; mi < K.members.size(); ++mi)
                    if (gains[mi][dev] > 0) {
                        DeviationCertificate c;
                        c.coalition = K;
                        c.kind = "nash-joint-mixed";
                        c.joint_mixed.assign(1, std::vector<Rat>(ak.size(), Rat(0)));
                        c.joint_mixed[0][dev] = Rat(1);
                        c.improved_players = {K.members[mi]};
                        c.gains = {gains[mi][dev]};
                        return {false, c};
                    }
        } else {
            auto w = max_min_gain(gains);
            if (w) {
                DeviationCertificate c;
                c.coalition = K;
                c.kind = "nash-joint-mixed";
                c.joint_mixed = {w->x};
                for (std::size_t mi = 0; mi < K.members.size(); ++mi) {
                    Rat g(0);
                    for (std::int64_t dev = 0; dev < ak.size(); ++dev)
                        g += w->x[dev] * gains[mi][dev];
                    c.improved_players.push_back(K.members[mi]);
                    c.gains.push_back(g);
                }
                return {false, c};
            }
        }
    }
    return {true, std::nullopt};
}

CheckResult check_k_correlated(const GameSpec& game, const std::vector<Rat>& dist, int k,
                               ResilienceMode mode) {
    require_normal_form(game, "check_k_correlated", "check_k_comm");
    ProfileSpace as = game.action_space();
    if (static_cast<std::int64_t>(dist.size()) != as.size())
        throw std::invalid_argument("distribution must cover every action profile");
    Rat total(0);
    for (const Rat& p : dist) {
        if (p < 0) throw std::invalid_argument("negative probability in distribution");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("distribution does not sum to 1");

    for (const CoalitionMask& K : enumerate_coalitions(game.n, k)) {
        ProfileSpace ak = member_space(as, K.members);
        // Group action profiles by the coalition's component.
        std::vector<Rat> marg(ak.size(), Rat(0));
        std::vector<std::vector<std::int64_t>> group(ak.size());
        for (std::int64_t a = 0; a < as.size(); ++a) {
            std::vector<int> ap = as.profile_of(a);
            std::vector<int> kp;
            for (int m : K.members) kp.push_back(ap[m]);
            std::int64_t ki = ak.index_of(kp);
            marg[ki] += dist[a];
            group[ki].push_back(a);
        }
        for (std::int64_t rec = 0; rec < ak.size(); ++rec) {
            if (marg[rec] == 0) continue;
            for (std::int64_t swp = 0; swp < ak.size(); ++swp) {
                if (swp == rec) continue;
                std::vector<int> swap_part = ak.profile_of(swp);
                bool all_gain = true, any_gain = false;
                std::vector<Rat> gains;
                for (int member : K.members) {
                    Rat lhs(0), rhs(0);
                    for (std::int64_t a : group[rec]) {
                        if (dist[a] == 0) continue;
                        Rat w = dist[a] / marg[rec];
                        std::vector<int> ap = as.profile_of(a);
                        lhs += w * game.utility(0, a, member);
                        std::vector<int> swapped = merge_profile(K.members, swap_part, ap);
                        rhs += w * game.utility(0, as.index_of(swapped), member);
                    }
                    Rat g = rhs - lhs;
                    gains.push_back(g);
                    all_gain = all_gain && g > 0;
                    any_gain = any_gain || g > 0;
                }
                bool violated =
                    mode == ResilienceMode::resilient ? all_gain : any_gain;
                if (violated) {
                    DeviationCertificate c;
                    c.coalition = K;
                    c.kind = "correlated-swap";
                    c.swap_from = ak.profile_of(rec);
                    c.swap_to = swap_part;
                    for (std::size_t mi = 0; mi < K.members.size(); ++mi)
                        if (gains[mi] > 0) {
                            c.improved_players.push_back(K.members[mi]);
                            c.gains.push_back(gains[mi]);
                        }
                    return {false, c};
                }
            }
        }
    }
    return {true, std::nullopt};
}

CheckResult check_k_comm(const GameSpec& game, const CorrelatedProfile& mu, int k,
                         ResilienceMode mode, std::uint64_t budget) {
    ProfileSpace ts = game.type_space();
    ProfileSpace as = game.action_space();
    if (static_cast<std::int64_t>(mu.dist.size()) != ts.size())
        throw std::invalid_argument("mu must cover every type profile");

    for (const CoalitionMask& K : enumerate_coalitions(game.n, k)) {
        ProfileSpace tk = member_space(ts, K.members);
        ProfileSpace ak = member_space(as, K.members);
        // number of remap functions = |A_K| ^ |A_K|
        double fn_count = 1;
        for (std::int64_t i = 0; i < ak.size(); ++i) fn_count *= static_cast<double>(ak.size());
        if (fn_count > static_cast<double>(budget))
            throw EnumerationBudgetExceeded("instance too large: |A_K|^|A_K| exceeds budget");

        // Type profiles grouped by the coalition's pooled component.
        std::vector<std::vector<std::int64_t>> tgroup(tk.size());
        for (std::int64_t t = 0; t < ts.size(); ++t) {
            std::vector<int> tp = ts.profile_of(t);
            std::vector<int> kp;
            for (int m : K.members) kp.push_back(tp[m]);
            tgroup[tk.index_of(kp)].push_back(t);
        }

        for (std::int64_t truek = 0; truek < tk.size(); ++truek) {
            // Left side of the inequality per member, fixed across psi/phi.
            std::vector<Rat> lhs(K.members.size(), Rat(0));
            for (std::int64_t t : tgroup[truek]) {
                if (game.prior[t] == 0) continue;
                for (std::int64_t a = 0; a < as.size(); ++a) {
                    if (mu.dist[t][a] == 0) continue;
                    Rat w = game.prior[t] * mu.dist[t][a];
                    for (std::size_t mi = 0; mi < K.members.size(); ++mi)
                        lhs[mi] += w * game.utility(t, a, K.members[mi]);
                }
            }
            for (std::int64_t rep = 0; rep < tk.size(); ++rep) {
                std::vector<int> rep_part = tk.profile_of(rep);
                // phi enumerated as a mixed-radix table over A_K
                std::vector<int> phi(ak.size(), 0);
                while (true) {
                    bool all_gain = true, any_gain = false;
                    std::vector<Rat> gains;
                    for (std::size_t mi = 0; mi < K.members.size(); ++mi) {
                        Rat rhs(0);
                        for (std::int64_t t : tgroup[truek]) {
                            if (game.prior[t] == 0) continue;
                            std::vector<int> tp = ts.profile_of(t);
                            std::vector<int> reported = merge_profile(K.members, rep_part, tp);
                            std::int64_t trep = ts.index_of(reported);
                            for (std::int64_t a = 0; a < as.size(); ++a) {
                                if (mu.dist[trep][a] == 0) continue;
                                std::vector<int> ap = as.profile_of(a);
                                std::vector<int> kp;
                                for (int m : K.members) kp.push_back(ap[m]);
                                std::vector<int> played =
                                    merge_profile(K.members, ak.profile_of(phi[ak.index_of(kp)]), ap);
                                rhs += game.prior[t] * mu.dist[trep][a] *
                                       game.utility(t, as.index_of(played), K.members[mi]);
                            }
                        }
                        Rat g = rhs - lhs[mi];
                        gains.push_back(g);
                        all_gain = all_gain && g > 0;
                        any_gain = any_gain || g > 0;
                    }
                    bool violated = mode == ResilienceMode::resilient ? all_gain : any_gain;
                    if (violated) {
                        DeviationCertificate c;
                        c.coalition = K;
                        c.kind = "comm-lie-and-swap";
                        c.true_types = tk.profile_of(truek);
                        c.misreport = rep_part;
                        c.phi = phi;
                        for (std::size_t mi = 0; mi < K.members.size(); ++mi)
                            if (gains[mi] > 0) {
                                c.improved_players.push_back(K.members[mi]);
                                c.gains.push_back(gains[mi]);
                            }
                        return {false, c};
                    }
                    // next phi
                    std::size_t pos = phi.size();
                    while (pos-- > 0) {
                        if (phi[pos] + 1 < ak.size()) {
                            ++phi[pos];
                            std::fill(phi.begin() + pos + 1, phi.end(), 0);
                            break;
                        }
                        if (pos == 0) goto next_rep;
                    }
                    if (phi.empty()) break;
                }
            next_rep:;
            }
        }
    }
    return {true, std::nullopt};
}

CheckResult check_k_bayesian_nash(const GameSpec& game, const BayesianProfile& profile, int k,
                                  ResilienceMode mode, std::uint64_t budget) {
    ProfileSpace ts = game.type_space();
    ProfileSpace as = game.action_space();
    if (static_cast<int>(profile.strategies.size()) != game.n)
        throw std::invalid_argument("need one strategy per player");
    for (int i = 0; i < game.n; ++i)
        if (static_cast<int>(profile.strategies[i].size()) != ts.size_at(i))
            throw std::invalid_argument("strategy must cover every type of the player");

    CorrelatedProfile induced = profile.induced(game);
    for (const CoalitionMask& K : enumerate_coalitions(game.n, k)) {
        ProfileSpace tk = member_space(ts, K.members);
        ProfileSpace ak = member_space(as, K.members);
        if (static_cast<std::uint64_t>(tk.size()) * static_cast<std::uint64_t>(ak.size()) > budget)
            throw EnumerationBudgetExceeded("instance too large: |T_K| * |A_K| exceeds budget");

        std::vector<Rat> base(K.members.size(), Rat(0));
        for (std::size_t mi = 0; mi < K.members.size(); ++mi)
            base[mi] = coalition_expected_utility(game, induced, K, K.members[mi]);

        // W[member][t_K][a_K]: total weighted utility if the coalition plays
        // a_K whenever its pooled type is t_K and the rest follow profile.
        std::vector<std::vector<std::vector<Rat>>> w(
            K.members.size(),
            std::vector<std::vector<Rat>>(tk.size(), std::vector<Rat>(ak.size(), Rat(0))));
        for (std::int64_t t = 0; t < ts.size(); ++t) {
            if (game.prior[t] == 0) continue;
            std::vector<int> tp = ts.profile_of(t);
            std::vector<int> kp;
            for (int m : K.members) kp.push_back(tp[m]);
            std::int64_t tki = tk.index_of(kp);
            for (std::int64_t a = 0; a < as.size(); ++a) {
                std::vector<int> ap = as.profile_of(a);
                Rat wt = game.prior[t];
                for (int i = 0; i < game.n && wt != 0; ++i)
                    if (!K.contains(i)) wt *= profile.strategies[i][tp[i]][ap[i]];
                if (wt == 0) continue;
                std::vector<int> akp;
                for (int m : K.members) akp.push_back(ap[m]);
                std::int64_t aki = ak.index_of(akp);
                for (std::size_t mi = 0; mi < K.members.size(); ++mi)
                    w[mi][tki][aki] += wt * game.utility(t, a, K.members[mi]);
            }
        }

        if (mode == ResilienceMode::strongly_resilient) {
            // Per member independently: the best deviating map decomposes
            // over pooled types.
            for (std::size_t mi = 0; mi < K.members.size(); ++mi) {
                Rat best(0);
                std::vector<std::int64_t> argmax(tk.size(), 0);
                for (std::int64_t tki = 0; tki < tk.size(); ++tki) {
                    Rat mx = w[mi][tki][0];
                    for (std::int64_t aki = 1; aki < ak.size(); ++aki)
                        if (w[mi][tki][aki] > mx) {
                            mx = w[mi][tki][aki];
                            argmax[tki] = aki;
                        }
                    best += mx;
                }
                if (best > base[mi]) {
                    DeviationCertificate c;
                    c.coalition = K;
                    c.kind = "nash-joint-mixed";
                    c.joint_mixed.assign(tk.size(), std::vector<Rat>(ak.size(), Rat(0)));
                    for (std::int64_t tki = 0; tki < tk.size(); ++tki)
                        c.joint_mixed[tki][argmax[tki]] = Rat(1);
                    c.improved_players = {K.members[mi]};
                    c.gains = {best - base[mi]};
                    return {false, c};
                }
            }
        } else {
            // Joint LP: one simplex block of variables per pooled type.
            std::size_t nvars = static_cast<std::size_t>(tk.size()) * ak.size();
            std::vector<Rat> obj(nvars + 2, Rat(0));
            obj[nvars] = Rat(1);
            obj[nvars + 1] = Rat(-1);
            std::vector<LpConstraint> rows;
            for (std::size_t mi = 0; mi < K.members.size(); ++mi) {
                LpConstraint c;
                c.a.assign(nvars + 2, Rat(0));
                for (std::int64_t tki = 0; tki < tk.size(); ++tki)
                    for (std::int64_t aki = 0; aki < ak.size(); ++aki)
                        c.a[tki * ak.size() + aki] = w[mi][tki][aki];
                c.a[nvars] = Rat(-1);
                c.a[nvars + 1] = Rat(1);
                c.rel = Relation::ge;
                c.b = base[mi];
                rows.push_back(c);
            }
            for (std::int64_t tki = 0; tki < tk.size(); ++tki) {
                LpConstraint c;
                c.a.assign(nvars + 2, Rat(0));
                for (std::int64_t aki = 0; aki < ak.size(); ++aki)
                    c.a[tki * ak.size() + aki] = Rat(1);
                c.rel = Relation::eq;
                c.b = Rat(1);
                rows.push_back(c);
            }
            LpResult lp = solve_lp(obj, rows);
            if (lp.status != LpStatus::optimal)
                throw std::logic_error("deviation LP must be feasible and bounded");
            if (lp.objective > 0) {
                DeviationCertificate c;
                c.coalition = K;
                c.kind = "nash-joint-mixed";
                c.joint_mixed.assign(tk.size(), std::vector<Rat>(ak.size(), Rat(0)));
                for (std::int64_t tki = 0; tki < tk.size(); ++tki)
                    for (std::int64_t aki = 0; aki < ak.size(); ++aki)
                        c.joint_mixed[tki][aki] = lp.x[tki * ak.size() + aki];
                for (std::size_t mi = 0; mi < K.members.size(); ++mi) {
                    Rat g(-base[mi]);
                    for (std::int64_t tki = 0; tki < tk.size(); ++tki)
                        for (std::int64_t aki = 0; aki < ak.size(); ++aki)
                            g += lp.x[tki * ak.size() + aki] * w[mi][tki][aki];
                    c.improved_players.push_back(K.members[mi]);
                    c.gains.push_back(g);
                }
                return {false, c};
            }
        }
    }
    return {true, std::nullopt};
}

SamplerTable build_sampler(const CorrelatedProfile& mu, const GameSpec& game) {
    ProfileSpace as = game.action_space();
    std::vector<Rat> all;
    for (const auto& row : mu.dist)
        for (const Rat& p : row) all.push_back(p);
    BigInt lcm = lcm_of_denominators(all);
    if (lcm > BigInt(1) << 24)
        throw EnumerationBudgetExceeded("sampler modulus too large: N = " + lcm.str());
    SamplerTable table;
    table.modulus = lcm.convert_to<std::uint64_t>();
    table.rows.reserve(mu.dist.size());
    for (const auto& row : mu.dist) {
        std::vector<std::int64_t> cells;
        cells.reserve(table.modulus);
        for (std::int64_t a = 0; a < as.size(); ++a) {
            Rat count = row[a] * table.modulus;
            BigInt c = rat_num(count);  // integral by construction of N
            for (BigInt i = 0; i < c; ++i) cells.push_back(a);
        }
        if (cells.size() != table.modulus)
            throw std::logic_error("sampler blocks do not partition [1..N]");
        table.rows.push_back(std::move(cells));
    }
    return table;
}

Json SamplerTable::to_json(const GameSpec& g) const {
    Json j;
    j["schema"] = "mediatorless-sampler-v1";
    j["modulus"] = modulus;
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    Json rows_json = Json::array();
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(rows.size()); ++t) {
        Json e;
        e["type_profile"] = ts.profile_of(t);
        Json cells = Json::array();
        for (std::int64_t a : rows[t]) cells.push_back(as.profile_of(a));
        e["actions"] = cells;
        rows_json.push_back(e);
    }
    j["table"] = rows_json;
    return j;
}

BayesianProfile PureBayesianProfile::as_bayesian(const GameSpec& g) const {
    ProfileSpace as = g.action_space();
    BayesianProfile b;
    for (int i = 0; i < g.n; ++i) {
        std::vector<std::vector<Rat>> per_type;
        for (int a : maps[i]) {
            std::vector<Rat> dist(as.size_at(i), Rat(0));
            dist[a] = Rat(1);
            per_type.push_back(dist);
        }
        b.strategies.push_back(per_type);
    }
    return b;
}

std::optional<PureBayesianProfile> find_punishment_equilibrium(const GameSpec& game,
                                                               const CorrelatedProfile& mu, int k,
                                                               std::uint64_t budget) {
    ProfileSpace ts = game.type_space();
    ProfileSpace as = game.action_space();
    std::vector<Rat> mu_util(game.n);
    for (int i = 0; i < game.n; ++i) mu_util[i] = expected_utility(game, mu, i);

    double count = 1;
    for (int i = 0; i < game.n; ++i)
        for (int t = 0; t < ts.size_at(i); ++t) count *= static_cast<double>(as.size_at(i));
    if (count > static_cast<double>(budget))
        throw EnumerationBudgetExceeded("punishment search space exceeds budget");

    // Flatten the profile into mixed-radix digits; the last player's last
    // type moves fastest.
    std::vector<std::pair<int, int>> digit_pos;  // (player, type)
    for (int i = 0; i < game.n; ++i)
        for (int t = 0; t < ts.size_at(i); ++t) digit_pos.push_back({i, t});

    PureBayesianProfile cur;
    cur.maps.resize(game.n);
    for (int i = 0; i < game.n; ++i) cur.maps[i].assign(ts.size_at(i), 0);
    while (true) {
        BayesianProfile b = cur.as_bayesian(game);
        CorrelatedProfile induced = b.induced(game);
        bool worse_for_all = true;
        for (int i = 0; i < game.n && worse_for_all; ++i)
            worse_for_all = mu_util[i] > expected_utility(game, induced, i);
        if (worse_for_all &&
            check_k_bayesian_nash(game, b, k, ResilienceMode::resilient, budget).pass)
            return cur;
        std::size_t d = digit_pos.size();
        bool done = true;
        while (d-- > 0) {
            auto [i, t] = digit_pos[d];
            if (cur.maps[i][t] + 1 < as.size_at(i)) {
                ++cur.maps[i][t];
                for (std::size_t dd = d + 1; dd < digit_pos.size(); ++dd)
                    cur.maps[digit_pos[dd].first][digit_pos[dd].second] = 0;
                done = false;
                break;
            }
        }
        if (done) return std::nullopt;
    }
}

}  // namespace mediatorless
