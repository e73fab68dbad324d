#include "mediatorless/game_io.hpp"

#include <fstream>

namespace mediatorless {

namespace {
BigInt bigint_from_json(const Json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    throw std::invalid_argument("expected integer or string for big integer");
}

Json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(v.convert_to<long long>());
    return Json(v.str());
}

std::vector<int> profile_from_json(const Json& j) {
    return j.get<std::vector<int>>();
}
}  // namespace

Json rat_to_json(const Rat& r) {
    Json j;
    j["num"] = bigint_to_json(rat_num(r));
    j["den"] = bigint_to_json(rat_den(r));
    return j;
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(BigInt(j.get<long long>()));
    BigInt den = j.contains("den") ? bigint_from_json(j.at("den")) : BigInt(1);
    if (den == 0) throw std::invalid_argument("zero denominator in file");
    return Rat(bigint_from_json(j.at("num")), den);
}

Json game_to_json(const GameSpec& g) {
    Json j;
    j["schema"] = "mediatorless-game-v1";
    if (!g.name.empty()) j["name"] = g.name;
    j["players"] = g.n;
    j["types"] = g.type_labels;
    j["actions"] = g.action_labels;
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    Json prior = Json::array();
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        Json e;
        e["type_profile"] = ts.profile_of(t);
        e["num"] = bigint_to_json(rat_num(g.prior[t]));
        e["den"] = bigint_to_json(rat_den(g.prior[t]));
        prior.push_back(e);
    }
    j["prior"] = prior;
    Json utils = Json::array();
    for (std::int64_t t = 0; t < ts.size(); ++t)
        for (std::int64_t a = 0; a < as.size(); ++a) {
            if (!g.utility_defined[t * as.size() + a]) continue;
            Json e;
            e["type_profile"] = ts.profile_of(t);
            e["action_profile"] = as.profile_of(a);
            Json pays = Json::array();
            for (int i = 0; i < g.n; ++i) pays.push_back(rat_to_json(g.utility(t, a, i)));
            e["payoffs"] = pays;
            utils.push_back(e);
        }
    j["utilities"] = utils;
    return j;
}

GameSpec game_from_json(const Json& j) {
    if (j.value("schema", "") != "mediatorless-game-v1")
        throw std::invalid_argument("not a mediatorless-game-v1 document");
    GameSpec g;
    g.name = j.value("name", "");
    g.n = j.at("players").get<int>();
    g.type_labels = j.at("types").get<std::vector<std::vector<std::string>>>();
    g.action_labels = j.at("actions").get<std::vector<std::vector<std::string>>>();
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    g.prior.assign(ts.size(), Rat(0));
    for (const Json& e : j.at("prior"))
        g.prior[ts.index_of(profile_from_json(e.at("type_profile")))] = rat_from_json(e);
    g.init_tables();
    for (const Json& e : j.at("utilities")) {
        std::int64_t t = ts.index_of(profile_from_json(e.at("type_profile")));
        std::int64_t a = as.index_of(profile_from_json(e.at("action_profile")));
        std::vector<Rat> pays;
        for (const Json& p : e.at("payoffs")) pays.push_back(rat_from_json(p));
        if (static_cast<int>(pays.size()) != g.n)
            throw std::invalid_argument("payoff vector has wrong length");
        g.set_utility(t, a, pays);
    }
    return g;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

GameSpec load_game(const std::string& path) { return game_from_json(load_json_file(path)); }

void save_game(const GameSpec& g, const std::string& path) { save_json_file(game_to_json(g), path); }

CorrelatedProfile BayesianProfile::induced(const GameSpec& g) const {
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    CorrelatedProfile mu;
    mu.dist.assign(ts.size(), std::vector<Rat>(as.size(), Rat(0)));
    for (std::int64_t t = 0; t < ts.size(); ++t) {
        std::vector<int> tp = ts.profile_of(t);
        for (std::int64_t a = 0; a < as.size(); ++a) {
            std::vector<int> ap = as.profile_of(a);
            Rat p(1);
            for (int i = 0; i < g.n && p != 0; ++i) p *= strategies[i][tp[i]][ap[i]];
            mu.dist[t][a] = p;
        }
    }
    return mu;
}

CorrelatedProfile mu_from_json(const Json& j, const GameSpec& g) {
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    CorrelatedProfile mu;
    mu.dist.assign(ts.size(), std::vector<Rat>(as.size(), Rat(0)));
    for (const Json& e : j.at("mu")) {
        std::int64_t t = ts.index_of(profile_from_json(e.at("type_profile")));
        std::int64_t a = as.index_of(profile_from_json(e.at("action_profile")));
        mu.dist[t][a] = rat_from_json(e);
    }
    return mu;
}

Json mu_to_json(const CorrelatedProfile& mu, const GameSpec& g) {
    ProfileSpace ts = g.type_space();
    ProfileSpace as = g.action_space();
    Json j;
    j["schema"] = "mediatorless-profile-v1";
    j["kind"] = "comm";
    Json rows = Json::array();
    for (std::int64_t t = 0; t < ts.size(); ++t)
        for (std::int64_t a = 0; a < as.size(); ++a) {
            if (mu.dist[t][a] == 0) continue;
            Json e;
            e["type_profile"] = ts.profile_of(t);
            e["action_profile"] = as.profile_of(a);
            e["num"] = bigint_to_json(rat_num(mu.dist[t][a]));
            e["den"] = bigint_to_json(rat_den(mu.dist[t][a]));
            rows.push_back(e);
        }
    j["mu"] = rows;
    return j;
}

CorrelatedProfile load_mu(const std::string& path, const GameSpec& g) {
    return mu_from_json(load_json_file(path), g);
}

ProfileFile load_profile(const std::string& path, const GameSpec& g) {
    Json j = load_json_file(path);
    if (j.value("schema", "") != "mediatorless-profile-v1")
        throw std::invalid_argument("not a mediatorless-profile-v1 document");
    ProfileFile p{};
    std::string kind = j.at("kind").get<std::string>();
    ProfileSpace as = g.action_space();
    if (kind == "nash") {
        p.kind = ProfileKind::nash;
        for (const Json& row : j.at("strategies")) {
            std::vector<Rat> dist;
            for (const Json& e : row) dist.push_back(rat_from_json(e));
            p.mixed.strategies.push_back(dist);
        }
    } else if (kind == "correlated") {
        p.kind = ProfileKind::correlated;
        p.action_dist.assign(as.size(), Rat(0));
        for (const Json& e : j.at("dist"))
            p.action_dist[as.index_of(profile_from_json(e.at("action_profile")))] = rat_from_json(e);
    } else if (kind == "comm") {
        p.kind = ProfileKind::comm;
        p.mu = mu_from_json(j, g);
    } else if (kind == "bayesian-nash") {
        p.kind = ProfileKind::bayesian_nash;
        for (const Json& per_player : j.at("strategies")) {
            std::vector<std::vector<Rat>> per_type;
            for (const Json& row : per_player) {
                std::vector<Rat> dist;
                for (const Json& e : row) dist.push_back(rat_from_json(e));
                per_type.push_back(dist);
            }
            p.bayesian.strategies.push_back(per_type);
        }
    } else {
        throw std::invalid_argument("unknown profile kind: " + kind);
    }
    return p;
}

Json profile_to_json(const ProfileFile& p, const GameSpec& g) {
    Json j;
    j["schema"] = "mediatorless-profile-v1";
    ProfileSpace as = g.action_space();
    switch (p.kind) {
        case ProfileKind::nash: {
            j["kind"] = "nash";
            Json rows = Json::array();
            for (const auto& dist : p.mixed.strategies) {
                Json row = Json::array();
                for (const Rat& r : dist) row.push_back(rat_to_json(r));
                rows.push_back(row);
            }
            j["strategies"] = rows;
            break;
        }
        case ProfileKind::correlated: {
            j["kind"] = "correlated";
            Json rows = Json::array();
            for (std::int64_t a = 0; a < as.size(); ++a) {
                if (p.action_dist[a] == 0) continue;
                Json e;
                e["action_profile"] = as.profile_of(a);
                e["num"] = bigint_to_json(rat_num(p.action_dist[a]));
                e["den"] = bigint_to_json(rat_den(p.action_dist[a]));
                rows.push_back(e);
            }
            j["dist"] = rows;
            break;
        }
        case ProfileKind::comm:
            return mu_to_json(p.mu, g);
        case ProfileKind::bayesian_nash: {
            j["kind"] = "bayesian-nash";
            Json players = Json::array();
            for (const auto& per_type : p.bayesian.strategies) {
                Json types = Json::array();
                for (const auto& dist : per_type) {
                    Json row = Json::array();
                    for (const Rat& r : dist) row.push_back(rat_to_json(r));
                    types.push_back(row);
                }
                players.push_back(types);
            }
            j["strategies"] = players;
            break;
        }
    }
    return j;
}

}  // namespace mediatorless
