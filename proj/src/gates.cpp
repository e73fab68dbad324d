#include "mediatorless/gates.hpp"

#include <algorithm>
#include <map>

namespace mediatorless {

SharedValue gate_add(const SharedValue& a, const SharedValue& b) {
    if (a.shares.size() != b.shares.size()) throw std::invalid_argument("share count mismatch");
    if (a.degree != b.degree) throw std::invalid_argument("degree mismatch");
    if (!a.shares.empty() && a.shares[0].q != b.shares[0].q)
        throw std::invalid_argument("field mismatch");
    SharedValue out;
    out.degree = a.degree;
    for (std::size_t i = 0; i < a.shares.size(); ++i) out.shares.push_back(a.shares[i] + b.shares[i]);
    return out;
}

int Circuit::add_input() {
    nodes.push_back({Node::Kind::input, -1, -1, {}, {}});
    ++inputs;
    return static_cast<int>(nodes.size()) - 1;
}
int Circuit::add_mul(int a, int b) {
    if (a < 0 || b < 0 || a >= static_cast<int>(nodes.size()) || b >= static_cast<int>(nodes.size()))
        throw std::invalid_argument("mul operand out of range");
    nodes.push_back({Node::Kind::mul, a, b, {}, {}});
    return static_cast<int>(nodes.size()) - 1;
}
int Circuit::add_affine(FieldElem constant, std::vector<std::pair<FieldElem, int>> terms) {
    for (const auto& [c, idx] : terms)
        if (idx < 0 || idx >= static_cast<int>(nodes.size()))
            throw std::invalid_argument("affine operand out of range");
    nodes.push_back({Node::Kind::affine, -1, -1, std::move(terms), constant});
    return static_cast<int>(nodes.size()) - 1;
}
int Circuit::mul_count() const {
    int c = 0;
    for (const auto& nd : nodes) c += nd.kind == Node::Kind::mul ? 1 : 0;
    return c;
}

std::optional<Polynomial> decode_reveal(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                        std::size_t deg, int k) {
    std::size_t m = points.size();
    if (m < deg + 1) return std::nullopt;
    std::size_t min_agree = std::max<std::size_t>(2 * k + 1, m >= static_cast<std::size_t>(k) ? m - k : 0);
    if (m <= kSubsetSearchMaxPoints) {
        auto bw = berlekamp_welch(points, deg, min_agree);
        auto ss = subset_search_decode(points, deg, min_agree);
        // subset search refuses ambiguous decodes; trust it and keep BW as a
        // parity check where both land
        if (ss && bw && !(ss->coeffs == bw->coeffs))
            throw std::logic_error("reveal decoders disagree");
        return ss;
    }
    return berlekamp_welch(points, deg, min_agree);
}

namespace {
constexpr std::uint32_t kMaskInstance = 3000;
constexpr std::uint32_t kRevealInstanceBase = 3001;
}  // namespace

CircuitResult evaluate_circuit(SyncNetwork& net, int k, std::uint64_t q, const Circuit& circuit,
                               const std::vector<SharedValue>& inputs, Rng& rng,
                               const AdversaryScript& adversary) {
    const int n = net.n();
    if (static_cast<int>(inputs.size()) != circuit.inputs)
        throw std::invalid_argument("wrong number of circuit inputs");
    for (const SharedValue& in : inputs) {
        if (static_cast<int>(in.shares.size()) != n)
            throw std::invalid_argument("input sharing has wrong width");
        if (in.degree != static_cast<std::size_t>(k))
            throw std::invalid_argument("inputs must be degree-k sharings");
    }

    // assign gate indices to multiplication nodes
    std::map<int, int> gate_of_node;
    for (int idx = 0; idx < static_cast<int>(circuit.nodes.size()); ++idx)
        if (circuit.nodes[idx].kind == Circuit::Node::Kind::mul) {
            int g = static_cast<int>(gate_of_node.size());
            gate_of_node[idx] = g;
        }
    const int G = static_cast<int>(gate_of_node.size());

    // mask contributions: every player deals, for every gate, two random
    // degree-k polynomials; one batched round
    std::vector<std::vector<Polynomial>> my_rho(n), my_sigma(n);
    if (G > 0) {
        for (int d = 0; d < n; ++d)
            for (int g = 0; g < G; ++g) {
                my_rho[d].push_back(random_polynomial(rng, q, k, random_field_elem(rng, q)));
                my_sigma[d].push_back(random_polynomial(rng, q, k, random_field_elem(rng, q)));
            }
        for (int d = 0; d < n; ++d)
            for (int j = 0; j < n; ++j) {
                if (j == d) continue;
                SubMsg msg;
                msg.instance = kMaskInstance;
                msg.kind = kind_mask_deal;
                for (int g = 0; g < G; ++g) {
                    msg.vals.push_back(my_rho[d][g].eval_at(j + 1).v);
                    msg.vals.push_back(my_sigma[d][g].eval_at(j + 1).v);
                }
                net.send(d, j, msg);
            }
        net.advance_round(adversary);
    }
    // per player per gate: accumulated mask shares
    std::vector<std::vector<FieldElem>> rho(n, std::vector<FieldElem>(G, FieldElem{0, q}));
    std::vector<std::vector<FieldElem>> sigma(n, std::vector<FieldElem>(G, FieldElem{0, q}));
    if (G > 0) {
        for (int p = 0; p < n; ++p) {
            for (int g = 0; g < G; ++g) {
                rho[p][g] = rho[p][g] + my_rho[p][g].eval_at(p + 1);
                sigma[p][g] = sigma[p][g] + my_sigma[p][g].eval_at(p + 1);
            }
            for (const HRecv& rv : net.inbox(p)) {
                if (rv.bot || rv.msg.kind != kind_mask_deal) continue;
                if (rv.msg.vals.size() != static_cast<std::size_t>(2 * G)) continue;
                for (int g = 0; g < G; ++g) {
                    rho[p][g] = rho[p][g] + FieldElem{rv.msg.vals[2 * g] % q, q};
                    sigma[p][g] = sigma[p][g] + FieldElem{rv.msg.vals[2 * g + 1] % q, q};
                }
            }
        }
    }

    // evaluate level by level
    std::vector<std::vector<std::optional<FieldElem>>> val(
        n, std::vector<std::optional<FieldElem>>(circuit.nodes.size()));
    std::vector<bool> player_aborted(n, false);
    CircuitResult result;

    auto local_propagate = [&] {
        for (int idx = 0; idx < static_cast<int>(circuit.nodes.size()); ++idx) {
            const auto& nd = circuit.nodes[idx];
            for (int p = 0; p < n; ++p) {
                if (val[p][idx]) continue;
                if (nd.kind == Circuit::Node::Kind::input) {
                    int which = 0;
                    for (int j = 0; j < idx; ++j)
                        which += circuit.nodes[j].kind == Circuit::Node::Kind::input ? 1 : 0;
                    val[p][idx] = inputs[which].shares[p];
                } else if (nd.kind == Circuit::Node::Kind::affine) {
                    bool ready = true;
                    for (const auto& [c, src] : nd.terms) ready = ready && val[p][src].has_value();
                    if (!ready) continue;
                    FieldElem acc = nd.constant.q ? nd.constant : FieldElem{0, q};
                    for (const auto& [c, src] : nd.terms) acc = acc + c * (*val[p][src]);
                    val[p][idx] = acc;
                }
            }
        }
    };

    int level = 0;
    while (true) {
        local_propagate();
        // multiplication nodes whose operands are ready everywhere
        std::vector<int> batch;
        for (const auto& [idx, g] : gate_of_node) {
            if (val[0][idx]) continue;
            bool ready = true;
            for (int p = 0; p < n; ++p)
                ready = ready && val[p][circuit.nodes[idx].a] && val[p][circuit.nodes[idx].b];
            if (ready) batch.push_back(idx);
        }
        if (batch.empty()) break;

        for (int p = 0; p < n; ++p) {
            SubMsg msg;
            msg.instance = kRevealInstanceBase + level;
            msg.kind = kind_gate_reveal;
            for (int idx : batch) {
                int g = gate_of_node[idx];
                FieldElem prod = (*val[p][circuit.nodes[idx].a]) * (*val[p][circuit.nodes[idx].b]);
                FieldElem xk = fe_pow(FieldElem{static_cast<std::uint64_t>(p + 1), q},
                                      static_cast<std::uint64_t>(k));
                FieldElem u = prod - rho[p][g] - xk * sigma[p][g];
                msg.vals.push_back(static_cast<std::uint64_t>(g));
                msg.vals.push_back(u.v);
            }
            for (int to = 0; to < n; ++to)
                if (to != p) net.send(p, to, msg);
            // loopback
            for (int idx : batch) {
                (void)idx;
            }
        }
        // stash own reveal values before the round advances
        std::vector<std::map<int, std::vector<std::pair<std::uint64_t, FieldElem>>>> pts(n);
        for (int p = 0; p < n; ++p)
            for (int idx : batch) {
                int g = gate_of_node[idx];
                FieldElem prod = (*val[p][circuit.nodes[idx].a]) * (*val[p][circuit.nodes[idx].b]);
                FieldElem xk = fe_pow(FieldElem{static_cast<std::uint64_t>(p + 1), q},
                                      static_cast<std::uint64_t>(k));
                FieldElem u = prod - rho[p][g] - xk * sigma[p][g];
                pts[p][g].push_back({static_cast<std::uint64_t>(p + 1), u});
            }
        net.advance_round(adversary);
        for (int p = 0; p < n; ++p)
            for (const HRecv& rv : net.inbox(p)) {
                if (rv.bot || rv.msg.kind != kind_gate_reveal) continue;
                if (rv.msg.instance != kRevealInstanceBase + level) continue;
                for (std::size_t i = 0; i + 1 < rv.msg.vals.size(); i += 2) {
                    int g = static_cast<int>(rv.msg.vals[i]);
                    pts[p][g].push_back(
                        {static_cast<std::uint64_t>(rv.from + 1), FieldElem{rv.msg.vals[i + 1] % q, q}});
                }
            }
        for (int idx : batch) {
            int g = gate_of_node[idx];
            for (int p = 0; p < n; ++p) {
                if (player_aborted[p]) continue;
                auto& my = pts[p][g];
                std::sort(my.begin(), my.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                auto poly = decode_reveal(my, 2 * static_cast<std::size_t>(k), k);
                if (!poly) {
                    player_aborted[p] = true;
                    if (!adversary.is_member(p) && !result.aborted) {
                        result.aborted = true;
                        result.abort = {g, "reveal decode failed"};
                    }
                    continue;
                }
                val[p][idx] = poly->coeffs[0] + rho[p][g];
            }
        }
        if (result.aborted) return result;
        ++level;
    }
    local_propagate();

    for (int out_node : circuit.outputs)
        for (int p = 0; p < n; ++p)
            if (!val[p][out_node] && !player_aborted[p])
                throw std::logic_error("circuit evaluation incomplete");
    result.per_player_outputs.assign(n, {});
    for (int out_node : circuit.outputs) {
        SharedValue sv;
        sv.degree = k;
        for (int p = 0; p < n; ++p) {
            FieldElem share = val[p][out_node] ? *val[p][out_node] : FieldElem{0, q};
            sv.shares.push_back(share);
            result.per_player_outputs[p].push_back(share);
        }
        result.outputs.push_back(std::move(sv));
    }
    return result;
}

MulResult gate_multiply(SyncNetwork& net, int k, std::uint64_t q, const SharedValue& a,
                        const SharedValue& b, Rng& rng, const AdversaryScript& adversary) {
    Circuit c;
    int ia = c.add_input();
    int ib = c.add_input();
    c.outputs.push_back(c.add_mul(ia, ib));
    CircuitResult r = evaluate_circuit(net, k, q, c, {a, b}, rng, adversary);
    MulResult out;
    out.aborted = r.aborted;
    if (r.aborted)
        out.reason = r.abort.reason;
    else
        out.product = r.outputs[0];
    return out;
}

}  // namespace mediatorless
