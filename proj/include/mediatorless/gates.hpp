#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mediatorless/field.hpp"
#include "mediatorless/network.hpp"
#include "mediatorless/shamir.hpp"

namespace mediatorless {

// A value shared across the players: entry i is player i's share (the point
// of the sharing polynomial at x = i+1).
struct SharedValue {
    std::vector<FieldElem> shares;
    std::size_t degree = 0;
};

// Addition is local: pointwise sum of shares.
SharedValue gate_add(const SharedValue& a, const SharedValue& b);

// Circuit over shared inputs. Affine nodes (public linear combinations plus
// a constant) are free; multiplications cost one re-randomize-and-reveal
// round each, batched by depth.
struct Circuit {
    struct Node {
        enum class Kind { input, mul, affine } kind = Kind::input;
        int a = -1, b = -1;                 // mul operands
        std::vector<std::pair<FieldElem, int>> terms;  // affine terms
        FieldElem constant;                 // affine constant
    };
    std::vector<Node> nodes;
    int inputs = 0;
    std::vector<int> outputs;

    int add_input();
    int add_mul(int a, int b);
    int add_affine(FieldElem constant, std::vector<std::pair<FieldElem, int>> terms);
    int mul_count() const;
};

// Degree reduction for one multiplication: both operands at degree k; each
// player reveals its locally multiplied share masked by a fresh random
// degree-k sharing r plus x^k times a second one, then everyone decodes the
// degree-2k codeword and keeps c(0) + r_i. Lies are corrected when
// n >= 4k+1; with 3k+1 <= n < 4k+1 they are detected and the gate aborts.
struct GateAbort {
    int gate = -1;
    std::string reason;
};

struct CircuitResult {
    bool aborted = false;
    GateAbort abort;
    std::vector<SharedValue> outputs;
    // per-player view of each output (shares held by that player)
    std::vector<std::vector<FieldElem>> per_player_outputs;  // [player][output]
};

// Evaluates the circuit over the network. `inputs[i]` are degree-k sharings.
// Mask contributions for every multiplication are dealt in one batched round
// up front; multiplications then run one reveal round per depth level.
CircuitResult evaluate_circuit(SyncNetwork& net, int k, std::uint64_t q, const Circuit& circuit,
                               const std::vector<SharedValue>& inputs, Rng& rng,
                               const AdversaryScript& adversary);

// Single multiplication as a standalone operation (used by tests and by the
// spec-level gate API); internally a one-gate circuit.
struct MulResult {
    bool aborted = false;
    std::string reason;
    SharedValue product;
};
MulResult gate_multiply(SyncNetwork& net, int k, std::uint64_t q, const SharedValue& a,
                        const SharedValue& b, Rng& rng, const AdversaryScript& adversary);

// Reveal decoding: a degree-`deg` polynomial must agree with all but at most
// k of the received points (and at least 2k+1 of them).
std::optional<Polynomial> decode_reveal(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                        std::size_t deg, int k);

}  // namespace mediatorless
