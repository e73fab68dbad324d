#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mediatorless/field.hpp"
#include "mediatorless/prng.hpp"

namespace mediatorless {

// Degree-k Shamir sharing: evaluation point of player i is x = i (1-based).
struct ShareSet {
    int dealer = 0;
    std::string secret_id;
    std::map<int, FieldElem> points;  // player index -> share
    std::size_t degree = 0;
};

struct ShareInconsistency : std::runtime_error {
    explicit ShareInconsistency(std::vector<std::uint64_t> xs)
        : std::runtime_error("supplied points do not lie on one polynomial"), offending(std::move(xs)) {}
    std::vector<std::uint64_t> offending;
};

// Coefficients c_1..c_k drawn uniformly; point i = p(i), p(0) = secret.
ShareSet share_secret(const FieldElem& secret, std::size_t k, int n, Rng& rng,
                      int dealer = 0, std::string secret_id = {});

// Interpolates the first k+1 points and verifies the rest agree.
Polynomial interpolate_shares(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                              std::size_t k);

enum class ReconstructStatus { ok, insufficient_points, decode_failure };

struct ReconstructResult {
    ReconstructStatus status = ReconstructStatus::decode_failure;
    FieldElem secret;
    Polynomial poly;

    bool ok() const { return status == ReconstructStatus::ok; }
};

// Succeeds iff some degree-<=k polynomial agrees with >= 2k+1 of the supplied
// points; Berlekamp-Welch decoding, cross-checked against exhaustive
// (k+1)-subset search when few points are supplied.
ReconstructResult robust_reconstruct(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                     std::size_t k);

// The two decoders individually, exposed for the equivalence tests.
std::optional<Polynomial> berlekamp_welch(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                          std::size_t k, std::size_t min_agree);
std::optional<Polynomial> subset_search_decode(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                               std::size_t k, std::size_t min_agree);

inline constexpr std::size_t kSubsetSearchMaxPoints = 8;

}  // namespace mediatorless
