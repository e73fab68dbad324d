#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mediatorless/shamir.hpp"

using namespace mediatorless;

namespace {
std::vector<std::pair<std::uint64_t, FieldElem>> as_points(const ShareSet& s) {
    std::vector<std::pair<std::uint64_t, FieldElem>> pts;
    for (const auto& [i, y] : s.points) pts.push_back({static_cast<std::uint64_t>(i), y});
    return pts;
}
}  // namespace

TEST_CASE("hand sharing of 3 + 2x over F_7") {
    // Oracle: direct evaluation of 3 + 2x mod 7.
    Polynomial p;
    p.coeffs = {FieldElem{3, 7}, FieldElem{2, 7}};
    CHECK(p.eval_at(1).v == 5);
    CHECK(p.eval_at(2).v == 0);
    CHECK(p.eval_at(3).v == 2);
    CHECK(p.eval_at(4).v == 4);
}

TEST_CASE("share draws a degree-k polynomial through the secret") {
    Rng rng(7);
    ShareSet s = share_secret(FieldElem{3, 7}, 1, 4, rng);
    Polynomial p = interpolate_shares(as_points(s), 1);
    CHECK(p.coeffs[0].v == 3);
    CHECK(s.points.size() == 4);
}

TEST_CASE("degree 0 sharing is constant") {
    Rng rng(1);
    ShareSet s = share_secret(FieldElem{5, 7}, 0, 4, rng);
    for (const auto& [i, y] : s.points) CHECK(y.v == 5);
}

TEST_CASE("all-zero polynomial shares zero everywhere") {
    Polynomial p;
    p.coeffs = {FieldElem{0, 7}, FieldElem{0, 7}};
    for (std::uint64_t x = 1; x <= 4; ++x) CHECK(p.eval_at(x).v == 0);
}

TEST_CASE("share parameter errors") {
    Rng rng(1);
    CHECK_THROWS_AS((void)share_secret(FieldElem{3, 7}, 4, 4, rng), std::invalid_argument);
    CHECK_THROWS_AS((void)share_secret(FieldElem{3, 5}, 1, 5, rng), std::invalid_argument);
}

TEST_CASE("interpolate recovers 3 + 2x from two points") {
    // Oracle: solve the 2x2 system mod 7 by hand: p(1)=5, p(2)=0 -> (3, 2).
    std::vector<std::pair<std::uint64_t, FieldElem>> pts{{1, {5, 7}}, {2, {0, 7}}};
    Polynomial p = interpolate_shares(pts, 1);
    CHECK(p.coeffs[0].v == 3);
    CHECK(p.coeffs[1].v == 2);
}

TEST_CASE("interpolate single point at degree 0") {
    std::vector<std::pair<std::uint64_t, FieldElem>> pts{{2, {4, 7}}};
    Polynomial p = interpolate_shares(pts, 0);
    CHECK(p.coeffs[0].v == 4);
}

TEST_CASE("interpolate reports disagreeing points") {
    // 3 + 2*3 = 2 != 3, so x=3 is inconsistent.
    std::vector<std::pair<std::uint64_t, FieldElem>> pts{{1, {5, 7}}, {2, {0, 7}}, {3, {3, 7}}};
    try {
        (void)interpolate_shares(pts, 1);
        FAIL("expected ShareInconsistency");
    } catch (const ShareInconsistency& e) {
        REQUIRE(e.offending.size() == 1);
        CHECK(e.offending[0] == 3);
    }
    CHECK_THROWS_AS((void)lagrange_interpolate({{1, {5, 7}}, {1, {6, 7}}}), std::invalid_argument);
}

TEST_CASE("robust reconstruct corrects one corrupted point") {
    // Points of 3 + 2x with the x=2 point overwritten; subset enumeration
    // confirms the only consistent line is the original.
    std::vector<std::pair<std::uint64_t, FieldElem>> pts{
        {1, {5, 7}}, {2, {6, 7}}, {3, {2, 7}}, {4, {4, 7}}};
    ReconstructResult r = robust_reconstruct(pts, 1);
    REQUIRE(r.ok());
    CHECK(r.secret.v == 3);
}

TEST_CASE("robust reconstruct on honest data matches interpolate") {
    Rng rng(99);
    ShareSet s = share_secret(FieldElem{6, 7}, 1, 4, rng);
    auto pts = as_points(s);
    ReconstructResult r = robust_reconstruct(pts, 1);
    REQUIRE(r.ok());
    CHECK(r.poly.coeffs == interpolate_shares(pts, 1).coeffs);
}

TEST_CASE("too few points is an explicit failure") {
    std::vector<std::pair<std::uint64_t, FieldElem>> pts{{1, {5, 7}}, {2, {0, 7}}};
    CHECK(robust_reconstruct(pts, 1).status == ReconstructStatus::insufficient_points);
}

TEST_CASE("perfect secrecy of single shares over F_5") {
    // For every secret, enumerate all dealer randomness (the one free
    // coefficient) and check each player's share is uniform.
    const std::uint64_t q = 5;
    for (int player = 1; player <= 4; ++player) {
        std::map<std::uint64_t, std::map<std::uint64_t, int>> counts;  // secret -> share -> count
        for (std::uint64_t secret = 0; secret < q; ++secret)
            for (std::uint64_t c = 0; c < q; ++c) {
                Polynomial p;
                p.coeffs = {FieldElem{secret, q}, FieldElem{c, q}};
                counts[secret][p.eval_at(player).v]++;
            }
        for (std::uint64_t secret = 0; secret < q; ++secret) {
            REQUIRE(counts[secret].size() == q);
            for (const auto& [share, c] : counts[secret]) CHECK(c == 1);
        }
    }
}

TEST_CASE("exhaustive decode correctness at k=1") {
    // Every secret, every honest polynomial, every corruption of at most one
    // share, over F_5 and F_7 with n in {4, 5}.
    for (std::uint64_t q : {5ull, 7ull}) {
        for (int n : {4, 5}) {
            if (static_cast<std::uint64_t>(n) >= q) continue;
            for (std::uint64_t secret = 0; secret < q; ++secret)
                for (std::uint64_t c = 0; c < q; ++c) {
                    Polynomial p;
                    p.coeffs = {FieldElem{secret, q}, FieldElem{c, q}};
                    std::vector<std::pair<std::uint64_t, FieldElem>> honest;
                    for (int i = 1; i <= n; ++i)
                        honest.push_back({static_cast<std::uint64_t>(i), p.eval_at(i)});
                    ReconstructResult r0 = robust_reconstruct(honest, 1);
                    REQUIRE(r0.ok());
                    CHECK(r0.secret.v == secret);
                    for (int pos = 0; pos < n; ++pos)
                        for (std::uint64_t wrong = 0; wrong < q; ++wrong) {
                            if (wrong == honest[pos].second.v) continue;
                            auto pts = honest;
                            pts[pos].second = FieldElem{wrong, q};
                            ReconstructResult r = robust_reconstruct(pts, 1);
                            REQUIRE(r.ok());
                            CHECK(r.secret.v == secret);
                        }
                }
        }
    }
}

TEST_CASE("berlekamp-welch equals subset search including failures") {
    // Two corruptions at k=1, n=4 exceed the bound; both decoders must agree
    // (robust_reconstruct asserts this internally on every call).
    const std::uint64_t q = 7;
    Polynomial p;
    p.coeffs = {FieldElem{3, q}, FieldElem{2, q}};
    std::vector<std::pair<std::uint64_t, FieldElem>> pts;
    for (int i = 1; i <= 4; ++i) pts.push_back({static_cast<std::uint64_t>(i), p.eval_at(i)});
    pts[0].second = FieldElem{(pts[0].second.v + 1) % q, q};
    pts[1].second = FieldElem{(pts[1].second.v + 3) % q, q};
    ReconstructResult r = robust_reconstruct(pts, 1);
    // With two lies among four points no line fits 3 of them in general;
    // whatever the verdict, it must be consistent across decoders (checked
    // inside) and never silently wrong.
    if (r.ok()) CHECK(r.poly.degree() <= 1);
}

TEST_CASE("share then interpolate round trip") {
    Rng rng(1234);
    for (std::uint64_t q : {11ull, 13ull})
        for (std::size_t k : {1ul, 2ul})
            for (int trial = 0; trial < 20; ++trial) {
                FieldElem secret{rng.below(q), q};
                ShareSet s = share_secret(secret, k, 5, rng);
                Polynomial p = interpolate_shares(as_points(s), k);
                CHECK(p.coeffs[0] == secret);
            }
}
