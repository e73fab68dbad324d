#include "mediatorless/shamir.hpp"

#include <algorithm>

namespace mediatorless {

ShareSet share_secret(const FieldElem& secret, std::size_t k, int n, Rng& rng,
                      int dealer, std::string secret_id) {
    if (static_cast<std::uint64_t>(n) >= secret.q)
        throw std::invalid_argument("need n < q");
    if (k >= static_cast<std::size_t>(n))
        throw std::invalid_argument("need degree k < n");
    Polynomial p = random_polynomial(rng, secret.q, k, secret);
    ShareSet s;
    s.dealer = dealer;
    s.secret_id = std::move(secret_id);
    s.degree = k;
    for (int i = 1; i <= n; ++i) s.points[i] = p.eval_at(static_cast<std::uint64_t>(i));
    return s;
}

Polynomial interpolate_shares(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                              std::size_t k) {
    if (points.size() < k + 1) throw std::invalid_argument("need at least k+1 points");
    std::vector<std::pair<std::uint64_t, FieldElem>> head(points.begin(), points.begin() + k + 1);
    Polynomial p = lagrange_interpolate(head);
    std::vector<std::uint64_t> offending;
    for (std::size_t i = k + 1; i < points.size(); ++i)
        if (!(p.eval_at(points[i].first) == points[i].second)) offending.push_back(points[i].first);
    if (!offending.empty()) throw ShareInconsistency(std::move(offending));
    return p;
}

namespace {

std::size_t agreement_count(const Polynomial& p,
                            const std::vector<std::pair<std::uint64_t, FieldElem>>& points) {
    std::size_t c = 0;
    for (const auto& [x, y] : points)
        if (p.eval_at(x) == y) ++c;
    return c;
}

// Gaussian elimination over F_q; returns one solution of A z = b or nullopt.
std::optional<std::vector<FieldElem>> solve_linear(std::vector<std::vector<FieldElem>> a,
                                                   std::vector<FieldElem> b, std::uint64_t q) {
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].v == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        FieldElem inv = fe_inv(a[r][c]);
        for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] = a[r][cc] * inv;
        b[r] = b[r] * inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || a[rr][c].v == 0) continue;
            FieldElem f = a[rr][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[rr][cc] = a[rr][cc] - f * a[r][cc];
            b[rr] = b[rr] - f * b[r];
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr)
        if (b[rr].v != 0) return std::nullopt;  // inconsistent
    std::vector<FieldElem> z(cols, FieldElem{0, q});
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) z[pivot_col_of_row[i]] = b[i];
    return z;
}

// Divides num by den, returning the quotient iff the remainder is zero.
std::optional<Polynomial> exact_divide(const Polynomial& num, const Polynomial& den) {
    std::uint64_t q = den.q();
    std::vector<FieldElem> rem = num.coeffs;
    std::size_t dd = den.degree();
    if (den.coeffs[dd].v == 0) return std::nullopt;
    if (rem.size() < dd + 1) return std::nullopt;
    std::vector<FieldElem> quot(rem.size() - dd, FieldElem{0, q});
    FieldElem lead_inv = fe_inv(den.coeffs[dd]);
    for (std::size_t i = rem.size(); i-- > dd;) {
        FieldElem f = rem[i] * lead_inv;
        quot[i - dd] = f;
        if (f.v == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j)
            rem[i - dd + j] = rem[i - dd + j] - f * den.coeffs[j];
    }
    for (const FieldElem& c : rem)
        if (c.v != 0) return std::nullopt;
    Polynomial out;
    out.coeffs = std::move(quot);
    if (out.coeffs.empty()) out.coeffs.push_back(FieldElem{0, q});
    return out;
}

}  // namespace

std::optional<Polynomial> berlekamp_welch(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                          std::size_t k, std::size_t min_agree) {
    if (points.empty()) return std::nullopt;
    std::uint64_t q = points[0].second.q;
    std::size_t m = points.size();
    std::size_t e_cap = m >= k + 1 ? (m - k - 1) / 2 : 0;
    std::size_t e_max = std::min(k, e_cap);
    for (std::size_t e = e_max + 1; e-- > 0;) {
        // Unknowns: Q coefficients (deg <= k+e) then E coefficients below the
        // monic leading term (deg e). Constraint per point: Q(x) - y*E(x) = 0
        // with E = x^e + sum E_j x^j, i.e. Q(x) - y*sum E_j x^j = y x^e.
        std::size_t nq = k + e + 1;
        std::size_t cols = nq + e;
        std::vector<std::vector<FieldElem>> a(m, std::vector<FieldElem>(cols, FieldElem{0, q}));
        std::vector<FieldElem> b(m, FieldElem{0, q});
        for (std::size_t i = 0; i < m; ++i) {
            FieldElem x{points[i].first % q, q};
            FieldElem y = points[i].second;
            FieldElem xp{1, q};
            for (std::size_t j = 0; j < nq; ++j) {
                a[i][j] = xp;
                if (j < e) a[i][nq + j] = -(y * xp);
                xp = xp * x;
            }
            b[i] = y * fe_pow(x, e);
        }
        auto sol = solve_linear(std::move(a), std::move(b), q);
        if (!sol) continue;
        Polynomial qpoly, epoly;
        qpoly.coeffs.assign(sol->begin(), sol->begin() + nq);
        epoly.coeffs.assign(sol->begin() + nq, sol->end());
        epoly.coeffs.push_back(FieldElem{1, q});  // monic
        auto p = exact_divide(qpoly, epoly);
        if (!p) continue;
        if (p->degree() > k) continue;
        p->coeffs.resize(k + 1, FieldElem{0, q});
        if (agreement_count(*p, points) >= min_agree) return p;
    }
    return std::nullopt;
}

namespace {

// All distinct degree-<=k polynomials hitting >= min_agree of the points.
// More than one candidate means > k corruptions.
std::vector<Polynomial> subset_candidates(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                          std::size_t k, std::size_t min_agree) {
    std::vector<Polynomial> found;
    std::size_t m = points.size();
    if (m < k + 1) return found;
    std::vector<std::size_t> idx(k + 1);
    for (std::size_t i = 0; i <= k; ++i) idx[i] = i;
    while (true) {
        std::vector<std::pair<std::uint64_t, FieldElem>> pts;
        for (std::size_t i : idx) pts.push_back(points[i]);
        Polynomial p = lagrange_interpolate(pts);
        if (agreement_count(p, points) >= min_agree) {
            p.coeffs.resize(k + 1, FieldElem{0, points[0].second.q});
            bool dup = false;
            for (const Polynomial& f : found) dup = dup || f.coeffs == p.coeffs;
            if (!dup) found.push_back(p);
        }
        std::size_t i = k + 1;
        while (i-- > 0) {
            if (idx[i] != i + m - (k + 1)) {
                ++idx[i];
                for (std::size_t j = i + 1; j <= k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return found;
        }
    }
}

}  // namespace

std::optional<Polynomial> subset_search_decode(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                               std::size_t k, std::size_t min_agree) {
    auto cands = subset_candidates(points, k, min_agree);
    if (cands.size() != 1) return std::nullopt;
    return cands[0];
}

ReconstructResult robust_reconstruct(const std::vector<std::pair<std::uint64_t, FieldElem>>& points,
                                     std::size_t k) {
    ReconstructResult res;
    if (points.size() < 2 * k + 1) {
        res.status = ReconstructStatus::insufficient_points;
        return res;
    }
    std::size_t min_agree = 2 * k + 1;
    auto bw = berlekamp_welch(points, k, min_agree);
    if (points.size() <= kSubsetSearchMaxPoints) {
        auto cands = subset_candidates(points, k, min_agree);
        if (cands.size() > 1) {
            // Only reachable past the fault bound; refuse to pick.
            res.status = ReconstructStatus::decode_failure;
            return res;
        }
        bool ss_ok = cands.size() == 1;
        if (bw.has_value() != ss_ok || (ss_ok && !(bw->coeffs == cands[0].coeffs)))
            throw std::logic_error("berlekamp-welch and subset search disagree");
    }
    if (!bw) {
        res.status = ReconstructStatus::decode_failure;
        return res;
    }
    res.status = ReconstructStatus::ok;
    res.poly = *bw;
    res.secret = bw->coeffs[0];
    return res;
}

}  // namespace mediatorless
