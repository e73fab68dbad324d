#include "mediatorless/field.hpp"

#include <stdexcept>

namespace mediatorless {

Polynomial lagrange_interpolate(const std::vector<std::pair<std::uint64_t, FieldElem>>& points) {
    if (points.empty()) throw std::invalid_argument("interpolating empty point set");
    std::uint64_t q = points[0].second.q;
    std::size_t m = points.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("duplicate x-coordinate in interpolation");

    Polynomial result;
    result.coeffs.assign(m, FieldElem{0, q});
    // basis accumulates Π (x - x_j) / (x_i - x_j) for each i.
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<FieldElem> basis{FieldElem{1, q}};
        FieldElem denom{1, q};
        FieldElem xi{points[i].first, q};
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            FieldElem xj{points[j].first, q};
            // basis *= (x - xj)
            std::vector<FieldElem> next(basis.size() + 1, FieldElem{0, q});
            for (std::size_t d = 0; d < basis.size(); ++d) {
                next[d + 1] = next[d + 1] + basis[d];
                next[d] = next[d] - basis[d] * xj;
            }
            basis = std::move(next);
            denom = denom * (xi - xj);
        }
        FieldElem scale = points[i].second / denom;
        for (std::size_t d = 0; d < basis.size(); ++d)
            result.coeffs[d] = result.coeffs[d] + basis[d] * scale;
    }
    return result;
}

std::vector<FieldElem> lagrange_weights_at(const std::vector<std::uint64_t>& xs, std::uint64_t q,
                                           std::uint64_t at) {
    std::size_t m = xs.size();
    std::vector<FieldElem> w(m, FieldElem{1, q});
    FieldElem target{at % q, q};
    for (std::size_t i = 0; i < m; ++i) {
        FieldElem xi{xs[i] % q, q};
        FieldElem num{1, q}, den{1, q};
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            FieldElem xj{xs[j] % q, q};
            num = num * (target - xj);
            den = den * (xi - xj);
        }
        w[i] = num / den;
    }
    return w;
}

}  // namespace mediatorless
