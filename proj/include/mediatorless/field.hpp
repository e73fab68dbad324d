#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mediatorless/prng.hpp"

namespace mediatorless {

// Value in the prime field F_q. Elements carry their modulus; mixing moduli
// is a usage error.
struct FieldElem {
    std::uint64_t v = 0;
    std::uint64_t q = 0;

    FieldElem() = default;
    FieldElem(std::uint64_t value, std::uint64_t modulus) : v(value % modulus), q(modulus) {}

    bool operator==(const FieldElem& o) const = default;
};

namespace detail {
inline void check_same_field(const FieldElem& a, const FieldElem& b) {
    if (a.q != b.q) throw std::invalid_argument("field modulus mismatch");
}
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}
}  // namespace detail

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    detail::check_same_field(a, b);
    std::uint64_t s = a.v + b.v;
    if (s >= a.q) s -= a.q;
    return {s, a.q};
}
inline FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    detail::check_same_field(a, b);
    return {a.v >= b.v ? a.v - b.v : a.v + a.q - b.v, a.q};
}
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    detail::check_same_field(a, b);
    return {detail::mulmod(a.v, b.v, a.q), a.q};
}
inline FieldElem operator-(const FieldElem& a) {
    return {a.v == 0 ? 0 : a.q - a.v, a.q};
}

inline FieldElem fe_pow(FieldElem base, std::uint64_t e) {
    FieldElem r{1, base.q};
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

inline FieldElem fe_inv(const FieldElem& a) {
    if (a.v == 0) throw std::domain_error("inverse of zero");
    return fe_pow(a, a.q - 2);  // q prime
}

inline FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    return a * fe_inv(b);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t smallest_prime_above(std::uint64_t n) {
    std::uint64_t p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

inline FieldElem random_field_elem(Rng& rng, std::uint64_t q) {
    return {rng.below(q), q};
}

// Dense polynomial over F_q, coefficient order c0 + c1 x + c2 x^2 + ...
struct Polynomial {
    std::vector<FieldElem> coeffs;

    std::uint64_t q() const { return coeffs.empty() ? 0 : coeffs[0].q; }
    std::size_t degree_bound() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    FieldElem eval(const FieldElem& x) const {
        FieldElem acc{0, x.q};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    FieldElem eval_at(std::uint64_t x) const { return eval(FieldElem{x, q()}); }

    // True degree, treating the zero polynomial as degree 0.
    std::size_t degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i].v != 0) return i;
        return 0;
    }
};

inline Polynomial random_polynomial(Rng& rng, std::uint64_t q, std::size_t degree,
                                    FieldElem constant_term) {
    Polynomial p;
    p.coeffs.resize(degree + 1, FieldElem{0, q});
    p.coeffs[0] = constant_term;
    for (std::size_t i = 1; i <= degree; ++i) p.coeffs[i] = random_field_elem(rng, q);
    return p;
}

// Unique polynomial of degree < points.size() through the given points, in
// coefficient form. x-coordinates must be distinct.
Polynomial lagrange_interpolate(const std::vector<std::pair<std::uint64_t, FieldElem>>& points);

// Lagrange weights for evaluating that interpolant at x = at.
std::vector<FieldElem> lagrange_weights_at(const std::vector<std::uint64_t>& xs, std::uint64_t q,
                                           std::uint64_t at);

}  // namespace mediatorless
