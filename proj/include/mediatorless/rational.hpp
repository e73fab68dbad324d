#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mediatorless {

// All probabilities and payoffs are exact rationals; cpp_rational keeps
// numerator/denominator in lowest terms.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(num, den);
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline std::string rat_to_string(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// Parses "a", "a/b", or "-a/b".
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

// Least common multiple of the denominators of a set of rationals.
inline BigInt lcm_of_denominators(const std::vector<Rat>& rs) {
    BigInt l = 1;
    for (const Rat& r : rs) {
        BigInt d = rat_den(r);
        l = l / gcd(l, d) * d;
    }
    return l;
}

}  // namespace mediatorless
