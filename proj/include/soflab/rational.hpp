#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "soflab/errors.hpp"

namespace soflab {

/// Exact rational used for all threshold comparisons (defect fractions,
/// isoperimetric ratios, the 9/10 and 9/20 constants). Numerators and
/// denominators stay within desk-scale point/edge counts, so a 64-bit
/// backing type suffices.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p/q" or a bare integer "p".
inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s), 1);
        std::int64_t num = std::stoll(s.substr(0, slash));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw InvalidInput("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw InvalidInput("malformed rational: " + s);
    } catch (const std::out_of_range&) {
        throw InvalidInput("rational out of 64-bit range: " + s);
    }
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}
