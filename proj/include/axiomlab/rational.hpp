#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace axiomlab {

/// Exact rational scalar. Normalized (lowest terms, positive denominator) on
/// every operation, so equality is structural and arithmetic never rounds.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(num, den);
}

/// Parses "p/q" (lowest terms not required on input), or a bare integer.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + text + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw parse_error("bad rational '" + text + "'");
    }
}

/// "p/q" in lowest terms; integers print without the "/1".
inline std::string format_rat(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

inline double to_double(const Rat& v) { return v.convert_to<double>(); }

} // namespace axiomlab
