#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace entcone {

// Exact rational scalar used everywhere a value must be exact: rank vectors,
// inequality coefficients, LP tableaus, certificates.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Error for malformed external input (files, CLI arguments).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline std::string format_rational(const Rational& q)
{
    const BigInt num = numerator(q);
    const BigInt den = denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "-12", "7/3", "-7/3". Anything else is a parse error.
inline Rational parse_rational(const std::string& text)
{
    auto is_int = [](const std::string& s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int(text))
            throw parse_error("not a rational: '" + text + "'");
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
        throw parse_error("not a rational: '" + text + "'");
    const BigInt d(den);
    if (d == 0)
        throw parse_error("zero denominator: '" + text + "'");
    return Rational(BigInt(num), d);
}

// Best rational approximation of x with denominator bounded by max_den
// (continued-fraction convergents).  Used to lift numeric-mode vectors into
// exact arithmetic before LP work.
inline Rational rationalize(double x, std::uint64_t max_den = 1000000)
{
    if (!std::isfinite(x))
        throw std::invalid_argument("rationalize: non-finite value");
    const bool neg = x < 0;
    double v = neg ? -x : x;

    // Convergents p/q of the continued fraction of v.
    std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        const double fa = std::floor(frac);
        if (fa > 9e18)
            break;
        const std::uint64_t a = static_cast<std::uint64_t>(fa);
        if (q1 != 0 && a > (max_den - q0) / q1)
            break;  // next convergent would exceed the denominator bound
        const std::uint64_t p2 = a * p1 + p0;
        const std::uint64_t q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double rem = frac - fa;
        if (rem < 1e-15 || static_cast<double>(p1) / static_cast<double>(q1) == v)
            break;
        frac = 1.0 / rem;
    }
    Rational r(p1, q1 == 0 ? 1 : q1);
    return neg ? Rational(-r) : r;
}

// If every value can be written k / D with a shared denominator D and all
// scaled values fit comfortably in int64, returns the scaled values.  This is
// the fast path for exhaustive axiom scans on exact vectors.
inline std::optional<std::vector<std::int64_t>> common_int64_scale(const std::vector<Rational>& values)
{
    BigInt lcm = 1;
    const BigInt den_cap = BigInt(1) << 40;
    for (const auto& v : values) {
        const BigInt d = denominator(v);
        lcm = boost::multiprecision::lcm(lcm, d);
        if (lcm > den_cap)
            return std::nullopt;
    }
    std::vector<std::int64_t> out;
    out.reserve(values.size());
    const BigInt cap = BigInt(1) << 60;  // room for sums of two values
    for (const auto& v : values) {
        BigInt scaled = numerator(v) * (lcm / denominator(v));
        if (scaled >= cap || scaled <= -cap)
            return std::nullopt;
        out.push_back(scaled.template convert_to<std::int64_t>());
    }
    return out;
}

}  // namespace entcone
