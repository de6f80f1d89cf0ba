#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "entcone/ground_set.hpp"
#include "entcone/rational.hpp"

namespace entcone {

constexpr double kDefaultTolerance = 1e-9;

enum class ValueMode { Exact, Numeric };

// A set function on all subsets of a finite ground set, stored densely
// (one value per bitmask).  Exact mode keeps rationals and compares exactly;
// numeric mode keeps doubles and compares within an attached tolerance.
// This is the carrier for polymatroids, matroids and entropy vectors alike.
class RankVector {
public:
    // Zero vector on the empty ground set.
    RankVector() : exact_{Rational(0)} {}

    static RankVector exact(GroundSet ground, std::vector<Rational> values)
    {
        if (values.size() != ground.subset_count())
            throw std::invalid_argument("rank vector needs one value per subset");
        RankVector v;
        v.ground_ = std::move(ground);
        v.mode_ = ValueMode::Exact;
        v.exact_ = std::move(values);
        v.numeric_.clear();
        return v;
    }

    static RankVector numeric(GroundSet ground, std::vector<double> values,
                              double tolerance = kDefaultTolerance)
    {
        if (values.size() != ground.subset_count())
            throw std::invalid_argument("rank vector needs one value per subset");
        RankVector v;
        v.ground_ = std::move(ground);
        v.mode_ = ValueMode::Numeric;
        v.exact_.clear();
        v.numeric_ = std::move(values);
        v.tol_ = tolerance;
        return v;
    }

    const GroundSet& ground() const { return ground_; }
    ValueMode mode() const { return mode_; }
    bool is_exact() const { return mode_ == ValueMode::Exact; }
    double tolerance() const { return tol_; }
    int size() const { return ground_.size(); }
    std::size_t subset_count() const { return ground_.subset_count(); }
    Mask full_mask() const { return ground_.full_mask(); }

    const Rational& rat(Mask m) const
    {
        if (!is_exact())
            throw std::logic_error("rat() called on a numeric-mode rank vector");
        return exact_[m];
    }

    double num(Mask m) const
    {
        return is_exact() ? to_double(exact_[m]) : numeric_[m];
    }

    const std::vector<Rational>& exact_values() const
    {
        if (!is_exact())
            throw std::logic_error("exact_values() on a numeric-mode rank vector");
        return exact_;
    }

    const std::vector<double>& numeric_values() const
    {
        if (is_exact())
            throw std::logic_error("numeric_values() on an exact-mode rank vector");
        return numeric_;
    }

    // Mode-aware comparisons of stored values against each other / constants.
    bool value_eq(Mask a, Mask b) const
    {
        if (is_exact())
            return exact_[a] == exact_[b];
        return std::fabs(numeric_[a] - numeric_[b]) <= tol_;
    }

    bool value_is(Mask a, const Rational& c) const
    {
        if (is_exact())
            return exact_[a] == c;
        return std::fabs(numeric_[a] - to_double(c)) <= tol_;
    }

    bool value_is(Mask a, long c) const { return value_is(a, Rational(c)); }

    std::string value_string(Mask m) const
    {
        if (is_exact())
            return format_rational(exact_[m]);
        return format_numeric(numeric_[m]);
    }

    RankVector scaled(const Rational& c) const
    {
        if (is_exact()) {
            std::vector<Rational> vals(exact_);
            for (auto& v : vals)
                v *= c;
            return exact(ground_, std::move(vals));
        }
        std::vector<double> vals(numeric_);
        const double cd = to_double(c);
        for (auto& v : vals)
            v *= cd;
        return numeric(ground_, std::move(vals), tol_);
    }

    // Exact copy of a numeric vector via bounded-denominator rounding.
    RankVector rationalized(std::uint64_t max_den = 1000000) const
    {
        if (is_exact())
            return *this;
        std::vector<Rational> vals;
        vals.reserve(numeric_.size());
        for (double d : numeric_)
            vals.push_back(rationalize(d, max_den));
        return exact(ground_, std::move(vals));
    }

    static std::string format_numeric(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.9f", v);
        return buf;
    }

    // Text format: a "groundset:" header, then one line per subset in
    // ascending bitmask order, e.g. "{a,c}: 7/3" or "{a,c}: 2.333333333".
    void write(std::ostream& os) const
    {
        os << "groundset:";
        for (const auto& l : ground_.labels())
            os << ' ' << l;
        os << '\n';
        for (Mask m = 0; m < subset_count(); ++m)
            os << ground_.subset_to_string(m) << ": " << value_string(m) << '\n';
    }

    static RankVector read(std::istream& is)
    {
        std::string line;
        if (!next_content_line(is, line))
            throw parse_error("rank vector: missing 'groundset:' header");
        const std::string prefix = "groundset:";
        if (line.rfind(prefix, 0) != 0)
            throw parse_error("rank vector: expected 'groundset:' header, got '" + line + "'");
        GroundSet ground(split_words(line.substr(prefix.size())));

        std::vector<std::string> raw(ground.subset_count());
        bool numeric_mode = false;
        for (Mask m = 0; m < ground.subset_count(); ++m) {
            if (!next_content_line(is, line))
                throw parse_error("rank vector: missing value for subset " +
                                  ground.subset_to_string(m));
            const auto sep = line.find("}:");
            if (sep == std::string::npos)
                throw parse_error("rank vector: malformed line '" + line + "'");
            const Mask mask = ground.parse_subset(trim(line.substr(0, sep + 1)));
            if (mask != m)
                throw parse_error("rank vector: subsets must appear in ascending bitmask order; "
                                  "expected " + ground.subset_to_string(m) + ", got " +
                                  ground.subset_to_string(mask));
            raw[m] = trim(line.substr(sep + 2));
            if (raw[m].find('.') != std::string::npos)
                numeric_mode = true;
        }
        if (numeric_mode) {
            std::vector<double> vals(raw.size());
            for (std::size_t i = 0; i < raw.size(); ++i) {
                try {
                    std::size_t used = 0;
                    vals[i] = std::stod(raw[i], &used);
                    if (used != raw[i].size())
                        throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw parse_error("rank vector: not a number: '" + raw[i] + "'");
                }
            }
            return numeric(std::move(ground), std::move(vals));
        }
        std::vector<Rational> vals(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i)
            vals[i] = parse_rational(raw[i]);
        return exact(std::move(ground), std::move(vals));
    }

    static std::vector<std::string> split_words(const std::string& s)
    {
        std::vector<std::string> out;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
                ++i;
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
                ++j;
            if (j > i)
                out.push_back(s.substr(i, j - i));
            i = j;
        }
        return out;
    }

    static std::string trim(const std::string& s)
    {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
            ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
            --b;
        return s.substr(a, b - a);
    }

    static bool next_content_line(std::istream& is, std::string& line)
    {
        while (std::getline(is, line)) {
            line = trim(line);
            if (!line.empty() && line[0] != '#')
                return true;
        }
        return false;
    }

private:
    GroundSet ground_;
    ValueMode mode_ = ValueMode::Exact;
    std::vector<Rational> exact_;
    std::vector<double> numeric_;
    double tol_ = kDefaultTolerance;
};

}  // namespace entcone
