#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entcone/rank_vector.hpp"

namespace entcone {

struct AxiomViolation {
    std::string axiom;  // "normalized" | "monotone" | "submodular"
    Mask a = 0;
    Mask b = 0;
    std::string lhs;
    std::string rhs;
};

struct AxiomReport {
    bool is_normalized = true;
    bool is_monotone = true;
    bool is_submodular = true;
    std::optional<AxiomViolation> first_violation;

    bool is_polymatroid() const { return is_normalized && is_monotone && is_submodular; }
};

namespace detail {

// Shared scan over either int64 (scaled), Rational, or double-with-tolerance
// values.  `le(a, b)` decides a <= b in the value domain; display strings for
// the violation are filled in afterwards from the vector itself.
template <class T, class Le>
AxiomReport scan_axioms(const std::vector<T>& val, const T& zero, Le le)
{
    AxiomReport report;
    const Mask full = static_cast<Mask>(val.size() - 1);
    auto record = [&](const char* axiom, Mask a, Mask b) {
        if (!report.first_violation)
            report.first_violation = AxiomViolation{axiom, a, b, "", ""};
    };

    if (!(le(val[0], zero) && le(zero, val[0]))) {
        report.is_normalized = false;
        record("normalized", 0, 0);
    }

    // Monotonicity over all pairs A <= B, A ascending then B = A | T ascending.
    for (Mask a = 0; a <= full && report.is_monotone; ++a) {
        const Mask rest = full & ~a;
        for (Mask t : SubmaskRange(rest)) {
            if (t == 0)
                continue;
            const Mask b = a | t;
            if (!le(val[a], val[b])) {
                report.is_monotone = false;
                record("monotone", a, b);
                break;
            }
        }
    }

    // Submodularity over all ordered pairs (A, B), both ascending.
    for (Mask a = 0; a <= full && report.is_submodular; ++a) {
        for (Mask b = 0; b <= full; ++b) {
            const T lhs = val[a | b] + val[a & b];
            const T rhs = val[a] + val[b];
            if (!le(lhs, rhs)) {
                report.is_submodular = false;
                record("submodular", a, b);
                break;
            }
        }
    }
    return report;
}

inline void refine_violation_strings(const RankVector& v, AxiomReport& report)
{
    if (!report.first_violation)
        return;
    auto& viol = *report.first_violation;
    if (viol.axiom == "normalized") {
        viol.lhs = v.value_string(0);
        viol.rhs = "0";
    } else if (viol.axiom == "monotone") {
        viol.lhs = v.value_string(viol.a);
        viol.rhs = v.value_string(viol.b);
    } else if (viol.axiom == "submodular") {
        if (v.is_exact()) {
            viol.lhs = format_rational(v.rat(viol.a | viol.b) + v.rat(viol.a & viol.b));
            viol.rhs = format_rational(v.rat(viol.a) + v.rat(viol.b));
        } else {
            viol.lhs = RankVector::format_numeric(v.num(viol.a | viol.b) + v.num(viol.a & viol.b));
            viol.rhs = RankVector::format_numeric(v.num(viol.a) + v.num(viol.b));
        }
    }
}

}  // namespace detail

// Full polymatroid axiom check: normalization, monotonicity over all nested
// pairs, submodularity over all ordered subset pairs.  The first violation in
// scan order is reported.  Exhaustive (O(4^n) pairs): intended for ground sets
// up to ~13 elements; larger vectors are better served by the elemental check
// in shannon.hpp.
inline AxiomReport is_polymatroid(const RankVector& v)
{
    AxiomReport report;
    if (v.is_exact()) {
        if (auto scaled = common_int64_scale(v.exact_values())) {
            report = detail::scan_axioms<std::int64_t>(
                *scaled, 0, [](std::int64_t a, std::int64_t b) { return a <= b; });
        } else {
            report = detail::scan_axioms<Rational>(
                v.exact_values(), Rational(0),
                [](const Rational& a, const Rational& b) { return a <= b; });
        }
    } else {
        const double tol = v.tolerance();
        report = detail::scan_axioms<double>(v.numeric_values(), 0.0,
                                             [tol](double a, double b) { return a <= b + tol; });
    }
    detail::refine_violation_strings(v, report);
    return report;
}

// Integer values and singleton values at most 1.  The polymatroid axioms are
// the caller's responsibility.  Numeric-mode values farther than the
// tolerance from an integer fail the check.
inline bool is_matroid(const RankVector& v)
{
    for (Mask m = 0; m <= v.full_mask(); ++m) {
        if (v.is_exact()) {
            if (denominator(v.rat(m)) != 1)
                return false;
        } else {
            const double x = v.num(m);
            if (std::fabs(x - std::round(x)) > v.tolerance())
                return false;
        }
    }
    for (int i = 0; i < v.size(); ++i) {
        const Mask single = Mask{1} << i;
        if (v.is_exact()) {
            if (v.rat(single) > 1)
                return false;
        } else if (v.num(single) > 1 + v.tolerance()) {
            return false;
        }
    }
    return true;
}

// cl(A) = { x : f(A) = f(A u {x}) }.
inline Mask closure(const RankVector& v, Mask a)
{
    Mask cl = 0;
    for (int i = 0; i < v.size(); ++i) {
        const Mask bit = Mask{1} << i;
        if (v.value_eq(a, a | bit))
            cl |= bit;
    }
    return cl;
}

// f_{/A}(S) = f(S u A) - f(A), on the same ground set.
inline RankVector contraction(const RankVector& v, Mask a)
{
    if (v.is_exact()) {
        std::vector<Rational> vals(v.subset_count());
        const Rational base = v.rat(a);
        for (Mask m = 0; m <= v.full_mask(); ++m)
            vals[m] = v.rat(m | a) - base;
        return RankVector::exact(v.ground(), std::move(vals));
    }
    std::vector<double> vals(v.subset_count());
    const double base = v.num(a);
    for (Mask m = 0; m <= v.full_mask(); ++m)
        vals[m] = v.num(m | a) - base;
    return RankVector::numeric(v.ground(), std::move(vals), v.tolerance());
}

// Restriction to the elements of `t`, on a fresh ground set that keeps the
// label order.
inline RankVector restriction(const RankVector& v, Mask t)
{
    GroundSet sub(v.ground().subset_labels(t));
    // positions of t's bits in the original ground set
    std::vector<int> bits;
    for (int i = 0; i < v.size(); ++i)
        if (t & (Mask{1} << i))
            bits.push_back(i);

    auto unpack = [&](Mask packed) {
        Mask m = 0;
        for (std::size_t k = 0; k < bits.size(); ++k)
            if (packed & (Mask{1} << k))
                m |= Mask{1} << bits[k];
        return m;
    };

    if (v.is_exact()) {
        std::vector<Rational> vals(sub.subset_count());
        for (Mask p = 0; p < sub.subset_count(); ++p)
            vals[p] = v.rat(unpack(p));
        return RankVector::exact(std::move(sub), std::move(vals));
    }
    std::vector<double> vals(sub.subset_count());
    for (Mask p = 0; p < sub.subset_count(); ++p)
        vals[p] = v.num(unpack(p));
    return RankVector::numeric(std::move(sub), std::move(vals), v.tolerance());
}

// True iff eta embeds v into w: injective on labels and rank-preserving on
// every subset.  Non-injective or out-of-range maps are rejected.
inline bool is_embedding(const RankVector& v, const RankVector& w,
                         const std::map<std::string, std::string>& eta)
{
    std::vector<int> image(static_cast<std::size_t>(v.size()), -1);
    std::vector<bool> hit(static_cast<std::size_t>(w.size()), false);
    for (int i = 0; i < v.size(); ++i) {
        auto it = eta.find(v.ground().label(i));
        if (it == eta.end())
            throw std::invalid_argument("embedding map misses element '" + v.ground().label(i) + "'");
        const int j = w.ground().index_of(it->second);  // throws if out of range
        if (hit[static_cast<std::size_t>(j)])
            throw std::invalid_argument("embedding map is not injective at '" + it->second + "'");
        hit[static_cast<std::size_t>(j)] = true;
        image[static_cast<std::size_t>(i)] = j;
    }

    const bool exact = v.is_exact() && w.is_exact();
    const double tol = std::max(v.tolerance(), w.tolerance());
    for (Mask m = 0; m <= v.full_mask(); ++m) {
        Mask mapped = 0;
        for (int i = 0; i < v.size(); ++i)
            if (m & (Mask{1} << i))
                mapped |= Mask{1} << image[static_cast<std::size_t>(i)];
        if (exact) {
            if (v.rat(m) != w.rat(mapped))
                return false;
        } else if (std::fabs(v.num(m) - w.num(mapped)) > tol) {
            return false;
        }
    }
    return true;
}

// Convenience: the inclusion map when v's labels are a subset of w's.
inline bool is_embedding(const RankVector& v, const RankVector& w)
{
    std::map<std::string, std::string> eta;
    for (const auto& l : v.ground().labels())
        eta[l] = l;
    return is_embedding(v, w, eta);
}

// Uniform polymatroid f(S) = min(|S|, k); U_{2,3} and friends.
inline RankVector uniform_matroid(int k, const std::vector<std::string>& labels)
{
    GroundSet g(labels);
    std::vector<Rational> vals(g.subset_count());
    for (Mask m = 0; m < g.subset_count(); ++m)
        vals[m] = std::min(popcount(m), k);
    return RankVector::exact(std::move(g), std::move(vals));
}

}  // namespace entcone
