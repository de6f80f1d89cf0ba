#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "entcone/rank_vector.hpp"
#include "entcone/setfn.hpp"

namespace entcone {

// A linear functional sum(coeff[S] * h(S)) >= 0 over subsets of {1..n}.
// The empty-set coefficient is always zero.
struct EntropyInequality {
    std::string name;
    int n = 0;
    std::vector<Rational> coeffs;  // indexed by mask, size 2^n

    Rational evaluate_exact(const RankVector& v) const
    {
        Rational acc(0);
        for (Mask m = 1; m < coeffs.size(); ++m)
            if (coeffs[m] != 0)
                acc += coeffs[m] * v.rat(m);
        return acc;
    }

    double evaluate(const RankVector& v) const
    {
        double acc = 0;
        for (Mask m = 1; m < coeffs.size(); ++m)
            if (coeffs[m] != 0)
                acc += to_double(coeffs[m]) * v.num(m);
        return acc;
    }
};

namespace shannon_detail {

inline std::string index_set_name(Mask k)
{
    std::string out = "{";
    bool first = true;
    for (int t = 0; t < 24; ++t)
        if (k & (Mask{1} << t)) {
            if (!first)
                out += ',';
            out += std::to_string(t + 1);
            first = false;
        }
    return out + "}";
}

inline EntropyInequality monotonicity_row(int n, int i)
{
    EntropyInequality iq;
    iq.n = n;
    iq.coeffs.assign(std::size_t{1} << n, Rational(0));
    const Mask full = (Mask{1} << n) - 1;
    iq.name = "mono:" + std::to_string(i + 1);
    iq.coeffs[full] += 1;
    if ((full & ~(Mask{1} << i)) != 0)
        iq.coeffs[full & ~(Mask{1} << i)] -= 1;
    return iq;
}

inline EntropyInequality cmi_row(int n, int i, int j, Mask k)
{
    EntropyInequality iq;
    iq.n = n;
    iq.coeffs.assign(std::size_t{1} << n, Rational(0));
    iq.name = "cmi:" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "|" + index_set_name(k);
    const Mask bi = Mask{1} << i;
    const Mask bj = Mask{1} << j;
    iq.coeffs[k | bi] += 1;
    iq.coeffs[k | bj] += 1;
    iq.coeffs[k | bi | bj] -= 1;
    if (k != 0)
        iq.coeffs[k] -= 1;
    return iq;
}

}  // namespace shannon_detail

// The minimal generating set of the polymatroid (Shannon) cone on n points:
// n monotonicity rows H(N) - H(N \ i) >= 0 and C(n,2) * 2^(n-2) conditional
// mutual informations I(i;j|K) >= 0, in deterministic order, deduplicated.
inline std::vector<EntropyInequality> elemental_shannon_inequalities(int n)
{
    if (n < 1 || n > 8)
        throw std::invalid_argument("elemental inequalities supported for 1 <= n <= 8");
    std::vector<EntropyInequality> out;
    std::set<std::vector<Rational>> seen;
    auto push = [&](EntropyInequality iq) {
        if (seen.insert(iq.coeffs).second)
            out.push_back(std::move(iq));
    };
    for (int i = 0; i < n; ++i)
        push(shannon_detail::monotonicity_row(n, i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Mask rest = ((Mask{1} << n) - 1) & ~(Mask{1} << i) & ~(Mask{1} << j);
            for (Mask k : SubmaskRange(rest))
                push(shannon_detail::cmi_row(n, i, j, k));
        }
    return out;
}

struct ShannonCheck {
    bool inside = true;
    std::optional<EntropyInequality> violated;  // first violated row in scan order
};

// Membership in the Shannon cone, i.e. all elemental inequalities hold.  The
// scan is implicit (no materialized rows), so any ground size up to 24 works;
// it is equivalent to the full polymatroid axioms.
inline ShannonCheck in_shannon_cone(const RankVector& v)
{
    const int n = v.size();
    const Mask full = v.full_mask();

    auto run = [&](auto value_of, auto nonneg) -> ShannonCheck {
        if (n == 0)
            return {};
        for (int i = 0; i < n; ++i) {
            const Mask without = full & ~(Mask{1} << i);
            if (!nonneg(value_of(full) - value_of(without)))
                return {false, shannon_detail::monotonicity_row(n, i)};
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const Mask bi = Mask{1} << i;
                const Mask bj = Mask{1} << j;
                const Mask rest = full & ~bi & ~bj;
                for (Mask k : SubmaskRange(rest)) {
                    const auto lhs =
                        value_of(k | bi) + value_of(k | bj) - value_of(k | bi | bj) - value_of(k);
                    if (!nonneg(lhs))
                        return {false, shannon_detail::cmi_row(n, i, j, k)};
                }
            }
        return {};
    };

    if (v.is_exact()) {
        if (auto scaled = common_int64_scale(v.exact_values())) {
            const auto& vals = *scaled;
            return run([&](Mask m) { return vals[m]; }, [](std::int64_t x) { return x >= 0; });
        }
        return run([&](Mask m) { return v.rat(m); }, [](const Rational& x) { return x >= 0; });
    }
    const double tol = v.tolerance();
    return run([&](Mask m) { return v.num(m); }, [tol](double x) { return x >= -tol; });
}

// The Zhang-Yeung non-Shannon inequality (Zhang & Yeung 1998) on four
// variables (A,B,C,D) = (1,2,3,4):
//   I(A;B) + I(A;CD) + 3 I(C;D|A) + I(C;D|B) - 2 I(C;D) >= 0.
// External data for cross-checks; it is valid on the closed entropic cone but
// not implied by the elemental inequalities.
inline EntropyInequality zhang_yeung_inequality()
{
    EntropyInequality iq;
    iq.n = 4;
    iq.name = "zhang-yeung";
    iq.coeffs.assign(16, Rational(0));
    const Mask A = 1, B = 2, C = 4, D = 8;
    auto add_mi = [&](Mask x, Mask y, Mask k, long w) {
        // w * I(X;Y|K)
        iq.coeffs[x | k] += w;
        iq.coeffs[y | k] += w;
        iq.coeffs[x | y | k] -= w;
        if (k != 0)
            iq.coeffs[k] -= w;
    };
    add_mi(A, B, 0, 1);
    add_mi(A, C | D, 0, 1);
    add_mi(C, D, A, 3);
    add_mi(C, D, B, 1);
    add_mi(C, D, 0, -2);
    return iq;
}

// The same functional with variable i playing the role perm[i] played before:
// coeff'[S] = coeff[perm(S)].
inline EntropyInequality permute_entropy_inequality(const EntropyInequality& iq,
                                                    const std::vector<int>& perm)
{
    if (perm.size() != static_cast<std::size_t>(iq.n))
        throw std::invalid_argument("permutation size mismatch");
    EntropyInequality out;
    out.n = iq.n;
    out.name = iq.name + ":permuted";
    out.coeffs.assign(iq.coeffs.size(), Rational(0));
    for (Mask m = 0; m < iq.coeffs.size(); ++m) {
        Mask image = 0;
        for (int i = 0; i < iq.n; ++i)
            if (m & (Mask{1} << i))
                image |= Mask{1} << perm[static_cast<std::size_t>(i)];
        out.coeffs[image] = iq.coeffs[m];
    }
    return out;
}

}  // namespace entcone
