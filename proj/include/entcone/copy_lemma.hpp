#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entcone/linear_system.hpp"
#include "entcone/rank_vector.hpp"
#include "entcone/shannon.hpp"

namespace entcone {

// One copy step: adjoin an independent copy of C over the base B.
struct CopyPair {
    Mask base = 0;
    Mask copy = 0;
};

namespace copy_detail {

// Ground set E together with primed duplicates of the copied elements.
struct CopyGround {
    GroundSet extended;           // E then C' in C's label order
    std::vector<int> copy_index;  // per original element: index of its copy, or -1
    int n_orig = 0;

    Mask lift(Mask s) const { return s; }  // original subsets keep their bits

    Mask to_copy(Mask s_in_c) const
    {
        Mask out = 0;
        for (int i = 0; i < n_orig; ++i)
            if (s_in_c & (Mask{1} << i))
                out |= Mask{1} << copy_index[static_cast<std::size_t>(i)];
        return out;
    }

    Mask copy_block() const
    {
        Mask out = 0;
        for (int i = 0; i < n_orig; ++i)
            if (copy_index[static_cast<std::size_t>(i)] >= 0)
                out |= Mask{1} << copy_index[static_cast<std::size_t>(i)];
        return out;
    }
};

inline CopyGround make_copy_ground(const GroundSet& ground, Mask c)
{
    CopyGround cg;
    cg.n_orig = ground.size();
    cg.copy_index.assign(static_cast<std::size_t>(ground.size()), -1);
    std::vector<std::string> labels = ground.labels();
    int next = ground.size();
    for (int i = 0; i < ground.size(); ++i)
        if (c & (Mask{1} << i)) {
            labels.push_back(ground.label(i) + "'");
            cg.copy_index[static_cast<std::size_t>(i)] = next++;
        }
    cg.extended = GroundSet(std::move(labels));
    return cg;
}

}  // namespace copy_detail

// The linear feasibility system whose solutions are the polymatroid
// extensions produced by one copy step on (B, C): the extension agrees with v
// on E, restricts isomorphically to the copied block, makes the copy
// independent of the rest over B, and satisfies every elemental Shannon
// inequality on the extended ground set.  Infeasibility is a sound witness
// that v admits no such extension, hence is not almost entropic.
inline LinearInequalitySystem build_copy_system(const RankVector& v, Mask B, Mask C)
{
    if (!v.is_exact())
        throw std::invalid_argument("build_copy_system needs an exact-mode vector; rationalize first");
    if ((B & C) != 0)
        throw std::invalid_argument("copy base and copied set must be disjoint");
    const int n_ext = v.size() + popcount(C);
    if (n_ext > 8)
        throw std::invalid_argument("extended ground set too large for the elemental row family");

    const copy_detail::CopyGround cg = copy_detail::make_copy_ground(v.ground(), C);
    const GroundSet& ext = cg.extended;
    const Mask ext_full = ext.full_mask();
    const Mask cprime = cg.copy_block();

    LinearInequalitySystem sys;
    sys.var_names.reserve(ext.subset_count() - 1);
    for (Mask m = 1; m <= ext_full; ++m)
        sys.var_names.push_back(ext.subset_to_string(m));
    auto var = [&](Mask m) { return static_cast<int>(m) - 1; };
    auto add = [&](std::map<int, Rational>& coeffs, Mask m, long w) {
        if (m != 0)
            coeffs[var(m)] += w;
    };

    // (1) the extension agrees with v on E
    for (Mask s = 1; s <= v.full_mask(); ++s) {
        std::map<int, Rational> coeffs;
        add(coeffs, s, 1);
        sys.add_row("fix:" + ext.subset_to_string(s), coeffs, Rel::Eq, v.rat(s));
    }

    // (2) the copied block looks exactly like the original over the base
    for (Mask s = 1; s <= v.full_mask(); ++s) {
        if ((s & ~(B | C)) != 0 || (s & C) == 0)
            continue;
        const Mask image = (s & B) | cg.to_copy(s & C);
        std::map<int, Rational> coeffs;
        add(coeffs, image, 1);
        sys.add_row("copy:" + ext.subset_to_string(image), coeffs, Rel::Eq, v.rat(s));
    }

    // (3) the copy is independent of everything else over the base:
    //     f(S u B) + f(B) - f((S & C') u B) - f((S \ C') u B) = 0
    const Mask outside_base = ext_full & ~B;
    for (Mask s : SubmaskRange(outside_base)) {
        if ((s & cprime) == 0 || (s & ~cprime) == 0)
            continue;
        std::map<int, Rational> coeffs;
        add(coeffs, s | B, 1);
        add(coeffs, B, 1);
        add(coeffs, (s & cprime) | B, -1);
        add(coeffs, (s & ~cprime) | B, -1);
        sys.add_row("ci:" + ext.subset_to_string(s), coeffs, Rel::Eq, Rational(0));
    }

    // elemental Shannon inequalities on the extended ground set
    for (const auto& iq : elemental_shannon_inequalities(n_ext)) {
        std::map<int, Rational> coeffs;
        for (Mask m = 1; m < iq.coeffs.size(); ++m)
            if (iq.coeffs[m] != 0)
                coeffs[var(m)] = iq.coeffs[m];
        sys.add_row(iq.name, coeffs, Rel::Geq, Rational(0));
    }
    return sys;
}

// All disjoint (B, C) pairs with |B| + |C| <= 4, base mask ascending then
// copy mask ascending.  Empty copy sets are skipped: their systems are
// trivially feasible for any Shannon-cone input.
inline std::vector<CopyPair> default_copy_schedule(const GroundSet& ground)
{
    std::vector<CopyPair> out;
    const Mask full = ground.full_mask();
    for (Mask b = 0; b <= full; ++b) {
        if (popcount(b) > 4)
            continue;
        for (Mask c = 1; c <= full; ++c) {
            if ((b & c) != 0)
                continue;
            if (popcount(b) + popcount(c) > 4)
                continue;
            out.push_back({b, c});
        }
    }
    return out;
}

struct CopyRefutation {
    enum class Status { Refuted, Unknown };
    Status status = Status::Unknown;
    std::optional<CopyPair> pair;                    // the refuting copy step
    std::optional<LinearInequalitySystem> system;    // its constraint system
    std::optional<FeasibilityCertificate> certificate;
    bool rationalized = false;  // input was numeric and rounded before the LP

    bool refuted() const { return status == Status::Refuted; }
};

// Sound-only refutation of closed-entropic-cone membership: every almost
// entropic vector admits a feasible copy extension for every (B, C), so an
// infeasible system certifies non-membership.  Unknown means every scheduled
// system was feasible; that never certifies membership.
inline CopyRefutation copy_lp_refute(const RankVector& v, const std::vector<CopyPair>& schedule)
{
    const ShannonCheck shannon = in_shannon_cone(v);
    if (!shannon.inside)
        throw std::invalid_argument(
            "copy_lp_refute: input already violates the elemental inequality " +
            shannon.violated->name);

    CopyRefutation result;
    RankVector exact = v;
    if (!v.is_exact()) {
        exact = v.rationalized();
        result.rationalized = true;
    }
    for (const CopyPair& pair : schedule) {
        LinearInequalitySystem sys = build_copy_system(exact, pair.base, pair.copy);
        FeasibilityCertificate cert = lp_feasible(sys);
        if (!cert.feasible) {
            result.status = CopyRefutation::Status::Refuted;
            result.pair = pair;
            result.system = std::move(sys);
            result.certificate = std::move(cert);
            return result;
        }
    }
    return result;
}

}  // namespace entcone
