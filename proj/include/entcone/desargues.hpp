#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "entcone/pdg.hpp"
#include "entcone/rank_vector.hpp"
#include "entcone/setfn.hpp"

namespace entcone {

// One verified equation in a report: the CLI prints these as
// "<equation>: OK" or "<equation>: FAIL expected=... got=...".
struct CheckLine {
    std::string equation;
    bool ok = true;
    std::string expected;
    std::string got;
};

inline bool all_ok(const std::vector<CheckLine>& lines)
{
    for (const auto& l : lines)
        if (!l.ok)
            return false;
    return true;
}

namespace check_detail {

inline void expect_rank(std::vector<CheckLine>& lines, const RankVector& v, Mask subset, long want,
                        const std::string& equation)
{
    CheckLine line;
    line.equation = equation;
    line.ok = v.value_is(subset, want);
    line.expected = std::to_string(want);
    line.got = v.value_string(subset);
    lines.push_back(std::move(line));
}

}  // namespace check_detail

// A center, two triples, and the two cross intersection points.
struct DesarguesConfig {
    std::string O;
    std::array<std::string, 3> a;
    std::array<std::string, 3> b;
    std::string x1, x2;

    std::vector<std::string> all_labels() const
    {
        return {O, a[0], a[1], a[2], b[0], b[1], b[2], x1, x2};
    }
};

// The rank-4 matroid on {a1,a2,b1,b2,c1,c2} whose circuits are the three
// pairwise unions: three lines, pairwise coplanar, not all in one plane.
inline RankVector three_line_base_matroid()
{
    GroundSet g({"a1", "a2", "b1", "b2", "c1", "c2"});
    const std::vector<Mask> circuits{
        g.mask_of({"a1", "a2", "b1", "b2"}),
        g.mask_of({"a1", "a2", "c1", "c2"}),
        g.mask_of({"b1", "b2", "c1", "c2"}),
    };
    std::vector<Rational> vals(g.subset_count());
    for (Mask m = 0; m < g.subset_count(); ++m) {
        int best = 0;
        for (Mask sub : SubmaskRange(m)) {
            bool independent = true;
            for (Mask c : circuits)
                if ((sub & c) == c) {
                    independent = false;
                    break;
                }
            if (independent)
                best = std::max(best, popcount(sub));
        }
        vals[m] = best;
    }
    return RankVector::exact(std::move(g), std::move(vals));
}

// The same three lines together with their common intersection point d:
// three extra 3-element circuits through d.
inline RankVector three_line_extended_matroid()
{
    GroundSet g({"a1", "a2", "b1", "b2", "c1", "c2", "d"});
    const std::vector<Mask> circuits{
        g.mask_of({"a1", "a2", "b1", "b2"}), g.mask_of({"a1", "a2", "c1", "c2"}),
        g.mask_of({"b1", "b2", "c1", "c2"}), g.mask_of({"a1", "a2", "d"}),
        g.mask_of({"b1", "b2", "d"}),        g.mask_of({"c1", "c2", "d"}),
    };
    std::vector<Rational> vals(g.subset_count());
    for (Mask m = 0; m < g.subset_count(); ++m) {
        int best = 0;
        for (Mask sub : SubmaskRange(m)) {
            bool independent = true;
            for (Mask c : circuits)
                if ((sub & c) == c) {
                    independent = false;
                    break;
                }
            if (independent)
                best = std::max(best, popcount(sub));
        }
        vals[m] = best;
    }
    return RankVector::exact(std::move(g), std::move(vals));
}

// f(O, a_i, b_i) = 2 for i = 1..3, applied literally to the given labels.
inline bool in_perspective(const RankVector& v, const std::array<std::string, 3>& a,
                           const std::array<std::string, 3>& b, const std::string& O)
{
    const GroundSet& g = v.ground();
    for (int i = 0; i < 3; ++i) {
        Mask m = g.element_mask(O);
        m |= g.element_mask(a[static_cast<std::size_t>(i)]);
        m |= g.element_mask(b[static_cast<std::size_t>(i)]);
        if (!v.value_is(m, 2))
            return false;
    }
    return true;
}

// The hypothesis rows of the rank-4 Desargues statement: nine rank-1 points
// in general position pairwise, the three perspective lines, the two cross
// intersections, and the rank-4 row f(O,a1,a2,a3) = 4.
inline std::vector<CheckLine> check_desargues_hypotheses(const RankVector& v,
                                                         const DesarguesConfig& cfg)
{
    using check_detail::expect_rank;
    const GroundSet& g = v.ground();
    std::vector<CheckLine> lines;
    const auto labels = cfg.all_labels();
    for (const auto& p : labels)
        expect_rank(lines, v, g.element_mask(p), 1, "f(" + p + ")");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            expect_rank(lines, v, g.element_mask(labels[i]) | g.element_mask(labels[j]), 2,
                        "f(" + labels[i] + "," + labels[j] + ")");
    for (int i = 0; i < 3; ++i) {
        const auto& ai = cfg.a[static_cast<std::size_t>(i)];
        const auto& bi = cfg.b[static_cast<std::size_t>(i)];
        expect_rank(lines, v, g.mask_of({cfg.O, ai, bi}), 2, "f(" + cfg.O + "," + ai + "," + bi + ")");
    }
    expect_rank(lines, v, g.mask_of({cfg.a[1], cfg.a[2], cfg.x1}), 2,
                "f(" + cfg.a[1] + "," + cfg.a[2] + "," + cfg.x1 + ")");
    expect_rank(lines, v, g.mask_of({cfg.b[1], cfg.b[2], cfg.x1}), 2,
                "f(" + cfg.b[1] + "," + cfg.b[2] + "," + cfg.x1 + ")");
    expect_rank(lines, v, g.mask_of({cfg.a[0], cfg.a[2], cfg.x2}), 2,
                "f(" + cfg.a[0] + "," + cfg.a[2] + "," + cfg.x2 + ")");
    expect_rank(lines, v, g.mask_of({cfg.b[0], cfg.b[2], cfg.x2}), 2,
                "f(" + cfg.b[0] + "," + cfg.b[2] + "," + cfg.x2 + ")");
    expect_rank(lines, v, g.mask_of({cfg.O, cfg.a[0], cfg.a[1], cfg.a[2]}), 4,
                "f(" + cfg.O + "," + cfg.a[0] + "," + cfg.a[1] + "," + cfg.a[2] + ")");
    return lines;
}

enum class AdjoinStatus { Ok, ConclusionViolated, AxiomViolated };

struct AdjoinResult {
    AdjoinStatus status = AdjoinStatus::Ok;
    RankVector extended;               // only meaningful when status == Ok
    std::string new_label;
    std::vector<CheckLine> conclusion; // the four conclusion rows
};

// Single-element extension placing the new point on the intersection of the
// lines spanned by (a1, a2) and (b1, b2): the principal extension on the
// modular cut generated by those two lines,
//   f^(S u x) = min(f(S) + 1, min over cut flats F of f(S u F)).
// Generating the cut matters: the flats forced in by modular pairs (for a
// Desargues configuration this includes the line through x1, x2) carry the
// incidence content; truncating the family to the two generators alone does
// not even give a polymatroid.  On rank functions of linear configurations
// the result coincides with adjoining the actual subspace intersection.
inline AdjoinResult adjoin_on_line_intersection(const RankVector& v, const std::string& a1,
                                                const std::string& a2, const std::string& b1,
                                                const std::string& b2, const std::string& x1,
                                                const std::string& x2,
                                                const std::string& new_label = "x3")
{
    const GroundSet& g = v.ground();
    if (g.contains(new_label))
        throw std::invalid_argument("label '" + new_label + "' already in the ground set");
    if (!v.is_exact())
        throw std::invalid_argument("adjoin needs an exact-mode vector");
    if (!is_matroid(v))
        throw std::invalid_argument("adjoin expects a matroid input");

    const Mask pa = g.mask_of({a1, a2});
    const Mask pb = g.mask_of({b1, b2});

    // all flats of v
    std::vector<Mask> flats;
    {
        std::set<Mask> seen;
        for (Mask m = 0; m <= v.full_mask(); ++m)
            seen.insert(closure(v, m));
        flats.assign(seen.begin(), seen.end());
    }
    const Mask cl_a = closure(v, pa);
    const Mask cl_b = closure(v, pb);

    // modular-cut generation: start from the filter over the two lines, and
    // repeatedly adjoin the meet of any modular pair (keeping the family
    // upward closed) until stable
    std::set<Mask> cut;
    for (Mask f : flats)
        if ((f & cl_a) == cl_a || (f & cl_b) == cl_b)
            cut.insert(f);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Mask> members(cut.begin(), cut.end());
        for (std::size_t p = 0; p < members.size() && !grew; ++p)
            for (std::size_t q = p + 1; q < members.size() && !grew; ++q) {
                const Mask meet = members[p] & members[q];  // flats are meet-closed
                if (cut.count(meet))
                    continue;
                const Mask join = closure(v, members[p] | members[q]);
                if (v.rat(members[p]) + v.rat(members[q]) == v.rat(join) + v.rat(meet)) {
                    for (Mask f : flats)
                        if ((f & meet) == meet)
                            cut.insert(f);
                    grew = true;
                }
            }
    }

    std::vector<std::string> labels = g.labels();
    labels.push_back(new_label);
    GroundSet ext(labels);
    const Mask xbit = Mask{1} << g.size();

    std::vector<Rational> vals(ext.subset_count());
    for (Mask m = 0; m <= v.full_mask(); ++m) {
        vals[m] = v.rat(m);
        Rational with_x = v.rat(m) + 1;
        for (Mask f : cut)
            with_x = std::min(with_x, v.rat(m | f));
        vals[m | xbit] = with_x;
    }
    AdjoinResult result;
    result.new_label = new_label;
    result.extended = RankVector::exact(std::move(ext), std::move(vals));

    using check_detail::expect_rank;
    const RankVector& f = result.extended;
    const GroundSet& eg = f.ground();
    auto& rows = result.conclusion;
    expect_rank(rows, f, eg.element_mask(new_label), 1, "f^(" + new_label + ")");
    expect_rank(rows, f, eg.mask_of({a1, a2, new_label}), 2, "f^(" + a1 + "," + a2 + "," + new_label + ")");
    expect_rank(rows, f, eg.mask_of({b1, b2, new_label}), 2, "f^(" + b1 + "," + b2 + "," + new_label + ")");
    expect_rank(rows, f, eg.mask_of({a1, new_label}), 2, "f^(" + a1 + "," + new_label + ")");
    expect_rank(rows, f, eg.mask_of({b1, new_label}), 2, "f^(" + b1 + "," + new_label + ")");
    expect_rank(rows, f, eg.mask_of({x1, x2, new_label}), 2, "f^(" + x1 + "," + x2 + "," + new_label + ")");

    if (!all_ok(rows)) {
        result.status = AdjoinStatus::ConclusionViolated;
        return result;
    }
    if (!is_polymatroid(f).is_polymatroid()) {
        result.status = AdjoinStatus::AxiomViolated;
        return result;
    }
    return result;
}

// Adjoin the intersection point of the two triangles' (1,2)-sides.  The
// hypothesis rows must pass first.
inline AdjoinResult adjoin_intersection_point(const RankVector& v, const DesarguesConfig& cfg,
                                              const std::string& new_label = "x3")
{
    const auto hypotheses = check_desargues_hypotheses(v, cfg);
    if (!all_ok(hypotheses))
        throw std::invalid_argument("desargues hypotheses fail; nothing to adjoin");
    return adjoin_on_line_intersection(v, cfg.a[0], cfg.a[1], cfg.b[0], cfg.b[1], cfg.x1, cfg.x2,
                                       new_label);
}

struct FurtherClauseResult {
    bool premises_ok = false;
    bool conclusions_ok = false;
    std::vector<CheckLine> premise_rows;
    std::vector<CheckLine> conclusion_rows;
};

// When some ground element xt already plays the intersection point (it lies
// on both lines, has rank 1, and is independent from neither side), the
// adjoined point collapses onto it: f^(x3, xt) = 1 and f(x1, x2, xt) = 2.
// `extended` is the output of the adjunction; xt must be an original element.
inline FurtherClauseResult check_further_clause(const RankVector& extended,
                                                const DesarguesConfig& cfg,
                                                const std::string& x3, const std::string& xt)
{
    using check_detail::expect_rank;
    const GroundSet& g = extended.ground();
    // coinciding labels are allowed (e.g. xt = x3); masks collapse naturally
    auto join = [&](std::initializer_list<std::string> labels) {
        Mask m = 0;
        for (const auto& l : labels)
            m |= g.element_mask(l);
        return m;
    };
    FurtherClauseResult result;
    auto& pre = result.premise_rows;
    expect_rank(pre, extended, join({cfg.a[0], cfg.a[1], xt}), 2,
                "f(" + cfg.a[0] + "," + cfg.a[1] + "," + xt + ")");
    expect_rank(pre, extended, join({cfg.b[0], cfg.b[1], xt}), 2,
                "f(" + cfg.b[0] + "," + cfg.b[1] + "," + xt + ")");
    expect_rank(pre, extended, g.element_mask(xt), 1, "f(" + xt + ")");
    expect_rank(pre, extended, join({xt, cfg.a[0]}), 2, "f(" + xt + "," + cfg.a[0] + ")");
    expect_rank(pre, extended, join({xt, cfg.b[0]}), 2, "f(" + xt + "," + cfg.b[0] + ")");
    result.premises_ok = all_ok(pre);
    if (!result.premises_ok)
        return result;

    auto& post = result.conclusion_rows;
    expect_rank(post, extended, join({x3, xt}), 1, "f^(" + x3 + "," + xt + ")");
    expect_rank(post, extended, join({cfg.x1, cfg.x2, xt}), 2,
                "f(" + cfg.x1 + "," + cfg.x2 + "," + xt + ")");
    result.conclusions_ok = all_ok(post);
    return result;
}

// A Desargues configuration inside a rank-4 PDG: picking a permutation
// (i,j,k,m) of the indices and generators s,u,w with witnesses t,v, the basis
// triple (b_k,b_i,b_j) and (w_{k,m}, s_{i,m}, u_{j,m}) are in perspective
// from b_m, with intersection points t_{i,j} and v_{j,k}.  With a present
// x_{k,i} on the third side, the closing line (t_{i,j}, v_{j,k}, x_{k,i})
// must also have rank 2.
struct PdgDesarguesReport {
    std::vector<CheckLine> hypothesis_rows;
    std::vector<CheckLine> configuration_rows;
    std::vector<CheckLine> x_premise_rows;   // empty when x is not supplied
    std::vector<CheckLine> conclusion_rows;  // emitted only when the x premise holds

    bool hypotheses_ok() const { return all_ok(hypothesis_rows) && all_ok(configuration_rows); }
    bool x_premise_ok() const { return all_ok(x_premise_rows); }

    bool all_passed() const { return hypotheses_ok() && x_premise_ok() && all_ok(conclusion_rows); }
};

inline PdgDesarguesReport pdg_desargues_check(const Pdg& pdg, const std::string& s,
                                              const std::string& u, const std::string& w,
                                              const std::string& t, const std::string& vgen,
                                              const std::optional<std::string>& x,
                                              const std::array<int, 4>& perm)
{
    const PdgLayout& lay = pdg.layout;
    if (lay.rank() != 4)
        throw std::invalid_argument("pdg desargues check needs a rank-4 PDG");
    {
        std::array<bool, 5> seen{};
        for (int p : perm) {
            if (p < 1 || p > 4 || seen[static_cast<std::size_t>(p)])
                throw std::invalid_argument("perm must be a permutation of 1..4");
            seen[static_cast<std::size_t>(p)] = true;
        }
    }
    const int i = perm[0], j = perm[1], k = perm[2], m = perm[3];
    const GeneratorSet& gens = lay.gens();
    const int gs = gens.index_of(s), gu = gens.index_of(u), gw = gens.index_of(w);
    const int gt = gens.index_of(t), gv = gens.index_of(vgen);

    auto need = [&](int g, int p, int q) {
        if (!lay.has_copy(g, p, q))
            throw std::invalid_argument("element " +
                                        PdgLayout::copy_label(gens.label(g), p, q) +
                                        " is missing from the ground set");
        return lay.copy_mask(g, p, q);
    };

    const Mask w_km = need(gw, k, m);
    const Mask s_im = need(gs, i, m);
    const Mask u_jm = need(gu, j, m);
    const Mask t_ij = need(gt, i, j);
    const Mask v_jk = need(gv, j, k);

    PdgDesarguesReport report;
    using check_detail::expect_rank;
    const RankVector& f = pdg.rank;

    // the two relator lines feeding the configuration
    expect_rank(report.hypothesis_rows, f, lay.copy_mask(gens.inv(gs), m, i) | t_ij | u_jm, 2,
                "f(" + s + "^-1@" + std::to_string(m) + std::to_string(i) + "," + t + "@" +
                    std::to_string(i) + std::to_string(j) + "," + u + "@" + std::to_string(j) +
                    std::to_string(m) + ")");
    expect_rank(report.hypothesis_rows, f, lay.copy_mask(gens.inv(gu), m, j) | v_jk | w_km, 2,
                "f(" + u + "^-1@" + std::to_string(m) + std::to_string(j) + "," + vgen + "@" +
                    std::to_string(j) + std::to_string(k) + "," + w + "@" + std::to_string(k) +
                    std::to_string(m) + ")");

    // the induced Desargues configuration, hypotheses checked wholesale
    DesarguesConfig cfg;
    cfg.O = lay.ground().label(lay.basis(m));
    cfg.a = {lay.ground().label(lay.basis(k)), lay.ground().label(lay.basis(i)),
             lay.ground().label(lay.basis(j))};
    cfg.b = {lay.ground().label(__builtin_ctz(w_km)), lay.ground().label(__builtin_ctz(s_im)),
             lay.ground().label(__builtin_ctz(u_jm))};
    cfg.x1 = lay.ground().label(__builtin_ctz(t_ij));
    cfg.x2 = lay.ground().label(__builtin_ctz(v_jk));
    report.configuration_rows = check_desargues_hypotheses(f, cfg);

    if (x) {
        const int gx = gens.index_of(*x);
        const Mask x_ki = need(gx, k, i);
        expect_rank(report.x_premise_rows, f, w_km | s_im | x_ki, 2,
                    "f(" + w + "@" + std::to_string(k) + std::to_string(m) + "," + s + "@" +
                        std::to_string(i) + std::to_string(m) + "," + *x + "@" + std::to_string(k) +
                        std::to_string(i) + ")");
        if (report.x_premise_ok())
            expect_rank(report.conclusion_rows, f, t_ij | v_jk | x_ki, 2,
                        "f(" + t + "@" + std::to_string(i) + std::to_string(j) + "," + vgen + "@" +
                            std::to_string(j) + std::to_string(k) + "," + *x + "@" +
                            std::to_string(k) + std::to_string(i) + ")");
    }
    return report;
}

}  // namespace entcone
