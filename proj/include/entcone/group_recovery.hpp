#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "entcone/desargues.hpp"
#include "entcone/group_table.hpp"
#include "entcone/pdg.hpp"
#include "entcone/presentation.hpp"

namespace entcone {

struct not_product_closed : std::runtime_error {
    not_product_closed(const std::string& s, const std::string& sp)
        : std::runtime_error("no geometric product exists for (" + s + ", " + sp + ")")
    {
    }
};

struct well_definedness_violation : std::runtime_error {
    explicit well_definedness_violation(const std::string& msg) : std::runtime_error(msg) {}
};

struct group_axiom_violation : std::runtime_error {
    explicit group_axiom_violation(const std::string& msg) : std::runtime_error(msg) {}
};

// All t with (s, s', t^-1) a relator.  May be empty; rank-4 PDGs only.
// Missing elements (incoherent layouts) simply fail the relator test.
inline std::vector<int> geometric_products(const Pdg& pdg, int s, int sp)
{
    if (pdg.layout.rank() != 4)
        throw std::invalid_argument("geometric products need a rank-4 PDG");
    std::vector<int> out;
    for (int t = 0; t < pdg.layout.gens().size(); ++t)
        if (is_relator(pdg, s, sp, pdg.layout.gens().inv(t)))
            out.push_back(t);
    return out;
}

inline std::vector<std::string> geometric_products(const Pdg& pdg, const std::string& s,
                                                   const std::string& sp)
{
    std::vector<std::string> out;
    for (int t : geometric_products(pdg, pdg.layout.gens().index_of(s), pdg.layout.gens().index_of(sp)))
        out.push_back(pdg.layout.gens().label(t));
    return out;
}

struct RelatorTripleReport {
    bool first_triple_ok = false;  // the rank condition at the given indices
    bool full_relator = false;     // the condition at every index triple
    bool anomalous = false;        // some triples pass, some fail: malformed PDG
};

// One good index triple should imply them all: check the given triple, then
// the full relator property, and flag the anomalous middle ground.
inline RelatorTripleReport find_relator_from_triple(const Pdg& pdg, int s, int sp, int spp, int p,
                                                    int q, int r)
{
    if (pdg.layout.rank() != 4)
        throw std::invalid_argument("find_relator_from_triple needs a rank-4 PDG");
    if (p == q || q == r || p == r || p < 1 || q < 1 || r < 1 || p > 4 || q > 4 || r > 4)
        throw std::invalid_argument("indices must be distinct and within 1..4");
    const PdgLayout& lay = pdg.layout;
    RelatorTripleReport report;
    const Mask triple = lay.copy_mask(s, p, q) | lay.copy_mask(sp, q, r) | lay.copy_mask(spp, r, p);
    report.first_triple_ok = pdg.rank.value_is(triple, 2);
    report.full_relator = is_relator(pdg, s, sp, spp);
    report.anomalous = report.first_triple_ok != report.full_relator;
    return report;
}

struct ParallelismClasses {
    std::vector<std::vector<int>> classes;  // generator indices, each sorted
    std::vector<int> class_of;              // generator -> class id

    int size() const { return static_cast<int>(classes.size()); }
};

// t ~ t' iff f(t_{i,j}, t'_{i,j}) = 1; the relation must not depend on the
// index pair, and must be compatible with the involution.
inline ParallelismClasses parallelism_classes(const Pdg& pdg)
{
    if (pdg.layout.rank() != 4)
        throw std::invalid_argument("parallelism classes need a rank-4 PDG");
    if (!pdg.layout.coherent())
        throw std::invalid_argument("parallelism classes need a coherent PDG");
    const PdgLayout& lay = pdg.layout;
    const int n = lay.gens().size();

    auto related_at = [&](int t, int tp, int i, int j) {
        const Mask m = lay.copy_mask(t, i, j) | lay.copy_mask(tp, i, j);
        return pdg.rank.value_is(m, 1);
    };

    std::vector<std::vector<bool>> related(static_cast<std::size_t>(n),
                                           std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int t = 0; t < n; ++t)
        for (int tp = 0; tp < n; ++tp) {
            const bool base = related_at(t, tp, 1, 2);
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j) {
                    if (i == j)
                        continue;
                    if (related_at(t, tp, i, j) != base)
                        throw pdg_structure_error(
                            "parallelism relation differs between index pairs for (" +
                            lay.gens().label(t) + ", " + lay.gens().label(tp) + ")");
                }
            related[static_cast<std::size_t>(t)][static_cast<std::size_t>(tp)] = base;
        }

    // sanity: an equivalence relation compatible with the involution
    for (int t = 0; t < n; ++t) {
        if (!related[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)])
            throw pdg_structure_error("parallelism is not reflexive at " + lay.gens().label(t));
        for (int tp = 0; tp < n; ++tp) {
            if (related[static_cast<std::size_t>(t)][static_cast<std::size_t>(tp)] !=
                related[static_cast<std::size_t>(tp)][static_cast<std::size_t>(t)])
                throw pdg_structure_error("parallelism is not symmetric");
            if (related[static_cast<std::size_t>(t)][static_cast<std::size_t>(tp)] !=
                related[static_cast<std::size_t>(lay.gens().inv(t))][static_cast<std::size_t>(lay.gens().inv(tp))])
                throw pdg_structure_error("parallelism is not involution-compatible");
            for (int tq = 0; tq < n; ++tq)
                if (related[static_cast<std::size_t>(t)][static_cast<std::size_t>(tp)] &&
                    related[static_cast<std::size_t>(tp)][static_cast<std::size_t>(tq)] &&
                    !related[static_cast<std::size_t>(t)][static_cast<std::size_t>(tq)])
                    throw pdg_structure_error("parallelism is not transitive");
        }
    }

    ParallelismClasses out;
    out.class_of.assign(static_cast<std::size_t>(n), -1);
    for (int t = 0; t < n; ++t) {
        if (out.class_of[static_cast<std::size_t>(t)] >= 0)
            continue;
        std::vector<int> cls;
        for (int tp = 0; tp < n; ++tp)
            if (related[static_cast<std::size_t>(t)][static_cast<std::size_t>(tp)]) {
                cls.push_back(tp);
                out.class_of[static_cast<std::size_t>(tp)] = out.size();
            }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

// Read the group off a product-closed rank-4 PDG: elements are the
// parallelism classes, the product of classes is the class of any geometric
// product of any representatives, the identity is [e] and inverses come from
// the involution.  Well-definedness across representatives and the full
// group axioms are verified.
inline GroupTable recover_group(const Pdg& pdg)
{
    const PdgLayout& lay = pdg.layout;
    const GeneratorSet& gens = lay.gens();
    const ParallelismClasses par = parallelism_classes(pdg);
    const int k = par.size();

    std::vector<std::vector<int>> table(static_cast<std::size_t>(k),
                                        std::vector<int>(static_cast<std::size_t>(k), -1));
    for (int ca = 0; ca < k; ++ca)
        for (int cb = 0; cb < k; ++cb) {
            std::set<int> product_classes;
            for (int s : par.classes[static_cast<std::size_t>(ca)])
                for (int sp : par.classes[static_cast<std::size_t>(cb)])
                    for (int t : geometric_products(pdg, s, sp))
                        product_classes.insert(par.class_of[static_cast<std::size_t>(t)]);
            if (product_classes.empty())
                throw not_product_closed(gens.label(par.classes[static_cast<std::size_t>(ca)][0]),
                                         gens.label(par.classes[static_cast<std::size_t>(cb)][0]));
            if (product_classes.size() > 1)
                throw well_definedness_violation(
                    "geometric products of class pair (" +
                    gens.label(par.classes[static_cast<std::size_t>(ca)][0]) + ", " +
                    gens.label(par.classes[static_cast<std::size_t>(cb)][0]) +
                    ") land in different parallelism classes");
            table[static_cast<std::size_t>(ca)][static_cast<std::size_t>(cb)] = *product_classes.begin();
        }

    std::vector<std::string> names(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
        names[static_cast<std::size_t>(c)] =
            gens.label(par.classes[static_cast<std::size_t>(c)][0]);

    GroupTable recovered = [&] {
        try {
            return GroupTable::from_table(names, table);
        } catch (const std::invalid_argument& e) {
            throw group_axiom_violation(e.what());
        }
    }();

    // the identity must be [e] and inverses must follow the involution
    if (recovered.identity() != par.class_of[static_cast<std::size_t>(gens.identity)])
        throw group_axiom_violation("recovered identity is not the class of e");
    for (int s = 0; s < gens.size(); ++s) {
        const int cls = par.class_of[static_cast<std::size_t>(s)];
        const int inv_cls = par.class_of[static_cast<std::size_t>(gens.inv(s))];
        if (recovered.inv(cls) != inv_cls)
            throw group_axiom_violation("recovered inverse of [" + gens.label(s) +
                                        "] is not [" + gens.label(gens.inv(s)) + "]");
    }
    return recovered;
}

// Report for a copy-extension check between two concrete rank vectors, with
// per-condition witnesses.
struct CopySemanticsReport {
    CheckLine agrees_on_original;   // condition (1)
    CheckLine copy_isomorphism;     // condition (2)
    CheckLine copy_independence;    // condition (3)

    bool all_passed() const
    {
        return agrees_on_original.ok && copy_isomorphism.ok && copy_independence.ok;
    }
};

// Verifies that vt is a copy extension of v over base B copying C: vt agrees
// with v on E, restricts isomorphically on B u C', and makes C' independent
// of the rest over B.  copy_map sends each element of C to its copy label.
inline CopySemanticsReport check_copy_semantics(const RankVector& v, const RankVector& vt, Mask B,
                                                Mask C,
                                                const std::map<std::string, std::string>& copy_map)
{
    const GroundSet& g = v.ground();
    const GroundSet& gt = vt.ground();
    if ((B & C) != 0)
        throw std::invalid_argument("base and copied set must be disjoint");

    // ground(vt) must be ground(v) plus the copies
    if (gt.size() != g.size() + popcount(C))
        throw std::invalid_argument("extension ground set must be E plus one copy per element of C");
    std::vector<int> to_ext(static_cast<std::size_t>(g.size()));
    std::vector<int> copy_of(static_cast<std::size_t>(g.size()), -1);
    for (int i = 0; i < g.size(); ++i)
        to_ext[static_cast<std::size_t>(i)] = gt.index_of(g.label(i));
    Mask cprime = 0;
    for (int i = 0; i < g.size(); ++i)
        if (C & (Mask{1} << i)) {
            auto it = copy_map.find(g.label(i));
            if (it == copy_map.end())
                throw std::invalid_argument("copy map misses '" + g.label(i) + "'");
            copy_of[static_cast<std::size_t>(i)] = gt.index_of(it->second);
            cprime |= Mask{1} << copy_of[static_cast<std::size_t>(i)];
        }

    auto lift = [&](Mask m) {
        Mask out = 0;
        for (int i = 0; i < g.size(); ++i)
            if (m & (Mask{1} << i))
                out |= Mask{1} << to_ext[static_cast<std::size_t>(i)];
        return out;
    };
    auto lift_copy = [&](Mask m) {
        Mask out = 0;
        for (int i = 0; i < g.size(); ++i)
            if (m & (Mask{1} << i))
                out |= Mask{1} << copy_of[static_cast<std::size_t>(i)];
        return out;
    };

    CopySemanticsReport report;
    report.agrees_on_original = {"vt(S) = v(S) for S in E", true, "", ""};
    for (Mask s = 0; s <= v.full_mask(); ++s) {
        const bool same = v.is_exact() && vt.is_exact()
                              ? v.rat(s) == vt.rat(lift(s))
                              : std::fabs(v.num(s) - vt.num(lift(s))) <=
                                    std::max(v.tolerance(), vt.tolerance());
        if (!same) {
            report.agrees_on_original.ok = false;
            report.agrees_on_original.equation += " [first failure at " + g.subset_to_string(s) + "]";
            report.agrees_on_original.expected = v.value_string(s);
            report.agrees_on_original.got = vt.value_string(lift(s));
            break;
        }
    }

    report.copy_isomorphism = {"v(S) = vt((S&B) u copy(S&C)) for S in B u C", true, "", ""};
    for (Mask s : SubmaskRange(B | C)) {
        const Mask image = lift(s & B) | lift_copy(s & C);
        const bool same = v.is_exact() && vt.is_exact()
                              ? v.rat(s) == vt.rat(image)
                              : std::fabs(v.num(s) - vt.num(image)) <=
                                    std::max(v.tolerance(), vt.tolerance());
        if (!same) {
            report.copy_isomorphism.ok = false;
            report.copy_isomorphism.equation += " [first failure at " + g.subset_to_string(s) + "]";
            report.copy_isomorphism.expected = v.value_string(s);
            report.copy_isomorphism.got = vt.value_string(image);
            break;
        }
    }

    report.copy_independence = {"vt_{/B}(S) = vt_{/B}(S&C') + vt_{/B}(S\\C')", true, "", ""};
    const Mask bt = lift(B);
    for (Mask s = 0; s <= vt.full_mask(); ++s) {
        if (vt.is_exact()) {
            const Rational lhs = vt.rat(s | bt) - vt.rat(bt);
            const Rational rhs =
                (vt.rat((s & cprime) | bt) - vt.rat(bt)) + (vt.rat((s & ~cprime) | bt) - vt.rat(bt));
            if (lhs != rhs) {
                report.copy_independence.ok = false;
                report.copy_independence.equation +=
                    " [first failure at " + gt.subset_to_string(s) + "]";
                report.copy_independence.expected = format_rational(rhs);
                report.copy_independence.got = format_rational(lhs);
                break;
            }
        } else {
            const double lhs = vt.num(s | bt) - vt.num(bt);
            const double rhs =
                (vt.num((s & cprime) | bt) - vt.num(bt)) + (vt.num((s & ~cprime) | bt) - vt.num(bt));
            if (std::fabs(lhs - rhs) > vt.tolerance()) {
                report.copy_independence.ok = false;
                report.copy_independence.equation +=
                    " [first failure at " + gt.subset_to_string(s) + "]";
                report.copy_independence.expected = RankVector::format_numeric(rhs);
                report.copy_independence.got = RankVector::format_numeric(lhs);
                break;
            }
        }
    }
    return report;
}

struct LiftResult {
    Pdg pdg4;
    std::vector<CheckLine> verification;
};

// Rank-4 lift of a group's rank-3 Dowling PDG: build the rank-4 Dowling PDG
// and verify, row by row, the rank conditions the lift is supposed to
// produce: the copy-step isomorphism rows on the index pairs {1,4} and
// {2,4}, the adjunction rows for each s_{3,4}, the nondegeneracy row
// f(b4, s_{3,4}) = 2, and coherence at the four index triples (1,3,4),
// (4,1,3), (4,2,3), (3,4,2).  A failing row is a structural error.
inline LiftResult lift_rank3_to_rank4(const GroupTable& g)
{
    const Pdg pdg3 = build_dowling_pdg(g, 3);
    Pdg pdg4 = build_dowling_pdg(g, 4);
    const PdgLayout& lay4 = pdg4.layout;
    const PdgLayout& lay3 = pdg3.layout;
    const GeneratorSet& gens = lay4.gens();
    const RankVector& f4 = pdg4.rank;
    const RankVector& f3 = pdg3.rank;

    std::vector<CheckLine> rows;
    using check_detail::expect_rank;

    // copy step: B = {b1..b4} independent, and the lines on {1,4}, {2,4}
    // mirror the lines on {1,3}, {2,3}
    expect_rank(rows, f4, lay4.full_basis_mask(), 4, "f(b1,b2,b3,b4)");
    expect_rank(rows, f4, lay4.basis_mask(4), 1, "f(b4)");
    for (int i : {1, 2}) {
        const int other = 3;
        Mask line14 = lay4.basis_mask(i) | lay4.basis_mask(4);
        Mask line13 = lay3.basis_mask(i) | lay3.basis_mask(other);
        for (int s = 0; s < gens.size(); ++s) {
            line14 |= lay4.copy_mask(s, i, 4);
            line13 |= lay3.copy_mask(s, i, other);
        }
        CheckLine line;
        line.equation = "f4({b" + std::to_string(i) + ",b4} u S@" + std::to_string(i) +
                        "4) = f3({b" + std::to_string(i) + ",b3} u S@" + std::to_string(i) + "3)";
        line.expected = f3.value_string(line13);
        line.got = f4.value_string(line14);
        line.ok = f4.rat(line14) == f3.rat(line13) && f4.value_is(line14, 2);
        rows.push_back(std::move(line));

        for (int s = 0; s < gens.size(); ++s) {
            expect_rank(rows, f4, lay4.copy_mask(s, i, 4), 1,
                        "f(" + PdgLayout::copy_label(gens.label(s), i, 4) + ")");
            expect_rank(rows, f4, lay4.copy_mask(s, i, 4) | lay4.basis_mask(i), 2,
                        "f(b" + std::to_string(i) + "," +
                            PdgLayout::copy_label(gens.label(s), i, 4) + ")");
            expect_rank(rows, f4, lay4.copy_mask(s, i, 4) | lay4.basis_mask(4), 2,
                        "f(b4," + PdgLayout::copy_label(gens.label(s), i, 4) + ")");
        }
    }
    // coherence already available on {1,2,4} through the copy step
    for (int s = 0; s < gens.size(); ++s)
        for (const auto& [i, j, k] :
             std::vector<std::array<int, 3>>{{1, 2, 4}, {2, 4, 1}, {4, 1, 2}, {2, 1, 4}, {1, 4, 2}, {4, 2, 1}})
            expect_rank(rows, f4,
                        lay4.copy_mask(s, i, j) | lay4.copy_mask(gens.inv(s), j, k) |
                            lay4.copy_mask(gens.identity, k, i),
                        2,
                        "f(" + PdgLayout::copy_label(gens.label(s), i, j) + "," +
                            PdgLayout::copy_label(gens.label(gens.inv(s)), j, k) + "," +
                            PdgLayout::copy_label(gens.label(gens.identity), k, i) + ")");

    // intersection-point adjunction rows for each s_{3,4}
    for (int s = 0; s < gens.size(); ++s) {
        const Mask s34 = lay4.copy_mask(s, 3, 4);
        const std::string name = PdgLayout::copy_label(gens.label(s), 3, 4);
        expect_rank(rows, f4, s34, 1, "f(" + name + ")");
        expect_rank(rows, f4, lay4.copy_mask(s, 3, 2) | lay4.copy_mask(gens.identity, 4, 2) | s34,
                    2,
                    "f(" + PdgLayout::copy_label(gens.label(gens.inv(s)), 2, 3) + "," +
                        PdgLayout::copy_label(gens.label(gens.identity), 2, 4) + "," + name + ")");
        expect_rank(rows, f4, lay4.basis_mask(3) | lay4.basis_mask(4) | s34, 2,
                    "f(b3,b4," + name + ")");
        expect_rank(rows, f4, lay4.copy_mask(s, 3, 2) | s34, 2,
                    "f(" + PdgLayout::copy_label(gens.label(gens.inv(s)), 2, 3) + "," + name + ")");
        expect_rank(rows, f4, lay4.basis_mask(3) | s34, 2, "f(b3," + name + ")");
        expect_rank(rows, f4,
                    lay4.copy_mask(gens.identity, 3, 1) | lay4.copy_mask(s, 1, 4) | s34, 2,
                    "f(" + PdgLayout::copy_label(gens.label(gens.identity), 1, 3) + "," +
                        PdgLayout::copy_label(gens.label(s), 1, 4) + "," + name + ")");
        // nondegeneracy derived in the lift: 2 >= f(b4, s_{3,4}) >= 2
        expect_rank(rows, f4, lay4.basis_mask(4) | s34, 2, "f(b4," + name + ")");
    }

    // coherence at the four index triples that close the lift
    for (int s = 0; s < gens.size(); ++s)
        for (const auto& [i, j, k] :
             std::vector<std::array<int, 3>>{{1, 3, 4}, {4, 1, 3}, {4, 2, 3}, {3, 4, 2}})
            expect_rank(rows, f4,
                        lay4.copy_mask(s, i, j) | lay4.copy_mask(gens.inv(s), j, k) |
                            lay4.copy_mask(gens.identity, k, i),
                        2,
                        "f(" + PdgLayout::copy_label(gens.label(s), i, j) + "," +
                            PdgLayout::copy_label(gens.label(gens.inv(s)), j, k) + "," +
                            PdgLayout::copy_label(gens.label(gens.identity), k, i) + ")");

    for (const auto& row : rows)
        if (!row.ok)
            throw pdg_structure_error("lift verification row failed: " + row.equation +
                                      " expected " + row.expected + " got " + row.got);
    return LiftResult{std::move(pdg4), std::move(rows)};
}

enum class NontrivialityVerdict { Nontrivial, Trivial, Inconsistent };

struct NontrivialityResult {
    NontrivialityVerdict verdict = NontrivialityVerdict::Inconsistent;
    std::vector<CheckLine> report;
};

// End-to-end nontriviality check: verify that the candidate group satisfies
// every relation of the presentation (labelwise), then decide whether the
// chosen generator is parallel to e in the rank-4 Dowling PDG of the
// quotient, cross-checked through full group recovery.
inline NontrivialityResult nontriviality_pipeline(const Presentation& p, const GroupTable& g,
                                                  const std::string& x)
{
    p.validate();
    NontrivialityResult result;

    // the label map: every generator must name an element of g
    std::vector<int> to_group(static_cast<std::size_t>(p.gens.size()));
    for (int s = 0; s < p.gens.size(); ++s) {
        if (!g.has(p.gens.label(s)))
            throw std::invalid_argument("label map not defined on generator '" + p.gens.label(s) +
                                        "'");
        to_group[static_cast<std::size_t>(s)] = g.index_of(p.gens.label(s));
    }
    const int gx = p.gens.index_of(x);  // throws for unknown x

    bool quotient_ok = true;
    {
        CheckLine line{"identity generator maps to the group identity", true, "e", ""};
        line.got = g.label(to_group[static_cast<std::size_t>(p.gens.identity)]);
        line.ok = to_group[static_cast<std::size_t>(p.gens.identity)] == g.identity();
        quotient_ok = quotient_ok && line.ok;
        result.report.push_back(std::move(line));
    }
    for (int s = 0; s < p.gens.size(); ++s) {
        CheckLine line{"inverse of " + p.gens.label(s) + " maps to the group inverse", true, "", ""};
        line.ok = to_group[static_cast<std::size_t>(p.gens.inv(s))] ==
                  g.inv(to_group[static_cast<std::size_t>(s)]);
        quotient_ok = quotient_ok && line.ok;
        result.report.push_back(std::move(line));
    }
    for (const auto& [s, sp, spp] : p.relations) {
        CheckLine line;
        line.equation = "relation " + p.gens.label(s) + " " + p.gens.label(sp) + " " +
                        p.gens.label(spp) + " = e holds in the group";
        const int prod = g.mul(g.mul(to_group[static_cast<std::size_t>(s)],
                                     to_group[static_cast<std::size_t>(sp)]),
                               to_group[static_cast<std::size_t>(spp)]);
        line.ok = prod == g.identity();
        line.expected = "e";
        line.got = g.label(prod);
        quotient_ok = quotient_ok && line.ok;
        result.report.push_back(std::move(line));
    }
    if (!quotient_ok) {
        result.verdict = NontrivialityVerdict::Inconsistent;
        return result;
    }

    const Pdg pdg = build_dowling_pdg(g, 4);
    const GeneratorSet& gens = pdg.layout.gens();
    const int gen_x = to_group[static_cast<std::size_t>(gx)];
    const Mask pair =
        pdg.layout.copy_mask(gen_x, 1, 2) | pdg.layout.copy_mask(gens.identity, 1, 2);
    const bool separated = !pdg.rank.value_is(pair, 1);

    const GroupTable recovered = recover_group(pdg);
    const ParallelismClasses par = parallelism_classes(pdg);
    const bool distinct_class = par.class_of[static_cast<std::size_t>(gen_x)] !=
                                par.class_of[static_cast<std::size_t>(gens.identity)];
    if (separated != distinct_class)
        throw pdg_structure_error("rank separation disagrees with the recovered parallelism");

    CheckLine line{"f(x@12, e@12) != 1 iff [x] != [e] in the recovered group", true,
                   separated ? "nontrivial" : "trivial",
                   distinct_class ? "nontrivial" : "trivial"};
    result.report.push_back(std::move(line));
    (void)recovered;

    result.verdict =
        separated ? NontrivialityVerdict::Nontrivial : NontrivialityVerdict::Trivial;
    return result;
}

}  // namespace entcone
