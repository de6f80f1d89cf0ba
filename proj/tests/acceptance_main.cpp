// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is self-contained and asserts its own tolerances
// and time bounds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entcone/copy_lemma.hpp"
#include "entcone/desargues.hpp"
#include "entcone/entropy.hpp"
#include "entcone/group_recovery.hpp"
#include "entcone/linear.hpp"
#include "entcone/pdg.hpp"
#include "entcone/setfn.hpp"
#include "entcone/shannon.hpp"
#include "oracles.hpp"

using namespace entcone;

namespace {

struct failure : std::runtime_error {
    explicit failure(const std::string& msg) : std::runtime_error(msg) {}
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Presentation> acceptance_presentations()
{
    return {trivial_presentation(), z2_presentation(), z3_presentation()};
}

std::vector<GroupTable> acceptance_groups()
{
    return {trivial_group(), cyclic_group(2, "s"), cyclic_group(3, "s")};
}

// shared heavyweight fixtures (the rank-4 Dowling PDG of Z/3 has 2^22 values)
const Pdg& dowling4(int order)
{
    static std::vector<Pdg> cache = [] {
        std::vector<Pdg> out;
        for (const GroupTable& g : acceptance_groups())
            out.push_back(build_dowling_pdg(g, 4));
        return out;
    }();
    return cache.at(static_cast<std::size_t>(order - 1));
}

// ---------------------------------------------------------------- criteria

void criterion_construction_fidelity()
{
    const auto t0 = std::chrono::steady_clock::now();
    for (const Presentation& p : acceptance_presentations()) {
        const Pdg pdg = build_rank3_pdg(p);
        require(is_polymatroid(pdg.rank).is_polymatroid(),
                "construction is not a polymatroid (exhaustive pair scan)");
        require(is_matroid(pdg.rank), "construction is not a matroid");
        require(validate_pdg(pdg).all_passed(), "a PDG condition fails");
        const auto scan = relators(pdg);
        require(scan.anomalous.empty(), "anomalous relator triples found");
        require(scan.relators == p.relations, "relator set differs from R");
    }
    require(seconds_since(t0) < 10.0, "construction fidelity exceeded 10s");
}

void criterion_dowling_round_trip()
{
    for (int order : {1, 2, 3}) {
        const auto t0 = std::chrono::steady_clock::now();
        const GroupTable g =
            order == 1 ? trivial_group() : cyclic_group(order, "s");
        const Pdg& pdg = dowling4(order);
        const GroupTable recovered = recover_group(pdg);
        require(isomorphic(recovered, g), "recovered group not isomorphic to the input");

        const auto par = parallelism_classes(pdg);
        require(par.size() == g.order(), "parallelism classes are not all singletons");
        for (const auto& cls : par.classes)
            require(cls.size() == 1, "parallelism classes are not all singletons");

        // product uniqueness, both directions, exhaustively
        for (int s = 0; s < g.order(); ++s)
            for (int sp = 0; sp < g.order(); ++sp) {
                const auto products = geometric_products(pdg, s, sp);
                require(!products.empty(), "pair without geometric product");
                for (std::size_t i = 0; i < products.size(); ++i)
                    for (std::size_t j = i + 1; j < products.size(); ++j) {
                        const Mask both = pdg.layout.copy_mask(products[i], 1, 2) |
                                          pdg.layout.copy_mask(products[j], 1, 2);
                        require(pdg.rank.value_is(both, 1), "two products not parallel");
                    }
                // converse: anything parallel to a product is itself a product
                const int t = products[0];
                for (int tp = 0; tp < g.order(); ++tp) {
                    const Mask both =
                        pdg.layout.copy_mask(t, 1, 2) | pdg.layout.copy_mask(tp, 1, 2);
                    if (pdg.rank.value_is(both, 1))
                        require(std::find(products.begin(), products.end(), tp) != products.end(),
                                "parallel element is not a geometric product");
                }
            }
        require(seconds_since(t0) < 30.0, "round trip exceeded 30s for one group");
    }
}

void criterion_lifting()
{
    for (int order : {1, 2, 3}) {
        const GroupTable g = order == 1 ? trivial_group() : cyclic_group(order, "s");
        const LiftResult lift = lift_rank3_to_rank4(g);  // throws on any failing row
        require(all_ok(lift.verification), "a lift verification row failed");

        const Pdg pdg3 = build_dowling_pdg(g, 3);
        Mask keep = 0;
        for (const auto& label : pdg3.rank.ground().labels())
            keep |= lift.pdg4.rank.ground().element_mask(label);
        const RankVector restricted = restriction(lift.pdg4.rank, keep);
        require(restricted.ground() == pdg3.rank.ground(), "restriction ground set mismatch");
        for (Mask m = 0; m <= pdg3.rank.full_mask(); ++m)
            require(restricted.rat(m) == pdg3.rank.rat(m),
                    "restriction differs from the rank-3 geometry");
    }
}

void criterion_desargues_oracle()
{
    const DesarguesConfig cfg{"O", {"a1", "a2", "a3"}, {"b1", "b2", "b3"}, "x1", "x2"};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto sample = sample_perspective_config(seed, true);
        const auto f = linear_rank_vector(sample.realization);
        require(all_ok(check_desargues_hypotheses(f, cfg)), "sampled hypotheses fail");

        const auto result = adjoin_intersection_point(f, cfg, "x3");
        require(result.status == AdjoinStatus::Ok, "adjunction failed");

        LinearRealization with_x = sample.realization;
        with_x.maps.push_back({sample.x3_vector});
        auto labels = with_x.ground.labels();
        labels.push_back("x3");
        with_x.ground = GroundSet(labels);
        const auto truth = linear_rank_vector(with_x);
        require(truth.ground() == result.extended.ground(), "oracle ground mismatch");
        for (Mask m = 0; m <= truth.full_mask(); ++m)
            require(result.extended.rat(m) == truth.rat(m),
                    "extension differs from the subspace-intersection oracle");

        // the collapse clause, whenever its premises hold (they do for the
        // sampled true intersection point xt)
        const auto clause = check_further_clause(result.extended, cfg, "x3", "xt");
        require(clause.premises_ok, "sampled xt violates the clause premises");
        require(clause.conclusions_ok, "collapse clause conclusions fail");
    }
}

void criterion_three_line()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto base = three_line_base_matroid();
    const auto ext = three_line_extended_matroid();
    const auto& g = base.ground();
    require(base.rat(base.full_mask()) == 4, "f(E) != 4");
    require(base.rat(g.mask_of({"a1", "a2", "b1", "b2"})) == 3, "circuit rank != 3");
    require(base.rat(g.mask_of({"a1", "a2", "c1", "c2"})) == 3, "circuit rank != 3");
    require(base.rat(g.mask_of({"b1", "b2", "c1", "c2"})) == 3, "circuit rank != 3");
    require(is_matroid(base) && is_polymatroid(base).is_polymatroid(), "base not a matroid");
    require(is_matroid(ext) && is_polymatroid(ext).is_polymatroid(), "extension not a matroid");

    const auto restricted =
        restriction(ext, ext.full_mask() & ~ext.ground().element_mask("d"));
    require(restricted.ground() == base.ground(), "restriction ground mismatch");
    for (Mask m = 0; m <= base.full_mask(); ++m)
        require(restricted.rat(m) == base.rat(m), "restriction differs from the base");
    require(is_embedding(base, ext), "inclusion is not an embedding");
    require(seconds_since(t0) < 1.0, "three-line checks exceeded 1s");
}

void criterion_entropy_soundness()
{
    std::mt19937_64 seeder(20250809);
    for (int trial = 0; trial < 1000; ++trial) {
        std::mt19937_64 rng(seeder());
        const int atoms = 2 + static_cast<int>(rng() % 11);  // <= 12
        const int vars = 1 + static_cast<int>(rng() % 4);    // <= 4
        FinProbSpace space;
        long total = 0;
        std::vector<long> w(static_cast<std::size_t>(atoms));
        for (auto& x : w) {
            x = static_cast<long>(rng() % 25);
            total += x;
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        for (int a = 0; a < atoms; ++a) {
            space.outcomes.push_back("w" + std::to_string(a));
            space.probs.push_back(Rational(w[static_cast<std::size_t>(a)], total));
        }
        RandomVariableFamily family;
        std::vector<std::string> names;
        for (int v = 0; v < vars; ++v)
            names.push_back("X" + std::to_string(v + 1));
        family.ground = GroundSet(names);
        for (int v = 0; v < vars; ++v) {
            std::vector<int> col;
            const int values = 1 + static_cast<int>(rng() % 4);
            for (int a = 0; a < atoms; ++a)
                col.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(values)));
            family.value_of.push_back(std::move(col));
        }

        const auto h = entropy_vector(space, family);
        require(h.tolerance() == 1e-9, "unexpected tolerance");
        require(is_polymatroid(h).is_polymatroid(), "entropy vector fails the axioms");
        require(in_shannon_cone(h).inside, "entropy vector outside the Shannon cone");

        // conditional entropy cross-check on a handful of conditionings
        for (int k = 0; k < 4; ++k) {
            const Mask a = static_cast<Mask>(rng()) & h.full_mask();
            const auto contracted = contraction(h, a);
            for (Mask s = 0; s <= h.full_mask(); ++s) {
                const double direct = conditional_entropy(space, family, s, a);
                require(std::fabs(contracted.num(s) - direct) <= 1e-9,
                        "contraction disagrees with the conditional entropy");
            }
        }
    }
}

void criterion_linear_entropic()
{
    std::mt19937_64 seeder(777);
    for (int trial = 0; trial < 50; ++trial) {
        std::mt19937_64 rng(seeder());
        LinearRealization r;
        r.p = 2;
        r.d = 2 + static_cast<int>(rng() % 7);  // <= 8
        std::vector<std::string> labels{"a", "b", "c", "d"};
        for (int e = 0; e < 4; ++e) {
            const int rows = static_cast<int>(rng() % static_cast<std::uint64_t>(r.d + 1));
            std::vector<std::vector<int>> mat;
            for (int i = 0; i < rows; ++i) {
                std::vector<int> row(static_cast<std::size_t>(r.d));
                for (auto& x : row)
                    x = static_cast<int>(rng() % 2);
                mat.push_back(std::move(row));
            }
            r.maps.push_back(std::move(mat));
        }
        r.ground = GroundSet(labels);

        const auto ranks = linear_rank_vector(r);
        const auto h = entropic_from_linear(r);
        for (Mask m = 0; m <= h.full_mask(); ++m)
            require(std::fabs(h.num(m) - to_double(ranks.rat(m))) <= 1e-9,
                    "GF(2) entropy does not equal the rank in bits");

        const CopyPair pair{ranks.ground().mask_of({"a", "b"}),
                            ranks.ground().mask_of({"c", "d"})};
        require(!copy_lp_refute(ranks, {pair}).refuted(),
                "copy refutation fired on a linear (hence almost entropic) vector");
    }
}

void criterion_copy_refutation()
{
    const auto t0 = std::chrono::steady_clock::now();
    const RankVector vamos = oracles::vamos_grouped_vector();

    require(in_shannon_cone(vamos).inside, "Vamos vector should be inside the Shannon cone");
    const std::size_t elemental = elemental_shannon_inequalities(4).size();
    require(elemental == 28, "elemental family on 4 variables must have 28 rows");

    const CopyPair pair{vamos.ground().mask_of({"a", "b"}), vamos.ground().mask_of({"c", "d"})};
    const CopyRefutation result = copy_lp_refute(vamos, {pair});
    require(result.refuted(), "copy step did not refute the Vamos vector");
    require(!result.certificate->feasible, "refutation certificate has the wrong kind");
    require(verify_certificate(*result.system, *result.certificate),
            "Farkas certificate fails exact verification");
    require(seconds_since(t0) < 10.0, "refutation exceeded 10s");

    // cross-check: the Zhang-Yeung inequality (external data, with the groups
    // (c,d) playing the distinguished pair) is violated as well
    const auto zy = permute_entropy_inequality(zhang_yeung_inequality(), {2, 3, 0, 1});
    require(zy.evaluate_exact(vamos) < 0, "Zhang-Yeung cross-check not violated");
}

void criterion_independence_lemmas()
{
    std::vector<Pdg> pdgs;
    for (const Presentation& p : acceptance_presentations())
        pdgs.push_back(build_rank3_pdg(p));
    for (const GroupTable& g : acceptance_groups())
        pdgs.push_back(build_dowling_pdg(g, 3));
    for (int order : {1, 2, 3})
        pdgs.push_back(dowling4(order));

    for (const Pdg& pdg : pdgs) {
        const PdgLayout& lay = pdg.layout;
        const int r = lay.rank();
        const int ng = lay.gens().size();

        // (a) acyclic index patterns: every forest, every generator choice
        std::vector<std::pair<int, int>> pairs;
        for (int i = 1; i <= r; ++i)
            for (int j = i + 1; j <= r; ++j)
                pairs.emplace_back(i, j);
        for (Mask pick = 1; pick < (Mask{1} << pairs.size()); ++pick) {
            std::vector<std::pair<int, int>> chosen;
            for (std::size_t t = 0; t < pairs.size(); ++t)
                if (pick & (Mask{1} << t))
                    chosen.push_back(pairs[t]);
            std::size_t combos = 1;
            for (std::size_t t = 0; t < chosen.size(); ++t)
                combos *= static_cast<std::size_t>(ng);
            std::vector<CopyPick> picks(chosen.size());
            for (std::size_t assign = 0; assign < combos; ++assign) {
                std::size_t a = assign;
                for (std::size_t t = 0; t < chosen.size(); ++t) {
                    picks[t] = {static_cast<int>(a % static_cast<std::size_t>(ng)),
                                chosen[t].first, chosen[t].second};
                    a /= static_cast<std::size_t>(ng);
                }
                require(check_acyclic_independence(pdg, picks),
                        "acyclic pattern with rank below its size");
            }
        }

        // (b) pair independence except same-index-pair generator copies
        const int n = pdg.rank.size();
        std::vector<std::pair<int, int>> pair_of(static_cast<std::size_t>(n), {-1, -1});
        for (const auto& [g, i, j] : lay.present())
            pair_of[static_cast<std::size_t>(lay.copy_index(g, i, j))] = {i, j};
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                const bool same_pair = pair_of[static_cast<std::size_t>(x)].first > 0 &&
                                       pair_of[static_cast<std::size_t>(x)] ==
                                           pair_of[static_cast<std::size_t>(y)];
                if (!same_pair)
                    require(pdg.rank.value_is((Mask{1} << x) | (Mask{1} << y), 2),
                            "independent pair has rank below 2");
            }

        // (c) basis vs copies
        for (int i = 1; i <= r; ++i)
            for (const auto& [g, j, k] : lay.present())
                require(pdg.rank.value_is(lay.basis_mask(i) | lay.copy_mask(g, j, k), 2),
                        "f(b_i, s_{j,k}) != 2");
    }
}

void criterion_nontriviality()
{
    const Presentation p = z3_presentation();
    const GroupTable z3 =
        GroupTable::from_table({"e", "s", "t"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    require(nontriviality_pipeline(p, z3, "s").verdict == NontrivialityVerdict::Nontrivial,
            "x = s should be nontrivial");
    require(nontriviality_pipeline(p, z3, "e").verdict == NontrivialityVerdict::Trivial,
            "x = e should be trivial");
    const GroupTable z4 = GroupTable::from_table(
        {"e", "s", "u", "t"}, {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
    require(nontriviality_pipeline(p, z4, "s").verdict == NontrivialityVerdict::Inconsistent,
            "a wrong quotient should be inconsistent");
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria{
        {"construction fidelity (rank-3 PDGs of trivial, Z/2, Z/3)", criterion_construction_fidelity},
        {"dowling round trip and product uniqueness", criterion_dowling_round_trip},
        {"rank-3 to rank-4 lifting verification", criterion_lifting},
        {"desargues adjunction equals the GF(5)^4 oracle (100 seeds)", criterion_desargues_oracle},
        {"three-line intersection matroids", criterion_three_line},
        {"entropy soundness over 1000 random spaces", criterion_entropy_soundness},
        {"linear realizations are entropic and never refuted (50 seeds)", criterion_linear_entropic},
        {"copy-lemma refutation of the Vamos vector", criterion_copy_refutation},
        {"independence lemmas on all constructed PDGs", criterion_independence_lemmas},
        {"nontriviality pipeline verdicts", criterion_nontriviality},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            criteria[i].run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        std::printf("[%2zu] %-62s %s (%.2fs)%s%s\n", i + 1, criteria[i].name, verdict.c_str(),
                    seconds_since(t0), detail.empty() ? "" : " - ", detail.c_str());
        std::fflush(stdout);
    }
    if (failures)
        std::printf("%d of %zu acceptance criteria FAILED\n", failures, criteria.size());
    else
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
