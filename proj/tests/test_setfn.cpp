#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "entcone/setfn.hpp"

using namespace entcone;

namespace {

// Independent check used to validate the production axiom scan: weighted
// coverage functions are always polymatroids (in fact integer ones when the
// weights are integers).
RankVector coverage_polymatroid(std::uint64_t seed, int n, int universe)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> covers(static_cast<std::size_t>(n));
    std::vector<int> weight(static_cast<std::size_t>(universe));
    for (auto& c : covers)
        c = static_cast<std::uint32_t>(rng() & ((1u << universe) - 1));
    for (auto& w : weight)
        w = static_cast<int>(rng() % 5);

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("v" + std::to_string(i));
    GroundSet g(labels);
    std::vector<Rational> vals(g.subset_count());
    for (Mask m = 0; m < g.subset_count(); ++m) {
        std::uint32_t u = 0;
        for (int i = 0; i < n; ++i)
            if (m & (Mask{1} << i))
                u |= covers[static_cast<std::size_t>(i)];
        int total = 0;
        for (int j = 0; j < universe; ++j)
            if (u & (1u << j))
                total += weight[static_cast<std::size_t>(j)];
        vals[m] = total;
    }
    return RankVector::exact(std::move(g), std::move(vals));
}

}  // namespace

TEST_CASE("uniform matroid U_{2,3} satisfies all axioms", "[setfn]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    const AxiomReport rep = is_polymatroid(u23);
    CHECK(rep.is_normalized);
    CHECK(rep.is_monotone);
    CHECK(rep.is_submodular);
    CHECK(rep.is_polymatroid());
    CHECK(is_matroid(u23));
}

TEST_CASE("nonzero value on the empty set breaks normalization", "[setfn]")
{
    GroundSet g({"a"});
    auto v = RankVector::exact(g, {Rational(1), Rational(1)});
    const AxiomReport rep = is_polymatroid(v);
    CHECK_FALSE(rep.is_normalized);
    REQUIRE(rep.first_violation.has_value());
    CHECK(rep.first_violation->axiom == "normalized");
}

TEST_CASE("half-integer singleton is not a matroid", "[setfn]")
{
    GroundSet g({"a", "b"});
    std::vector<Rational> vals{Rational(0), Rational(1, 2), Rational(1, 2), Rational(1)};
    auto v = RankVector::exact(g, vals);
    CHECK(is_polymatroid(v).is_polymatroid());
    CHECK_FALSE(is_matroid(v));
}

TEST_CASE("violation reporting is deterministic and detailed", "[setfn]")
{
    GroundSet g({"a", "b"});
    // f({a,b}) > f(a) + f(b): violates submodularity (subadditivity instance).
    auto v = RankVector::exact(g, {Rational(0), Rational(1), Rational(1), Rational(3)});
    const AxiomReport rep = is_polymatroid(v);
    CHECK(rep.is_normalized);
    CHECK(rep.is_monotone);
    CHECK_FALSE(rep.is_submodular);
    REQUIRE(rep.first_violation.has_value());
    CHECK(rep.first_violation->axiom == "submodular");
    CHECK(rep.first_violation->a == 1);
    CHECK(rep.first_violation->b == 2);
    CHECK(rep.first_violation->lhs == "3");
    CHECK(rep.first_violation->rhs == "2");
}

TEST_CASE("closure on U_{2,3}", "[setfn]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    const Mask ab = u23.ground().mask_of({"a", "b"});
    CHECK(closure(u23, ab) == u23.full_mask());
    CHECK(closure(u23, u23.full_mask()) == u23.full_mask());
    // closure is extensive and idempotent, and preserves rank
    for (Mask m = 0; m <= u23.full_mask(); ++m) {
        const Mask cl = closure(u23, m);
        CHECK((cl & m) == m);
        CHECK(closure(u23, cl) == cl);
        CHECK(u23.value_eq(m, cl));
    }
}

TEST_CASE("contraction of U_{2,3} by a point", "[setfn]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    const Mask a = u23.ground().element_mask("a");

    const RankVector by_empty = contraction(u23, 0);
    for (Mask m = 0; m <= u23.full_mask(); ++m)
        CHECK(by_empty.rat(m) == u23.rat(m));

    const RankVector by_a = contraction(u23, a);
    for (Mask m = 0; m <= u23.full_mask(); ++m) {
        const int expected = std::min(popcount(m & ~a), 1);
        CHECK(by_a.rat(m) == expected);
    }
    CHECK(is_polymatroid(by_a).is_polymatroid());
}

TEST_CASE("restriction keeps values and ground order", "[setfn]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});

    const RankVector all = restriction(u23, u23.full_mask());
    CHECK(all.ground() == u23.ground());
    for (Mask m = 0; m <= u23.full_mask(); ++m)
        CHECK(all.rat(m) == u23.rat(m));

    const RankVector empty = restriction(u23, 0);
    CHECK(empty.size() == 0);
    CHECK(empty.rat(0) == 0);

    const Mask ac = u23.ground().mask_of({"a", "c"});
    const RankVector sub = restriction(u23, ac);
    CHECK(sub.ground().labels() == std::vector<std::string>{"a", "c"});
    CHECK(sub.rat(3) == 2);
}

TEST_CASE("embedding detection", "[setfn]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    CHECK(is_embedding(u23, u23));

    // any relabeling of U_{2,3} is rank-preserving
    std::map<std::string, std::string> rot{{"a", "b"}, {"b", "c"}, {"c", "a"}};
    CHECK(is_embedding(u23, u23, rot));

    std::map<std::string, std::string> collide{{"a", "b"}, {"b", "b"}, {"c", "a"}};
    CHECK_THROWS_AS(is_embedding(u23, u23, collide), std::invalid_argument);

    std::map<std::string, std::string> missing{{"a", "z"}, {"b", "b"}, {"c", "c"}};
    CHECK_THROWS_AS(is_embedding(u23, u23, missing), std::invalid_argument);
}

TEST_CASE("coverage polymatroids pass, perturbations fail", "[setfn][property]")
{
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RankVector v = coverage_polymatroid(seed, 4, 8);
        CHECK(is_polymatroid(v).is_polymatroid());

        // diminishing returns <=> submodularity, spot-checked on all triples
        for (Mask b = 0; b <= v.full_mask(); ++b)
            for (Mask a : SubmaskRange(b))
                for (int c = 0; c < v.size(); ++c) {
                    const Mask cm = Mask{1} << c;
                    if (b & cm)
                        continue;
                    CHECK(v.rat(a | cm) - v.rat(a) >= v.rat(b | cm) - v.rat(b));
                }

        // subadditivity over random covers
        std::mt19937_64 rng(seed * 77);
        for (int trial = 0; trial < 10; ++trial) {
            const Mask s1 = static_cast<Mask>(rng()) & v.full_mask();
            const Mask s2 = static_cast<Mask>(rng()) & v.full_mask();
            const Mask s3 = v.full_mask() & ~(s1 | s2);
            CHECK(v.rat(s1 | s2 | s3) <= v.rat(s1) + v.rat(s2) + v.rat(s3));
        }

        // restriction and contraction stay polymatroids
        const Mask t = static_cast<Mask>(seed * 5) & v.full_mask();
        CHECK(is_polymatroid(restriction(v, t)).is_polymatroid());
        CHECK(is_polymatroid(contraction(v, t)).is_polymatroid());
    }
}

TEST_CASE("int64 fast path agrees with the rational fallback", "[setfn]")
{
    GroundSet g({"a", "b", "c"});
    std::vector<Rational> vals(g.subset_count());
    for (Mask m = 0; m < g.subset_count(); ++m)
        vals[m] = Rational(std::min(popcount(m), 2));
    // denominators too large for the shared-denominator fast path
    const BigInt huge = (BigInt(1) << 50) + 1;
    for (auto& v : vals)
        v /= Rational(huge, huge);  // exact no-op that keeps values identical
    auto v1 = RankVector::exact(g, vals);
    CHECK(is_polymatroid(v1).is_polymatroid());

    std::vector<Rational> bad = vals;
    bad[3] = Rational(3) + Rational(1, huge);
    auto v2 = RankVector::exact(g, bad);
    CHECK_FALSE(is_polymatroid(v2).is_polymatroid());
}

TEST_CASE("numeric mode compares within tolerance", "[setfn]")
{
    GroundSet g({"a", "b"});
    std::vector<double> vals{0.0, 1.0, 1.0, 2.0 + 0.5e-10};
    auto v = RankVector::numeric(g, vals);
    CHECK(is_polymatroid(v).is_polymatroid());
    CHECK(is_matroid(v));

    std::vector<double> off{0.0, 1.0, 1.0, 2.0 + 1e-6};
    auto w = RankVector::numeric(g, off);
    CHECK_FALSE(is_polymatroid(w).is_polymatroid());
    CHECK_FALSE(is_matroid(w));
}

TEST_CASE("rank vector text round trip", "[setfn]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    std::ostringstream os;
    u23.write(os);
    std::istringstream is(os.str());
    const RankVector back = RankVector::read(is);
    CHECK(back.is_exact());
    CHECK(back.ground() == u23.ground());
    for (Mask m = 0; m <= u23.full_mask(); ++m)
        CHECK(back.rat(m) == u23.rat(m));

    GroundSet g({"x", "y"});
    auto v = RankVector::numeric(g, {0.0, 1.0, 0.5849625007, 1.5});
    std::ostringstream os2;
    v.write(os2);
    std::istringstream is2(os2.str());
    const RankVector back2 = RankVector::read(is2);
    CHECK_FALSE(back2.is_exact());
    for (Mask m = 0; m <= v.full_mask(); ++m)
        CHECK(std::fabs(back2.num(m) - v.num(m)) <= 1e-9);

    std::istringstream bad("groundset: a b\n{}: 0\n{b}: 1\n");
    CHECK_THROWS_AS(RankVector::read(bad), parse_error);
}
