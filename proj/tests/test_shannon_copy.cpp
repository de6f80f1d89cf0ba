#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "entcone/copy_lemma.hpp"
#include "entcone/entropy.hpp"
#include "entcone/setfn.hpp"
#include "entcone/shannon.hpp"
#include "oracles.hpp"

using namespace entcone;

TEST_CASE("elemental inequality counts", "[shannon]")
{
    CHECK(elemental_shannon_inequalities(1).size() == 1);
    CHECK(elemental_shannon_inequalities(2).size() == 3);
    CHECK(elemental_shannon_inequalities(3).size() == 9);
    CHECK(elemental_shannon_inequalities(4).size() == 28);
    for (int n = 1; n <= 6; ++n) {
        const auto rows = elemental_shannon_inequalities(n);
        const std::size_t expected =
            static_cast<std::size_t>(n) +
            static_cast<std::size_t>(n * (n - 1) / 2) * (std::size_t{1} << std::max(0, n - 2));
        CHECK(rows.size() == expected);
    }
    CHECK_THROWS_AS(elemental_shannon_inequalities(0), std::invalid_argument);
    CHECK_THROWS_AS(elemental_shannon_inequalities(9), std::invalid_argument);
}

TEST_CASE("shannon membership matches the axiom check", "[shannon]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    CHECK(in_shannon_cone(u23).inside);

    GroundSet g({"a", "b"});
    auto super = RankVector::exact(g, {Rational(0), Rational(1), Rational(1), Rational(3)});
    const auto check = in_shannon_cone(super);
    CHECK_FALSE(check.inside);
    REQUIRE(check.violated.has_value());
    CHECK(check.violated->name == "cmi:1,2|{}");

    // agreement with is_polymatroid on a batch of randomized vectors
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        GroundSet g4({"p", "q", "r", "s"});
        std::vector<Rational> vals(16);
        for (Mask m = 1; m < 16; ++m)
            vals[m] = Rational(static_cast<long>(rng() % 9), static_cast<long>(rng() % 3) + 1);
        auto v = RankVector::exact(g4, vals);
        CHECK(in_shannon_cone(v).inside == is_polymatroid(v).is_polymatroid());
    }
}

TEST_CASE("vamos grouped vector: shannon yes, copy step refutes", "[copy]")
{
    const RankVector vamos = oracles::vamos_grouped_vector();

    // frozen values from the circuit oracle
    const auto& g = vamos.ground();
    for (int i = 0; i < 4; ++i)
        CHECK(vamos.rat(Mask{1} << i) == 2);
    CHECK(vamos.rat(g.mask_of({"a", "b"})) == 3);
    CHECK(vamos.rat(g.mask_of({"a", "c"})) == 3);
    CHECK(vamos.rat(g.mask_of({"a", "d"})) == 3);
    CHECK(vamos.rat(g.mask_of({"b", "c"})) == 3);
    CHECK(vamos.rat(g.mask_of({"b", "d"})) == 3);
    CHECK(vamos.rat(g.mask_of({"c", "d"})) == 4);
    for (Mask m = 0; m < 16; ++m)
        if (popcount(m) >= 3)
            CHECK(vamos.rat(m) == 4);

    CHECK(is_polymatroid(vamos).is_polymatroid());
    CHECK(in_shannon_cone(vamos).inside);

    const CopyPair pair{g.mask_of({"a", "b"}), g.mask_of({"c", "d"})};
    const auto result = copy_lp_refute(vamos, {pair});
    REQUIRE(result.refuted());
    REQUIRE(result.certificate.has_value());
    CHECK_FALSE(result.certificate->feasible);
    CHECK(verify_certificate(*result.system, *result.certificate));

    // cone homogeneity: scaling by a positive rational preserves refutation
    const auto scaled = copy_lp_refute(vamos.scaled(Rational(3)), {pair});
    CHECK(scaled.refuted());

    std::ostringstream os;
    print_certificate(os, *result.system, *result.certificate);
    CHECK(os.str().rfind("INFEASIBLE\n", 0) == 0);
}

TEST_CASE("zhang-yeung cross-check on the vamos vector", "[copy]")
{
    const RankVector vamos = oracles::vamos_grouped_vector();
    // roles (A,B,C,D) = (c,d,a,b): variable a plays C, b plays D, c plays A,
    // d plays B
    const auto zy = permute_entropy_inequality(zhang_yeung_inequality(), {2, 3, 0, 1});
    CHECK(zy.evaluate_exact(vamos) < 0);

    // the canonical arrangement is not violated here; the violation is tied
    // to which pair of groups stays independent
    CHECK(zhang_yeung_inequality().evaluate_exact(vamos) >= 0);
}

TEST_CASE("copy system with empty copy set fixes the extension", "[copy]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    auto sys = build_copy_system(u23, u23.ground().mask_of({"a"}), 0);
    const auto cert = lp_feasible(sys);
    REQUIRE(cert.feasible);
    for (Mask m = 1; m <= u23.full_mask(); ++m)
        CHECK(cert.point[m - 1] == u23.rat(m));

    // a non-polymatroid input makes the same system infeasible
    GroundSet g({"a", "b"});
    auto bad = RankVector::exact(g, {Rational(0), Rational(1), Rational(1), Rational(3)});
    auto bad_sys = build_copy_system(bad, 0, 0);
    CHECK_FALSE(lp_feasible(bad_sys).feasible);
}

TEST_CASE("copy systems of linear matroids stay feasible", "[copy]")
{
    // U_{2,3} is linear, hence almost entropic: every copy step is feasible
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    const auto schedule = default_copy_schedule(u23.ground());
    const auto result = copy_lp_refute(u23, schedule);
    CHECK_FALSE(result.refuted());
}

TEST_CASE("copy system conservativity: solutions agree with the input on E", "[copy]")
{
    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    const Mask b = u23.ground().mask_of({"a"});
    const Mask c = u23.ground().mask_of({"b", "c"});
    auto sys = build_copy_system(u23, b, c);
    const auto cert = lp_feasible(sys);
    REQUIRE(cert.feasible);
    for (Mask m = 1; m <= u23.full_mask(); ++m)
        CHECK(cert.point[m - 1] == u23.rat(m));
}

TEST_CASE("refutation precondition and input validation", "[copy]")
{
    GroundSet g({"a", "b"});
    auto bad = RankVector::exact(g, {Rational(0), Rational(1), Rational(1), Rational(3)});
    CHECK_THROWS_AS(copy_lp_refute(bad, default_copy_schedule(g)), std::invalid_argument);

    const RankVector u23 = uniform_matroid(2, {"a", "b", "c"});
    CHECK_THROWS_AS(build_copy_system(u23, 1, 1), std::invalid_argument);
}

TEST_CASE("entropy vectors are never refuted", "[copy]")
{
    // the xor triple, straight from its probability space (numeric mode)
    FinProbSpace space;
    for (int i = 0; i < 4; ++i) {
        space.outcomes.push_back("w" + std::to_string(i));
        space.probs.push_back(Rational(1, 4));
    }
    RandomVariableFamily fam;
    fam.ground = GroundSet({"X", "Y", "Z"});
    fam.value_of = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}};
    const auto h = entropy_vector(space, fam);

    const auto result = copy_lp_refute(h, default_copy_schedule(h.ground()));
    CHECK_FALSE(result.refuted());
    CHECK(result.rationalized);
}

TEST_CASE("numeric inputs are rationalized and flagged", "[copy]")
{
    const RankVector vamos = oracles::vamos_grouped_vector();
    std::vector<double> vals;
    for (Mask m = 0; m < 16; ++m)
        vals.push_back(to_double(vamos.rat(m)) + (static_cast<int>(m * 7) % 3 - 1) * 2e-10);
    auto noisy = RankVector::numeric(vamos.ground(), vals);
    const CopyPair pair{vamos.ground().mask_of({"a", "b"}), vamos.ground().mask_of({"c", "d"})};
    const auto result = copy_lp_refute(noisy, {pair});
    CHECK(result.refuted());
    CHECK(result.rationalized);
}

TEST_CASE("the shipped vamos fixture matches the circuit oracle", "[copy]")
{
    std::ifstream in(std::string(ENTCONE_DATA_DIR) + "/vamos4.rank");
    REQUIRE(in.good());
    const RankVector shipped = RankVector::read(in);
    const RankVector vamos = oracles::vamos_grouped_vector();
    REQUIRE(shipped.ground() == vamos.ground());
    for (Mask m = 0; m < 16; ++m)
        CHECK(shipped.rat(m) == vamos.rat(m));
}

TEST_CASE("default schedule shape", "[copy]")
{
    GroundSet g({"a", "b", "c"});
    const auto schedule = default_copy_schedule(g);
    for (const auto& p : schedule) {
        CHECK((p.base & p.copy) == 0);
        CHECK(p.copy != 0);
        CHECK(popcount(p.base) + popcount(p.copy) <= 4);
    }
    // deterministic order: base ascending, then copy ascending
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        const bool ordered = schedule[i - 1].base < schedule[i].base ||
                             (schedule[i - 1].base == schedule[i].base &&
                              schedule[i - 1].copy < schedule[i].copy);
        CHECK(ordered);
    }
}
