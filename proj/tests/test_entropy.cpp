#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "entcone/entropy.hpp"
#include "entcone/shannon.hpp"

using namespace entcone;

namespace {

// X, Y independent fair bits, Z = X xor Y on a four-atom space.
RandomVariableFamily xor_family()
{
    RandomVariableFamily fam;
    fam.ground = GroundSet({"X", "Y", "Z"});
    fam.value_of = {
        {0, 0, 1, 1},
        {0, 1, 0, 1},
        {0, 1, 1, 0},
    };
    return fam;
}

FinProbSpace uniform_space(int n)
{
    FinProbSpace space;
    for (int i = 0; i < n; ++i) {
        space.outcomes.push_back("w" + std::to_string(i));
        space.probs.push_back(Rational(1, n));
    }
    return space;
}

struct RandomSpace {
    FinProbSpace space;
    RandomVariableFamily family;
};

RandomSpace random_space(std::uint64_t seed, int max_vars = 4, int max_atoms = 12)
{
    std::mt19937_64 rng(seed);
    RandomSpace out;
    const int atoms = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_atoms - 1));
    const int vars = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars));
    long total = 0;
    std::vector<long> weights(static_cast<std::size_t>(atoms));
    for (auto& w : weights) {
        w = static_cast<long>(rng() % 20);
        total += w;
    }
    if (total == 0) {
        weights[0] = 1;
        total = 1;
    }
    for (int i = 0; i < atoms; ++i) {
        out.space.outcomes.push_back("w" + std::to_string(i));
        out.space.probs.push_back(Rational(weights[static_cast<std::size_t>(i)], total));
    }
    std::vector<std::string> names;
    for (int v = 0; v < vars; ++v)
        names.push_back("X" + std::to_string(v + 1));
    out.family.ground = GroundSet(names);
    for (int v = 0; v < vars; ++v) {
        std::vector<int> column;
        const int values = 1 + static_cast<int>(rng() % 4);
        for (int a = 0; a < atoms; ++a)
            column.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(values)));
        out.family.value_of.push_back(std::move(column));
    }
    return out;
}

}  // namespace

TEST_CASE("fair coin has one bit of entropy", "[entropy]")
{
    FinProbSpace space = uniform_space(2);
    RandomVariableFamily fam;
    fam.ground = GroundSet({"X"});
    fam.value_of = {{0, 1}};
    const auto h = entropy_vector(space, fam);
    CHECK(h.num(0) == 0.0);
    CHECK(h.num(1) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("constant variables have zero entropy", "[entropy]")
{
    FinProbSpace space = uniform_space(3);
    RandomVariableFamily fam;
    fam.ground = GroundSet({"C", "X"});
    fam.value_of = {{7, 7, 7}, {0, 1, 2}};
    const auto h = entropy_vector(space, fam);
    CHECK(h.num(fam.ground.element_mask("C")) == Catch::Approx(0.0).margin(1e-12));
    // adjoining a constant changes nothing
    CHECK(h.num(fam.ground.full_mask()) ==
          Catch::Approx(h.num(fam.ground.element_mask("X"))).margin(1e-12));
}

TEST_CASE("zero-probability atoms contribute nothing", "[entropy]")
{
    FinProbSpace space;
    space.outcomes = {"w0", "w1", "w2"};
    space.probs = {Rational(1, 2), Rational(1, 2), Rational(0)};
    RandomVariableFamily fam;
    fam.ground = GroundSet({"X"});
    fam.value_of = {{0, 1, 2}};
    const auto h = entropy_vector(space, fam);
    CHECK(h.num(1) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("xor triple entropy vector", "[entropy]")
{
    const auto h = entropy_vector(uniform_space(4), xor_family());
    const auto& g = h.ground();
    for (const auto& name : {"X", "Y", "Z"})
        CHECK(h.num(g.element_mask(name)) == Catch::Approx(1.0).margin(1e-12));
    for (Mask m = 0; m < 8; ++m)
        if (popcount(m) >= 2)
            CHECK(h.num(m) == Catch::Approx(2.0).margin(1e-12));
    CHECK(is_polymatroid(h).is_polymatroid());
    CHECK(in_shannon_cone(h).inside);
}

TEST_CASE("restriction of entropic vectors", "[entropy]")
{
    const auto h = entropy_vector(uniform_space(4), xor_family());
    const Mask xy = h.ground().mask_of({"X", "Y"});
    const auto hxy = restrict_entropic(h, xy);
    CHECK(hxy.num(1) == Catch::Approx(1.0).margin(1e-12));
    CHECK(hxy.num(2) == Catch::Approx(1.0).margin(1e-12));
    CHECK(hxy.num(3) == Catch::Approx(2.0).margin(1e-12));

    CHECK(restrict_entropic(h, 0).size() == 0);
    const auto all = restrict_entropic(h, h.full_mask());
    for (Mask m = 0; m <= h.full_mask(); ++m)
        CHECK(all.num(m) == h.num(m));
}

TEST_CASE("entropy depends only on the distribution", "[entropy][property]")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto rs = random_space(seed);
        const auto h1 = entropy_vector(rs.space, rs.family);
        // relabel every variable's values through a fixed injection
        RandomVariableFamily relabeled = rs.family;
        for (auto& column : relabeled.value_of)
            for (auto& v : column)
                v = 1000 - 3 * v;
        const auto h2 = entropy_vector(rs.space, relabeled);
        for (Mask m = 0; m <= h1.full_mask(); ++m)
            CHECK(h1.num(m) == Catch::Approx(h2.num(m)).margin(1e-12));
    }
}

TEST_CASE("contraction equals conditional entropy", "[entropy][property]")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto rs = random_space(seed + 100);
        const auto h = entropy_vector(rs.space, rs.family);
        std::mt19937_64 rng(seed * 13);
        const Mask a = static_cast<Mask>(rng()) & h.full_mask();
        const auto contracted = contraction(h, a);
        for (Mask s = 0; s <= h.full_mask(); ++s) {
            const double direct = conditional_entropy(rs.space, rs.family, s, a);
            CHECK(contracted.num(s) == Catch::Approx(direct).margin(1e-9));
        }
    }
}

TEST_CASE("random entropy vectors are polymatroids in the shannon cone", "[entropy][property]")
{
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto rs = random_space(seed + 500);
        const auto h = entropy_vector(rs.space, rs.family);
        CHECK(is_polymatroid(h).is_polymatroid());
        CHECK(in_shannon_cone(h).inside);
    }
}

TEST_CASE("group characterizable vectors", "[entropy]")
{
    const GroupTable z2 = cyclic_group(2, "s");

    const auto h = group_characterizable(z2, {{"e"}, {"e", "s"}});
    CHECK(h.num(1) == Catch::Approx(1.0).margin(1e-12));
    CHECK(h.num(2) == Catch::Approx(0.0).margin(1e-12));
    CHECK(h.num(3) == Catch::Approx(1.0).margin(1e-12));

    const auto zero = group_characterizable(z2, {{"e", "s"}, {"e", "s"}});
    for (Mask m = 0; m < 4; ++m)
        CHECK(zero.num(m) == Catch::Approx(0.0).margin(1e-12));

    // Klein four group with its three order-2 subgroups gives the xor triple
    const GroupTable v4 = klein_four_group();
    const auto xor3 = group_characterizable(v4, {{"e", "a"}, {"e", "b"}, {"e", "c"}});
    for (int i = 0; i < 3; ++i)
        CHECK(xor3.num(Mask{1} << i) == Catch::Approx(1.0).margin(1e-12));
    for (Mask m = 0; m < 8; ++m)
        if (popcount(m) >= 2)
            CHECK(xor3.num(m) == Catch::Approx(2.0).margin(1e-12));

    CHECK_THROWS_AS(group_characterizable(v4, {{"e", "a"}, {"a", "b"}}), std::invalid_argument);

    for (std::uint64_t trial = 0; trial < 4; ++trial) {
        const auto witness = group_characterizable(
            v4, {{"e"}, {"e", "a"}, {"e", "b"}, {"e", "a", "b", "c"}});
        CHECK(in_shannon_cone(witness).inside);
    }
}

TEST_CASE("space file round trip", "[entropy]")
{
    const std::string text =
        "atoms: 4\n"
        "p: 1/4 1/4 1/4 1/4\n"
        "var X: 0 0 1 1\n"
        "var Y: 0 1 0 1\n"
        "var Z: 0 1 1 0\n";
    std::istringstream is(text);
    const auto file = read_space_file(is);
    const auto h = entropy_vector(file.space, file.family);
    CHECK(h.num(h.full_mask()) == Catch::Approx(2.0).margin(1e-12));

    std::istringstream bad("atoms: 2\np: 1/2 1/3\nvar X: 0 1\n");
    CHECK_THROWS_AS(read_space_file(bad), std::invalid_argument);
}
