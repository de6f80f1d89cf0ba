#pragma once

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "entcone/group_table.hpp"
#include "entcone/rank_vector.hpp"
#include "entcone/setfn.hpp"

namespace entcone {

// A finite probability space with exact rational probabilities.
struct FinProbSpace {
    std::vector<std::string> outcomes;
    std::vector<Rational> probs;

    int size() const { return static_cast<int>(outcomes.size()); }

    void validate() const
    {
        if (outcomes.size() != probs.size())
            throw std::invalid_argument("probability space: outcome/probability count mismatch");
        Rational total(0);
        for (const auto& p : probs) {
            if (p < 0)
                throw std::invalid_argument("probability space: negative probability");
            total += p;
        }
        if (total != 1)
            throw std::invalid_argument("probability space: probabilities sum to " +
                                        format_rational(total) + ", not 1");
    }
};

// One discrete variable per ground-set element: a total assignment of a value
// id to every atom.
struct RandomVariableFamily {
    GroundSet ground;
    std::vector<std::vector<int>> value_of;  // [variable][atom] -> value id

    void validate(const FinProbSpace& space) const
    {
        if (value_of.size() != static_cast<std::size_t>(ground.size()))
            throw std::invalid_argument("variable family: one assignment per element required");
        for (const auto& column : value_of)
            if (column.size() != static_cast<std::size_t>(space.size()))
                throw std::invalid_argument("variable family: every atom needs a value");
    }
};

using EntropyVector = RankVector;  // numeric mode, polymatroid within tolerance

// h(S) = H(X_S) in bits.  Zero-probability values contribute nothing.
inline EntropyVector entropy_vector(const FinProbSpace& space, const RandomVariableFamily& family)
{
    space.validate();
    family.validate(space);
    const int n = family.ground.size();
    std::vector<double> vals(std::size_t{1} << n, 0.0);
    for (Mask s = 1; s < vals.size(); ++s) {
        // group atoms by their joint value on S
        std::map<std::vector<int>, Rational> blocks;
        std::vector<int> key;
        for (int atom = 0; atom < space.size(); ++atom) {
            if (space.probs[static_cast<std::size_t>(atom)] == 0)
                continue;
            key.clear();
            for (int i = 0; i < n; ++i)
                if (s & (Mask{1} << i))
                    key.push_back(family.value_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(atom)]);
            blocks[key] += space.probs[static_cast<std::size_t>(atom)];
        }
        double h = 0;
        for (const auto& [value, p] : blocks) {
            (void)value;
            if (p == 0)
                continue;
            const double pd = to_double(p);
            h -= pd * std::log2(pd);
        }
        vals[s] = h;
    }
    return RankVector::numeric(family.ground, std::move(vals));
}

// Restriction of an entropic vector: the same family with fewer variables,
// so the result is entropic by construction.
inline EntropyVector restrict_entropic(const EntropyVector& v, Mask t)
{
    return restriction(v, t);
}

// H(X_S | X_A) computed directly from the definition, for cross-checking
// against contraction(entropy_vector, A).
inline double conditional_entropy(const FinProbSpace& space, const RandomVariableFamily& family,
                                  Mask s, Mask a)
{
    space.validate();
    family.validate(space);
    const int n = family.ground.size();
    std::map<std::vector<int>, std::vector<int>> by_condition;  // value of X_A -> atoms
    std::vector<int> key;
    for (int atom = 0; atom < space.size(); ++atom) {
        if (space.probs[static_cast<std::size_t>(atom)] == 0)
            continue;
        key.clear();
        for (int i = 0; i < n; ++i)
            if (a & (Mask{1} << i))
                key.push_back(family.value_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(atom)]);
        by_condition[key].push_back(atom);
    }
    double total = 0;
    for (const auto& [cond, atoms] : by_condition) {
        (void)cond;
        Rational p_cond(0);
        for (int atom : atoms)
            p_cond += space.probs[static_cast<std::size_t>(atom)];
        std::map<std::vector<int>, Rational> blocks;
        for (int atom : atoms) {
            key.clear();
            for (int i = 0; i < n; ++i)
                if (s & (Mask{1} << i))
                    key.push_back(family.value_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(atom)]);
            blocks[key] += space.probs[static_cast<std::size_t>(atom)];
        }
        double h = 0;
        for (const auto& [value, p] : blocks) {
            (void)value;
            const double ratio = to_double(p / p_cond);
            if (ratio > 0)
                h -= ratio * std::log2(ratio);
        }
        total += to_double(p_cond) * h;
    }
    return total;
}

// Group-characterizable witness: X uniform on G, X_i the left coset X * G_i.
// Then h(S) = log2(|G| / |intersection of the G_i, i in S|).  The standard
// generator of entropic vectors from subgroup lattices.
inline EntropyVector group_characterizable(const GroupTable& g,
                                           const std::vector<std::vector<std::string>>& subgroups)
{
    const int n = static_cast<int>(subgroups.size());
    if (n > kMaxGroundSize)
        throw std::invalid_argument("too many subgroups");
    std::vector<std::vector<bool>> member(static_cast<std::size_t>(n),
                                          std::vector<bool>(static_cast<std::size_t>(g.order()), false));
    for (int i = 0; i < n; ++i) {
        std::vector<int> ids;
        for (const auto& label : subgroups[static_cast<std::size_t>(i)])
            ids.push_back(g.index_of(label));
        if (auto bad = g.subgroup_violation(ids))
            throw std::invalid_argument("subset " + std::to_string(i + 1) +
                                        " is not a subgroup: closure fails at (" +
                                        g.label(bad->first) + ", " + g.label(bad->second) + ")");
        for (int id : ids)
            member[static_cast<std::size_t>(i)][static_cast<std::size_t>(id)] = true;
    }
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("X" + std::to_string(i + 1));
    GroundSet ground(labels);
    std::vector<double> vals(ground.subset_count(), 0.0);
    for (Mask s = 1; s <= ground.full_mask(); ++s) {
        int inter = 0;
        for (int x = 0; x < g.order(); ++x) {
            bool in_all = true;
            for (int i = 0; i < n && in_all; ++i)
                if (s & (Mask{1} << i))
                    in_all = member[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
            if (in_all)
                ++inter;
        }
        vals[s] = std::log2(static_cast<double>(g.order())) - std::log2(static_cast<double>(inter));
    }
    return RankVector::numeric(std::move(ground), std::move(vals));
}

// Probability-space file: "atoms: n", "p: r1 ... rn", then one
// "var <name>: v1 ... vn" line per variable.
struct SpaceFile {
    FinProbSpace space;
    RandomVariableFamily family;
};

inline SpaceFile read_space_file(std::istream& is)
{
    std::string line;
    if (!RankVector::next_content_line(is, line) || line.rfind("atoms:", 0) != 0)
        throw parse_error("space file: expected 'atoms: n'");
    int n = 0;
    try {
        n = std::stoi(RankVector::trim(line.substr(6)));
    } catch (const std::exception&) {
        throw parse_error("space file: bad atom count");
    }
    if (n <= 0 || n > 1 << 14)
        throw parse_error("space file: unsupported atom count");

    SpaceFile out;
    for (int i = 0; i < n; ++i)
        out.space.outcomes.push_back("w" + std::to_string(i + 1));

    if (!RankVector::next_content_line(is, line) || line.rfind("p:", 0) != 0)
        throw parse_error("space file: expected 'p: r1 ... rn'");
    for (const auto& w : RankVector::split_words(line.substr(2)))
        out.space.probs.push_back(parse_rational(w));
    if (static_cast<int>(out.space.probs.size()) != n)
        throw parse_error("space file: probability count does not match atoms");
    out.space.validate();

    std::vector<std::string> names;
    std::vector<std::vector<int>> columns;
    while (RankVector::next_content_line(is, line)) {
        if (line.rfind("var ", 0) != 0)
            throw parse_error("space file: expected 'var <name>: ...', got '" + line + "'");
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error("space file: missing ':' in variable line");
        const std::string name = RankVector::trim(line.substr(4, colon - 4));
        const auto words = RankVector::split_words(line.substr(colon + 1));
        if (static_cast<int>(words.size()) != n)
            throw parse_error("space file: variable '" + name + "' needs one value per atom");
        // map value labels to dense ids
        std::map<std::string, int> ids;
        std::vector<int> column;
        for (const auto& w : words) {
            auto [it, fresh] = ids.emplace(w, static_cast<int>(ids.size()));
            (void)fresh;
            column.push_back(it->second);
        }
        names.push_back(name);
        columns.push_back(std::move(column));
    }
    if (names.empty())
        throw parse_error("space file: no variables");
    out.family.ground = GroundSet(names);
    out.family.value_of = std::move(columns);
    out.family.validate(out.space);
    return out;
}

}  // namespace entcone
