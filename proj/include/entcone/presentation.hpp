#pragma once

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "entcone/rank_vector.hpp"

namespace entcone {

// A symmetric generating set: closed under a designated involution, with a
// distinguished identity generator fixed by it.
struct GeneratorSet {
    std::vector<std::string> labels;
    std::vector<int> inverse;  // involution as an index map
    int identity = 0;

    int size() const { return static_cast<int>(labels.size()); }
    int inv(int g) const { return inverse.at(static_cast<std::size_t>(g)); }
    const std::string& label(int g) const { return labels.at(static_cast<std::size_t>(g)); }

    int index_of(const std::string& label_) const
    {
        auto it = std::find(labels.begin(), labels.end(), label_);
        if (it == labels.end())
            throw std::invalid_argument("unknown generator '" + label_ + "'");
        return static_cast<int>(it - labels.begin());
    }

    void validate() const
    {
        const int n = size();
        if (n == 0)
            throw std::invalid_argument("generator set is empty");
        std::set<std::string> seen(labels.begin(), labels.end());
        if (static_cast<int>(seen.size()) != n)
            throw std::invalid_argument("duplicate generator labels");
        if (inverse.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("involution must cover every generator");
        for (int g = 0; g < n; ++g) {
            if (inv(g) < 0 || inv(g) >= n)
                throw std::invalid_argument("involution out of range");
            if (inv(inv(g)) != g)
                throw std::invalid_argument("involution is not an involution at '" + label(g) + "'");
        }
        if (identity < 0 || identity >= n)
            throw std::invalid_argument("identity generator out of range");
        if (inv(identity) != identity)
            throw std::invalid_argument("identity generator must be self-inverse");
    }
};

using RelationTriple = std::array<int, 3>;  // (s, s', s'') meaning s s' s'' = e

// A triangular presentation <S | R>: all relations of length three over a
// symmetric generating set containing the identity.
struct Presentation {
    GeneratorSet gens;
    std::vector<RelationTriple> relations;  // sorted, deduplicated

    bool has_relation(const RelationTriple& t) const
    {
        return std::binary_search(relations.begin(), relations.end(), t);
    }

    // The invariants every presentation here must satisfy: the relation set
    // is closed under cyclic shifts, and (s, s^-1, e) is a relation for every
    // generator.
    void validate() const
    {
        gens.validate();
        if (!std::is_sorted(relations.begin(), relations.end()))
            throw std::invalid_argument("relations must be sorted");
        if (std::adjacent_find(relations.begin(), relations.end()) != relations.end())
            throw std::invalid_argument("duplicate relations");
        for (const auto& t : relations)
            for (int g : t)
                if (g < 0 || g >= gens.size())
                    throw std::invalid_argument("relation references unknown generator");
        for (const auto& [s, sp, spp] : relations)
            if (!has_relation({spp, s, sp}))
                throw std::invalid_argument("relation set is not closed under cyclic shifts");
        for (int s = 0; s < gens.size(); ++s)
            if (!has_relation({s, gens.inv(s), gens.identity}))
                throw std::invalid_argument("missing relation (" + gens.label(s) + ", " +
                                            gens.label(gens.inv(s)) + ", e)");
    }

    // Closure under inversion as well: (s'' ^-1, s' ^-1, s ^-1) is a relation
    // whenever (s, s', s'') is.  The rank-3 construction needs this for its
    // relator set to come out exactly equal to R.
    bool inversion_closed() const
    {
        for (const auto& [s, sp, spp] : relations)
            if (!has_relation({gens.inv(spp), gens.inv(sp), gens.inv(s)}))
                return false;
        return true;
    }
};

// The smallest relation set containing the seeds, every (s, s^-1, e), and
// closed under cyclic shifts and inversion.
inline std::vector<RelationTriple> symmetric_closure(const GeneratorSet& gens,
                                                     const std::vector<RelationTriple>& seeds)
{
    std::set<RelationTriple> out;
    std::vector<RelationTriple> queue = seeds;
    for (int s = 0; s < gens.size(); ++s)
        queue.push_back({s, gens.inv(s), gens.identity});
    while (!queue.empty()) {
        const RelationTriple t = queue.back();
        queue.pop_back();
        if (!out.insert(t).second)
            continue;
        queue.push_back({t[2], t[0], t[1]});
        queue.push_back({gens.inv(t[2]), gens.inv(t[1]), gens.inv(t[0])});
    }
    return std::vector<RelationTriple>(out.begin(), out.end());
}

inline Presentation make_presentation(GeneratorSet gens, const std::vector<RelationTriple>& seeds)
{
    Presentation p;
    p.gens = std::move(gens);
    p.relations = symmetric_closure(p.gens, seeds);
    p.validate();
    return p;
}

inline Presentation trivial_presentation()
{
    GeneratorSet gens;
    gens.labels = {"e"};
    gens.inverse = {0};
    gens.identity = 0;
    return make_presentation(std::move(gens), {});
}

// <e, s | s^2 = e>
inline Presentation z2_presentation()
{
    GeneratorSet gens;
    gens.labels = {"e", "s"};
    gens.inverse = {0, 1};
    gens.identity = 0;
    return make_presentation(std::move(gens), {{1, 1, 0}});
}

// <e, s, t | s t = e, s^3 = e>, with t playing s^-1
inline Presentation z3_presentation()
{
    GeneratorSet gens;
    gens.labels = {"e", "s", "t"};
    gens.inverse = {0, 2, 1};
    gens.identity = 0;
    return make_presentation(std::move(gens), {{1, 1, 1}});
}

// Presentation file: "gens: e s t ..." (the first generator is the
// identity), "inv: s=t ..." (unlisted generators are self-inverse), then one
// "rel: s s' s''" line per relation.
inline Presentation read_presentation_file(std::istream& is)
{
    std::string line;
    if (!RankVector::next_content_line(is, line) || line.rfind("gens:", 0) != 0)
        throw parse_error("presentation file: expected 'gens:' line");
    GeneratorSet gens;
    gens.labels = RankVector::split_words(line.substr(5));
    if (gens.labels.empty())
        throw parse_error("presentation file: no generators");
    gens.identity = 0;
    gens.inverse.resize(gens.labels.size());
    for (std::size_t i = 0; i < gens.labels.size(); ++i)
        gens.inverse[i] = static_cast<int>(i);

    std::vector<RelationTriple> rels;
    bool saw_inv = false;
    while (RankVector::next_content_line(is, line)) {
        if (line.rfind("inv:", 0) == 0) {
            if (saw_inv)
                throw parse_error("presentation file: repeated 'inv:' line");
            saw_inv = true;
            for (const auto& word : RankVector::split_words(line.substr(4))) {
                const auto eq = word.find('=');
                if (eq == std::string::npos)
                    throw parse_error("presentation file: inverse pairs look like s=t");
                int a, b;
                try {
                    a = gens.index_of(word.substr(0, eq));
                    b = gens.index_of(word.substr(eq + 1));
                } catch (const std::invalid_argument& e) {
                    throw parse_error(std::string("presentation file: ") + e.what());
                }
                gens.inverse[static_cast<std::size_t>(a)] = b;
                gens.inverse[static_cast<std::size_t>(b)] = a;
            }
        } else if (line.rfind("rel:", 0) == 0) {
            const auto words = RankVector::split_words(line.substr(4));
            if (words.size() != 3)
                throw parse_error("presentation file: relations have exactly three generators");
            RelationTriple t;
            for (int i = 0; i < 3; ++i) {
                try {
                    t[static_cast<std::size_t>(i)] = gens.index_of(words[static_cast<std::size_t>(i)]);
                } catch (const std::invalid_argument& e) {
                    throw parse_error(std::string("presentation file: ") + e.what());
                }
            }
            rels.push_back(t);
        } else {
            throw parse_error("presentation file: unexpected line '" + line + "'");
        }
    }
    try {
        gens.validate();
        Presentation p;
        p.gens = std::move(gens);
        std::sort(rels.begin(), rels.end());
        rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
        p.relations = std::move(rels);
        p.validate();
        return p;
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("presentation file: ") + e.what());
    }
}

inline void write_presentation(std::ostream& os, const Presentation& p)
{
    os << "gens:";
    for (const auto& l : p.gens.labels)
        os << ' ' << l;
    os << '\n';
    std::string inv_line;
    for (int g = 0; g < p.gens.size(); ++g)
        if (p.gens.inv(g) > g)
            inv_line += " " + p.gens.label(g) + "=" + p.gens.label(p.gens.inv(g));
    if (!inv_line.empty())
        os << "inv:" << inv_line << '\n';
    for (const auto& [s, sp, spp] : p.relations)
        os << "rel: " << p.gens.label(s) << ' ' << p.gens.label(sp) << ' ' << p.gens.label(spp)
           << '\n';
}

}  // namespace entcone
