#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "entcone/group_table.hpp"
#include "entcone/presentation.hpp"
#include "entcone/rank_vector.hpp"
#include "entcone/setfn.hpp"

namespace entcone {

// Verification failure inside a constructed object: the object violates a
// structural property its construction was supposed to guarantee.
struct pdg_structure_error : std::runtime_error {
    explicit pdg_structure_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The labeled skeleton of a partial Dowling geometry: a distinguished basis
// b_1..b_r and, for index pairs i<j, copies s_{i,j} of the generators that
// are present in the ground set (all of them for coherent PDGs).  Elements
// for i>j are the involuted copies: s_{j,i} denotes (s^-1)_{i,j}.
class PdgLayout {
public:
    PdgLayout() = default;

    PdgLayout(int rank, GeneratorSet gens, std::optional<std::set<std::tuple<int, int, int>>> present = std::nullopt)
        : rank_(rank), gens_(std::move(gens))
    {
        if (rank_ != 3 && rank_ != 4)
            throw std::invalid_argument("pdg rank must be 3 or 4");
        gens_.validate();
        if (present) {
            for (const auto& [g, i, j] : *present) {
                if (g < 0 || g >= gens_.size() || i < 1 || j < 1 || i >= j || j > rank_)
                    throw std::invalid_argument("present set entry out of range");
            }
            present_ = std::move(*present);
        } else {
            for (int i = 1; i <= rank_; ++i)
                for (int j = i + 1; j <= rank_; ++j)
                    for (int g = 0; g < gens_.size(); ++g)
                        present_.insert({g, i, j});
        }
        // ground order: basis, then index pairs lexicographically, generators
        // in their listed order within each pair
        std::vector<std::string> labels;
        for (int i = 1; i <= rank_; ++i)
            labels.push_back("b" + std::to_string(i));
        for (int i = 1; i <= rank_; ++i)
            for (int j = i + 1; j <= rank_; ++j)
                for (int g = 0; g < gens_.size(); ++g)
                    if (present_.count({g, i, j})) {
                        labels.push_back(copy_label(gens_.label(g), i, j));
                        index_[{g, i, j}] = static_cast<int>(labels.size()) - 1;
                    }
        ground_ = GroundSet(std::move(labels));
    }

    static std::string copy_label(const std::string& gen, int i, int j)
    {
        return gen + "@" + std::to_string(i) + std::to_string(j);
    }

    int rank() const { return rank_; }
    const GeneratorSet& gens() const { return gens_; }
    const GroundSet& ground() const { return ground_; }
    const std::set<std::tuple<int, int, int>>& present() const { return present_; }

    bool coherent() const
    {
        return static_cast<int>(present_.size()) == gens_.size() * rank_ * (rank_ - 1) / 2;
    }

    int basis(int i) const
    {
        if (i < 1 || i > rank_)
            throw std::invalid_argument("basis index out of range");
        return i - 1;
    }

    // Ground index of s_{i,j}; for i > j this is (s^-1)_{j,i}.  Returns -1
    // when the element is not in the ground set.
    int copy_index(int g, int i, int j) const
    {
        if (i == j || i < 1 || j < 1 || i > rank_ || j > rank_)
            throw std::invalid_argument("copy indices must be distinct and within the rank");
        if (i > j) {
            std::swap(i, j);
            g = gens_.inv(g);
        }
        auto it = index_.find({g, i, j});
        return it == index_.end() ? -1 : it->second;
    }

    bool has_copy(int g, int i, int j) const { return copy_index(g, i, j) >= 0; }

    Mask copy_mask(int g, int i, int j) const
    {
        const int idx = copy_index(g, i, j);
        if (idx < 0)
            throw std::invalid_argument("element " + copy_label(gens_.label(g), i, j) +
                                        " is not in the ground set");
        return Mask{1} << idx;
    }

    Mask basis_mask(int i) const { return Mask{1} << basis(i); }

    Mask full_basis_mask() const
    {
        Mask m = 0;
        for (int i = 1; i <= rank_; ++i)
            m |= basis_mask(i);
        return m;
    }

    // {b_i, b_j} together with every present copy on the pair (i, j).
    Mask line_mask(int i, int j) const
    {
        Mask m = basis_mask(i) | basis_mask(j);
        for (int g = 0; g < gens_.size(); ++g)
            if (has_copy(g, i, j))
                m |= copy_mask(g, i, j);
        return m;
    }

private:
    int rank_ = 3;
    GeneratorSet gens_;
    std::set<std::tuple<int, int, int>> present_;
    std::map<std::tuple<int, int, int>, int> index_;
    GroundSet ground_;
};

struct Pdg {
    PdgLayout layout;
    RankVector rank;

    const Rational& value(Mask m) const { return rank.rat(m); }
};

namespace pdg_detail {

// Frame-matroid rank of a subset of a group-gain graph on K_r with a joint at
// every vertex: rank = (vertices spanned) - (balanced components).  Basis
// elements are the joints; a copy of g on (i, j) is an edge i->j with gain g.
class GainGraphRank {
public:
    GainGraphRank(const PdgLayout& layout, const GroupTable& group, std::vector<int> gain_of_gen)
        : r_(layout.rank()), group_(&group)
    {
        edges_.resize(static_cast<std::size_t>(layout.ground().size()));
        for (int i = 1; i <= r_; ++i) {
            Item it;
            it.joint = true;
            it.u = i - 1;
            edges_[static_cast<std::size_t>(layout.basis(i))] = it;
        }
        for (const auto& [g, i, j] : layout.present()) {
            Item it;
            it.joint = false;
            it.u = i - 1;
            it.v = j - 1;
            it.gain = gain_of_gen[static_cast<std::size_t>(g)];
            edges_[static_cast<std::size_t>(layout.copy_index(g, i, j))] = it;
        }
    }

    int rank_of(Mask subset) const
    {
        int parent[4], pgain[4];
        bool unbalanced[4], touched[4];
        for (int v = 0; v < r_; ++v) {
            parent[v] = v;
            pgain[v] = group_->identity();
            unbalanced[v] = false;
            touched[v] = false;
        }
        auto find = [&](int v, int& phi) {
            phi = group_->identity();
            while (parent[v] != v) {
                phi = group_->mul(pgain[v], phi);
                v = parent[v];
            }
            return v;
        };
        Mask rest = subset;
        while (rest) {
            const int idx = __builtin_ctz(rest);
            rest &= rest - 1;
            const Item& it = edges_[static_cast<std::size_t>(idx)];
            touched[it.u] = true;
            if (it.joint) {
                int phi;
                unbalanced[find(it.u, phi)] = true;
                continue;
            }
            touched[it.v] = true;
            int phi_u, phi_v;
            const int ru = find(it.u, phi_u);
            const int rv = find(it.v, phi_v);
            if (ru == rv) {
                // cycle: balanced iff phi(u) * gain == phi(v)
                if (group_->mul(phi_u, it.gain) != phi_v)
                    unbalanced[ru] = true;
            } else {
                parent[rv] = ru;
                pgain[rv] = group_->mul(group_->mul(phi_u, it.gain), group_->inv(phi_v));
                unbalanced[ru] = unbalanced[ru] || unbalanced[rv];
            }
        }
        int rank = 0;
        for (int v = 0; v < r_; ++v) {
            if (!touched[v])
                continue;
            ++rank;
            int phi;
            const int root = find(v, phi);
            if (v == root && !unbalanced[root]) {
                // balanced components lose one: charge it at the root, which
                // is touched whenever any of its vertices is
                --rank;
            }
        }
        return rank;
    }

private:
    struct Item {
        bool joint = false;
        int u = 0, v = 0;
        int gain = 0;
    };
    int r_;
    const GroupTable* group_;
    std::vector<Item> edges_;
};

}  // namespace pdg_detail

// The rank-3 PDG of a symmetric triangular presentation <S | R>: lines
// {b_i,b_j} u {s_{i,j}} and the relator triangles of R are the only rank-2
// sets of size three; everything larger not inside a line has full rank 3.
// The relation set must also be inversion-closed, otherwise the relator set
// of the result would not match R.
inline Pdg build_rank3_pdg(const Presentation& p)
{
    p.validate();
    if (!p.inversion_closed())
        throw std::invalid_argument(
            "build_rank3_pdg: relation set is not closed under inversion; "
            "close the seeds with symmetric_closure first");
    PdgLayout layout(3, p.gens);
    const GroundSet& ground = layout.ground();
    if (ground.size() > kMaxGroundSize)
        throw std::invalid_argument("presentation too large: ground set exceeds the cap");

    std::array<Mask, 3> lines{layout.line_mask(1, 2), layout.line_mask(1, 3), layout.line_mask(2, 3)};

    // relator triangles as subset masks, one per relation and ordered index
    // triple (coinciding elements cannot happen: the three index pairs differ)
    std::set<Mask> triangles;
    constexpr std::array<std::array<int, 3>, 6> index_triples{
        {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
    for (const auto& [s, sp, spp] : p.relations)
        for (const auto& [i, j, k] : index_triples)
            triangles.insert(layout.copy_mask(s, i, j) | layout.copy_mask(sp, j, k) |
                             layout.copy_mask(spp, k, i));

    std::vector<Rational> vals(ground.subset_count());
    for (Mask m = 0; m < ground.subset_count(); ++m) {
        const int size = popcount(m);
        if (size <= 2) {
            vals[m] = size;
            continue;
        }
        bool in_line = false;
        for (Mask line : lines)
            if ((m & ~line) == 0) {
                in_line = true;
                break;
            }
        if (in_line)
            vals[m] = 2;
        else if (size == 3 && triangles.count(m))
            vals[m] = 2;
        else
            vals[m] = 3;
    }
    RankVector rank = RankVector::exact(ground, std::move(vals));
    return Pdg{std::move(layout), std::move(rank)};
}

// The full Dowling PDG of a finite group: generating set the whole group,
// rank function the frame-matroid rank of the complete G-gain graph on r
// vertices with joints.  Closed under geometric products by construction.
inline Pdg build_dowling_pdg(const GroupTable& g, int r)
{
    if (r != 3 && r != 4)
        throw std::invalid_argument("dowling rank must be 3 or 4");
    const long n = r + static_cast<long>(r) * (r - 1) / 2 * g.order();
    if (n > kMaxGroundSize)
        throw std::invalid_argument("ground set of size " + std::to_string(n) +
                                    " exceeds the cap of " + std::to_string(kMaxGroundSize));
    GeneratorSet gens;
    gens.labels = g.labels();
    gens.identity = g.identity();
    gens.inverse.resize(static_cast<std::size_t>(g.order()));
    for (int x = 0; x < g.order(); ++x)
        gens.inverse[static_cast<std::size_t>(x)] = g.inv(x);
    PdgLayout layout(r, std::move(gens));

    std::vector<int> gain(static_cast<std::size_t>(g.order()));
    for (int x = 0; x < g.order(); ++x)
        gain[static_cast<std::size_t>(x)] = x;
    pdg_detail::GainGraphRank ranker(layout, g, std::move(gain));

    const GroundSet& ground = layout.ground();
    std::vector<Rational> vals(ground.subset_count());
    for (Mask m = 0; m < ground.subset_count(); ++m)
        vals[m] = ranker.rank_of(m);
    RankVector rank = RankVector::exact(ground, std::move(vals));
    return Pdg{std::move(layout), std::move(rank)};
}

// Dowling-style PDG whose generator labels map onto group elements through an
// explicit gain assignment; duplicated gains produce parallel generator
// copies.  The involution must be compatible with inversion through the
// assignment.
inline Pdg build_gain_pdg(const GroupTable& g, int r, const GeneratorSet& gens,
                          const std::vector<int>& gain_of_gen)
{
    gens.validate();
    if (gain_of_gen.size() != static_cast<std::size_t>(gens.size()))
        throw std::invalid_argument("one gain per generator required");
    for (int s = 0; s < gens.size(); ++s) {
        const int gs = gain_of_gen[static_cast<std::size_t>(s)];
        if (gs < 0 || gs >= g.order())
            throw std::invalid_argument("gain out of range");
        if (gain_of_gen[static_cast<std::size_t>(gens.inv(s))] != g.inv(gs))
            throw std::invalid_argument("involution does not match group inversion");
    }
    if (gain_of_gen[static_cast<std::size_t>(gens.identity)] != g.identity())
        throw std::invalid_argument("identity generator must map to the group identity");
    PdgLayout layout(r, gens);
    if (layout.ground().size() > kMaxGroundSize)
        throw std::invalid_argument("ground set exceeds the cap");
    pdg_detail::GainGraphRank ranker(layout, g, gain_of_gen);
    const GroundSet& ground = layout.ground();
    std::vector<Rational> vals(ground.subset_count());
    for (Mask m = 0; m < ground.subset_count(); ++m)
        vals[m] = ranker.rank_of(m);
    RankVector rank = RankVector::exact(ground, std::move(vals));
    return Pdg{std::move(layout), std::move(rank)};
}

// Per-condition validation report.  Incoherent mode skips the ground-set
// completeness condition (3) and the coherence condition (6), and checks (4)
// and (5) only on present elements.
struct PdgConditionReport {
    struct Condition {
        bool checked = false;
        bool passed = true;
        std::string witness;
    };
    std::array<Condition, 6> conditions;  // conditions (1) through (6)

    bool all_passed() const
    {
        for (const auto& c : conditions)
            if (c.checked && !c.passed)
                return false;
        return true;
    }
};

inline PdgConditionReport validate_pdg(const Pdg& pdg, bool coherent = true)
{
    const PdgLayout& lay = pdg.layout;
    const RankVector& f = pdg.rank;
    const int r = lay.rank();
    PdgConditionReport report;
    auto fail = [&](int cond, const std::string& witness) {
        auto& c = report.conditions[static_cast<std::size_t>(cond - 1)];
        if (c.passed) {
            c.passed = false;
            c.witness = witness;
        }
    };
    for (int cond = 1; cond <= 6; ++cond)
        report.conditions[static_cast<std::size_t>(cond - 1)].checked =
            !(!coherent && (cond == 3 || cond == 6));

    // (1) the involution: structural, verified on the generator set
    try {
        lay.gens().validate();
    } catch (const std::invalid_argument& e) {
        fail(1, e.what());
    }

    // (2) f(A) = |A| on subsets of the distinguished basis
    for (Mask a : SubmaskRange(lay.full_basis_mask()))
        if (!f.value_is(a, popcount(a)))
            fail(2, "f(" + lay.ground().subset_to_string(a) + ") != " + std::to_string(popcount(a)));

    // (3) ground-set shape: coherent layouts carry every copy
    if (coherent && !lay.coherent())
        fail(3, "ground set is missing generator copies");

    // (4) s_{i,j} lies in the closure of {b_i, b_j}
    for (const auto& [g, i, j] : lay.present()) {
        const Mask pair = lay.basis_mask(i) | lay.basis_mask(j);
        const Mask with = pair | lay.copy_mask(g, i, j);
        if (!f.value_eq(pair, with))
            fail(4, PdgLayout::copy_label(lay.gens().label(g), i, j) + " is not in cl(b" +
                        std::to_string(i) + ",b" + std::to_string(j) + ")");
    }

    // (5) every copy is a point and independent from each basis endpoint
    for (const auto& [g, i, j] : lay.present()) {
        const Mask e = lay.copy_mask(g, i, j);
        const std::string name = PdgLayout::copy_label(lay.gens().label(g), i, j);
        if (!f.value_is(e, 1))
            fail(5, "f(" + name + ") != 1");
        if (!f.value_is(e | lay.basis_mask(i), 2))
            fail(5, "f(b" + std::to_string(i) + "," + name + ") != 2");
        if (!f.value_is(e | lay.basis_mask(j), 2))
            fail(5, "f(b" + std::to_string(j) + "," + name + ") != 2");
    }

    // (6) coherence triangles (s, s^-1, e) at every distinct index triple
    if (coherent) {
        for (int g = 0; g < lay.gens().size(); ++g)
            for (int i = 1; i <= r; ++i)
                for (int j = 1; j <= r; ++j)
                    for (int k = 1; k <= r; ++k) {
                        if (i == j || j == k || i == k)
                            continue;
                        const Mask t = lay.copy_mask(g, i, j) |
                                       lay.copy_mask(lay.gens().inv(g), j, k) |
                                       lay.copy_mask(lay.gens().identity, k, i);
                        if (!f.value_is(t, 2))
                            fail(6, "f(" + lay.ground().subset_to_string(t) + ") != 2");
                    }
    }
    return report;
}

// All relator triples, by definition: (s, s', s'') with
// f(s_{i,j}, s'_{j,k}, s''_{k,i}) = 2 at every distinct index triple.
// Triples where the rank-2 property holds at some but not all triples are
// collected separately: a well-formed PDG has none.
struct RelatorScan {
    std::vector<RelationTriple> relators;   // sorted
    std::vector<RelationTriple> anomalous;  // sorted
};

inline RelatorScan relators(const Pdg& pdg)
{
    const PdgLayout& lay = pdg.layout;
    if (!lay.coherent())
        throw std::invalid_argument("relators: coherent PDG required");
    const int r = lay.rank();
    const int ng = lay.gens().size();
    RelatorScan scan;
    for (int s = 0; s < ng; ++s)
        for (int sp = 0; sp < ng; ++sp)
            for (int spp = 0; spp < ng; ++spp) {
                int hits = 0, total = 0;
                for (int i = 1; i <= r; ++i)
                    for (int j = 1; j <= r; ++j)
                        for (int k = 1; k <= r; ++k) {
                            if (i == j || j == k || i == k)
                                continue;
                            ++total;
                            const Mask t = lay.copy_mask(s, i, j) | lay.copy_mask(sp, j, k) |
                                           lay.copy_mask(spp, k, i);
                            if (pdg.rank.value_is(t, 2))
                                ++hits;
                        }
                if (hits == total)
                    scan.relators.push_back({s, sp, spp});
                else if (hits != 0)
                    scan.anomalous.push_back({s, sp, spp});
            }
    return scan;
}

inline bool is_relator(const Pdg& pdg, int s, int sp, int spp)
{
    const PdgLayout& lay = pdg.layout;
    const int r = lay.rank();
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            for (int k = 1; k <= r; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                if (!lay.has_copy(s, i, j) || !lay.has_copy(sp, j, k) || !lay.has_copy(spp, k, i))
                    return false;
                const Mask t =
                    lay.copy_mask(s, i, j) | lay.copy_mask(sp, j, k) | lay.copy_mask(spp, k, i);
                if (!pdg.rank.value_is(t, 2))
                    return false;
            }
    return true;
}

// One generator pick per distinct index pair.
struct CopyPick {
    int gen = 0;
    int i = 1;
    int j = 2;
};

// Acyclic index patterns are independent: if the picked index pairs form a
// forest in K_r, the picked elements must have rank equal to their number.
// Returns whether that implication holds (cyclic patterns hold vacuously).
inline bool check_acyclic_independence(const Pdg& pdg, const std::vector<CopyPick>& picks)
{
    const PdgLayout& lay = pdg.layout;
    std::set<std::pair<int, int>> pairs;
    Mask subset = 0;
    for (const auto& pick : picks) {
        const int a = std::min(pick.i, pick.j), b = std::max(pick.i, pick.j);
        if (!pairs.insert({a, b}).second)
            throw std::invalid_argument("duplicate index pair in acyclic-independence check");
        subset |= lay.copy_mask(pick.gen, pick.i, pick.j);  // throws when absent
    }
    // forest test on the index graph
    std::array<int, 5> parent;
    for (int v = 0; v < 5; ++v)
        parent[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v)
            v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    };
    bool acyclic = true;
    for (const auto& [a, b] : pairs) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) {
            acyclic = false;
            break;
        }
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    if (!acyclic)
        return true;  // outside the hypothesis
    return pdg.rank.value_is(subset, static_cast<long>(picks.size()));
}

// PDG dump: layout header then the rank vector block.
inline void write_pdg(std::ostream& os, const Pdg& pdg)
{
    const PdgLayout& lay = pdg.layout;
    os << "pdg-rank: " << lay.rank() << '\n';
    os << "gens:";
    for (const auto& l : lay.gens().labels)
        os << ' ' << l;
    os << '\n';
    std::string inv_line;
    for (int g = 0; g < lay.gens().size(); ++g)
        if (lay.gens().inv(g) > g)
            inv_line += " " + lay.gens().label(g) + "=" + lay.gens().label(lay.gens().inv(g));
    if (!inv_line.empty())
        os << "inv:" << inv_line << '\n';
    os << "present:";
    for (const auto& [g, i, j] : lay.present())
        os << ' ' << PdgLayout::copy_label(lay.gens().label(g), i, j);
    os << '\n';
    pdg.rank.write(os);
}

inline Pdg read_pdg(std::istream& is)
{
    std::string line;
    if (!RankVector::next_content_line(is, line) || line.rfind("pdg-rank:", 0) != 0)
        throw parse_error("pdg file: expected 'pdg-rank:' line");
    int r = 0;
    try {
        r = std::stoi(RankVector::trim(line.substr(9)));
    } catch (const std::exception&) {
        throw parse_error("pdg file: bad rank");
    }
    if (!RankVector::next_content_line(is, line) || line.rfind("gens:", 0) != 0)
        throw parse_error("pdg file: expected 'gens:' line");
    GeneratorSet gens;
    gens.labels = RankVector::split_words(line.substr(5));
    gens.identity = 0;
    gens.inverse.resize(gens.labels.size());
    for (std::size_t i = 0; i < gens.labels.size(); ++i)
        gens.inverse[i] = static_cast<int>(i);
    if (!RankVector::next_content_line(is, line))
        throw parse_error("pdg file: truncated");
    if (line.rfind("inv:", 0) == 0) {
        for (const auto& word : RankVector::split_words(line.substr(4))) {
            const auto eq = word.find('=');
            if (eq == std::string::npos)
                throw parse_error("pdg file: inverse pairs look like s=t");
            const int a = gens.index_of(word.substr(0, eq));
            const int b = gens.index_of(word.substr(eq + 1));
            gens.inverse[static_cast<std::size_t>(a)] = b;
            gens.inverse[static_cast<std::size_t>(b)] = a;
        }
        if (!RankVector::next_content_line(is, line))
            throw parse_error("pdg file: truncated");
    }
    if (line.rfind("present:", 0) != 0)
        throw parse_error("pdg file: expected 'present:' line");
    std::set<std::tuple<int, int, int>> present;
    for (const auto& word : RankVector::split_words(line.substr(8))) {
        const auto at = word.rfind('@');
        if (at == std::string::npos || word.size() != at + 3)
            throw parse_error("pdg file: bad present entry '" + word + "'");
        const int g = gens.index_of(word.substr(0, at));
        const int i = word[at + 1] - '0';
        const int j = word[at + 2] - '0';
        present.insert({g, i, j});
    }
    try {
        gens.validate();
        PdgLayout layout(r, std::move(gens), std::move(present));
        RankVector rank = RankVector::read(is);
        if (rank.ground() != layout.ground())
            throw parse_error("pdg file: rank vector ground set does not match the layout");
        return Pdg{std::move(layout), std::move(rank)};
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("pdg file: ") + e.what());
    }
}

}  // namespace entcone
