#pragma once

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "entcone/rank_vector.hpp"

namespace entcone {

// A finite group by multiplication table.  Construction verifies the group
// axioms in full, so a GroupTable value is always an actual group.
class GroupTable {
public:
    static GroupTable from_table(std::vector<std::string> elems, std::vector<std::vector<int>> mul)
    {
        GroupTable g;
        g.elems_ = std::move(elems);
        g.mul_ = std::move(mul);
        const std::size_t n = g.elems_.size();
        if (n == 0)
            throw std::invalid_argument("group table: empty element list");
        {
            std::set<std::string> seen(g.elems_.begin(), g.elems_.end());
            if (seen.size() != n)
                throw std::invalid_argument("group table: duplicate element labels");
        }
        if (g.mul_.size() != n)
            throw std::invalid_argument("group table: need one row per element");
        for (const auto& row : g.mul_) {
            if (row.size() != n)
                throw std::invalid_argument("group table: ragged multiplication table");
            for (int v : row)
                if (v < 0 || static_cast<std::size_t>(v) >= n)
                    throw std::invalid_argument("group table: entry out of range");
        }
        g.verify_axioms();
        return g;
    }

    int order() const { return static_cast<int>(elems_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
    const std::string& label(int a) const { return elems_.at(static_cast<std::size_t>(a)); }
    const std::vector<std::string>& labels() const { return elems_; }

    bool has(const std::string& label) const
    {
        return std::find(elems_.begin(), elems_.end(), label) != elems_.end();
    }

    int index_of(const std::string& label) const
    {
        auto it = std::find(elems_.begin(), elems_.end(), label);
        if (it == elems_.end())
            throw std::invalid_argument("unknown group element '" + label + "'");
        return static_cast<int>(it - elems_.begin());
    }

    // If the given elements form a subgroup, returns nullopt; otherwise a
    // witness pair whose product (or inverse) escapes the subset.
    std::optional<std::pair<int, int>> subgroup_violation(const std::vector<int>& members) const
    {
        std::vector<bool> in(static_cast<std::size_t>(order()), false);
        for (int m : members)
            in[static_cast<std::size_t>(m)] = true;
        if (!in[static_cast<std::size_t>(identity_)])
            return std::make_pair(identity_, identity_);
        for (int a : members)
            for (int b : members)
                if (!in[static_cast<std::size_t>(mul(a, b))])
                    return std::make_pair(a, b);
        for (int a : members)
            if (!in[static_cast<std::size_t>(inv(a))])
                return std::make_pair(a, inv(a));
        return std::nullopt;
    }

    // File format: "order: n", "elems: ...", "mul:" followed by n rows of n
    // labels (row i lists i*j for all j).
    void write(std::ostream& os) const
    {
        os << "order: " << order() << '\n';
        os << "elems:";
        for (const auto& e : elems_)
            os << ' ' << e;
        os << "\nmul:\n";
        for (int i = 0; i < order(); ++i) {
            for (int j = 0; j < order(); ++j)
                os << (j ? " " : "") << label(mul(i, j));
            os << '\n';
        }
    }

    static GroupTable read(std::istream& is)
    {
        std::string line;
        if (!RankVector::next_content_line(is, line) || line.rfind("order:", 0) != 0)
            throw parse_error("group table: expected 'order: n'");
        int n = 0;
        try {
            n = std::stoi(RankVector::trim(line.substr(6)));
        } catch (const std::exception&) {
            throw parse_error("group table: bad order line '" + line + "'");
        }
        if (n <= 0 || n > 64)
            throw parse_error("group table: unsupported order");
        if (!RankVector::next_content_line(is, line) || line.rfind("elems:", 0) != 0)
            throw parse_error("group table: expected 'elems:' line");
        std::vector<std::string> elems = RankVector::split_words(line.substr(6));
        if (static_cast<int>(elems.size()) != n)
            throw parse_error("group table: element count does not match order");
        if (!RankVector::next_content_line(is, line) || RankVector::trim(line) != "mul:")
            throw parse_error("group table: expected 'mul:' line");
        std::vector<std::vector<int>> mul;
        for (int i = 0; i < n; ++i) {
            if (!RankVector::next_content_line(is, line))
                throw parse_error("group table: missing multiplication row");
            const auto words = RankVector::split_words(line);
            if (static_cast<int>(words.size()) != n)
                throw parse_error("group table: row has wrong length");
            std::vector<int> row;
            for (const auto& w : words) {
                auto it = std::find(elems.begin(), elems.end(), w);
                if (it == elems.end())
                    throw parse_error("group table: unknown element '" + w + "' in table");
                row.push_back(static_cast<int>(it - elems.begin()));
            }
            mul.push_back(std::move(row));
        }
        try {
            return from_table(std::move(elems), std::move(mul));
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("group table: ") + e.what());
        }
    }

private:
    GroupTable() = default;

    void verify_axioms()
    {
        const int n = order();
        identity_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int a = 0; a < n && ok; ++a)
                ok = mul(e, a) == a && mul(a, e) == a;
            if (ok) {
                identity_ = e;
                break;
            }
        }
        if (identity_ < 0)
            throw std::invalid_argument("group table: no identity element");
        inv_.assign(static_cast<std::size_t>(n), -1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                    inv_[static_cast<std::size_t>(a)] = b;
                    break;
                }
            if (inv_[static_cast<std::size_t>(a)] < 0)
                throw std::invalid_argument("group table: element '" + label(a) + "' has no inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::invalid_argument(
                            "group table: associativity fails at (" + label(a) + "," + label(b) +
                            "," + label(c) + ")");
    }

    std::vector<std::string> elems_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    int identity_ = 0;
};

inline GroupTable trivial_group()
{
    return GroupTable::from_table({"e"}, {{0}});
}

// Cyclic group of order n with elements e, g, g2, ..., or a custom stem.
inline GroupTable cyclic_group(int n, const std::string& stem = "g")
{
    if (n < 1)
        throw std::invalid_argument("cyclic_group: order must be positive");
    std::vector<std::string> elems;
    elems.push_back("e");
    for (int i = 1; i < n; ++i)
        elems.push_back(i == 1 ? stem : stem + std::to_string(i));
    std::vector<std::vector<int>> mul(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return GroupTable::from_table(std::move(elems), std::move(mul));
}

inline GroupTable klein_four_group()
{
    return GroupTable::from_table({"e", "a", "b", "c"}, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

// Brute-force isomorphism test, practical for orders up to ~8.
inline bool isomorphic(const GroupTable& g, const GroupTable& h)
{
    if (g.order() != h.order())
        return false;
    const int n = g.order();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[static_cast<std::size_t>(g.identity())] != h.identity())
            continue;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                ok = perm[static_cast<std::size_t>(g.mul(a, b))] ==
                     h.mul(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace entcone
