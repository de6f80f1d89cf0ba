#pragma once

#include <algorithm>
#include <istream>
#include <random>
#include <string>
#include <vector>

#include "entcone/entropy.hpp"
#include "entcone/rank_vector.hpp"

namespace entcone {

namespace gf {

inline bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline int normalize(long x, int p)
{
    const long r = x % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int inverse(int a, int p)
{
    // Fermat: a^(p-2) mod p
    long result = 1, base = a % p;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
    }
    return static_cast<int>(result);
}

// Row-reduces in place and returns the rank.
inline int rank(std::vector<std::vector<int>>& rows, int p)
{
    const std::size_t m = rows.size();
    if (m == 0)
        return 0;
    const std::size_t d = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < d && r < m; ++col) {
        std::size_t pivot = r;
        while (pivot < m && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == m)
            continue;
        std::swap(rows[r], rows[pivot]);
        const int inv = inverse(rows[r][col], p);
        for (std::size_t j = col; j < d; ++j)
            rows[r][j] = normalize(static_cast<long>(rows[r][j]) * inv, p);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][col] == 0)
                continue;
            const int f = rows[i][col];
            for (std::size_t j = col; j < d; ++j)
                rows[i][j] = normalize(rows[i][j] - static_cast<long>(f) * rows[r][j], p);
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace gf

// Per-element linear maps T_e : GF(p)^d -> GF(p)^(rows of T_e), given by
// their matrices.  The associated polymatroid is S |-> rank of the stacked
// matrix T_S.
struct LinearRealization {
    int p = 2;
    int d = 1;
    GroundSet ground;
    std::vector<std::vector<std::vector<int>>> maps;  // [element][row][col]

    void validate() const
    {
        if (!gf::is_prime(p) || p > 101)
            throw std::invalid_argument("field order must be a prime at most 101");
        if (d < 0 || d > 12)
            throw std::invalid_argument("ambient dimension must be between 0 and 12");
        if (maps.size() != static_cast<std::size_t>(ground.size()))
            throw std::invalid_argument("one matrix per ground element required");
        for (const auto& mat : maps)
            for (const auto& row : mat) {
                if (row.size() != static_cast<std::size_t>(d))
                    throw std::invalid_argument("matrix rows must have d entries");
                for (int x : row)
                    if (x < 0 || x >= p)
                        throw std::invalid_argument("matrix entries must be reduced mod p");
            }
    }
};

// f(S) = rank of the stacked maps, by exact elimination over GF(p).
inline RankVector linear_rank_vector(const LinearRealization& r)
{
    r.validate();
    std::vector<Rational> vals(r.ground.subset_count());
    for (Mask m = 0; m <= r.ground.full_mask(); ++m) {
        std::vector<std::vector<int>> stacked;
        for (int e = 0; e < r.ground.size(); ++e)
            if (m & (Mask{1} << e))
                for (const auto& row : r.maps[static_cast<std::size_t>(e)])
                    stacked.push_back(row);
        vals[m] = gf::rank(stacked, r.p);
    }
    return RankVector::exact(r.ground, std::move(vals));
}

// Entropic realization of a linear polymatroid: v uniform on GF(p)^d and
// X_e = T_e v.  The result is log2(p) times the rank vector.
inline EntropyVector entropic_from_linear(const LinearRealization& r)
{
    r.validate();
    double atoms_d = 1;
    for (int i = 0; i < r.d; ++i)
        atoms_d *= r.p;
    if (atoms_d > 4096)
        throw std::invalid_argument("sample space p^d exceeds 4096 atoms");
    const int atoms = static_cast<int>(atoms_d);

    FinProbSpace space;
    for (int i = 0; i < atoms; ++i) {
        space.outcomes.push_back("v" + std::to_string(i));
        space.probs.push_back(Rational(1, atoms));
    }
    RandomVariableFamily family;
    family.ground = r.ground;
    family.value_of.assign(static_cast<std::size_t>(r.ground.size()), {});

    std::vector<int> vec(static_cast<std::size_t>(r.d));
    for (int a = 0; a < atoms; ++a) {
        int rest = a;
        for (int i = 0; i < r.d; ++i) {
            vec[static_cast<std::size_t>(i)] = rest % r.p;
            rest /= r.p;
        }
        for (int e = 0; e < r.ground.size(); ++e) {
            // encode T_e * vec as a single value id
            long code = 0;
            for (const auto& row : r.maps[static_cast<std::size_t>(e)]) {
                long acc = 0;
                for (int j = 0; j < r.d; ++j)
                    acc += static_cast<long>(row[static_cast<std::size_t>(j)]) * vec[static_cast<std::size_t>(j)];
                code = code * r.p + gf::normalize(acc, r.p);
            }
            family.value_of[static_cast<std::size_t>(e)].push_back(static_cast<int>(code));
        }
    }
    return entropy_vector(space, family);
}

// The rank function of the projective plane over GF(q): singletons have rank
// 1, collinear sets rank 2, everything else rank 3.  Realized as the linear
// matroid of the q^2+q+1 projective points.
inline RankVector projective_plane_matroid(int q)
{
    if (q != 2 && q != 3)
        throw std::invalid_argument("projective plane supported for q in {2, 3}");
    LinearRealization r;
    r.p = q;
    r.d = 3;
    std::vector<std::string> labels;
    // normalized homogeneous representatives: first nonzero coordinate is 1
    for (int x = 0; x < q * q * q; ++x) {
        const int c0 = x % q, c1 = (x / q) % q, c2 = x / (q * q);
        if (c2 == 1 || (c2 == 0 && c1 == 1) || (c2 == 0 && c1 == 0 && c0 == 1)) {
            labels.push_back("p" + std::to_string(c0) + std::to_string(c1) + std::to_string(c2));
            r.maps.push_back({{c0, c1, c2}});
        }
    }
    r.ground = GroundSet(labels);
    return linear_rank_vector(r);
}

// max_S |f(S) - f'(S)/c| < eps, evaluated exactly when both vectors are
// exact.  f' is expected to come from linear_rank_vector.
inline bool almost_multilinear_check(const RankVector& f, const RankVector& fprime, long c,
                                     const Rational& eps)
{
    if (f.ground() != fprime.ground())
        throw std::invalid_argument("almost_multilinear_check: ground sets differ");
    if (c <= 0)
        throw std::invalid_argument("almost_multilinear_check: c must be positive");
    if (f.is_exact() && fprime.is_exact()) {
        Rational worst(0);
        for (Mask m = 0; m <= f.full_mask(); ++m) {
            Rational diff = f.rat(m) - fprime.rat(m) / c;
            if (diff < 0)
                diff = -diff;
            if (diff > worst)
                worst = diff;
        }
        return worst < eps;
    }
    double worst = 0;
    for (Mask m = 0; m <= f.full_mask(); ++m)
        worst = std::max(worst, std::fabs(f.num(m) - fprime.num(m) / static_cast<double>(c)));
    return worst < to_double(eps);
}

// A randomly sampled pair of triangles in perspective in GF(5)^4, with the
// two cross intersection points x1, x2 and the true intersection x3 of the
// lines spanned by (a1,a2) and (b1,b2).  Elements are O, a1..a3, b1..b3, x1,
// x2, optionally xt (a copy of the true intersection inside the ground set).
// Ground truth for the combinatorial intersection-point adjunction.
struct PerspectiveSample {
    LinearRealization realization;
    std::vector<int> x3_vector;
};

inline PerspectiveSample sample_perspective_config(std::uint64_t seed, bool include_xtilde = false)
{
    const int p = 5, d = 4;
    std::mt19937_64 rng(seed);
    auto rand_vec = [&]() {
        std::vector<int> v(static_cast<std::size_t>(d));
        for (auto& x : v)
            x = static_cast<int>(rng() % static_cast<std::uint64_t>(p));
        return v;
    };
    auto rank_of = [&](std::vector<std::vector<int>> rows) { return gf::rank(rows, p); };
    auto combine = [&](int ca, const std::vector<int>& a, int cb, const std::vector<int>& b) {
        std::vector<int> out(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            out[static_cast<std::size_t>(i)] =
                gf::normalize(static_cast<long>(ca) * a[static_cast<std::size_t>(i)] +
                                  static_cast<long>(cb) * b[static_cast<std::size_t>(i)],
                              p);
        return out;
    };

    for (int attempt = 0; attempt < 10000; ++attempt) {
        const std::vector<int> O = rand_vec();
        const std::vector<int> a1 = rand_vec(), a2 = rand_vec(), a3 = rand_vec();
        if (rank_of({O, a1, a2, a3}) != 4)
            continue;
        int alpha[3], beta[3];
        for (int i = 0; i < 3; ++i) {
            alpha[i] = 1 + static_cast<int>(rng() % 4);
            beta[i] = 1 + static_cast<int>(rng() % 4);
        }
        const std::vector<int> a[3] = {a1, a2, a3};
        std::vector<std::vector<int>> b(3);
        for (int i = 0; i < 3; ++i)
            b[static_cast<std::size_t>(i)] = combine(alpha[i], O, beta[i], a[i]);
        // pairwise intersections of corresponding sides
        const std::vector<int> x1 = combine(alpha[2], b[1], p - alpha[1], b[2]);
        const std::vector<int> x2 = combine(alpha[2], b[0], p - alpha[0], b[2]);
        const std::vector<int> x3 = combine(alpha[1], b[0], p - alpha[0], b[1]);

        PerspectiveSample sample;
        sample.x3_vector = x3;
        LinearRealization& r = sample.realization;
        r.p = p;
        r.d = d;
        std::vector<std::string> labels{"O", "a1", "a2", "a3", "b1", "b2", "b3", "x1", "x2"};
        std::vector<std::vector<int>> points{O, a1, a2, a3, b[0], b[1], b[2], x1, x2};
        if (include_xtilde) {
            labels.push_back("xt");
            points.push_back(x3);
        }
        for (const auto& pt : points)
            r.maps.push_back({pt});
        r.ground = GroundSet(labels);

        // hypothesis screen: distinct rank-1 points, generic pairs, the three
        // perspective lines, the two cross intersections, the rank-4 row
        bool ok = true;
        const std::size_t n_pts = points.size();
        for (std::size_t i = 0; i < n_pts && ok; ++i)
            ok = rank_of({points[i]}) == 1;
        for (std::size_t i = 0; i < 9 && ok; ++i)
            for (std::size_t j = i + 1; j < 9 && ok; ++j)
                ok = rank_of({points[i], points[j]}) == 2;
        for (int i = 0; i < 3 && ok; ++i)
            ok = rank_of({O, a[i], b[static_cast<std::size_t>(i)]}) == 2;
        ok = ok && rank_of({a2, a3, x1}) == 2 && rank_of({b[1], b[2], x1}) == 2;
        ok = ok && rank_of({a1, a3, x2}) == 2 && rank_of({b[0], b[2], x2}) == 2;
        ok = ok && rank_of({O, a1, a2, a3}) == 4;
        if (include_xtilde) {
            ok = ok && rank_of({x3}) == 1;
            for (std::size_t i = 0; i < 9 && ok; ++i)
                ok = rank_of({points[i], x3}) == 2;  // xt distinct from the others
        }
        if (ok)
            return sample;
    }
    throw std::runtime_error("sample_perspective_config: rejection sampling failed");
}

// Realization file: "p: 5", "dim: 4", then per element a "map <name>:" line
// followed by one row vector per line.
inline LinearRealization read_realization_file(std::istream& is)
{
    LinearRealization r;
    std::string line;
    if (!RankVector::next_content_line(is, line) || line.rfind("p:", 0) != 0)
        throw parse_error("realization file: expected 'p: <prime>'");
    try {
        r.p = std::stoi(RankVector::trim(line.substr(2)));
    } catch (const std::exception&) {
        throw parse_error("realization file: bad field order");
    }
    if (!RankVector::next_content_line(is, line) || line.rfind("dim:", 0) != 0)
        throw parse_error("realization file: expected 'dim: <d>'");
    try {
        r.d = std::stoi(RankVector::trim(line.substr(4)));
    } catch (const std::exception&) {
        throw parse_error("realization file: bad dimension");
    }

    std::vector<std::string> names;
    while (RankVector::next_content_line(is, line)) {
        if (line.rfind("map ", 0) == 0) {
            const auto colon = line.find(':');
            if (colon == std::string::npos)
                throw parse_error("realization file: missing ':' in map line");
            names.push_back(RankVector::trim(line.substr(4, colon - 4)));
            r.maps.emplace_back();
            const auto tail = RankVector::trim(line.substr(colon + 1));
            if (!tail.empty())
                throw parse_error("realization file: rows belong on their own lines");
        } else {
            if (names.empty())
                throw parse_error("realization file: row before any 'map' line");
            std::vector<int> row;
            for (const auto& w : RankVector::split_words(line)) {
                try {
                    row.push_back(std::stoi(w));
                } catch (const std::exception&) {
                    throw parse_error("realization file: bad matrix entry '" + w + "'");
                }
            }
            if (static_cast<int>(row.size()) != r.d)
                throw parse_error("realization file: row needs exactly dim entries");
            r.maps.back().push_back(std::move(row));
        }
    }
    if (names.empty())
        throw parse_error("realization file: no maps");
    r.ground = GroundSet(names);
    r.validate();
    return r;
}

}  // namespace entcone
