#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "entcone/rational.hpp"

namespace entcone {

enum class Rel { Geq, Eq };

// One constraint: sum(coeff * var) >= rhs or == rhs.
struct LinRow {
    std::string id;
    std::vector<std::pair<int, Rational>> terms;  // sorted by variable index, coeffs nonzero
    Rel rel = Rel::Geq;
    Rational rhs = Rational(0);
};

// An exact-rational constraint system over named variables.
struct LinearInequalitySystem {
    std::vector<std::string> var_names;
    std::vector<LinRow> rows;

    int num_vars() const { return static_cast<int>(var_names.size()); }

    // Merges duplicate variable references and drops zero coefficients.
    void add_row(std::string id, const std::map<int, Rational>& coeffs, Rel rel, Rational rhs)
    {
        LinRow row;
        row.id = std::move(id);
        row.rel = rel;
        row.rhs = std::move(rhs);
        for (const auto& [var, c] : coeffs) {
            if (var < 0 || var >= num_vars())
                throw std::invalid_argument("row '" + row.id + "' references unknown variable");
            if (c != 0)
                row.terms.emplace_back(var, c);
        }
        rows.push_back(std::move(row));
    }
};

// Either a point satisfying every row, or Farkas multipliers combining the
// rows into 0 >= positive.  Multipliers are indexed by row; inequality rows
// carry nonnegative multipliers.
struct FeasibilityCertificate {
    bool feasible = false;
    std::vector<Rational> point;        // per variable, when feasible
    std::vector<Rational> multipliers;  // per row, when infeasible
};

inline bool verify_certificate(const LinearInequalitySystem& sys, const FeasibilityCertificate& cert)
{
    if (cert.feasible) {
        if (cert.point.size() != sys.var_names.size())
            return false;
        for (const auto& row : sys.rows) {
            Rational lhs(0);
            for (const auto& [var, c] : row.terms)
                lhs += c * cert.point[static_cast<std::size_t>(var)];
            if (row.rel == Rel::Eq ? lhs != row.rhs : lhs < row.rhs)
                return false;
        }
        return true;
    }
    if (cert.multipliers.size() != sys.rows.size())
        return false;
    std::vector<Rational> combo(sys.var_names.size(), Rational(0));
    Rational rhs_combo(0);
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        const Rational& mu = cert.multipliers[r];
        if (mu == 0)
            continue;
        if (sys.rows[r].rel == Rel::Geq && mu < 0)
            return false;
        for (const auto& [var, c] : sys.rows[r].terms)
            combo[static_cast<std::size_t>(var)] += mu * c;
        rhs_combo += mu * sys.rows[r].rhs;
    }
    for (const auto& c : combo)
        if (c != 0)
            return false;
    return rhs_combo > 0;
}

// Text block: FEASIBLE with one "var: value" line per variable, or INFEASIBLE
// with one "row-id: multiplier" line per nonzero multiplier.
inline void print_certificate(std::ostream& os, const LinearInequalitySystem& sys,
                              const FeasibilityCertificate& cert)
{
    if (cert.feasible) {
        os << "FEASIBLE\n";
        for (std::size_t v = 0; v < sys.var_names.size(); ++v)
            os << sys.var_names[v] << ": " << format_rational(cert.point[v]) << '\n';
    } else {
        os << "INFEASIBLE\n";
        for (std::size_t r = 0; r < sys.rows.size(); ++r)
            if (cert.multipliers[r] != 0)
                os << sys.rows[r].id << ": " << format_rational(cert.multipliers[r]) << '\n';
    }
}

namespace lp_detail {

struct WorkRow {
    std::map<int, Rational> terms;
    Rel rel = Rel::Geq;
    Rational rhs = Rational(0);
    std::map<int, Rational> prov;  // combination of original rows equal to this row
    bool alive = true;
};

inline void axpy(std::map<int, Rational>& dst, const Rational& factor,
                 const std::map<int, Rational>& src)
{
    for (const auto& [k, v] : src) {
        Rational& slot = dst[k];
        slot += factor * v;
        if (slot == 0)
            dst.erase(k);
    }
}

}  // namespace lp_detail

// Exact rational feasibility with a verified certificate.  Singleton-equality
// presolve first (it collapses most copy-extension systems substantially),
// then a phase-I simplex with Bland's rule on what is left.
inline FeasibilityCertificate lp_feasible(const LinearInequalitySystem& sys)
{
    using lp_detail::WorkRow;
    using lp_detail::axpy;

    const int V = sys.num_vars();
    const std::size_t R = sys.rows.size();

    std::vector<std::optional<Rational>> pinned(static_cast<std::size_t>(V));
    std::vector<std::map<int, Rational>> pin_prov(static_cast<std::size_t>(V));

    std::vector<WorkRow> work(R);
    for (std::size_t r = 0; r < R; ++r) {
        work[r].rel = sys.rows[r].rel;
        work[r].rhs = sys.rows[r].rhs;
        for (const auto& [var, c] : sys.rows[r].terms)
            work[r].terms[var] += c;
        for (auto it = work[r].terms.begin(); it != work[r].terms.end();)
            it = (it->second == 0) ? work[r].terms.erase(it) : std::next(it);
        work[r].prov[static_cast<int>(r)] = 1;
    }

    auto finish_feasible = [&](const std::vector<Rational>& free_vals) {
        FeasibilityCertificate cert;
        cert.feasible = true;
        cert.point.resize(static_cast<std::size_t>(V), Rational(0));
        for (int v = 0; v < V; ++v)
            cert.point[static_cast<std::size_t>(v)] =
                pinned[static_cast<std::size_t>(v)] ? *pinned[static_cast<std::size_t>(v)]
                                                    : free_vals[static_cast<std::size_t>(v)];
        if (!verify_certificate(sys, cert))
            throw std::logic_error("lp_feasible: produced point fails verification");
        return cert;
    };

    auto finish_infeasible = [&](std::map<int, Rational> combo) {
        FeasibilityCertificate cert;
        cert.feasible = false;
        cert.multipliers.assign(R, Rational(0));
        for (const auto& [row, mu] : combo)
            cert.multipliers[static_cast<std::size_t>(row)] = mu;
        // scale so the first nonzero multiplier has magnitude 1
        for (auto& mu : cert.multipliers) {
            if (mu != 0) {
                const Rational scale = boost::multiprecision::abs(mu);
                for (auto& m : cert.multipliers)
                    m /= scale;
                break;
            }
        }
        if (!verify_certificate(sys, cert))
            throw std::logic_error("lp_feasible: produced Farkas certificate fails verification");
        return cert;
    };

    // --- presolve: pin variables forced by singleton equality rows ---
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& row : work) {
            if (!row.alive)
                continue;
            for (auto it = row.terms.begin(); it != row.terms.end();) {
                const int var = it->first;
                if (pinned[static_cast<std::size_t>(var)]) {
                    const Rational coeff = it->second;
                    it = row.terms.erase(it);
                    row.rhs -= coeff * *pinned[static_cast<std::size_t>(var)];
                    axpy(row.prov, -coeff, pin_prov[static_cast<std::size_t>(var)]);
                } else {
                    ++it;
                }
            }
            if (row.terms.empty()) {
                row.alive = false;
                const bool contradiction =
                    (row.rel == Rel::Eq) ? (row.rhs != 0) : (row.rhs > 0);
                if (contradiction) {
                    std::map<int, Rational> combo = row.prov;
                    if (row.rel == Rel::Eq && row.rhs < 0)
                        for (auto& [k, v] : combo)
                            v = -v;
                    return finish_infeasible(std::move(combo));
                }
                changed = true;
            } else if (row.rel == Rel::Eq && row.terms.size() == 1) {
                const auto [var, coeff] = *row.terms.begin();
                pinned[static_cast<std::size_t>(var)] = row.rhs / coeff;
                pin_prov[static_cast<std::size_t>(var)].clear();
                axpy(pin_prov[static_cast<std::size_t>(var)], Rational(1) / coeff, row.prov);
                row.alive = false;
                changed = true;
            }
        }
    }

    std::vector<int> active;
    for (std::size_t r = 0; r < R; ++r)
        if (work[r].alive)
            active.push_back(static_cast<int>(r));

    if (active.empty())
        return finish_feasible(std::vector<Rational>(static_cast<std::size_t>(V), Rational(0)));

    // --- column layout: x+ / x- per appearing free variable, slack per
    // inequality row, artificial where the slack cannot start basic ---
    std::vector<int> col_of_var(static_cast<std::size_t>(V), -1);
    std::vector<int> var_of_col;
    for (int r : active)
        for (const auto& [var, c] : work[static_cast<std::size_t>(r)].terms) {
            (void)c;
            if (col_of_var[static_cast<std::size_t>(var)] < 0) {
                col_of_var[static_cast<std::size_t>(var)] = static_cast<int>(var_of_col.size());
                var_of_col.push_back(var);
            }
        }
    const int k = static_cast<int>(var_of_col.size());
    const int m = static_cast<int>(active.size());

    std::vector<int> sigma(static_cast<std::size_t>(m), 1);
    std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
    std::vector<int> art_col(static_cast<std::size_t>(m), -1);

    int ncols = 2 * k;
    for (int i = 0; i < m; ++i) {
        const WorkRow& row = work[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])];
        if (row.rel == Rel::Geq)
            slack_col[static_cast<std::size_t>(i)] = ncols++;
    }
    for (int i = 0; i < m; ++i) {
        const WorkRow& row = work[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])];
        if (row.rel == Rel::Geq && row.rhs <= 0) {
            sigma[static_cast<std::size_t>(i)] = -1;  // slack enters the initial basis
        } else {
            art_col[static_cast<std::size_t>(i)] = ncols++;
            if (row.rhs < 0)
                sigma[static_cast<std::size_t>(i)] = -1;  // normalized rhs must be nonnegative
        }
    }

    std::vector<std::vector<Rational>> tab(
        static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(ncols), Rational(0)));
    std::vector<Rational> rhs(static_cast<std::size_t>(m), Rational(0));
    std::vector<int> basis(static_cast<std::size_t>(m), -1);

    for (int i = 0; i < m; ++i) {
        const WorkRow& row = work[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])];
        const int s = sigma[static_cast<std::size_t>(i)];
        for (const auto& [var, c] : row.terms) {
            const int col = col_of_var[static_cast<std::size_t>(var)];
            tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] = s * c;
            tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(col + k)] = -(s * c);
        }
        if (slack_col[static_cast<std::size_t>(i)] >= 0)
            tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(slack_col[static_cast<std::size_t>(i)])] = -s;
        rhs[static_cast<std::size_t>(i)] = s * row.rhs;
        if (art_col[static_cast<std::size_t>(i)] >= 0) {
            tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(art_col[static_cast<std::size_t>(i)])] = 1;
            basis[static_cast<std::size_t>(i)] = art_col[static_cast<std::size_t>(i)];
        } else {
            basis[static_cast<std::size_t>(i)] = slack_col[static_cast<std::size_t>(i)];
        }
    }

    std::vector<bool> is_artificial(static_cast<std::size_t>(ncols), false);
    for (int i = 0; i < m; ++i)
        if (art_col[static_cast<std::size_t>(i)] >= 0)
            is_artificial[static_cast<std::size_t>(art_col[static_cast<std::size_t>(i)])] = true;
    std::vector<bool> dead(static_cast<std::size_t>(ncols), false);

    // phase-I objective: minimize the sum of artificials
    std::vector<Rational> obj(static_cast<std::size_t>(ncols), Rational(0));
    Rational obj_val(0);
    for (int j = 0; j < ncols; ++j)
        if (is_artificial[static_cast<std::size_t>(j)])
            obj[static_cast<std::size_t>(j)] = 1;
    for (int i = 0; i < m; ++i) {
        if (art_col[static_cast<std::size_t>(i)] < 0)
            continue;
        for (int j = 0; j < ncols; ++j)
            obj[static_cast<std::size_t>(j)] -= tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        obj_val += rhs[static_cast<std::size_t>(i)];
    }

    const long max_pivots = 200000L + 64L * static_cast<long>(m) * static_cast<long>(ncols);
    for (long iter = 0;; ++iter) {
        if (iter > max_pivots)
            throw std::logic_error("lp_feasible: pivot limit exceeded");

        int enter = -1;
        for (int j = 0; j < ncols; ++j) {
            if (dead[static_cast<std::size_t>(j)])
                continue;
            if (obj[static_cast<std::size_t>(j)] < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0)
            break;

        int leave = -1;
        Rational best_ratio(0);
        for (int i = 0; i < m; ++i) {
            const Rational& a = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
            if (a <= 0)
                continue;
            const Rational ratio = rhs[static_cast<std::size_t>(i)] / a;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0)
            throw std::logic_error("lp_feasible: phase-I objective unbounded");

        // pivot on (leave, enter)
        auto& prow = tab[static_cast<std::size_t>(leave)];
        const Rational piv = prow[static_cast<std::size_t>(enter)];
        for (auto& x : prow)
            x /= piv;
        rhs[static_cast<std::size_t>(leave)] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave)
                continue;
            const Rational f = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
            if (f == 0)
                continue;
            auto& row_i = tab[static_cast<std::size_t>(i)];
            for (int j = 0; j < ncols; ++j)
                if (prow[static_cast<std::size_t>(j)] != 0)
                    row_i[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(leave)];
        }
        const Rational fo = obj[static_cast<std::size_t>(enter)];
        if (fo != 0) {
            for (int j = 0; j < ncols; ++j)
                if (prow[static_cast<std::size_t>(j)] != 0)
                    obj[static_cast<std::size_t>(j)] -= fo * prow[static_cast<std::size_t>(j)];
            // the entering variable moves to rhs[leave]; the objective moves
            // by reduced cost times that step
            obj_val += fo * rhs[static_cast<std::size_t>(leave)];
        }
        const int leaving_col = basis[static_cast<std::size_t>(leave)];
        if (is_artificial[static_cast<std::size_t>(leaving_col)])
            dead[static_cast<std::size_t>(leaving_col)] = true;
        basis[static_cast<std::size_t>(leave)] = enter;
    }

    if (obj_val == 0) {
        std::vector<Rational> free_vals(static_cast<std::size_t>(V), Rational(0));
        std::vector<Rational> col_val(static_cast<std::size_t>(ncols), Rational(0));
        for (int i = 0; i < m; ++i)
            col_val[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
                rhs[static_cast<std::size_t>(i)];
        for (int c = 0; c < k; ++c) {
            const int var = var_of_col[static_cast<std::size_t>(c)];
            free_vals[static_cast<std::size_t>(var)] =
                col_val[static_cast<std::size_t>(c)] - col_val[static_cast<std::size_t>(c + k)];
        }
        return finish_feasible(free_vals);
    }

    // Infeasible: recover y = c_B * B^{-1} from the slack / artificial columns
    // of the final tableau, then push it back through sign normalization and
    // the presolve provenance.
    auto binv_entry = [&](int row, int i) -> Rational {
        if (art_col[static_cast<std::size_t>(i)] >= 0)
            return tab[static_cast<std::size_t>(row)][static_cast<std::size_t>(art_col[static_cast<std::size_t>(i)])];
        // slack column is -sigma * e_i, so B^{-1} e_i = -sigma * (that column)
        const Rational& t =
            tab[static_cast<std::size_t>(row)][static_cast<std::size_t>(slack_col[static_cast<std::size_t>(i)])];
        return Rational(-sigma[static_cast<std::size_t>(i)]) * t;
    };

    std::map<int, Rational> combo;
    for (int i = 0; i < m; ++i) {
        Rational y_i(0);
        for (int r = 0; r < m; ++r)
            if (is_artificial[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])])
                y_i += binv_entry(r, i);
        if (y_i == 0)
            continue;
        const Rational mu = Rational(sigma[static_cast<std::size_t>(i)]) * y_i;
        axpy(combo, mu, work[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])].prov);
    }
    return finish_infeasible(std::move(combo));
}

}  // namespace entcone
