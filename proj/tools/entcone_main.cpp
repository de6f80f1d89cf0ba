// entcone: polymatroid, entropy-vector and partial-Dowling-geometry tools
// with exact-rational LP refutation of closed-entropic-cone membership.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entcone/copy_lemma.hpp"
#include "entcone/desargues.hpp"
#include "entcone/entropy.hpp"
#include "entcone/group_recovery.hpp"
#include "entcone/linear.hpp"
#include "entcone/pdg.hpp"
#include "entcone/setfn.hpp"
#include "entcone/shannon.hpp"

using namespace entcone;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;      // property failure or refutation
constexpr int kExitBadInput = 2;  // malformed input or usage

std::ifstream open_or_die(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open '" + path + "'");
    return in;
}

RankVector load_rank(const std::string& path)
{
    auto in = open_or_die(path);
    return RankVector::read(in);
}

GroupTable load_group(const std::string& path)
{
    auto in = open_or_die(path);
    return GroupTable::read(in);
}

Presentation load_presentation(const std::string& path)
{
    auto in = open_or_die(path);
    return read_presentation_file(in);
}

Mask parse_subset_list(const GroundSet& g, const std::string& csv)
{
    Mask m = 0;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw parse_error("empty element in list '" + csv + "'");
        m |= g.element_mask(item);
    }
    return m;
}

void print_lines(const std::vector<CheckLine>& lines)
{
    for (const auto& l : lines) {
        std::cout << l.equation << ": ";
        if (l.ok)
            std::cout << "OK\n";
        else
            std::cout << "FAIL expected=" << l.expected << " got=" << l.got << '\n';
    }
}

int run_axioms_check(const std::string& path)
{
    const RankVector v = load_rank(path);
    const AxiomReport rep = is_polymatroid(v);
    const bool matroid = rep.is_polymatroid() && is_matroid(v);
    std::cout << "POLYMATROID: " << (rep.is_polymatroid() ? "yes" : "no")
              << "  MATROID: " << (matroid ? "yes" : "no") << '\n';
    if (rep.first_violation) {
        const auto& viol = *rep.first_violation;
        std::cout << "violated: " << viol.axiom << " at A=" << v.ground().subset_to_string(viol.a)
                  << " B=" << v.ground().subset_to_string(viol.b) << " lhs=" << viol.lhs
                  << " rhs=" << viol.rhs << '\n';
    }
    return rep.is_polymatroid() ? kExitOk : kExitFail;
}

int run_entropy(const std::string& path)
{
    auto in = open_or_die(path);
    const SpaceFile file = read_space_file(in);
    entropy_vector(file.space, file.family).write(std::cout);
    return kExitOk;
}

int run_shannon_check(const std::string& path)
{
    const RankVector v = load_rank(path);
    const ShannonCheck check = in_shannon_cone(v);
    if (check.inside) {
        std::cout << "SHANNON: inside\n";
        return kExitOk;
    }
    std::cout << "SHANNON: violated " << check.violated->name << '\n';
    return kExitFail;
}

int run_copy_refute(const std::string& path, const std::string& base, const std::string& copy)
{
    const RankVector v = load_rank(path);
    std::vector<CopyPair> schedule;
    if (base.empty() && copy.empty()) {
        schedule = default_copy_schedule(v.ground());
    } else {
        CopyPair pair;
        pair.base = base.empty() ? 0 : parse_subset_list(v.ground(), base);
        pair.copy = parse_subset_list(v.ground(), copy);
        schedule.push_back(pair);
    }
    const CopyRefutation result = copy_lp_refute(v, schedule);
    if (result.rationalized)
        std::cout << "note: numeric input rationalized (denominators <= 10^6); "
                     "refutations hold at that rounding radius\n";
    if (result.refuted()) {
        std::cout << "REFUTED base=" << v.ground().subset_to_string(result.pair->base)
                  << " copy=" << v.ground().subset_to_string(result.pair->copy) << '\n';
        print_certificate(std::cout, *result.system, *result.certificate);
        return kExitFail;
    }
    std::cout << "UNKNOWN (" << schedule.size() << " copy systems feasible)\n";
    return kExitOk;
}

int run_pdg_build(const std::string& path)
{
    const Presentation p = load_presentation(path);
    const Pdg pdg = build_rank3_pdg(p);
    write_pdg(std::cout, pdg);
    return kExitOk;
}

int run_pdg_validate(const std::string& path, bool incoherent)
{
    auto in = open_or_die(path);
    const Pdg pdg = read_pdg(in);
    const auto report = validate_pdg(pdg, !incoherent);
    static const char* names[6] = {
        "condition 1 (involution)",           "condition 2 (basis independence)",
        "condition 3 (ground-set shape)",     "condition 4 (copies on coordinate lines)",
        "condition 5 (nondegenerate points)", "condition 6 (coherence triangles)",
    };
    for (int c = 0; c < 6; ++c) {
        const auto& cond = report.conditions[static_cast<std::size_t>(c)];
        std::cout << names[c] << ": ";
        if (!cond.checked)
            std::cout << "skipped\n";
        else if (cond.passed)
            std::cout << "OK\n";
        else
            std::cout << "FAIL " << cond.witness << '\n';
    }
    return report.all_passed() ? kExitOk : kExitFail;
}

int run_dowling(const std::string& path, int rank)
{
    const GroupTable g = load_group(path);
    write_pdg(std::cout, build_dowling_pdg(g, rank));
    return kExitOk;
}

int run_recover_group(const std::string& path, int rank)
{
    if (rank != 4)
        throw parse_error("group recovery works on rank-4 PDGs; pass --rank 4");
    const GroupTable g = load_group(path);
    const Pdg pdg = build_dowling_pdg(g, 4);
    const GroupTable recovered = recover_group(pdg);
    recovered.write(std::cout);
    const bool iso = isomorphic(recovered, g);
    std::cout << "ISOMORPHIC: " << (iso ? "yes" : "no") << '\n';
    return iso ? kExitOk : kExitFail;
}

int run_lift(const std::string& path)
{
    const GroupTable g = load_group(path);
    const LiftResult lift = lift_rank3_to_rank4(g);
    print_lines(lift.verification);

    const Pdg pdg3 = build_dowling_pdg(g, 3);
    Mask keep = 0;
    for (const auto& label : pdg3.rank.ground().labels())
        keep |= lift.pdg4.rank.ground().element_mask(label);
    const RankVector restricted = restriction(lift.pdg4.rank, keep);
    bool same = restricted.ground() == pdg3.rank.ground();
    for (Mask m = 0; same && m <= pdg3.rank.full_mask(); ++m)
        same = restricted.rat(m) == pdg3.rank.rat(m);
    std::cout << "restriction to index pairs in {1,2,3} equals the rank-3 geometry: "
              << (same ? "OK" : "FAIL") << '\n';
    return same && all_ok(lift.verification) ? kExitOk : kExitFail;
}

int run_desargues(const std::string& path, const std::string& config_csv,
                  std::optional<std::uint64_t> sample_seed, bool adjoin,
                  const std::string& further)
{
    RankVector v;
    DesarguesConfig cfg;
    if (sample_seed) {
        const auto sample = sample_perspective_config(*sample_seed, !further.empty());
        v = linear_rank_vector(sample.realization);
        cfg = DesarguesConfig{"O", {"a1", "a2", "a3"}, {"b1", "b2", "b3"}, "x1", "x2"};
        std::cout << "sampled GF(5)^4 configuration (seed " << *sample_seed << ")\n";
    } else {
        if (path.empty() || config_csv.empty())
            throw parse_error("provide a rank-vector file and --config, or use --sample <seed>");
        v = load_rank(path);
        std::stringstream ss(config_csv);
        std::vector<std::string> parts;
        std::string item;
        while (std::getline(ss, item, ','))
            parts.push_back(item);
        if (parts.size() != 9)
            throw parse_error("--config needs O,a1,a2,a3,b1,b2,b3,x1,x2");
        cfg = DesarguesConfig{parts[0], {parts[1], parts[2], parts[3]},
                              {parts[4], parts[5], parts[6]}, parts[7], parts[8]};
    }

    const auto hypotheses = check_desargues_hypotheses(v, cfg);
    print_lines(hypotheses);
    if (!all_ok(hypotheses))
        return kExitFail;
    if (!adjoin && further.empty())
        return kExitOk;

    const auto result = adjoin_intersection_point(v, cfg, "x3");
    print_lines(result.conclusion);
    if (result.status == AdjoinStatus::ConclusionViolated) {
        std::cout << "ADJOIN: conclusion violated (no combinatorial extension found)\n";
        return kExitFail;
    }
    if (result.status == AdjoinStatus::AxiomViolated) {
        std::cout << "ADJOIN: extension breaks the polymatroid axioms\n";
        return kExitFail;
    }
    std::cout << "ADJOIN: OK (new element x3)\n";

    if (!further.empty()) {
        const std::string xt = sample_seed ? "xt" : further;
        const auto clause = check_further_clause(result.extended, cfg, "x3", xt);
        print_lines(clause.premise_rows);
        if (!clause.premises_ok) {
            std::cout << "FURTHER: premises fail\n";
            return kExitFail;
        }
        print_lines(clause.conclusion_rows);
        std::cout << "FURTHER: " << (clause.conclusions_ok ? "OK" : "FAIL") << '\n';
        if (!clause.conclusions_ok)
            return kExitFail;
    }
    return kExitOk;
}

int run_three_line(bool extended)
{
    (extended ? three_line_extended_matroid() : three_line_base_matroid()).write(std::cout);
    return kExitOk;
}

int run_linear_rank(const std::string& path)
{
    auto in = open_or_die(path);
    linear_rank_vector(read_realization_file(in)).write(std::cout);
    return kExitOk;
}

int run_realize_entropic(const std::string& path)
{
    auto in = open_or_die(path);
    const LinearRealization r = read_realization_file(in);
    const RankVector ranks = linear_rank_vector(r);
    const EntropyVector h = entropic_from_linear(r);
    h.write(std::cout);
    const double alpha = std::log2(static_cast<double>(r.p));
    double worst = 0;
    for (Mask m = 0; m <= h.full_mask(); ++m)
        worst = std::max(worst, std::fabs(h.num(m) - alpha * to_double(ranks.rat(m))));
    const bool ok = worst <= 1e-9;
    std::cout << "ALPHA-CHECK: " << (ok ? "OK" : "FAIL")
              << " (entropy = log2(p) * rank, max deviation " << RankVector::format_numeric(worst)
              << ")\n";
    return ok ? kExitOk : kExitFail;
}

int run_nontrivial(const std::string& pres_path, const std::string& group_path,
                   const std::string& x)
{
    const Presentation p = load_presentation(pres_path);
    const GroupTable g = load_group(group_path);
    const auto result = nontriviality_pipeline(p, g, x);
    switch (result.verdict) {
    case NontrivialityVerdict::Nontrivial:
        std::cout << "NONTRIVIAL\n";
        break;
    case NontrivialityVerdict::Trivial:
        std::cout << "TRIVIAL\n";
        break;
    case NontrivialityVerdict::Inconsistent:
        std::cout << "INCONSISTENT\n";
        break;
    }
    print_lines(result.report);
    return result.verdict == NontrivialityVerdict::Inconsistent ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"polymatroid, entropy-cone and partial-Dowling-geometry toolkit"};
    app.require_subcommand(1);

    std::string rank_file, space_file, pres_file, group_file, lin_file, pdg_file;
    std::string base_list, copy_list, config_csv, further_label, x_label;
    int rank = 4;
    bool incoherent = false, extended = false, adjoin = false;
    std::uint64_t seed = 0;

    auto* axioms = app.add_subcommand("axioms-check", "check the polymatroid and matroid axioms");
    axioms->add_option("file", rank_file, "rank-vector file")->required();

    auto* entropy_cmd = app.add_subcommand("entropy", "entropy vector of a probability space");
    entropy_cmd->add_option("file", space_file, "probability-space file")->required();

    auto* shannon = app.add_subcommand("shannon-check", "membership in the Shannon cone");
    shannon->add_option("file", rank_file, "rank-vector file")->required();

    auto* refute = app.add_subcommand(
        "copy-refute", "copy-step LP refutation of closed-entropic-cone membership");
    refute->add_option("file", rank_file, "rank-vector file")->required();
    refute->add_option("--base", base_list, "comma-separated base elements (with --copy)");
    refute->add_option("--copy", copy_list, "comma-separated copied elements");

    auto* pdg_build = app.add_subcommand("pdg-build", "rank-3 PDG of a triangular presentation");
    pdg_build->add_option("file", pres_file, "presentation file")->required();

    auto* pdg_validate = app.add_subcommand("pdg-validate", "check the PDG conditions");
    pdg_validate->add_option("file", pdg_file, "PDG dump file")->required();
    pdg_validate->add_flag("--incoherent", incoherent, "skip the coherence-only conditions");

    auto* dowling = app.add_subcommand("dowling", "full Dowling PDG of a finite group");
    dowling->add_option("file", group_file, "group-table file")->required();
    dowling->add_option("--rank", rank, "geometry rank (3 or 4)")->required();

    auto* recover = app.add_subcommand("recover-group", "recover the group from its Dowling PDG");
    recover->add_option("file", group_file, "group-table file")->required();
    recover->add_option("--rank", rank, "PDG rank (must be 4)")->default_val(4);

    auto* lift = app.add_subcommand("lift", "lift the rank-3 Dowling PDG to rank 4 and verify");
    lift->add_option("file", group_file, "group-table file")->required();

    auto* desargues_cmd = app.add_subcommand("desargues", "Desargues configuration checks");
    desargues_cmd->add_option("file", rank_file, "rank-vector file");
    desargues_cmd->add_option("--config", config_csv, "O,a1,a2,a3,b1,b2,b3,x1,x2");
    auto* sample_opt =
        desargues_cmd->add_option("--sample", seed, "sample a GF(5)^4 configuration with this seed");
    desargues_cmd->add_flag("--adjoin", adjoin, "adjoin the intersection point x3");
    desargues_cmd->add_option("--further", further_label,
                              "check the collapse clause against this element "
                              "(with --sample: a sampled true intersection point)");

    auto* three_line = app.add_subcommand("three-line", "the three-line intersection matroids");
    three_line->add_flag("--extended", extended, "include the common intersection point d");

    auto* linear_rank_cmd = app.add_subcommand("linear-rank", "rank vector of a linear realization");
    linear_rank_cmd->add_option("file", lin_file, "realization file")->required();

    auto* realize = app.add_subcommand("realize-entropic",
                                       "entropic realization of a linear polymatroid");
    realize->add_option("file", lin_file, "realization file")->required();

    auto* nontrivial = app.add_subcommand("nontrivial",
                                          "generator nontriviality through a known quotient");
    nontrivial->add_option("file", pres_file, "presentation file")->required();
    nontrivial->add_option("--group", group_file, "quotient group-table file")->required();
    nontrivial->add_option("--x", x_label, "generator to test")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*axioms)
            return run_axioms_check(rank_file);
        if (*entropy_cmd)
            return run_entropy(space_file);
        if (*shannon)
            return run_shannon_check(rank_file);
        if (*refute)
            return run_copy_refute(rank_file, base_list, copy_list);
        if (*pdg_build)
            return run_pdg_build(pres_file);
        if (*pdg_validate)
            return run_pdg_validate(pdg_file, incoherent);
        if (*dowling)
            return run_dowling(group_file, rank);
        if (*recover)
            return run_recover_group(group_file, rank);
        if (*lift)
            return run_lift(group_file);
        if (*desargues_cmd)
            return run_desargues(rank_file, config_csv,
                                 sample_opt->count() ? std::optional<std::uint64_t>(seed)
                                                     : std::nullopt,
                                 adjoin, further_label);
        if (*three_line)
            return run_three_line(extended);
        if (*linear_rank_cmd)
            return run_linear_rank(lin_file);
        if (*realize)
            return run_realize_entropic(lin_file);
        if (*nontrivial)
            return run_nontrivial(pres_file, group_file, x_label);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitBadInput;
}
