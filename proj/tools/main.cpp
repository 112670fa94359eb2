// qcorr: entropic measures of nonclassical correlations for bipartite states.
//
// Subcommands:
//   measure STATE.json        full measure report for a two-qubit state (JSON)
//   scan                      batch scan over random states (CSV)
//   family NAME               named state families and closed-form checks (CSV)
//   check SUITE               randomized property suites (exit 1 on violation)
//
// Exit codes: 0 ok, 1 property violation, 2 input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/property_checks.hpp"
#include "qcorr/qcorr.hpp"
#include "qcorr/state_json.hpp"

namespace {

using namespace qcorr;

void add_optim_flags(CLI::App* cmd, OptimConfig& optim) {
    cmd->add_option("--grid-theta", optim.grid_theta, "theta grid points per qubit");
    cmd->add_option("--grid-phi", optim.grid_phi, "phi grid points per qubit");
    cmd->add_option("--restarts", optim.restarts, "random simplex restarts");
    cmd->add_option("--tol", optim.tol, "simplex convergence tolerance");
}

/// Stream to --out path, or stdout when none given.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorCode::ParseError, "cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

nlohmann::json angles_json(const std::vector<double>& a) {
    return a.empty() ? nlohmann::json(nullptr) : nlohmann::json(a);
}

int cmd_measure(const std::string& path, const OptimConfig& optim) {
    const DensityMatrix rho = load_state_file(path);
    if (rho.d_a != 2 || rho.d_b != 2)
        throw Error(ErrorCode::DimMismatch,
                    "measure needs a two-qubit state; got dims (" + std::to_string(rho.d_a) + "," +
                        std::to_string(rho.d_b) + ")");

    const MeasureReport rep = measure_report(rho, optim);
    const QuantumInfoTable qt = quantum_info_table(rho);
    const auto [povm_a, deg_a] = marginal_eigenbasis_povm(partial_trace(rho, Subsystem::A));
    const auto [povm_b, deg_b] = marginal_eigenbasis_povm(partial_trace(rho, Subsystem::B));
    const ClassicalInfoTable ct =
        classical_info_table(joint_distribution_unconditioned(rho, povm_a, povm_b));
    const EntanglementPair ent = entanglement_pair(rho);

    nlohmann::json j;
    j["dims"] = {rho.d_a, rho.d_b};
    j["measures"] = {{"mutual_info", rep.mutual_info}, {"mid", rep.mid},         {"wpm", rep.wpm},
                     {"m2b_ab", rep.m2b_ab},           {"m2b_ba", rep.m2b_ba},   {"discord_ab", rep.discord_ab},
                     {"discord_ba", rep.discord_ba},   {"m3b", rep.m3b},         {"dd_ab", rep.dd_ab},
                     {"dd_ba", rep.dd_ba}};
    j["angles"] = {{"mid", angles_json(rep.mid_angles)},
                   {"wpm", angles_json(rep.wpm_angles)},
                   {"m2b_ab", angles_json(rep.m2b_ab_angles)},
                   {"m2b_ba", angles_json(rep.m2b_ba_angles)},
                   {"discord_ab", angles_json(rep.discord_ab_angles)},
                   {"discord_ba", angles_json(rep.discord_ba_angles)},
                   {"m3b", angles_json(rep.m3b_angles)},
                   {"dd_ab", angles_json(rep.dd_ab_angles)},
                   {"dd_ba", angles_json(rep.dd_ba_angles)}};
    j["mid_degenerate"] = {rep.mid_degenerate_a, rep.mid_degenerate_b};
    j["entanglement"] = {{"concurrence", ent.concurrence}, {"eof", ent.eof}};
    j["quantum_table"] = {{"S_A", qt.s_a},
                          {"S_B", qt.s_b},
                          {"S_AB", qt.s_ab},
                          {"S_B_given_A", qt.s_b_given_a},
                          {"S_A_given_B", qt.s_a_given_b},
                          {"S_mutual", qt.mutual}};
    j["classical_table_marginal_eigenbasis"] = {{"H_A", ct.h_a},
                                                {"H_B", ct.h_b},
                                                {"H_AB", ct.h_ab},
                                                {"H_B_given_A", ct.h_b_given_a},
                                                {"H_A_given_B", ct.h_a_given_b},
                                                {"H_mutual", ct.mutual}};
    j["ordering_violations"] = rep.ordering_violations;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_scan(const ScanConfig& cfg, const std::string& out_path) {
    const std::vector<ScanRow> rows = run_scan(cfg);
    OutputTarget out(out_path);
    write_scan_csv(out.stream(), cfg, rows);
    return 0;
}

void family_header(std::ostream& out, const std::string& name, const std::string& columns) {
    out << "# qcorr family " << name << '\n' << columns << '\n';
}

int cmd_family_fig5(int points, const OptimConfig& optim, const std::string& out_path) {
    if (points < 2) throw Error(ErrorCode::InvalidArgument, "--points must be >= 2");
    OutputTarget out(out_path);
    family_header(out.stream(), "fig5", "eps,wpm,cos_A,cos_B");
    for (int i = 0; i < points; ++i) {
        const double eps = static_cast<double>(i) / (points - 1);
        const DensityMatrix rho = product_belldiag_mixture(eps);
        const SvdAlignment al = svd_alignment(rho, AlignmentMeasure::Wpm, optim);
        out.stream() << format_g17(eps) << ',' << format_g17(al.measure_bits) << ','
                     << format_g17(al.cos_a) << ',' << format_g17(al.cos_b) << '\n';
    }
    return 0;
}

int cmd_family_bell(const OptimConfig& optim, const std::string& out_path) {
    const MeasureReport rep = measure_report(bell_state(BellKind::PhiPlus), optim);
    OutputTarget out(out_path);
    family_header(out.stream(), "bell",
                  "mutual_info,mid,wpm,m2b_ab,m2b_ba,discord_ab,discord_ba,m3b,dd_ab,dd_ba");
    const double vals[] = {rep.mutual_info, rep.mid,       rep.wpm, rep.m2b_ab, rep.m2b_ba,
                           rep.discord_ab,  rep.discord_ba, rep.m3b, rep.dd_ab,  rep.dd_ba};
    for (int i = 0; i < 10; ++i) out.stream() << (i ? "," : "") << format_g17(vals[i]);
    out.stream() << '\n';
    return 0;
}

int cmd_family_cq(const std::string& name, const OptimConfig& optim, const std::string& out_path) {
    const CqEnsemble ens = name == "cq-triangle" ? triangle_ensemble() : tetrahedron_ensemble();
    const double closed_wpm = cq_discord_closed_form(ens, dual_povm(ens));
    const double sphere_wpm = cq_discord_sphere(ens, optim);

    double dual_candidate = shannon_entropy(ens.probs);
    for (std::size_t a = 0; a < ens.probs.size(); ++a)
        dual_candidate -= ens.probs[a] * ensemble_F(ens, -ens.bloch_vectors[a]);
    double closed_pair = 1.0;
    for (const auto& n : ens.bloch_vectors)
        closed_pair = std::min(closed_pair,
                               1.0 - 0.5 * (ensemble_F(ens, n) + ensemble_F(ens, -n)));
    const double closed_dd = std::min(dual_candidate, closed_pair);
    const CqDemonDiscord dd = cq_demon_discord_projective(ens, optim);
    const SphereResult proj = cq_projective_classical_info(ens, optim);

    OutputTarget out(out_path);
    family_header(out.stream(), name, "quantity,closed_form,numeric");
    auto row = [&](const char* q, double closed, double numeric) {
        out.stream() << q << ',' << format_g17(closed) << ',' << format_g17(numeric) << '\n';
    };
    row("wpm_discord", closed_wpm, sphere_wpm);
    row("demon_discord", closed_dd, dd.value);
    row("demon_discord_dual_candidate", dual_candidate, dd.dual_candidate);
    row("demon_discord_projective_candidate", closed_pair, dd.projective_candidate);
    row("projective_classical_info", 1.0 - closed_pair, proj.best_value);
    return 0;
}

int cmd_check(const std::string& suite, int trials, std::uint64_t seed, const OptimConfig& optim) {
    CheckReport rep;
    if (suite == "povm-ineq")
        rep = check_povm_inequality(trials > 0 ? trials : 1000, seed);
    else if (suite == "ensemble-ineq")
        rep = check_ensemble_inequality(trials > 0 ? trials : 1000, seed);
    else if (suite == "demon")
        rep = check_demon_invariance(trials > 0 ? trials : 200, seed);
    else if (suite == "orderings")
        rep = check_orderings(trials > 0 ? trials : 500, seed, optim);
    else
        throw Error(ErrorCode::InvalidArgument, "unknown check suite: " + suite);

    std::cout << rep.name << ": trials=" << rep.trials << " violations=" << rep.violations
              << " worst_excess=" << format_g17(rep.worst_excess) << '\n';
    std::cout << (rep.passed() ? "PASS" : "FAIL") << '\n';
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic measures of nonclassical correlations for bipartite quantum states"};
    app.require_subcommand(1);

    OptimConfig optim;

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "measure report for a two-qubit state file");
    std::string state_path;
    measure_cmd->add_option("state", state_path, "state JSON file")->required();
    measure_cmd->add_option("--seed", optim.seed, "optimizer restart seed");
    add_optim_flags(measure_cmd, optim);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "scan randomly generated two-qubit states");
    ScanConfig scan_cfg;
    std::string rank_str = "full", out_path, measures_str = "all";
    scan_cmd->add_option("--n", scan_cfg.n_states, "number of states");
    scan_cmd->add_option("--seed", scan_cfg.seed, "base seed (per-state seed is seed XOR index)");
    scan_cmd->add_option("--rank", rank_str, "state rank: 1..4 or 'full'");
    scan_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
    scan_cmd->add_option("--measures", measures_str, "comma-separated measure subset or 'all'");
    scan_cmd->add_option("--threads", scan_cfg.threads, "worker threads");
    add_optim_flags(scan_cmd, optim);

    // family
    auto* family_cmd = app.add_subcommand("family", "named state families");
    std::string family_name;
    int points = 101;
    family_cmd->add_option("name", family_name, "fig5|bell|cq-triangle|cq-tetrahedron")->required();
    family_cmd->add_option("--points", points, "sweep points (fig5)");
    family_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
    family_cmd->add_option("--seed", optim.seed, "optimizer restart seed");
    add_optim_flags(family_cmd, optim);

    // check
    auto* check_cmd = app.add_subcommand("check", "randomized property suites");
    std::string suite;
    int trials = 0;
    std::uint64_t check_seed = 1;
    check_cmd->add_option("suite", suite, "povm-ineq|ensemble-ineq|demon|orderings")->required();
    check_cmd->add_option("--n", trials, "trial count (suite-specific default)");
    check_cmd->add_option("--seed", check_seed, "seed");
    add_optim_flags(check_cmd, optim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (measure_cmd->parsed()) return cmd_measure(state_path, optim);
        if (scan_cmd->parsed()) {
            if (rank_str == "full")
                scan_cfg.rank = 0;
            else
                scan_cfg.rank = std::stoi(rank_str);
            scan_cfg.optim = optim;
            scan_cfg.selection = MeasureSelection::parse(measures_str);
            return cmd_scan(scan_cfg, out_path);
        }
        if (family_cmd->parsed()) {
            if (family_name == "fig5") return cmd_family_fig5(points, optim, out_path);
            if (family_name == "bell") return cmd_family_bell(optim, out_path);
            if (family_name == "cq-triangle" || family_name == "cq-tetrahedron")
                return cmd_family_cq(family_name, optim, out_path);
            throw Error(ErrorCode::InvalidArgument, "unknown family: " + family_name);
        }
        if (check_cmd->parsed()) return cmd_check(suite, trials, check_seed, optim);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
