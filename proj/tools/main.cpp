#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "immunize/cli.hpp"
#include "immunize/errors.hpp"

namespace {

using immunize::cli::ExperimentConfig;

void add_common(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--input", cfg.input, "edge list file (SNAP format: '# ' comments, id pairs)");
    sub->add_option("--seed", cfg.seed, "seed for all randomized steps");
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--dense-limit", cfg.dense_limit, "node bound for exact walk counting")
        ->capture_default_str();
}

void add_selection(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--method", cfg.method, "walk8|walk6|netshield|greedy-exact|degree|random")
        ->capture_default_str();
    sub->add_option("--k", cfg.k, "immunization budget")->capture_default_str();
    sub->add_option("--t", cfg.t, "supernode count; 0 = exact walk counting")->capture_default_str();
}

void add_epidemic(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--beta", cfg.beta, "infection probability per contact")->capture_default_str();
    sub->add_option("--delta", cfg.delta, "recovery probability per step")->capture_default_str();
    sub->add_option("--steps", cfg.steps, "simulation horizon")->capture_default_str();
    sub->add_option("--runs", cfg.runs, "independent replications to average")->capture_default_str();
    sub->add_option("--model", cfg.model, "sir|sis")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network immunization by closed-walk counting: selects nodes whose removal "
                 "maximally reduces the largest adjacency eigenvalue, and evaluates the result "
                 "via eigendrop and epidemic simulation."};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string fetch_name, fetch_sha;

    CLI::App* imm = app.add_subcommand("immunize", "select a node set and report the eigendrop");
    add_common(imm, cfg);
    add_selection(imm, cfg);

    CLI::App* eval = app.add_subcommand("evaluate", "score an existing selection file");
    add_common(eval, cfg);
    eval->add_option("--selection", cfg.selection_path, "selection CSV produced by `immunize`");

    CLI::App* sim = app.add_subcommand("simulate", "run an epidemic on the immunized graph");
    add_common(sim, cfg);
    add_selection(sim, cfg);
    add_epidemic(sim, cfg);
    sim->add_option("--selection", cfg.selection_path,
                    "immunize these nodes instead of selecting with --method");

    CLI::App* bench = app.add_subcommand("bench", "time the selection phases over a (k, t) grid");
    add_common(bench, cfg);
    add_selection(bench, cfg);
    bench->add_option("--k-grid", cfg.k_grid, "budgets to bench")->delimiter(',');
    bench->add_option("--t-grid", cfg.t_grid, "supernode counts to bench")->delimiter(',');
    bench->add_option("--reps", cfg.bench_reps, "repetitions per phase (best-of)")
        ->capture_default_str();

    CLI::App* fetch = app.add_subcommand("fetch", "download a SNAP dataset into the data cache");
    fetch->add_option("name", fetch_name, "dataset name (facebook|email|hep-th)")->required();
    fetch->add_option("--sha256", fetch_sha, "expected digest of the decompressed file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(imm)) return immunize::cli::cmd_immunize(cfg);
        if (app.got_subcommand(eval)) return immunize::cli::cmd_evaluate(cfg);
        if (app.got_subcommand(sim)) return immunize::cli::cmd_simulate(cfg);
        if (app.got_subcommand(bench)) return immunize::cli::cmd_bench(cfg);
        if (app.got_subcommand(fetch)) return immunize::cli::cmd_fetch(fetch_name, fetch_sha);
    } catch (const immunize::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
