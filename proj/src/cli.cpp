#include "immunize/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "immunize/summary.hpp"
#include "immunize/walks.hpp"

namespace immunize::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

void validate_common(const ExperimentConfig& cfg) {
    if (cfg.k < 0) throw ConfigError("--k must be non-negative");
    if (cfg.t < 0) throw ConfigError("--t must be non-negative (0 = exact)");
    if (cfg.beta < 0.0 || cfg.beta > 1.0) throw ConfigError("--beta must lie in [0,1]");
    if (cfg.delta < 0.0 || cfg.delta > 1.0) throw ConfigError("--delta must lie in [0,1]");
    if (cfg.steps < 1) throw ConfigError("--steps must be >= 1");
    if (cfg.runs < 1) throw ConfigError("--runs must be >= 1");
    if (cfg.dense_limit < 1) throw ConfigError("--dense-limit must be >= 1");
    parse_method(cfg.method);
    parse_model(cfg.model);
}

json config_json(const ExperimentConfig& cfg) {
    return json{{"input", cfg.input},
                {"method", cfg.method},
                {"k", cfg.k},
                {"t", cfg.t},
                {"seed", cfg.seed},
                {"beta", cfg.beta},
                {"delta", cfg.delta},
                {"steps", cfg.steps},
                {"runs", cfg.runs},
                {"model", cfg.model},
                {"out", cfg.out_dir},
                {"dense_limit", cfg.dense_limit},
                {"selection", cfg.selection_path},
                {"k_grid", cfg.k_grid},
                {"t_grid", cfg.t_grid},
                {"bench_reps", cfg.bench_reps}};
}

json graph_json(const LoadResult& loaded) {
    return json{{"n", loaded.graph.node_count()},
                {"m", loaded.graph.edge_count()},
                {"edge_lines", loaded.stats.edge_lines},
                {"self_loops_dropped", loaded.stats.self_loops_dropped},
                {"duplicate_edges_dropped", loaded.stats.duplicate_edges_dropped}};
}

void write_manifest(const ExperimentConfig& cfg, const std::string& command, json extra) {
    extra["command"] = command;
    extra["config"] = config_json(cfg);
    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / "manifest.json");
    if (!out) throw IoError("cannot write manifest under " + cfg.out_dir);
    out << extra.dump(2) << '\n';
}

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& filename) {
    fs::create_directories(cfg.out_dir);
    fs::path path = fs::path(cfg.out_dir) / filename;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n ") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

LoadResult load_input(const ExperimentConfig& cfg) {
    if (cfg.input.empty()) throw ConfigError("--input is required");
    return load_edge_list_file(cfg.input);
}

} // namespace

selection::Method parse_method(const std::string& name) {
    if (name == "walk8") return selection::Method::walk8;
    if (name == "walk6") return selection::Method::walk6;
    if (name == "netshield") return selection::Method::netshield;
    if (name == "greedy-exact") return selection::Method::greedy_exact;
    if (name == "degree") return selection::Method::degree;
    if (name == "random") return selection::Method::random;
    throw ConfigError("unknown method '" + name +
                      "' (expected walk8|walk6|netshield|greedy-exact|degree|random)");
}

epidemic::Model parse_model(const std::string& name) {
    if (name == "sir") return epidemic::Model::sir;
    if (name == "sis") return epidemic::Model::sis;
    throw ConfigError("unknown model '" + name + "' (expected sir|sis)");
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

selection::SelectionResult select_nodes(const Graph& g, const ExperimentConfig& cfg) {
    selection::Method method = parse_method(cfg.method);
    if (cfg.t > g.node_count())
        throw DomainError("--t exceeds the node count (" + std::to_string(g.node_count()) + ")");

    switch (method) {
    case selection::Method::walk8:
    case selection::Method::walk8_exact: {
        walks::WalkProfile profile;
        if (cfg.t == 0) {
            walks::WalkOptions wopts;
            wopts.dense_limit = cfg.dense_limit;
            profile = walks::diagonal_powers(g, wopts);
            profile.w8 = walks::w8_closed_form(profile);
        } else {
            profile = summary::estimate_w8(summary::build_summary(g, cfg.t, cfg.seed), g);
        }
        return selection::greedy_walk_select(profile, g, cfg.k);
    }
    case selection::Method::walk6: {
        if (cfg.t != 0)
            throw ConfigError("walk6 supports exact counting only; pass --t 0");
        walks::WalkOptions wopts;
        wopts.dense_limit = cfg.dense_limit;
        walks::WalkProfile profile = walks::diagonal_powers(g, wopts);
        profile.w6 = walks::w6_closed_form(profile);
        selection::GreedyOptions gopts;
        gopts.p = 6;
        return selection::greedy_walk_select(profile, g, cfg.k, gopts);
    }
    case selection::Method::netshield: {
        spectral::PowerOptions popts;
        popts.seed = cfg.seed;
        return selection::netshield_select(g, cfg.k, popts);
    }
    case selection::Method::greedy_exact: {
        selection::ExactGreedyOptions eopts;
        eopts.power.seed = cfg.seed;
        return selection::greedy_exact_eigen(g, cfg.k, eopts);
    }
    case selection::Method::degree:
        return selection::baseline_select(g, cfg.k, selection::BaselineKind::degree, cfg.seed);
    case selection::Method::random:
        return selection::baseline_select(g, cfg.k, selection::BaselineKind::random, cfg.seed);
    }
    throw ConfigError("unhandled method");
}

ImmunizeOutcome run_immunize(const Graph& g, const ExperimentConfig& cfg) {
    ImmunizeOutcome outcome;
    double t0 = now_ms();
    outcome.result = select_nodes(g, cfg);
    outcome.profile_select_ms = now_ms() - t0;

    spectral::PowerOptions popts;
    popts.seed = cfg.seed;
    t0 = now_ms();
    outcome.lambda_before = spectral::lambda_max(g, popts).lambda_max;
    outcome.lambda_after = spectral::lambda_max(remove_nodes(g, outcome.result.picked), popts).lambda_max;
    outcome.eigendrop_percent =
        outcome.lambda_before == 0.0
            ? 0.0
            : 100.0 * (outcome.lambda_before - outcome.lambda_after) / outcome.lambda_before;
    outcome.evaluate_ms = now_ms() - t0;
    return outcome;
}

std::vector<MetricRow> run_evaluate(const Graph& g, const NodeSet& s, const ExperimentConfig& cfg) {
    s.check_valid_for(g);
    spectral::PowerOptions popts;
    popts.seed = cfg.seed;

    std::vector<MetricRow> rows;
    double before = spectral::lambda_max(g, popts).lambda_max;
    double after = spectral::lambda_max(remove_nodes(g, s), popts).lambda_max;
    double drop = before == 0.0 ? 0.0 : 100.0 * (before - after) / before;
    rows.push_back({"k", std::to_string(s.size())});
    rows.push_back({"lambda_before", fmt_double(before)});
    rows.push_back({"lambda_after", fmt_double(after)});
    rows.push_back({"eigendrop_percent", fmt_double(drop)});

    if (g.node_count() <= cfg.dense_limit && g.edge_count() > 0) {
        spectral::TraceDominanceOptions topts;
        topts.dense_limit = cfg.dense_limit;
        topts.power = popts;
        rows.push_back({"trace_dominance_p8", fmt_double(spectral::trace_dominance_ratio(g, 8, topts))});
        walks::WalkOptions wopts;
        wopts.dense_limit = cfg.dense_limit;
        for (int p : {2, 4, 6, 8})
            rows.push_back({"walks_removed_p" + std::to_string(p),
                            to_string(walks::set_walk_count(g, s, p, wopts))});
    }
    return rows;
}

epidemic::SimTrace run_simulate(const Graph& g, const NodeSet& immunized, const ExperimentConfig& cfg) {
    epidemic::SimConfig sim;
    sim.beta = cfg.beta;
    sim.delta = cfg.delta;
    sim.steps = cfg.steps;
    sim.runs = cfg.runs;
    sim.seed = cfg.seed;
    sim.model = parse_model(cfg.model);
    sim.immunized = immunized;
    spectral::PowerOptions popts;
    popts.seed = cfg.seed;
    return epidemic::simulate(g, sim, popts);
}

std::vector<BenchCell> run_bench(const Graph& g, const ExperimentConfig& cfg) {
    selection::Method method = parse_method(cfg.method);
    std::vector<BenchCell> cells;
    std::vector<int> ts = cfg.t_grid;
    if (ts.empty()) ts.push_back(cfg.t);
    int reps = std::max(1, cfg.bench_reps);

    for (int k : cfg.k_grid) {
        for (int t : ts) {
            BenchCell cell;
            cell.method = cfg.method;
            cell.k = k;
            cell.t = t;
            double cell_start = now_ms();

            if (method == selection::Method::walk8 && t > 0) {
                summary::SummaryGraph sg = summary::build_partition(g, t, cfg.seed);
                double best_power = 0.0;
                for (int r = 0; r < reps; ++r) {
                    double t0 = now_ms();
                    summary::compute_power_diagonals(sg);
                    double dt = now_ms() - t0;
                    if (r == 0 || dt < best_power) best_power = dt;
                }
                cell.summary_power_ms = best_power;
                walks::WalkProfile profile = summary::estimate_w8(sg, g);
                selection::GreedyOptions gopts;
                gopts.naive_updates = true;
                double best_greedy = 0.0;
                for (int r = 0; r < reps; ++r) {
                    double t0 = now_ms();
                    selection::greedy_walk_select(profile, g, k, gopts);
                    double dt = now_ms() - t0;
                    if (r == 0 || dt < best_greedy) best_greedy = dt;
                }
                cell.greedy_ms = best_greedy;
            } else {
                ExperimentConfig cell_cfg = cfg;
                cell_cfg.k = k;
                cell_cfg.t = t;
                double best = 0.0;
                for (int r = 0; r < reps; ++r) {
                    double t0 = now_ms();
                    select_nodes(g, cell_cfg);
                    double dt = now_ms() - t0;
                    if (r == 0 || dt < best) best = dt;
                }
                cell.greedy_ms = best;
            }
            cell.total_ms = now_ms() - cell_start;
            cells.push_back(cell);
        }
    }
    return cells;
}

void write_selection_csv(std::ostream& out, const Graph& g, const selection::SelectionResult& r) {
    out << "step,internal_id,external_id,marginal_score\n";
    const auto& order = r.picked.order();
    for (size_t i = 0; i < order.size(); ++i) {
        out << i + 1 << ',' << order[i] << ',' << csv_escape(g.label(order[i])) << ','
            << fmt_double(r.per_step_score[i]) << '\n';
    }
}

NodeSet read_selection_csv(std::istream& in, const Graph& g) {
    std::unordered_map<std::string, node_id> by_label;
    for (node_id v = 0; v < g.node_count(); ++v) by_label.emplace(g.label(v), v);

    NodeSet s;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("step,", 0) == 0) continue; // header row
        }
        std::istringstream ls(line);
        std::string step, internal_id, external_id;
        if (!std::getline(ls, step, ',') || !std::getline(ls, internal_id, ',') ||
            !std::getline(ls, external_id, ','))
            throw ParseError("malformed selection row", line_no);
        if (!external_id.empty() && external_id.front() == '"' && external_id.back() == '"')
            external_id = external_id.substr(1, external_id.size() - 2);
        auto it = by_label.find(external_id);
        if (it == by_label.end())
            throw DomainError("selection references unknown node '" + external_id + "'");
        s.add(it->second);
    }
    return s;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
    out << "metric,value\n";
    for (const auto& row : rows) out << row.name << ',' << row.value << '\n';
}

void write_trace_csv(std::ostream& out, const epidemic::SimTrace& trace) {
    out << "step,infected_fraction\n";
    for (size_t t = 0; t < trace.infected_fraction.size(); ++t)
        out << t << ',' << fmt_double(trace.infected_fraction[t]) << '\n';
}

void write_bench_csv(std::ostream& out, const std::vector<BenchCell>& cells) {
    out << "method,k,t,summary_power_ms,greedy_ms,total_ms\n";
    for (const auto& c : cells)
        out << c.method << ',' << c.k << ',' << c.t << ',' << fmt_double(c.summary_power_ms) << ','
            << fmt_double(c.greedy_ms) << ',' << fmt_double(c.total_ms) << '\n';
}

int cmd_immunize(const ExperimentConfig& cfg) {
    validate_common(cfg);
    double wall0 = now_ms();
    LoadResult loaded = load_input(cfg);
    ImmunizeOutcome outcome = run_immunize(loaded.graph, cfg);
    double wall_ms = now_ms() - wall0;

    {
        auto out = open_output(cfg, "selection.csv");
        write_selection_csv(out, loaded.graph, outcome.result);
    }
    write_manifest(cfg, "immunize",
                   json{{"graph", graph_json(loaded)},
                        {"results",
                         {{"method", selection::method_name(outcome.result.method)},
                          {"picked", outcome.result.picked.size()},
                          {"gamma", outcome.result.gamma},
                          {"lambda_before", outcome.lambda_before},
                          {"lambda_after", outcome.lambda_after},
                          {"eigendrop_percent", outcome.eigendrop_percent}}},
                        {"timings_ms",
                         {{"profile_select", outcome.profile_select_ms},
                          {"evaluate", outcome.evaluate_ms},
                          {"wall", wall_ms}}}});
    std::cout << "method=" << cfg.method << " k=" << cfg.k << " t=" << cfg.t
              << " eigendrop_pct=" << fmt_double(outcome.eigendrop_percent)
              << " wall_ms=" << fmt_double(wall_ms) << '\n';
    return 0;
}

namespace {

NodeSet immunized_set(const Graph& g, const ExperimentConfig& cfg) {
    if (!cfg.selection_path.empty()) {
        std::ifstream in(cfg.selection_path);
        if (!in) throw IoError("cannot open selection file: " + cfg.selection_path);
        return read_selection_csv(in, g);
    }
    if (cfg.k > 0) return select_nodes(g, cfg).picked;
    return NodeSet{};
}

} // namespace

int cmd_evaluate(const ExperimentConfig& cfg) {
    validate_common(cfg);
    if (cfg.selection_path.empty()) throw ConfigError("evaluate requires --selection");
    LoadResult loaded = load_input(cfg);
    std::ifstream sel(cfg.selection_path);
    if (!sel) throw IoError("cannot open selection file: " + cfg.selection_path);
    NodeSet s = read_selection_csv(sel, loaded.graph);

    std::vector<MetricRow> rows = run_evaluate(loaded.graph, s, cfg);
    {
        auto out = open_output(cfg, "metrics.csv");
        write_metrics_csv(out, rows);
    }
    json results;
    for (const auto& row : rows) results[row.name] = row.value;
    write_manifest(cfg, "evaluate", json{{"graph", graph_json(loaded)}, {"results", results}});
    for (const auto& row : rows) std::cout << row.name << '=' << row.value << '\n';
    return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    validate_common(cfg);
    LoadResult loaded = load_input(cfg);
    NodeSet immunized = immunized_set(loaded.graph, cfg);
    epidemic::SimTrace trace = run_simulate(loaded.graph, immunized, cfg);
    {
        auto out = open_output(cfg, "trace.csv");
        write_trace_csv(out, trace);
    }
    write_manifest(cfg, "simulate",
                   json{{"graph", graph_json(loaded)},
                        {"results",
                         {{"immunized", immunized.size()},
                          {"virus_strength", trace.virus_strength},
                          {"final_infected_fraction", trace.infected_fraction.back()},
                          {"s_to_i_transitions", trace.s_to_i_transitions}}}});
    std::cout << "model=" << cfg.model << " s=" << fmt_double(trace.virus_strength)
              << " final_infected_fraction=" << fmt_double(trace.infected_fraction.back()) << '\n';
    return 0;
}

int cmd_bench(const ExperimentConfig& cfg) {
    validate_common(cfg);
    LoadResult loaded = load_input(cfg);
    std::vector<BenchCell> cells = run_bench(loaded.graph, cfg);
    {
        auto out = open_output(cfg, "bench.csv");
        write_bench_csv(out, cells);
    }
    json cell_json = json::array();
    for (const auto& c : cells)
        cell_json.push_back(json{{"method", c.method},
                                 {"k", c.k},
                                 {"t", c.t},
                                 {"summary_power_ms", c.summary_power_ms},
                                 {"greedy_ms", c.greedy_ms},
                                 {"total_ms", c.total_ms}});
    write_manifest(cfg, "bench", json{{"graph", graph_json(loaded)}, {"results", cell_json}});
    std::cout << "bench cells=" << cells.size() << '\n';
    return 0;
}

std::string data_dir() {
    const char* env = std::getenv("IMMUNIZE_DATA_DIR");
    if (env && *env) return env;
    return "data";
}

} // namespace immunize::cli
