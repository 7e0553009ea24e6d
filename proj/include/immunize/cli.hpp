#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "immunize/epidemic.hpp"
#include "immunize/graph.hpp"
#include "immunize/selection.hpp"

namespace immunize::cli {

/// Fully resolved run configuration. Every command validates it up front
/// and echoes it into the run manifest, so any output can be reproduced
/// from its manifest alone.
struct ExperimentConfig {
    std::string input;
    std::string method = "walk8";
    int k = 0;
    int32_t t = 0; // 0 selects exact walk counting
    uint64_t seed = 0;
    double beta = 0.2;
    double delta = 0.2;
    int steps = 100;
    int runs = 3;
    std::string model = "sir";
    std::string out_dir = "out";
    node_id dense_limit = 20000;
    std::string selection_path; // evaluate/simulate: selection CSV to reuse
    std::vector<int> k_grid;    // bench
    std::vector<int> t_grid;    // bench
    int bench_reps = 3;
};

selection::Method parse_method(const std::string& name);
epidemic::Model parse_model(const std::string& name);

// Runs the configured selection method on g. For walk8, t=0 uses the exact
// closed form (subject to dense_limit) and t>0 the summary estimate; walk6
// is exact-only and requires t=0.
selection::SelectionResult select_nodes(const Graph& g, const ExperimentConfig& cfg);

struct ImmunizeOutcome {
    selection::SelectionResult result;
    double lambda_before = 0.0;
    double lambda_after = 0.0;
    double eigendrop_percent = 0.0;
    double profile_select_ms = 0.0;
    double evaluate_ms = 0.0;
};

ImmunizeOutcome run_immunize(const Graph& g, const ExperimentConfig& cfg);

struct MetricRow {
    std::string name;
    std::string value;
};

// eigendrop, trace dominance and removed walk counts (the latter two only
// when the graph fits the dense capability bound).
std::vector<MetricRow> run_evaluate(const Graph& g, const NodeSet& s, const ExperimentConfig& cfg);

epidemic::SimTrace run_simulate(const Graph& g, const NodeSet& immunized, const ExperimentConfig& cfg);

struct BenchCell {
    std::string method;
    int k = 0;
    int32_t t = 0;
    double summary_power_ms = 0.0; // t^3 phase (walk8 only)
    double greedy_ms = 0.0;        // n k^2 phase
    double total_ms = 0.0;
};

// One cell per (k, t) in the grids; phases timed best-of-bench_reps.
std::vector<BenchCell> run_bench(const Graph& g, const ExperimentConfig& cfg);

// CSV schemas (frozen; see README):
//   selection: step,internal_id,external_id,marginal_score
//   metrics:   metric,value
//   trace:     step,infected_fraction
//   bench:     method,k,t,summary_power_ms,greedy_ms,total_ms
void write_selection_csv(std::ostream& out, const Graph& g, const selection::SelectionResult& r);
NodeSet read_selection_csv(std::istream& in, const Graph& g);
void write_metrics_csv(std::ostream& out, const std::vector<MetricRow>& rows);
void write_trace_csv(std::ostream& out, const epidemic::SimTrace& trace);
void write_bench_csv(std::ostream& out, const std::vector<BenchCell>& cells);

// Lossless shortest-round-trip double formatting used by all CSV output.
std::string fmt_double(double x);

// Command entry points: load inputs, run, write CSV + manifest.json under
// cfg.out_dir, print a one-line summary. Return 0 on success; errors are
// thrown and mapped to exit codes by the caller.
int cmd_immunize(const ExperimentConfig& cfg);
int cmd_evaluate(const ExperimentConfig& cfg);
int cmd_simulate(const ExperimentConfig& cfg);
int cmd_bench(const ExperimentConfig& cfg);

// Dataset cache directory: $IMMUNIZE_DATA_DIR or "./data".
std::string data_dir();

// Downloads a named SNAP dataset into the cache, decompresses it and
// verifies its SHA-256 (against `sha256_hint` when given, else against the
// recorded digest from a previous fetch). Implemented in fetch.cpp.
int cmd_fetch(const std::string& name, const std::string& sha256_hint);

// Names understood by cmd_fetch, one per line (for --help output).
std::string fetch_catalog();

} // namespace immunize::cli
