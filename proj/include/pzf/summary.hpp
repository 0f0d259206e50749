// Monte Carlo campaign orchestration: parallel trials with derived seeds,
// summary statistics, CSV/JSON emission.
#pragma once

#include "pzf/engine.hpp"
#include "pzf/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pzf {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::string graph_spec;
    // `vertex:ID` | `origin` | `principal:K` | `min-over-vertices`
    std::string start_spec = "vertex:0";
    uint64_t trials = 1;
    uint64_t seed = 0;
    int max_rounds = 0;  // 0 = engine default
    int workers = 0;     // 0 = PZF_WORKERS / hardware
    std::string out_path;
    OutputFormat format = OutputFormat::csv;
};

struct SummaryStats {
    uint64_t count = 0;
    uint64_t exhausted = 0;  // trials that hit max_rounds (excluded from the moments)
    double mean = 0.0;
    double stddev = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    // Nearest-rank quantiles at 5/25/50/75/95 percent.
    double q5 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
    std::optional<double> ratio_pt_over_n;       // hypercubes: mean pt / dimension
    std::optional<double> ratio_pt_over_halfmn;  // grids/tori: mean pt / ((m+n)/2)
};

struct CampaignResult {
    ExperimentConfig config;
    int vertex_count = 0;
    std::vector<int> start_vertices;  // empty in min-over-vertices mode
    std::vector<TrialRecord> records; // ordered by trial index
    SummaryStats summary;
};

// Resolves the start spec against the graph. min-over-vertices returns
// nullopt (each trial runs one experiment per vertex and keeps the minimum).
std::optional<BlueSet> resolve_start(const Graph& g, const std::string& start_spec);

// Runs the campaign. Trials are independent with per-trial seeds derived
// from (seed, trial index) — and (seed, trial, vertex) in min-over-vertices
// mode — so results do not depend on the worker count.
CampaignResult run_campaign(const Graph& g, const ExperimentConfig& config);

SummaryStats summarize(const std::vector<TrialRecord>& records, const Graph& g);

// First round with blue count >= ceil(n/2); -1 if never reached.
int rounds_to_half(const TrialRecord& rec, int n);

// One row per trial: trial_index,seed,pt,rounds_to_half,final_round_count
std::string records_csv(const CampaignResult& result);

// Raw records as JSON (per-round counts included).
std::string records_json(const CampaignResult& result);

// Per-round counts sidecar for the CSV format.
std::string counts_json(const CampaignResult& result);

std::string summary_json(const CampaignResult& result);

// Re-reads a records CSV body (with header) back into (pt, exhausted) pairs;
// used to check that the summary is recomputable from the flat file.
std::vector<std::pair<int, bool>> parse_records_csv(const std::string& csv);

}  // namespace pzf
