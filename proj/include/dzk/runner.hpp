#pragma once

#include "dzk/config.hpp"
#include "dzk/reports.hpp"

namespace dzk {

struct ReportRecord {
    std::string case_id;
    std::string status; // pass | fail | degenerate
    std::string metrics_json;
    std::vector<std::string> artifacts;
};

struct RunResult {
    std::string out_dir;
    std::vector<ReportRecord> records;
    bool ok = true; // no failed case
};

// cfg.output_dir, else $DZK_OUT, else ./dzk-out
std::string resolve_output_dir(const ExperimentConfig& cfg);

// Execute one estimate case, write its CSV artifacts under out_dir.
ReportRecord exec_case(const std::string& id, const ExperimentConfig& cfg,
                       const std::string& out_dir);

// Execute cfg.cases in declared order, emit per-case reports, a summary.csv
// and a manifest echoing the effective configuration.
RunResult run(const ExperimentConfig& cfg);

// Picard solve on the config grid with documented Gaussian data; dumps the
// final fields in the binary format and a text manifest of diagnostics.
ReportRecord run_solve(const ExperimentConfig& cfg, const std::string& out_dir);

// Transform/propagator throughput timings (text report).
std::string run_bench(const ExperimentConfig& cfg);

void write_summary(const RunResult& result, const ExperimentConfig& cfg);

} // namespace dzk
