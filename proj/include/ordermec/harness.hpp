#pragma once

#include <json.hpp>

#include "ordermec/metrics.hpp"

namespace ordermec::harness {

enum class OutputFormat { kCsv, kJson };

struct SweepConfig {
    std::vector<int> n_values;
    std::vector<double> rho_values;
    std::vector<int> r_values;
    int samples = 2000;
    std::uint64_t seed = 1;
    std::uint64_t cap = kDefaultMecCap;
    int exact_limit = 14;
    std::uint64_t subset_budget = 50000;
    int workers = 0;  // 0 = hardware concurrency
    void validate() const;
    MetricKnobs knobs() const;
};

struct MetricStat {
    std::string metric;
    int r = -1;  // -1 for observational rows
    double mean = 0.0;
    double variance = 0.0;  // sample variance
    double ci95_half = 0.0; // 2 * sample std / sqrt(count)
    std::uint64_t count = 0;
    std::uint64_t exact = 0;   // samples whose value was an exact minimum
    std::uint64_t greedy = 0;  // samples where the greedy upper bound stood in
    std::uint64_t capped = 0;  // samples excluded from class-size stats
};

struct CellSummary {
    int n = 0;
    double rho = 0.0;
    std::vector<MetricStat> stats;
    const MetricStat& stat(const std::string& metric, int r = -1) const;
};

struct SweepResult {
    SweepConfig cfg;
    std::vector<MetricRecord> records;  // cell-major, sample index order
    std::vector<CellSummary> cells;
};

// Runs `samples` independent draws per (n, rho) cell and aggregates. Every
// per-sample value is a pure function of (seed, cell, index), and aggregation
// folds in index order, so the result is identical for any worker count.
SweepResult run_sweep(const SweepConfig& cfg);

std::string records_csv(const SweepResult& result);
std::string summary_csv(const std::vector<CellSummary>& cells);
nlohmann::json records_json(const SweepResult& result);
nlohmann::json summary_json(const std::vector<CellSummary>& cells);
std::vector<CellSummary> parse_summary_csv(const std::string& text);

// Writes <prefix>_records.{csv|json} and <prefix>_summary.{csv|json}.
void write_outputs(const SweepResult& result, const std::string& prefix, OutputFormat format);

struct CouplingConfig {
    std::vector<int> n_values{4, 6, 8};
    std::vector<double> rho_values{0.2, 0.5, 0.8};
    std::vector<int> r_values{0, 1, 2};
    int samples = 1000;
    std::uint64_t seed = 1;
    std::uint64_t cap = kDefaultMecCap;
    int workers = 0;
};

struct CouplingViolation {
    std::string relation;
    int n = 0;
    double rho = 0.0;
    int r = -1;
    std::uint64_t index = 0;
    std::string detail;
};

struct CouplingReport {
    std::uint64_t pairs_checked = 0;
    std::uint64_t relations_checked = 0;
    std::vector<CouplingViolation> violations;
};

// Samples coupled (n, n+1) pairs and checks, per pair: the monotone
// relations X, L, I (observational), X(r), L(r) non-decreasing and the
// uniqueness indicator non-increasing for each r, plus edge containment —
// every edge undirected in the smaller essential graph stays undirected in
// the bigger one. All metrics are computed exactly; expected violation count
// is zero, anything else is an implementation bug.
CouplingReport run_coupling_campaign(const CouplingConfig& cfg);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // sample variance (divides by s - 1)
    std::uint64_t samples = 0;
};

// Streaming mean/variance of the unoriented-edge count; the lean path for
// large-sample runs.
Moments estimate_x_moments(int n, double rho, std::uint64_t samples, std::uint64_t seed,
                           int workers);

// Mean and standard error of X_{n+1} - X_n over coupled pairs.
struct DiffEstimate {
    double mean_diff = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};
DiffEstimate estimate_x_successive_diff(int n, double rho, std::uint64_t samples,
                                        std::uint64_t seed, int workers);

int resolve_workers(int requested);

}  // namespace ordermec::harness
