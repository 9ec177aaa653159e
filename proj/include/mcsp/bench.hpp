#pragma once

#include "mcsp/instance.hpp"
#include "mcsp/solve.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace mcsp {

/// One (instance, model) result in the table schema of the experiment:
/// value | time X/Y | optimality | gaps | model size | search effort.
struct BenchRow {
    std::string instance_id;
    int n = 0;
    int sigma = 0;
    ModelKind model = ModelKind::cb;
    int value = 0;
    double time_first_s = 0.0;
    double time_best_s = 0.0;
    bool optimal = false;
    double opt_gap_pct = 0.0;
    double lp_gap_pct = 0.0; // NaN when the LP bound was not computed
    long long num_vars = 0;
    long long nodes = 0;
    bool failed = false;
    std::string error;
};

/// Per-(n, sigma, model) means plus the CS-over-CB improvement of the pair.
struct BenchSummary {
    int n = 0;
    int sigma = 0;
    ModelKind model = ModelKind::cb;
    int group_size = 0;
    int count_optimal = 0;
    double mean_value = 0.0;
    double mean_time_first_s = 0.0;
    double mean_time_best_s = 0.0;
    double mean_opt_gap_pct = 0.0;
    double mean_lp_gap_pct = 0.0;
    double mean_num_vars = 0.0;
    double mean_nodes = 0.0;
    double improvement_pct = 0.0; // 100*(mean value_cb - mean value_cs)/mean value_cb
};

struct BenchConfig {
    std::vector<int> ns{50, 100, 150, 200};
    std::vector<int> sigmas{4, 12, 20};
    int per_cell = 10;
    std::uint64_t seed0 = 1;
    double time_limit_s = 60.0;
    int workers = 0; // 0 = hardware concurrency
    bool use_lp_bound = true;
};

/// Seed of instance `index` in cell (n, sigma); splitmix64 mix of the
/// arguments, so cells are decorrelated but fully reproducible.
std::uint64_t bench_instance_seed(std::uint64_t seed0, int n, int sigma, int index);

/// Generates the grid, solves every instance with both models, verifies
/// every solution. Rows come back in canonical (n, sigma, index, model)
/// order regardless of worker scheduling; per-row failures are flagged,
/// never fatal.
std::vector<BenchRow> run_grid(const BenchConfig& config);

/// External-instance mode: same pipeline over user-supplied files.
std::vector<BenchRow> run_files(const std::vector<std::filesystem::path>& files,
                                double time_limit_s, int workers, bool use_lp_bound = true);

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);

void emit_rows_csv(const std::vector<BenchRow>& rows, std::ostream& out);
void emit_summary_csv(const std::vector<BenchSummary>& summaries, std::ostream& out);
void emit_summary_json(const std::vector<BenchSummary>& summaries, std::ostream& out);

/// Long-format series for plots: metric is one of "time", "gap", "vars".
void emit_figdata(const std::vector<BenchSummary>& summaries, std::string_view metric,
                  std::ostream& out);

} // namespace mcsp
