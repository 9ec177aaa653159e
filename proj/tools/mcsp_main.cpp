#include "mcsp/bench.hpp"
#include "mcsp/enumerate.hpp"
#include "mcsp/error.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/model_io.hpp"
#include "mcsp/projection.hpp"
#include "mcsp/simplex.hpp"
#include "mcsp/solve.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

mcsp::ModelKind parse_kind(const std::string& name) {
    if (name == "cb") return mcsp::ModelKind::cb;
    if (name == "cs") return mcsp::ModelKind::cs;
    throw mcsp::Error(mcsp::ErrorKind::invalid_parameter, "model must be cb or cs");
}

std::string status_name(mcsp::SolveStatus status) {
    switch (status) {
        case mcsp::SolveStatus::optimal: return "OPTIMAL";
        case mcsp::SolveStatus::feasible: return "FEASIBLE";
        case mcsp::SolveStatus::timeout_no_incumbent: return "TIMEOUT_NO_INCUMBENT";
    }
    return "?";
}

json report_to_json(const mcsp::SolveReport& report) {
    json j;
    j["status"] = status_name(report.status);
    j["lower_bound"] = report.lower_bound;
    j["time_to_first_s"] = report.time_to_first_s;
    j["time_to_best_s"] = report.time_to_best_s;
    j["total_time_s"] = report.total_time_s;
    j["nodes"] = report.nodes;
    j["opt_gap_pct"] = std::isnan(report.opt_gap_pct) ? json() : json(report.opt_gap_pct);
    j["lp_gap_pct"] = std::isnan(report.lp_gap_pct) ? json() : json(report.lp_gap_pct);
    j["lp_value"] = std::isnan(report.lp_value) ? json() : json(report.lp_value);
    if (report.best) {
        j["value"] = report.best->value;
        json blocks = json::array();
        for (const auto& b : report.best->blocks)
            blocks.push_back({{"t", b.t}, {"k1", b.k1}, {"k2", b.k2}});
        j["blocks"] = std::move(blocks);
    } else {
        j["value"] = json();
        j["blocks"] = json::array();
    }
    return j;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mcsp::Error(mcsp::ErrorKind::io_error, "cannot open " + path.string());
    writer(out);
    if (!out) throw mcsp::Error(mcsp::ErrorKind::io_error, "write failed: " + path.string());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum common string partition: exact models, LP maps, benchmarks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write random related instances");
    int gen_n = 100, gen_sigma = 4, gen_count = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_out = ".";
    gen->add_option("--n", gen_n, "Instance length")->required();
    gen->add_option("--sigma", gen_sigma, "Alphabet size (1..26)")->required();
    gen->add_option("--seed", gen_seed, "Base seed; instance i uses seed+i");
    gen->add_option("--count", gen_count, "Number of instances");
    gen->add_option("--out", gen_out, "Output directory");

    // stats
    auto* stats = app.add_subcommand("stats", "Print n,|sigma|,|T|,m,vars_cb,vars_cs as CSV");
    std::string stats_file;
    bool stats_header = false;
    stats->add_option("file", stats_file, "Instance file")->required();
    stats->add_flag("--header", stats_header, "Also print the CSV header line");

    // export
    auto* exp = app.add_subcommand("export", "Write a model in LP or MPS format");
    std::string exp_file, exp_model = "cs", exp_format = "lp", exp_out;
    exp->add_option("file", exp_file, "Instance file")->required();
    exp->add_option("--model", exp_model, "cb or cs")->check(CLI::IsMember({"cb", "cs"}));
    exp->add_option("--format", exp_format, "lp or mps")->check(CLI::IsMember({"lp", "mps"}));
    exp->add_option("--out", exp_out, "Output path")->required();

    // lp-compare
    auto* lpc = app.add_subcommand("lp-compare", "Solve both LP relaxations and compare");
    std::string lpc_file;
    lpc->add_option("file", lpc_file, "Instance file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Exact solve with branch and bound");
    std::string solve_file, solve_model = "cs", solve_lp_bound = "on";
    double solve_limit = 60.0;
    bool solve_json = false;
    solve->add_option("file", solve_file, "Instance file")->required();
    solve->add_option("--model", solve_model, "cb or cs")->check(CLI::IsMember({"cb", "cs"}));
    solve->add_option("--time-limit", solve_limit, "Time limit in seconds");
    solve->add_option("--lp-bound", solve_lp_bound, "Use the root LP bound (on/off)")
        ->check(CLI::IsMember({"on", "off"}));
    solve->add_flag("--json", solve_json, "Emit the report as a JSON object");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark grid and emit CSV tables");
    std::vector<int> bench_ns{50, 100, 150, 200};
    std::vector<int> bench_sigmas{4, 12, 20};
    int bench_per_cell = 10, bench_workers = 0;
    std::uint64_t bench_seed = 1;
    double bench_limit = 60.0;
    std::string bench_out = "bench_out", bench_instances, bench_lp_bound = "on";
    bench->add_option("--ns", bench_ns, "Instance lengths")->delimiter(',');
    bench->add_option("--sigmas", bench_sigmas, "Alphabet sizes")->delimiter(',');
    bench->add_option("--per-cell", bench_per_cell, "Instances per (n, sigma) cell");
    bench->add_option("--seed", bench_seed, "Grid seed");
    bench->add_option("--time-limit", bench_limit, "Per-solve time limit in seconds");
    bench->add_option("--workers", bench_workers, "Concurrent solves (0 = all cores)");
    bench->add_option("--out", bench_out, "Output directory");
    bench->add_option("--instances", bench_instances,
                      "Directory of instance files (replaces the generated grid)");
    bench->add_option("--lp-bound", bench_lp_bound, "Use the root LP bound (on/off)")
        ->check(CLI::IsMember({"on", "off"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            fs::create_directories(gen_out);
            for (int i = 0; i < gen_count; ++i) {
                const auto inst = mcsp::generate_instance(gen_n, gen_sigma, gen_seed + i);
                const auto name = "inst_" + std::to_string(gen_n) + "_" + std::to_string(gen_sigma) +
                                  "_" + std::to_string(gen_seed) + "_" + std::to_string(i) + ".txt";
                mcsp::save_instance(inst, fs::path(gen_out) / name);
            }
            std::cout << "wrote " << gen_count << " instance(s) to " << gen_out << "\n";
        } else if (*stats) {
            const auto inst = mcsp::load_instance(stats_file);
            const auto catalog = mcsp::build_catalog(inst);
            const auto counts = mcsp::count_variables(catalog);
            if (stats_header) std::cout << "n,sigma,num_strings,num_blocks,vars_cb,vars_cs\n";
            std::cout << inst.n << ',' << inst.sigma.size() << ',' << catalog.entries.size() << ','
                      << counts.cb << ',' << counts.cb << ',' << counts.cs << "\n";
        } else if (*exp) {
            const auto inst = mcsp::load_instance(exp_file);
            const auto catalog = mcsp::build_catalog(inst);
            mcsp::IpModel model;
            if (parse_kind(exp_model) == mcsp::ModelKind::cb)
                model = std::move(mcsp::build_cb(mcsp::build_blocks(catalog), inst.n).ip);
            else
                model = std::move(mcsp::build_cs(catalog, inst.n).ip);
            mcsp::export_model_file(model, exp_format == "lp" ? mcsp::ModelFormat::lp
                                                              : mcsp::ModelFormat::mps,
                                    exp_out);
            std::cout << "wrote " << exp_out << " (" << model.num_vars() << " variables, "
                      << model.num_constraints() << " constraints)\n";
        } else if (*lpc) {
            const auto inst = mcsp::load_instance(lpc_file);
            const auto catalog = mcsp::build_catalog(inst);
            const auto lp_cb = mcsp::solve_lp(mcsp::build_cb(mcsp::build_blocks(catalog), inst.n).ip);
            const auto lp_cs = mcsp::solve_lp(mcsp::build_cs(catalog, inst.n).ip);
            const double diff = std::abs(lp_cb.objective - lp_cs.objective);
            const double tol = 1e-6 * std::max(1.0, std::abs(lp_cb.objective));
            std::cout << "LP_cb = " << lp_cb.objective << "\nLP_cs = " << lp_cs.objective
                      << "\n|difference| = " << diff << "\n"
                      << (diff <= tol ? "PASS" : "FAIL") << " (tolerance " << tol << ")\n";
            return diff <= tol ? 0 : 1;
        } else if (*solve) {
            const auto inst = mcsp::load_instance(solve_file);
            mcsp::SolveOptions options;
            options.kind = parse_kind(solve_model);
            options.time_limit_s = solve_limit;
            options.use_lp_bound = solve_lp_bound == "on";
            const auto report = mcsp::branch_and_bound(inst, options);
            if (solve_json) {
                std::cout << report_to_json(report).dump(2) << "\n";
            } else {
                std::cout << "status: " << status_name(report.status) << "\n";
                if (report.best) {
                    std::cout << "value: " << report.best->value << "\n";
                    std::cout << "partition:";
                    for (const auto& b : report.best->blocks)
                        std::cout << ' ' << b.t << '@' << b.k1 << '/' << b.k2;
                    std::cout << "\n";
                }
                std::cout << "lower_bound: " << report.lower_bound << "\n";
                if (!std::isnan(report.lp_value)) std::cout << "lp_value: " << report.lp_value << "\n";
                std::cout << "opt_gap_pct: " << report.opt_gap_pct << "\n";
                if (!std::isnan(report.lp_gap_pct))
                    std::cout << "lp_gap_pct: " << report.lp_gap_pct << "\n";
                std::cout << "nodes: " << report.nodes << "\n";
                std::cout << "time_to_first_s: " << report.time_to_first_s
                          << "\ntime_to_best_s: " << report.time_to_best_s
                          << "\ntotal_time_s: " << report.total_time_s << "\n";
            }
        } else if (*bench) {
            std::vector<mcsp::BenchRow> rows;
            if (!bench_instances.empty()) {
                std::vector<fs::path> files;
                for (const auto& entry : fs::directory_iterator(bench_instances))
                    if (entry.is_regular_file()) files.push_back(entry.path());
                std::sort(files.begin(), files.end());
                if (files.empty())
                    throw mcsp::Error(mcsp::ErrorKind::invalid_parameter,
                                      "no instance files in " + bench_instances);
                rows = mcsp::run_files(files, bench_limit, bench_workers, bench_lp_bound == "on");
            } else {
                mcsp::BenchConfig config;
                config.ns = bench_ns;
                config.sigmas = bench_sigmas;
                config.per_cell = bench_per_cell;
                config.seed0 = bench_seed;
                config.time_limit_s = bench_limit;
                config.workers = bench_workers;
                config.use_lp_bound = bench_lp_bound == "on";
                rows = mcsp::run_grid(config);
            }
            const auto summaries = mcsp::summarize(rows);
            fs::create_directories(bench_out);
            const fs::path dir(bench_out);
            write_file(dir / "rows.csv", [&](std::ostream& o) { mcsp::emit_rows_csv(rows, o); });
            write_file(dir / "summary.csv",
                       [&](std::ostream& o) { mcsp::emit_summary_csv(summaries, o); });
            write_file(dir / "summary.json",
                       [&](std::ostream& o) { mcsp::emit_summary_json(summaries, o); });
            for (const char* metric : {"time", "gap", "vars"})
                write_file(dir / ("figdata_" + std::string(metric) + ".csv"),
                           [&](std::ostream& o) { mcsp::emit_figdata(summaries, metric, o); });
            int failures = 0;
            for (const auto& row : rows) failures += row.failed ? 1 : 0;
            std::cout << "wrote " << rows.size() << " rows (" << failures << " failed) to "
                      << bench_out << "\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
