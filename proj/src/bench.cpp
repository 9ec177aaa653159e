#include "mcsp/bench.hpp"

#include "mcsp/enumerate.hpp"
#include "mcsp/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

namespace mcsp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double round_ms(double seconds) {
    return std::round(seconds * 1000.0) / 1000.0;
}

std::string model_name(ModelKind kind) {
    return kind == ModelKind::cb ? "cb" : "cs";
}

std::string fmt(double v, const char* spec = "%.6g") {
    if (std::isnan(v)) return "";
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

struct BenchTask {
    std::string id;
    // exactly one of these two is used
    Instance instance;
    std::filesystem::path file;
    bool from_file = false;
    ModelKind model = ModelKind::cb;
    double time_limit_s = 60.0;
    bool use_lp_bound = true;
};

BenchRow run_task(const BenchTask& task) {
    BenchRow row;
    row.instance_id = task.id;
    row.model = task.model;
    try {
        const Instance inst = task.from_file ? load_instance(task.file) : task.instance;
        row.n = inst.n;
        row.sigma = static_cast<int>(inst.sigma.size());

        const auto counts = count_variables(build_catalog(inst));
        row.num_vars = task.model == ModelKind::cb ? counts.cb : counts.cs;

        SolveOptions options;
        options.kind = task.model;
        options.time_limit_s = task.time_limit_s;
        options.use_lp_bound = task.use_lp_bound;
        const SolveReport report = branch_and_bound(inst, options);

        if (!report.best) {
            row.failed = true;
            row.error = "no incumbent within the time limit";
            return row;
        }
        const auto check = verify(inst, *report.best);
        if (!check.ok) {
            row.failed = true;
            row.error = "verification failed: " + check.reasons.front();
            return row;
        }
        row.value = report.best->value;
        row.time_first_s = round_ms(report.time_to_first_s);
        row.time_best_s = round_ms(report.time_to_best_s);
        row.optimal = report.status == SolveStatus::optimal;
        row.opt_gap_pct = report.opt_gap_pct;
        row.lp_gap_pct = report.lp_gap_pct;
        row.nodes = report.nodes;
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

std::vector<BenchRow> run_tasks(std::vector<BenchTask> tasks, int workers) {
    std::vector<BenchRow> rows(tasks.size());
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            rows[i] = run_task(tasks[i]);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t bench_instance_seed(std::uint64_t seed0, int n, int sigma, int index) {
    std::uint64_t h = splitmix64(seed0);
    h = splitmix64(h ^ static_cast<std::uint64_t>(n));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(sigma) << 20));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(index) << 40));
    return h;
}

std::vector<BenchRow> run_grid(const BenchConfig& config) {
    if (config.per_cell < 1 || config.time_limit_s <= 0 || config.ns.empty() || config.sigmas.empty())
        throw Error(ErrorKind::invalid_parameter, "bench grid parameters must be positive");
    for (int n : config.ns)
        if (n < 1) throw Error(ErrorKind::invalid_parameter, "instance length must be >= 1");

    std::vector<BenchTask> tasks;
    for (int n : config.ns)
        for (int sigma : config.sigmas)
            for (int i = 0; i < config.per_cell; ++i) {
                const auto seed = bench_instance_seed(config.seed0, n, sigma, i);
                Instance inst = generate_instance(n, sigma, seed);
                const std::string id = "inst_" + std::to_string(n) + "_" + std::to_string(sigma) +
                                       "_" + std::to_string(config.seed0) + "_" + std::to_string(i);
                for (ModelKind kind : {ModelKind::cb, ModelKind::cs}) {
                    BenchTask task;
                    task.id = id;
                    task.instance = inst;
                    task.model = kind;
                    task.time_limit_s = config.time_limit_s;
                    task.use_lp_bound = config.use_lp_bound;
                    tasks.push_back(std::move(task));
                }
            }
    return run_tasks(std::move(tasks), config.workers);
}

std::vector<BenchRow> run_files(const std::vector<std::filesystem::path>& files,
                                double time_limit_s, int workers, bool use_lp_bound) {
    std::vector<BenchTask> tasks;
    for (const auto& file : files)
        for (ModelKind kind : {ModelKind::cb, ModelKind::cs}) {
            BenchTask task;
            task.id = file.stem().string();
            task.file = file;
            task.from_file = true;
            task.model = kind;
            task.time_limit_s = time_limit_s;
            task.use_lp_bound = use_lp_bound;
            tasks.push_back(std::move(task));
        }
    return run_tasks(std::move(tasks), workers);
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
    if (rows.empty()) throw Error(ErrorKind::invalid_parameter, "no rows to summarize");

    std::map<std::tuple<int, int, ModelKind>, std::vector<const BenchRow*>> groups;
    for (const auto& row : rows)
        if (!row.failed) groups[{row.n, row.sigma, row.model}].push_back(&row);

    std::vector<BenchSummary> result;
    for (const auto& [key, members] : groups) {
        BenchSummary s;
        std::tie(s.n, s.sigma, s.model) = key;
        s.group_size = static_cast<int>(members.size());
        double lp_gap_sum = 0.0;
        int lp_gap_count = 0;
        for (const auto* row : members) {
            s.count_optimal += row->optimal ? 1 : 0;
            s.mean_value += row->value;
            s.mean_time_first_s += row->time_first_s;
            s.mean_time_best_s += row->time_best_s;
            s.mean_opt_gap_pct += row->opt_gap_pct;
            s.mean_num_vars += static_cast<double>(row->num_vars);
            s.mean_nodes += static_cast<double>(row->nodes);
            if (!std::isnan(row->lp_gap_pct)) {
                lp_gap_sum += row->lp_gap_pct;
                ++lp_gap_count;
            }
        }
        const double count = s.group_size;
        s.mean_value /= count;
        s.mean_time_first_s /= count;
        s.mean_time_best_s /= count;
        s.mean_opt_gap_pct /= count;
        s.mean_num_vars /= count;
        s.mean_nodes /= count;
        s.mean_lp_gap_pct = lp_gap_count ? lp_gap_sum / lp_gap_count : kNaN;
        result.push_back(s);
    }

    // CS-over-CB improvement per (n, sigma); stored on both rows of the pair.
    for (auto& s : result) {
        const ModelKind other = s.model == ModelKind::cb ? ModelKind::cs : ModelKind::cb;
        const auto it = groups.find({s.n, s.sigma, other});
        if (it == groups.end()) {
            s.improvement_pct = kNaN;
            continue;
        }
        double other_mean = 0.0;
        for (const auto* row : it->second) other_mean += row->value;
        other_mean /= static_cast<double>(it->second.size());
        const double cb_mean = s.model == ModelKind::cb ? s.mean_value : other_mean;
        const double cs_mean = s.model == ModelKind::cb ? other_mean : s.mean_value;
        s.improvement_pct = cb_mean > 0 ? 100.0 * (cb_mean - cs_mean) / cb_mean : kNaN;
    }
    return result;
}

void emit_rows_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "instance_id,n,sigma,model,value,time_first_s,time_best_s,optimal,"
           "opt_gap_pct,lp_gap_pct,num_vars,nodes,failed,error\n";
    for (const auto& r : rows) {
        std::string error = r.error;
        std::replace(error.begin(), error.end(), ',', ';');
        std::replace(error.begin(), error.end(), '\n', ' ');
        out << r.instance_id << ',' << r.n << ',' << r.sigma << ',' << model_name(r.model) << ','
            << r.value << ',' << fmt(r.time_first_s, "%.3f") << ',' << fmt(r.time_best_s, "%.3f")
            << ',' << (r.optimal ? 1 : 0) << ',' << fmt(r.opt_gap_pct) << ',' << fmt(r.lp_gap_pct)
            << ',' << r.num_vars << ',' << r.nodes << ',' << (r.failed ? 1 : 0) << ',' << error
            << '\n';
    }
    if (!out) throw Error(ErrorKind::io_error, "rows CSV write failure");
}

void emit_summary_csv(const std::vector<BenchSummary>& summaries, std::ostream& out) {
    out << "n,sigma,model,group_size,count_optimal,mean_value,mean_time_first_s,"
           "mean_time_best_s,mean_opt_gap_pct,mean_lp_gap_pct,mean_num_vars,mean_nodes,"
           "improvement_pct\n";
    for (const auto& s : summaries)
        out << s.n << ',' << s.sigma << ',' << model_name(s.model) << ',' << s.group_size << ','
            << s.count_optimal << ',' << fmt(s.mean_value) << ',' << fmt(s.mean_time_first_s, "%.3f")
            << ',' << fmt(s.mean_time_best_s, "%.3f") << ',' << fmt(s.mean_opt_gap_pct) << ','
            << fmt(s.mean_lp_gap_pct) << ',' << fmt(s.mean_num_vars) << ',' << fmt(s.mean_nodes)
            << ',' << fmt(s.improvement_pct) << '\n';
    if (!out) throw Error(ErrorKind::io_error, "summary CSV write failure");
}

void emit_summary_json(const std::vector<BenchSummary>& summaries, std::ostream& out) {
    using nlohmann::json;
    auto to_json = [](const BenchSummary& s) {
        json j{{"group_size", s.group_size},
               {"count_optimal", s.count_optimal},
               {"mean_value", s.mean_value},
               {"mean_time_first_s", s.mean_time_first_s},
               {"mean_time_best_s", s.mean_time_best_s},
               {"mean_opt_gap_pct", s.mean_opt_gap_pct},
               {"mean_num_vars", s.mean_num_vars},
               {"mean_nodes", s.mean_nodes}};
        j["mean_lp_gap_pct"] = std::isnan(s.mean_lp_gap_pct) ? json() : json(s.mean_lp_gap_pct);
        return j;
    };

    // one object per (n, sigma) with both models side by side
    std::map<std::pair<int, int>, json> cells;
    for (const auto& s : summaries) {
        auto& cell = cells[{s.n, s.sigma}];
        cell["n"] = s.n;
        cell["sigma"] = s.sigma;
        cell[model_name(s.model)] = to_json(s);
        cell["improvement_pct"] = std::isnan(s.improvement_pct) ? json() : json(s.improvement_pct);
    }
    json array = json::array();
    for (auto& [key, cell] : cells) array.push_back(std::move(cell));
    out << array.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::io_error, "summary JSON write failure");
}

void emit_figdata(const std::vector<BenchSummary>& summaries, std::string_view metric,
                  std::ostream& out) {
    std::string column;
    if (metric == "time")
        column = "mean_time_first_s";
    else if (metric == "gap")
        column = "mean_opt_gap_pct";
    else if (metric == "vars")
        column = "mean_num_vars";
    else
        throw Error(ErrorKind::invalid_parameter, "unknown figure metric: " + std::string(metric));

    out << "n,sigma,model," << column << "\n";
    for (const auto& s : summaries) {
        double v = 0.0;
        if (metric == "time")
            v = s.mean_time_first_s;
        else if (metric == "gap")
            v = s.mean_opt_gap_pct;
        else
            v = s.mean_num_vars;
        out << s.n << ',' << s.sigma << ',' << model_name(s.model) << ','
            << fmt(v, metric == "time" ? "%.3f" : "%.6g") << '\n';
    }
    if (!out) throw Error(ErrorKind::io_error, "figure data write failure");
}

} // namespace mcsp
