// equityfront — exact bi-objective CVRP workload-equity toolkit.
//
// Commands: gen, enumerate, analyze, verify-axioms, verify-theorems, report.
// Exit codes: 0 success, 1 check violation / runtime failure,
//             2 resource or size limit, 64 usage error.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "equityfront/axioms.hpp"
#include "equityfront/reports.hpp"

namespace fs = std::filesystem;
using namespace equityfront;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitSizeLimit = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- run config

struct RunConfig {
    std::uint64_t seed = 1;
    int blocks = 5;
    int n = 10;
    std::vector<int> v_list = {2, 3, 4};
    std::vector<int> slack_list = {0, 1};
    std::vector<Measure> measures{kCoreMeasures.begin(), kCoreMeasures.end()};
    std::vector<TourMode> modes = {TourMode::Conventional, TourMode::TspConstrained};
    int max_perm_size = 9;
    double dedup_tol = kDedupTol;
    bool exact = false;
    double max_cost_factor = 1.5;
    int jobs = 1;
    std::string out = "run";
};

std::vector<Measure> parse_measures(const std::vector<std::string>& names) {
    std::vector<Measure> ms;
    for (const auto& s : names) {
        if (s == "all") {
            ms.assign(kCoreMeasures.begin(), kCoreMeasures.end());
            continue;
        }
        auto m = parse_measure(s);
        if (!m) throw UsageError("unknown measure '" + s + "'");
        ms.push_back(*m);
    }
    if (ms.empty()) throw UsageError("no measures selected");
    return ms;
}

std::vector<TourMode> parse_modes(const std::vector<std::string>& names) {
    std::vector<TourMode> modes;
    for (const auto& s : names) {
        if (s == "both") return {TourMode::Conventional, TourMode::TspConstrained};
        auto m = parse_mode(s);
        if (!m) throw UsageError("unknown mode '" + s + "' (expected conventional|tsp)");
        modes.push_back(*m);
    }
    if (modes.empty()) throw UsageError("no modes selected");
    return modes;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["blocks"] = cfg.blocks;
    j["n"] = cfg.n;
    j["v_list"] = cfg.v_list;
    j["slack_list"] = cfg.slack_list;
    std::vector<std::string> ms, modes;
    for (Measure m : cfg.measures) ms.push_back(measure_name(m));
    for (TourMode m : cfg.modes) modes.push_back(mode_name(m));
    j["measures"] = ms;
    j["modes"] = modes;
    j["max_perm_size"] = cfg.max_perm_size;
    j["dedup_tol"] = cfg.dedup_tol;
    j["exact"] = cfg.exact;
    j["max_cost_factor"] = cfg.max_cost_factor;
    j["out"] = cfg.out;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.blocks = j.value("blocks", cfg.blocks);
    cfg.n = j.value("n", cfg.n);
    cfg.v_list = j.value("v_list", cfg.v_list);
    cfg.slack_list = j.value("slack_list", cfg.slack_list);
    if (j.contains("measures")) cfg.measures = parse_measures(j["measures"].get<std::vector<std::string>>());
    if (j.contains("modes")) cfg.modes = parse_modes(j["modes"].get<std::vector<std::string>>());
    cfg.max_perm_size = j.value("max_perm_size", cfg.max_perm_size);
    cfg.dedup_tol = j.value("dedup_tol", cfg.dedup_tol);
    cfg.exact = j.value("exact", cfg.exact);
    cfg.max_cost_factor = j.value("max_cost_factor", cfg.max_cost_factor);
    cfg.out = j.value("out", cfg.out);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

std::vector<Instance> make_instances(const RunConfig& cfg) {
    std::vector<Instance> out;
    for (int b = 0; b < cfg.blocks; ++b)
        for (int v : cfg.v_list)
            for (int slack : cfg.slack_list)
                out.push_back(generate_family(cfg.seed, b, cfg.n, v, slack));
    return out;
}

fs::path cache_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("EQUITYFRONT_CACHE_DIR"); env && *env) return env;
    return fs::path(cfg.out) / "caches";
}

fs::path front_path(const RunConfig& cfg, const std::string& inst_name, TourMode mode, Measure m) {
    return fs::path(cfg.out) / "fronts" /
           (inst_name + "_" + mode_name(mode) + "_" + measure_name(m) + ".csv");
}

// ------------------------------------------------------------- pipeline

struct ModeRun {
    std::string instance_name;
    int vehicles = 0;
    int n = 0;
    TourMode mode{};
    MeasureFronts fronts;
    bool space_collected = false;
    SolutionSpaceIndex index;
};

// Spaces are collected (for the constant-sum probe and the two-vehicle
// theorem check) only where they fit in memory at desk scale.
bool collect_space_for(const Instance& inst, TourMode mode) {
    if (inst.vehicles == 2) return true;
    if (mode == TourMode::TspConstrained) return inst.num_customers() <= 12;
    return inst.num_customers() <= 10;
}

ModeRun run_instance(const Instance& inst, TourMode mode, const RunConfig& cfg,
                     const std::string& cache_path) {
    SubsetCache cache = build_cache(inst, mode, cache_path, cfg.max_perm_size, cfg.dedup_tol, 1);
    EnumerateOptions opts{cfg.exact, cfg.max_cost_factor};
    const bool collect = collect_space_for(inst, mode);
    auto res = pareto_enumerate_all(inst, cache, cfg.measures, mode, opts, collect);
    set_tsp_flags(res.fronts, cache);
    set_inconsistency_flags(res.fronts, inst, cache, mode, opts);

    ModeRun run;
    run.instance_name = inst.name;
    run.vehicles = inst.vehicles;
    run.n = inst.num_customers();
    run.mode = mode;
    run.fronts = std::move(res.fronts);
    run.space_collected = collect;
    if (collect) run.index = SolutionSpaceIndex::build(std::move(res.space));
    return run;
}

// Executes one task per (instance, mode); --jobs parallelizes across tasks
// only, so results and all file outputs are independent of the worker count.
std::vector<ModeRun> run_pipeline(const std::vector<Instance>& instances, const RunConfig& cfg,
                                  bool write_caches) {
    struct Task {
        const Instance* inst;
        TourMode mode;
    };
    std::vector<Task> tasks;
    for (const auto& inst : instances)
        for (TourMode mode : cfg.modes) tasks.push_back({&inst, mode});

    fs::path cdir = cache_dir(cfg);
    if (write_caches) fs::create_directories(cdir);

    std::vector<ModeRun> runs(tasks.size());
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            try {
                std::string cpath;
                if (write_caches)
                    cpath = (cdir / (tasks[k].inst->name + "_" + mode_name(tasks[k].mode) + ".json"))
                                .string();
                runs[k] = run_instance(*tasks[k].inst, tasks[k].mode, cfg, cpath);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size());
            }
        }
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return runs;
}

struct MarginalAggregate {
    std::size_t instances = 0, steps = 0;
    double imbalance = 0.0, within = 0.0, cost_inc = 0.0, range_red = 0.0;
};

// Builds and writes all report artifacts for a finished pipeline.
TheoremReport write_reports(const std::vector<ModeRun>& runs, const RunConfig& cfg,
                            bool write_files) {
    fs::path rdir = fs::path(cfg.out) / "reports";
    if (write_files) fs::create_directories(rdir);

    // conventional key sets, for the "new in constrained mode" statistic
    std::map<std::pair<std::string, Measure>, std::set<std::string>> conv_keys;
    for (const auto& run : runs)
        if (run.mode == TourMode::Conventional)
            for (const auto& [m, front] : run.fronts)
                conv_keys[{run.instance_name, m}] = front_keys(front);

    TheoremVerifier verifier;
    for (TourMode mode : cfg.modes) {
        std::vector<std::vector<FrontStats>> stats;
        std::vector<AgreementMatrix> agreements;
        std::map<Measure, MarginalAggregate> marginal;
        for (const auto& run : runs) {
            if (run.mode != mode) continue;
            std::vector<FrontStats> inst_stats;
            std::vector<const ParetoSet*> fronts;
            for (const auto& [m, front] : run.fronts) {
                const std::set<std::string>* ck = nullptr;
                if (mode == TourMode::TspConstrained) {
                    auto it = conv_keys.find({run.instance_name, m});
                    if (it != conv_keys.end()) ck = &it->second;
                }
                inst_stats.push_back(front_stats(front, ck));
                fronts.push_back(&front);
                if (!front.entries.empty()) {
                    MarginalStats ms = marginal_cost_stats(front);
                    MarginalAggregate& agg = marginal[m];
                    ++agg.instances;
                    agg.imbalance += ms.imbalance_ratio;
                    agg.within += ms.share_within_10pct;
                    if (ms.step_present) {
                        ++agg.steps;
                        agg.cost_inc += ms.step_cost_increase;
                        agg.range_red += ms.step_range_reduction;
                    }
                }
            }
            stats.push_back(std::move(inst_stats));
            agreements.push_back(agreement_matrix(fronts));
            verifier.check_fronts(run.instance_name, run.fronts, mode);
            if (run.space_collected)
                verifier.check_space(run.instance_name, run.index, run.vehicles, cfg.measures);
        }
        if (stats.empty()) continue;
        if (write_files) {
            write_file_atomic((rdir / ("summary_" + mode_name(mode) + ".csv")).string(),
                              summary_to_csv(summarize(stats)));
            write_file_atomic((rdir / ("agreement_" + mode_name(mode) + ".csv")).string(),
                              agreement_to_csv(average_agreement(agreements)));
            nlohmann::json jm;
            for (const auto& [m, agg] : marginal) {
                nlohmann::json e;
                e["instances"] = agg.instances;
                e["avg_imbalance_ratio_at_cost_optimum"] = agg.imbalance / agg.instances;
                e["avg_share_within_10pct_of_optimum"] = agg.within / agg.instances;
                if (agg.steps > 0) {
                    e["steps_observed"] = agg.steps;
                    e["avg_step_cost_increase"] = agg.cost_inc / agg.steps;
                    e["avg_step_range_reduction"] = agg.range_red / agg.steps;
                }
                jm[measure_name(m)] = std::move(e);
            }
            write_file_atomic((rdir / ("marginal_" + mode_name(mode) + ".json")).string(),
                              jm.dump(2) + "\n");
        }
    }
    TheoremReport rep = verifier.report();
    if (write_files)
        write_file_atomic((rdir / "theorems.json").string(),
                          theorem_report_to_json(rep).dump(2) + "\n");
    return rep;
}

void write_fronts(const std::vector<ModeRun>& runs, const RunConfig& cfg) {
    fs::create_directories(fs::path(cfg.out) / "fronts");
    for (const auto& run : runs)
        for (const auto& [m, front] : run.fronts)
            write_front_csv(front_path(cfg, run.instance_name, run.mode, m).string(), front,
                            run.vehicles);
}

void log_line(const RunConfig& cfg, const std::string& msg) {
    std::ofstream log(fs::path(cfg.out) / "log.txt", std::ios::app);
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
    log << stamp << " " << msg << "\n";
}

// ------------------------------------------------------------- commands

int cmd_gen(const RunConfig& cfg, bool force) {
    fs::path idir = fs::path(cfg.out) / "instances";
    fs::create_directories(idir);
    auto instances = make_instances(cfg);
    if (!force)
        for (const auto& inst : instances) {
            fs::path p = idir / (inst.name + ".json");
            if (fs::exists(p)) {
                std::cerr << "refusing to overwrite " << p.string() << " (use --force)\n";
                return kExitViolation;
            }
        }
    for (const auto& inst : instances) save_instance(inst, (idir / (inst.name + ".json")).string());
    write_file_atomic((fs::path(cfg.out) / "config.json").string(),
                      config_to_json(cfg).dump(2) + "\n");
    std::cout << "wrote " << instances.size() << " instances to " << idir.string() << "\n";
    return 0;
}

int cmd_enumerate(const std::string& instance_file, const std::vector<std::string>& measure_names,
                  const std::string& mode_name_str, RunConfig cfg) {
    Instance inst = load_instance(instance_file);
    cfg.measures = parse_measures(measure_names);
    cfg.modes = parse_modes({mode_name_str});
    auto runs = run_pipeline({inst}, cfg, true);
    write_fronts(runs, cfg);
    for (const auto& run : runs)
        for (const auto& [m, front] : run.fronts)
            std::cout << front_path(cfg, run.instance_name, run.mode, m).string() << ": "
                      << front.entries.size() << " solutions\n";
    return 0;
}

// Front stubs reconstructed from persisted CSVs: enough structure for the
// summary, agreement, and front-level theorem checks.
MeasureFronts fronts_from_csv(const RunConfig& cfg, const std::string& inst_name, TourMode mode,
                              std::uint64_t hash) {
    MeasureFronts fronts;
    for (Measure m : cfg.measures) {
        ParetoSet set;
        set.measure = m;
        set.mode = mode;
        set.instance_hash = hash;
        for (const auto& row : read_front_csv(front_path(cfg, inst_name, mode, m).string())) {
            FrontEntry e;
            e.key = row.key;
            e.tsp_optimal = row.tsp_optimal;
            e.inconsistent = !row.consistent;
            e.solution.cost = row.total_cost;
            e.solution.sorted_desc = row.lengths;
            e.point.cost = row.total_cost;
            e.point.is_lex = m == Measure::LexMinMax;
            if (e.point.is_lex) e.point.lex = row.lengths;
            else e.point.scalar = std::stod(row.measure_value);
            set.entries.push_back(std::move(e));
        }
        fronts.emplace(m, std::move(set));
    }
    return fronts;
}

int cmd_analyze(const std::string& run_dir) {
    RunConfig cfg = load_config((fs::path(run_dir) / "config.json").string());
    cfg.out = run_dir;
    auto instances = make_instances(cfg);

    std::vector<std::string> missing;
    for (const auto& inst : instances)
        for (TourMode mode : cfg.modes)
            for (Measure m : cfg.measures) {
                fs::path p = front_path(cfg, inst.name, mode, m);
                if (!fs::exists(p)) missing.push_back(p.string());
            }
    if (!missing.empty()) {
        std::cerr << "missing front files:\n";
        for (const auto& p : missing) std::cerr << "  " << p << "\n";
        return kExitViolation;
    }

    std::vector<ModeRun> runs;
    for (const auto& inst : instances)
        for (TourMode mode : cfg.modes) {
            ModeRun run;
            run.instance_name = inst.name;
            run.vehicles = inst.vehicles;
            run.n = inst.num_customers();
            run.mode = mode;
            run.fronts = fronts_from_csv(cfg, inst.name, mode, instance_hash(inst));
            // spaces for the exhaustive checks are re-enumerated, not persisted
            if (collect_space_for(inst, mode)) {
                std::string cpath =
                    (cache_dir(cfg) / (inst.name + "_" + mode_name(mode) + ".json")).string();
                SubsetCache cache =
                    build_cache(inst, mode, cpath, cfg.max_perm_size, cfg.dedup_tol, 1);
                EnumerateOptions opts{cfg.exact, cfg.max_cost_factor};
                run.index = build_space_index(inst, cache, mode, opts);
                run.space_collected = true;
            }
            runs.push_back(std::move(run));
        }

    TheoremReport rep = write_reports(runs, cfg, true);
    std::cout << theorem_report_to_json(rep).dump(2) << "\n";
    return rep.ok() ? 0 : kExitViolation;
}

int cmd_verify_axioms(int trials, std::uint64_t seed, const std::string& out_path) {
    if (trials < 1) throw UsageError("--trials must be >= 1");
    bool all_ok = true;
    auto reports = nlohmann::json::array();
    for (Measure m : kAllMeasures) {
        AxiomReport r = check_axioms(m, trials, seed);
        reports.push_back(axiom_report_to_json(r));
        for (const auto& v : r.verdicts) {
            if (v.matches) continue;
            all_ok = false;
            std::cout << "MISMATCH " << measure_name(m) << " " << axiom_name(v.axiom)
                      << " expected=" << v.expected << " observed=" << v.observed << "\n";
            if (v.witness) {
                std::cout << "  witness x = [";
                for (double d : v.witness->x) std::cout << " " << d;
                std::cout << " ] -> [";
                for (double d : v.witness->transformed) std::cout << " " << d;
                std::cout << " ]  value " << v.witness->value_before << " -> "
                          << v.witness->value_after << "\n";
            }
        }
        std::cout << measure_name(m) << ": " << (r.all_match() ? "ok" : "MISMATCH") << "\n";
    }
    if (!out_path.empty()) write_file_atomic(out_path, reports.dump(2) + "\n");
    return all_ok ? 0 : kExitViolation;
}

int cmd_verify_theorems(const RunConfig& cfg) {
    auto instances = make_instances(cfg);
    auto runs = run_pipeline(instances, cfg, false);
    TheoremReport rep = write_reports(runs, cfg, false);
    std::cout << theorem_report_to_json(rep).dump(2) << "\n";
    return rep.ok() ? 0 : kExitViolation;
}

int cmd_report(const RunConfig& cfg, bool force) {
    if (int rc = cmd_gen(cfg, force); rc != 0) return rc;
    log_line(cfg, "pipeline start");
    auto instances = make_instances(cfg);
    auto runs = run_pipeline(instances, cfg, true);
    write_fronts(runs, cfg);
    TheoremReport rep = write_reports(runs, cfg, true);
    log_line(cfg, "pipeline done");
    std::cout << "reports written to " << (fs::path(cfg.out) / "reports").string() << "\n";
    if (!rep.ok()) {
        std::cerr << "theorem check failed; see reports/theorems.json\n";
        return kExitViolation;
    }
    return 0;
}

void add_config_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path,
                      std::vector<std::string>& measure_names,
                      std::vector<std::string>& mode_names) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("--seed", cfg.seed, "RNG seed of the instance family");
    cmd->add_option("--blocks", cfg.blocks, "number of disjoint customer blocks");
    cmd->add_option("--n", cfg.n, "customers per instance");
    cmd->add_option("--vehicles", cfg.v_list, "vehicle counts")->delimiter(',');
    cmd->add_option("--slack", cfg.slack_list, "capacity slack values (0/1)")->delimiter(',');
    cmd->add_option("--measure", measure_names, "measures, or 'all'")->delimiter(',');
    cmd->add_option("--mode", mode_names, "conventional, tsp, or both")->delimiter(',');
    cmd->add_option("--max-perm-size", cfg.max_perm_size,
                    "largest block enumerated by permutations");
    cmd->add_option("--dedup-tol", cfg.dedup_tol, "tour-length deduplication tolerance");
    cmd->add_option("--max-cost-factor", cfg.max_cost_factor, "cost ceiling as factor of optimum");
    cmd->add_flag("--exact", cfg.exact, "disable the cost ceiling");
    cmd->add_option("--jobs", cfg.jobs, "worker threads (across instances)");
    cmd->add_option("--out", cfg.out, "output directory");
}

RunConfig resolve_config(CLI::App* cmd, RunConfig flag_values, const std::string& config_path,
                         const std::vector<std::string>& measure_names,
                         const std::vector<std::string>& mode_names) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    auto take = [&](const char* flag, auto member) {
        if (cmd->count(flag)) cfg.*member = flag_values.*member;
    };
    take("--seed", &RunConfig::seed);
    take("--blocks", &RunConfig::blocks);
    take("--n", &RunConfig::n);
    take("--vehicles", &RunConfig::v_list);
    take("--slack", &RunConfig::slack_list);
    take("--max-perm-size", &RunConfig::max_perm_size);
    take("--dedup-tol", &RunConfig::dedup_tol);
    take("--max-cost-factor", &RunConfig::max_cost_factor);
    take("--exact", &RunConfig::exact);
    take("--jobs", &RunConfig::jobs);
    take("--out", &RunConfig::out);
    if (cmd->count("--measure")) cfg.measures = parse_measures(measure_names);
    if (cmd->count("--mode")) cfg.modes = parse_modes(mode_names);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bi-objective CVRP workload-equity toolkit"};
    app.require_subcommand(1);

    RunConfig flags;
    std::string config_path;
    std::vector<std::string> measure_names = {"all"};
    std::vector<std::string> mode_names = {"both"};
    bool force = false;

    auto* gen = app.add_subcommand("gen", "generate an instance family");
    add_config_flags(gen, flags, config_path, measure_names, mode_names);
    gen->add_flag("--force", force, "overwrite existing files");

    std::string instance_file;
    auto* enumerate = app.add_subcommand("enumerate", "compute Pareto fronts for one instance");
    add_config_flags(enumerate, flags, config_path, measure_names, mode_names);
    enumerate->add_option("--instance", instance_file, "instance JSON file")->required();

    std::string run_dir;
    auto* analyze = app.add_subcommand("analyze", "recompute reports from persisted fronts");
    analyze->add_option("--run", run_dir, "run directory with config.json and fronts/")->required();

    int trials = 1000;
    std::uint64_t axiom_seed = 42;
    std::string axiom_out;
    auto* vaxioms = app.add_subcommand("verify-axioms", "randomized axiom matrix check");
    vaxioms->add_option("--trials", trials, "random trials per axiom");
    vaxioms->add_option("--seed", axiom_seed, "RNG seed");
    vaxioms->add_option("--out", axiom_out, "write the JSON report here");

    auto* vtheorems = app.add_subcommand("verify-theorems", "theorem checks over a generated batch");
    add_config_flags(vtheorems, flags, config_path, measure_names, mode_names);

    auto* report = app.add_subcommand("report", "full pipeline: gen, enumerate, analyze");
    add_config_flags(report, flags, config_path, measure_names, mode_names);
    report->add_flag("--force", force, "overwrite existing files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(resolve_config(gen, flags, config_path, measure_names, mode_names),
                           force);
        if (enumerate->parsed()) {
            RunConfig cfg =
                resolve_config(enumerate, flags, config_path, measure_names, mode_names);
            std::string mode = mode_names.size() == 1 ? mode_names[0] : "both";
            if (mode == "both" && enumerate->count("--mode") == 0) mode = "tsp";
            return cmd_enumerate(instance_file, measure_names, mode, cfg);
        }
        if (analyze->parsed()) return cmd_analyze(run_dir);
        if (vaxioms->parsed()) return cmd_verify_axioms(trials, axiom_seed, axiom_out);
        if (vtheorems->parsed())
            return cmd_verify_theorems(
                resolve_config(vtheorems, flags, config_path, measure_names, mode_names));
        if (report->parsed())
            return cmd_report(resolve_config(report, flags, config_path, measure_names, mode_names),
                              force);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitSizeLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
