#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ordermec/bounds.hpp"
#include "ordermec/graph_io.hpp"
#include "ordermec/harness.hpp"
#include "ordermec/oracle.hpp"

using namespace ordermec;

namespace {

constexpr const char* kVersion = "ordermec 1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string join(const std::vector<int>& values, const char* sep = " ") {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? sep : "") << values[i];
    return out.str();
}

// JSON config overlay: a flat object of long option names for the invoked
// subcommand, e.g. {"n": [3, 5], "samples": 100}. Flags given on the command
// line win; config values are injected as tokens ahead of the user's so that
// scalar options take the user's later occurrence, and vector options are
// only injected when absent from the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_path.empty()) return args;
    if (args.size() < 2 || args[1].rfind("-", 0) == 0)
        throw CLI::ValidationError("--config requires a subcommand");

    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("cannot open config file " + config_path);
    nlohmann::json config;
    try {
        in >> config;
    } catch (const std::exception& e) {
        throw CLI::ValidationError(std::string("bad config JSON: ") + e.what());
    }
    if (!config.is_object()) throw CLI::ValidationError("config must be a JSON object");

    std::set<std::string> given;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i].rfind("--", 0) != 0) continue;
        std::string name = args[i].substr(2);
        name = name.substr(0, name.find('='));
        given.insert(name);
    }

    std::vector<std::string> injected;
    for (const auto& [key, value] : config.items()) {
        if (given.count(key)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) injected.push_back("--" + key);
            continue;
        }
        std::string token;
        if (value.is_array()) {
            std::ostringstream list;
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i) list << ',';
                if (value[i].is_number_float())
                    list << fmt12(value[i].get<double>());
                else
                    list << value[i].dump();
            }
            token = list.str();
        } else if (value.is_number_float()) {
            token = fmt12(value.get<double>());
        } else if (value.is_string()) {
            token = value.get<std::string>();
        } else {
            token = value.dump();
        }
        injected.push_back("--" + key);
        injected.push_back(token);
    }
    args.insert(args.begin() + 2, injected.begin(), injected.end());
    return args;
}

void add_config_option(CLI::App* cmd) {
    cmd->add_option("--config", "JSON file of option defaults (explicit flags win)")
        ->type_name("FILE");
}

struct SampleArgs {
    int n = 5;
    double rho = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    int samples = 1;
    bool permuted = false;
    bool essential = false;
    std::vector<int> targets;
    std::string trace_path;
    std::string format = "json";
    std::string out;
};

int run_sample(const SampleArgs& args) {
    std::ostringstream body;
    std::ostringstream traces;
    for (int k = 0; k < args.samples; ++k) {
        SampleConfig cfg{args.n, args.rho, args.seed, args.index + std::uint64_t(k)};
        Dag g = args.permuted ? sample_permuted_order_dag(cfg) : sample_order_dag(cfg);
        const bool want_pdag = args.essential || !args.targets.empty();
        if (want_pdag) {
            ClosureTrace trace;
            Pdag ess = interventional_essential_graph(g, InterventionSet(args.targets),
                                                      args.trace_path.empty() ? nullptr : &trace);
            if (!args.trace_path.empty()) traces << trace_to_json_lines(trace);
            body << (args.format == "edges" ? to_edge_list(ess) : to_json(ess).dump() + "\n");
        } else {
            body << (args.format == "edges" ? to_edge_list(g) : to_json(g).dump() + "\n");
        }
    }
    if (!args.trace_path.empty()) {
        std::ofstream trace_file(args.trace_path);
        if (!trace_file) throw std::runtime_error("cannot open trace file " + args.trace_path);
        trace_file << traces.str();
    }
    if (args.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(args.out);
        if (!out) throw std::runtime_error("cannot open output file " + args.out);
        out << body.str();
    }
    return kExitOk;
}

int run_sweep_cmd(const harness::SweepConfig& cfg, const std::string& out_prefix,
                  const std::string& format) {
    harness::SweepResult result = harness::run_sweep(cfg);
    if (!out_prefix.empty())
        harness::write_outputs(result, out_prefix,
                               format == "json" ? harness::OutputFormat::kJson
                                                : harness::OutputFormat::kCsv);
    // Per-sample invariant: the class never outgrows 2^unoriented.
    std::uint64_t violations = 0;
    for (const MetricRecord& rec : result.records) {
        if (!rec.mec_capped && rec.log2_mec > double(rec.unoriented) + 1e-9) ++violations;
        for (const auto& row : rec.per_r) {
            if (!row.mec_capped && row.log2_mec > double(row.min_unoriented) + 1e-9) ++violations;
            if (!row.greedy_mec_capped &&
                row.greedy_log2_mec > double(row.greedy_unoriented) + 1e-9)
                ++violations;
        }
    }
    for (const auto& cell : result.cells) {
        const harness::MetricStat& x = cell.stat("X");
        std::cout << "cell n=" << cell.n << " rho=" << fmt12(cell.rho)
                  << " samples=" << x.count << " mean_X=" << fmt12(x.mean)
                  << " var_X=" << fmt12(x.variance)
                  << " mean_log2L=" << fmt12(cell.stat("log2L").mean) << "\n";
    }
    if (!out_prefix.empty())
        std::cout << "wrote " << out_prefix << "_records." << format << " and " << out_prefix
                  << "_summary." << format << "\n";
    if (violations > 0) {
        std::cerr << "invariant violations: " << violations << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int run_couple_cmd(const harness::CouplingConfig& cfg) {
    harness::CouplingReport report = harness::run_coupling_campaign(cfg);
    std::cout << "coupled pairs checked: " << report.pairs_checked << "\n"
              << "relation instances checked: " << report.relations_checked << "\n"
              << "violations: " << report.violations.size() << "\n";
    for (const auto& v : report.violations)
        std::cerr << "VIOLATION " << v.relation << " n=" << v.n << " rho=" << fmt12(v.rho)
                  << " r=" << v.r << " index=" << v.index << " (" << v.detail << ")\n";
    return report.violations.empty() ? kExitOk : kExitViolation;
}

struct VerifyArgs {
    int max_n = 4;
    int samples = 200;
    int max_n_random = 7;
    std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& args) {
    std::uint64_t dags = 0, mismatches = 0;
    for (int n = 1; n <= args.max_n; ++n) {
        oracle::for_each_skeleton_mec(n, [&](const oracle::DagClass& cls) {
            dags += cls.members.size();
            const Pdag reference = oracle::consensus(cls);
            for (const Dag& g : cls.members) {
                Pdag ours = essential_graph(g);
                if (ours != reference) ++mismatches;
                if (mec_size(ours).value != cls.members.size()) ++mismatches;
            }
        });
    }
    std::cout << "exhaustive: " << dags << " DAGs on n <= " << args.max_n
              << ", essential-graph and class-size mismatches: " << mismatches << "\n";

    std::uint64_t random_checks = 0, random_mismatches = 0;
    static constexpr double kRhos[] = {0.2, 0.5, 0.8};
    for (int s = 0; s < args.samples; ++s) {
        const int n = 2 + s % (args.max_n_random - 1);
        SampleConfig cfg{n, kRhos[s % 3], args.seed, std::uint64_t(s)};
        Dag g = sample_order_dag(cfg);
        std::vector<InterventionSet> sets{{}};
        for (int a = 0; a < n; ++a) {
            sets.push_back(InterventionSet{a});
            for (int b = a + 1; b < n; ++b) sets.push_back(InterventionSet{a, b});
        }
        const oracle::DagClass base = oracle::oracle_mec(g);
        for (const InterventionSet& targets : sets) {
            ++random_checks;
            auto cls = oracle::filter_imec(base, g, targets);
            Pdag ours = interventional_essential_graph(g, targets);
            if (ours != oracle::consensus(cls) || mec_size(ours).value != cls.members.size())
                ++random_mismatches;
        }
    }
    std::cout << "random interventional: " << random_checks << " (graph, targets) checks on "
              << args.samples << " DAGs, mismatches: " << random_mismatches << "\n";
    return (mismatches + random_mismatches) == 0 ? kExitOk : kExitViolation;
}

struct BoundArgs {
    std::string metric = "X";
    int n = 30;
    double rho = 0.5;
    int r = -1;
    double delta = 0.01;
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t samples = 0;
    double range_override = 0.0;
    double x_mean = -1.0;
    double x_variance = -1.0;
    std::string format = "text";
};

void print_report_text(const bounds::BoundReport& report) {
    const bounds::BoundInputs& in = report.in;
    std::cout << "metric " << in.metric << " at n=" << in.n << " rho=" << fmt12(in.rho);
    if (in.r >= 0) std::cout << " r=" << in.r;
    std::cout << "\n  samples            " << in.samples
              << "\n  empirical mean     " << fmt12(in.mean)
              << "\n  sample variance    " << fmt12(in.variance)
              << "\n  range bound B      " << fmt12(in.range)
              << "\n  delta              " << fmt12(in.delta)
              << "\n  bernstein upper    " << fmt12(report.bernstein_upper)
              << "\n  epsilon_n          " << fmt12(report.epsilon_n)
              << "\n  asymptotic mean in [" << fmt12(report.lower) << ", "
              << fmt12(report.upper) << "] with confidence " << fmt12(1.0 - in.delta) << "\n";
}

int run_bounds(const BoundArgs& args) {
    if (args.samples < 2) throw CLI::ValidationError("--samples must be at least 2");
    bounds::BoundInputs in;
    in.metric = args.metric;
    in.n = args.n;
    in.rho = args.rho;
    in.r = args.r;
    in.samples = args.samples;
    in.delta = args.delta;
    in.range =
        args.range_override > 0.0 ? args.range_override : double(args.n) * (args.n - 1) / 2.0;
    if (args.metric == "unique") {
        in.direction = bounds::MetricDirection::kNonIncreasing;
        if (args.range_override <= 0.0) in.range = 1.0;
    }
    if (args.metric == "Y") in.eps_kind = bounds::EpsilonKind::kAlgorithm;

    bounds::BoundReport report;
    if (args.metric == "log2L") {
        // The upper route for the log class size goes through the unoriented
        // count: log2 L_n <= X_n, so the Bernstein side needs X statistics.
        if (args.x_mean < 0.0 || args.x_variance < 0.0)
            throw CLI::ValidationError("--metric log2L needs --x-mean and --x-var");
        bounds::BoundInputs xin = in;
        xin.metric = "X";
        xin.mean = args.x_mean;
        xin.variance = args.x_variance;
        report = bounds::asymptotic_interval(xin);
        report.in.metric = "log2L";
        report.in.mean = args.mean;
        report.in.variance = args.variance;
        report.lower = args.mean;
        std::cout << "log2L upper bound runs through the unoriented-edge count "
                     "(log2 L <= X)\n";
    } else {
        in.mean = args.mean;
        in.variance = args.variance;
        report = bounds::asymptotic_interval(in);
    }

    if (args.format == "csv")
        std::cout << bounds::report_csv_header() << bounds::report_csv_row(report);
    else if (args.format == "json")
        std::cout << bounds::report_json(report) << "\n";
    else
        print_report_text(report);
    return kExitOk;
}

struct ReproArgs {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int n = 30;
    double rho = 0.5;
    double delta = 0.01;
    double range_override = 0.0;
    int workers = 0;
};

int run_repro(const ReproArgs& args) {
    harness::Moments m =
        harness::estimate_x_moments(args.n, args.rho, args.samples, args.seed, args.workers);
    std::cout << "sampled X_" << args.n << " " << args.samples << " times at rho="
              << fmt12(args.rho) << "\n  empirical mean   " << fmt12(m.mean)
              << "\n  sample variance  " << fmt12(m.variance) << "\n";
    auto derive = [&](double range) {
        bounds::BoundInputs in;
        in.metric = "X";
        in.n = args.n;
        in.rho = args.rho;
        in.samples = args.samples;
        in.mean = m.mean;
        in.variance = m.variance;
        in.range = range;
        in.delta = args.delta;
        bounds::BoundReport report = bounds::asymptotic_interval(in);
        std::cout << "with range bound B=" << fmt12(range) << ":\n  bernstein upper  "
                  << fmt12(report.bernstein_upper) << "\n  epsilon_n        "
                  << fmt12(report.epsilon_n) << "\n  asymptotic E[X] and E[log2 L] upper bound "
                  << fmt12(report.upper) << "\n";
        return report.upper;
    };
    derive(double(args.n) * (args.n - 1) / 2.0);
    if (args.range_override > 0.0) derive(args.range_override);
    return kExitOk;
}

struct DesignArgs {
    int n = 10;
    double rho = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    int r = 1;
    std::string format = "text";
};

int run_design(const DesignArgs& args) {
    SampleConfig cfg{args.n, args.rho, args.seed, args.index};
    Dag g = sample_order_dag(cfg);
    GreedyRun run = greedy_select(g, args.r);
    if (args.format == "json") {
        nlohmann::json after = nlohmann::json::array();
        for (const Pdag& p : run.after_each) after.push_back(to_json(p));
        nlohmann::json out = {{"chosen", run.chosen},
                              {"unoriented_after", run.unoriented_after},
                              {"after_each", after}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "chosen targets: " << join(run.chosen) << "\n"
                  << "unoriented after each pick: " << join(run.unoriented_after) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random order-DAG equivalence-class toolkit and Monte-Carlo harness"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "Sample order DAGs and essential graphs");
    sample->add_option("--n", sample_args.n, "vertex count")->capture_default_str();
    sample->add_option("--rho", sample_args.rho, "edge probability")->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "master seed")->capture_default_str();
    sample->add_option("--index", sample_args.index, "first sample index")->capture_default_str();
    sample->add_option("--samples", sample_args.samples, "number of graphs to emit")
        ->capture_default_str();
    sample->add_flag("--permuted", sample_args.permuted, "use the explicit-permutation sampler");
    sample->add_flag("--ess", sample_args.essential, "emit the essential graph instead");
    sample->add_option("--targets", sample_args.targets,
                       "intervention targets; emits the interventional essential graph")
        ->delimiter(',');
    sample->add_option("--trace", sample_args.trace_path,
                       "write orientation traces as JSON lines to this file");
    sample->add_option("--format", sample_args.format, "output format")
        ->check(CLI::IsMember({"json", "edges"}))
        ->capture_default_str();
    sample->add_option("--out", sample_args.out, "output file (default stdout)");
    add_config_option(sample);

    harness::SweepConfig sweep_cfg;
    std::string sweep_out, sweep_format = "csv";
    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo metric sweep over (n, rho, r)");
    sweep->add_option("--n", sweep_cfg.n_values, "vertex counts")->delimiter(',')->required();
    sweep->add_option("--rho", sweep_cfg.rho_values, "edge probabilities")
        ->delimiter(',')
        ->required();
    sweep->add_option("--r", sweep_cfg.r_values, "intervention budgets")->delimiter(',');
    sweep->add_option("--samples", sweep_cfg.samples, "samples per cell")->capture_default_str();
    sweep->add_option("--seed", sweep_cfg.seed, "master seed")->capture_default_str();
    sweep->add_option("--cap", sweep_cfg.cap, "class-size extension cap per component")
        ->capture_default_str();
    sweep->add_option("--exact-limit", sweep_cfg.exact_limit,
                      "max candidate count for the exact intervention search")
        ->capture_default_str();
    sweep->add_option("--budget", sweep_cfg.subset_budget,
                      "max candidate sets per exact X_r search")
        ->capture_default_str();
    sweep->add_option("--workers", sweep_cfg.workers, "worker threads (0 = hardware)")
        ->envname("ORDERMEC_WORKERS")
        ->capture_default_str();
    sweep->add_option("--out", sweep_out, "output path prefix");
    sweep->add_option("--format", sweep_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    add_config_option(sweep);

    harness::CouplingConfig couple_cfg;
    CLI::App* couple = app.add_subcommand(
        "couple", "Coupled-pair monotonicity campaign (expects zero violations)");
    couple->add_option("--n", couple_cfg.n_values, "vertex counts")->delimiter(',');
    couple->add_option("--rho", couple_cfg.rho_values, "edge probabilities")->delimiter(',');
    couple->add_option("--r", couple_cfg.r_values, "intervention budgets")->delimiter(',');
    couple->add_option("--samples", couple_cfg.samples, "pairs per cell")->capture_default_str();
    couple->add_option("--seed", couple_cfg.seed, "master seed")->capture_default_str();
    couple->add_option("--cap", couple_cfg.cap, "class-size extension cap")->capture_default_str();
    couple->add_option("--workers", couple_cfg.workers, "worker threads (0 = hardware)")
        ->envname("ORDERMEC_WORKERS")
        ->capture_default_str();
    add_config_option(couple);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Brute-force oracle equivalence suites");
    verify->add_option("--max-n", verify_args.max_n, "exhaustive check up to this size")
        ->check(CLI::Range(1, 5))
        ->capture_default_str();
    verify->add_option("--samples", verify_args.samples, "random interventional instances")
        ->capture_default_str();
    verify->add_option("--max-n-random", verify_args.max_n_random,
                       "max size of random interventional instances")
        ->check(CLI::Range(2, 7))
        ->capture_default_str();
    verify->add_option("--seed", verify_args.seed, "master seed")->capture_default_str();
    add_config_option(verify);

    BoundArgs bound_args;
    CLI::App* bound = app.add_subcommand("bounds", "Asymptotic sandwich from sample statistics");
    bound->add_option("--metric", bound_args.metric, "metric name")
        ->check(CLI::IsMember({"X", "I", "unique", "log2L", "Y"}))
        ->capture_default_str();
    bound->add_option("--n", bound_args.n, "sampled size")->capture_default_str();
    bound->add_option("--rho", bound_args.rho, "edge probability")->capture_default_str();
    bound->add_option("--r", bound_args.r, "intervention budget (-1 observational)")
        ->capture_default_str();
    bound->add_option("--delta", bound_args.delta, "confidence parameter")->capture_default_str();
    bound->add_option("--mean", bound_args.mean, "empirical mean")->required();
    bound->add_option("--var", bound_args.variance, "sample variance")->required();
    bound->add_option("--samples", bound_args.samples, "sample count")->required();
    bound->add_option("--range-override", bound_args.range_override,
                      "per-sample range bound B (default n(n-1)/2; 1 for unique)");
    bound->add_option("--x-mean", bound_args.x_mean, "unoriented-count mean (log2L upper route)");
    bound->add_option("--x-var", bound_args.x_variance,
                      "unoriented-count variance (log2L upper route)");
    bound->add_option("--format", bound_args.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    add_config_option(bound);

    ReproArgs repro_args;
    CLI::App* repro = app.add_subcommand(
        "repro-thm13", "One-shot high-confidence upper bound on the asymptotic mean of X");
    repro->add_option("--samples", repro_args.samples, "sample count")->capture_default_str();
    repro->add_option("--seed", repro_args.seed, "master seed")->capture_default_str();
    repro->add_option("--n", repro_args.n, "sampled size")->capture_default_str();
    repro->add_option("--rho", repro_args.rho, "edge probability")->capture_default_str();
    repro->add_option("--delta", repro_args.delta, "confidence parameter")->capture_default_str();
    repro->add_option("--range-override", repro_args.range_override,
                      "additionally derive the bound with this range B");
    repro->add_option("--workers", repro_args.workers, "worker threads (0 = hardware)")
        ->envname("ORDERMEC_WORKERS")
        ->capture_default_str();
    add_config_option(repro);

    DesignArgs design_args;
    CLI::App* design = app.add_subcommand("design", "Greedy intervention selection on a sample");
    design->add_option("--n", design_args.n, "vertex count")->capture_default_str();
    design->add_option("--rho", design_args.rho, "edge probability")->capture_default_str();
    design->add_option("--seed", design_args.seed, "master seed")->capture_default_str();
    design->add_option("--index", design_args.index, "sample index")->capture_default_str();
    design->add_option("--r", design_args.r, "number of interventions")->capture_default_str();
    design->add_option("--format", design_args.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_config_option(design);

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<const char*> cargs;
    cargs.reserve(args.size());
    for (const auto& a : args) cargs.push_back(a.c_str());

    try {
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(sample)) return run_sample(sample_args);
        if (app.got_subcommand(sweep)) return run_sweep_cmd(sweep_cfg, sweep_out, sweep_format);
        if (app.got_subcommand(couple)) return run_couple_cmd(couple_cfg);
        if (app.got_subcommand(verify)) return run_verify(verify_args);
        if (app.got_subcommand(bound)) return run_bounds(bound_args);
        if (app.got_subcommand(repro)) return run_repro(repro_args);
        if (app.got_subcommand(design)) return run_design(design_args);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    std::cout << app.help();
    return kExitOk;
}
