#include "ordermec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ordermec::harness {

namespace {

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Runs fn(index) for index in [0, count) on a small thread pool. Work is
// handed out in chunks through an atomic cursor; results must be keyed by
// index so that scheduling cannot influence them.
void parallel_indices(std::uint64_t count, int workers, const std::function<void(std::uint64_t)>& fn) {
    if (count == 0) return;
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, count / (16 * workers));
    auto body = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::uint64_t begin = cursor.fetch_add(chunk);
            if (begin >= count) break;
            const std::uint64_t end = std::min(count, begin + chunk);
            try {
                for (std::uint64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;
    std::uint64_t exact = 0;
    std::uint64_t greedy = 0;
    std::uint64_t capped = 0;

    void add(double value, bool is_exact) {
        sum += value;
        sumsq += value * value;
        ++count;
        (is_exact ? exact : greedy) += 1;
    }

    MetricStat finish(std::string metric, int r) const {
        MetricStat stat;
        stat.metric = std::move(metric);
        stat.r = r;
        stat.count = count;
        stat.exact = exact;
        stat.greedy = greedy;
        stat.capped = capped;
        if (count > 0) stat.mean = sum / static_cast<double>(count);
        if (count > 1) {
            const double c = static_cast<double>(count);
            stat.variance = std::max(0.0, (sumsq - c * stat.mean * stat.mean) / (c - 1.0));
            stat.ci95_half = 2.0 * std::sqrt(stat.variance / c);
        }
        return stat;
    }
};

CellSummary summarize_cell(int n, double rho, const std::vector<MetricRecord>& records,
                           std::size_t begin, std::size_t end, const std::vector<int>& r_values) {
    Accumulator x, uniq, inter, inter_greedy, log2l;
    std::vector<Accumulator> xr(r_values.size()), uniqr(r_values.size()), log2lr(r_values.size());
    std::vector<Accumulator> y(r_values.size()), uniqy(r_values.size()), log2ly(r_values.size());

    for (std::size_t i = begin; i < end; ++i) {
        const MetricRecord& rec = records[i];
        x.add(rec.unoriented, true);
        uniq.add(rec.unique, true);
        inter.add(rec.interventions, rec.interventions_exact);
        inter_greedy.add(rec.greedy_interventions, false);
        if (rec.mec_capped)
            ++log2l.capped;  // excluded from class-size stats, never dropped silently
        else
            log2l.add(rec.log2_mec, true);
        for (std::size_t k = 0; k < r_values.size(); ++k) {
            const MetricRecord::PerR& row = rec.per_r[k];
            xr[k].add(row.min_unoriented, row.exact);
            uniqr[k].add(row.unique, row.exact);
            if (row.mec_capped)
                ++log2lr[k].capped;
            else
                log2lr[k].add(row.log2_mec, row.exact);
            y[k].add(row.greedy_unoriented, false);
            uniqy[k].add(row.greedy_unique, false);
            if (row.greedy_mec_capped)
                ++log2ly[k].capped;
            else
                log2ly[k].add(row.greedy_log2_mec, false);
        }
    }

    CellSummary cell;
    cell.n = n;
    cell.rho = rho;
    cell.stats.push_back(x.finish("X", -1));
    cell.stats.push_back(uniq.finish("unique", -1));
    cell.stats.push_back(inter.finish("I", -1));
    cell.stats.push_back(inter_greedy.finish("I_greedy", -1));
    cell.stats.push_back(log2l.finish("log2L", -1));
    for (std::size_t k = 0; k < r_values.size(); ++k) {
        const int r = r_values[k];
        cell.stats.push_back(xr[k].finish("Xr", r));
        cell.stats.push_back(uniqr[k].finish("unique_r", r));
        cell.stats.push_back(log2lr[k].finish("log2L_r", r));
        cell.stats.push_back(y[k].finish("Y", r));
        cell.stats.push_back(uniqy[k].finish("unique_Y", r));
        cell.stats.push_back(log2ly[k].finish("log2L_Y", r));
    }
    return cell;
}

}  // namespace

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void SweepConfig::validate() const {
    if (n_values.empty() || rho_values.empty())
        throw std::invalid_argument("sweep needs at least one n and one rho");
    for (int n : n_values)
        if (n < 1 || n > kMaxVertices) throw std::invalid_argument("n out of range");
    for (double rho : rho_values)
        if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must be in [0, 1]");
    for (int r : r_values)
        if (r < 0) throw std::invalid_argument("r must be >= 0");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (cap == 0) throw std::invalid_argument("cap must be positive");
}

MetricKnobs SweepConfig::knobs() const {
    MetricKnobs k;
    k.r_values = r_values;
    k.cap = cap;
    k.exact_limit = exact_limit;
    k.subset_budget = subset_budget;
    return k;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const int workers = resolve_workers(cfg.workers);
    const MetricKnobs knobs = cfg.knobs();

    SweepResult result;
    result.cfg = cfg;
    result.records.resize(static_cast<std::size_t>(cfg.n_values.size()) * cfg.rho_values.size() *
                          cfg.samples);

    std::size_t cell_offset = 0;
    for (int n : cfg.n_values) {
        for (double rho : cfg.rho_values) {
            parallel_indices(cfg.samples, workers, [&, n, rho, cell_offset](std::uint64_t i) {
                SampleConfig sample_cfg{n, rho, cfg.seed, i};
                Dag g = sample_order_dag(sample_cfg);
                result.records[cell_offset + i] = compute_metric_record(g, sample_cfg, knobs);
            });
            result.cells.push_back(summarize_cell(n, rho, result.records, cell_offset,
                                                  cell_offset + cfg.samples, cfg.r_values));
            cell_offset += cfg.samples;
        }
    }
    return result;
}

const MetricStat& CellSummary::stat(const std::string& metric, int r) const {
    for (const MetricStat& s : stats)
        if (s.metric == metric && s.r == r) return s;
    throw std::out_of_range("no stat named " + metric + " at r=" + std::to_string(r));
}

std::string records_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "n,rho,seed,index,X,unique,I,I_exact,I_greedy,log2L,L_capped";
    for (int r : result.cfg.r_values)
        out << ",Xr_" << r << ",Xr_exact_" << r << ",unique_r" << r << ",log2L_r" << r
            << ",L_capped_r" << r << ",Y_" << r << ",unique_Y" << r << ",log2L_Y" << r
            << ",L_capped_Y" << r;
    out << "\n";
    for (const MetricRecord& rec : result.records) {
        out << rec.n << ',' << fmt12(rec.rho) << ',' << rec.seed << ',' << rec.index << ','
            << rec.unoriented << ',' << rec.unique << ',' << rec.interventions << ','
            << (rec.interventions_exact ? 1 : 0) << ',' << rec.greedy_interventions << ','
            << fmt12(rec.log2_mec) << ',' << (rec.mec_capped ? 1 : 0);
        for (const auto& row : rec.per_r)
            out << ',' << row.min_unoriented << ',' << (row.exact ? 1 : 0) << ',' << row.unique
                << ',' << fmt12(row.log2_mec) << ',' << (row.mec_capped ? 1 : 0) << ','
                << row.greedy_unoriented << ',' << row.greedy_unique << ','
                << fmt12(row.greedy_log2_mec) << ',' << (row.greedy_mec_capped ? 1 : 0);
        out << "\n";
    }
    return out.str();
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
    std::ostringstream out;
    out << "n,rho,metric,r,mean,variance,ci95_half,count,exact,greedy,capped\n";
    for (const CellSummary& cell : cells)
        for (const MetricStat& s : cell.stats)
            out << cell.n << ',' << fmt12(cell.rho) << ',' << s.metric << ',' << s.r << ','
                << fmt12(s.mean) << ',' << fmt12(s.variance) << ',' << fmt12(s.ci95_half) << ','
                << s.count << ',' << s.exact << ',' << s.greedy << ',' << s.capped << "\n";
    return out.str();
}

nlohmann::json records_json(const SweepResult& result) {
    nlohmann::json out = nlohmann::json::array();
    for (const MetricRecord& rec : result.records) {
        nlohmann::json per_r = nlohmann::json::array();
        for (const auto& row : rec.per_r)
            per_r.push_back({{"r", row.r},
                             {"Xr", row.min_unoriented},
                             {"Xr_exact", row.exact},
                             {"unique_r", row.unique},
                             {"log2L_r", row.log2_mec},
                             {"L_capped_r", row.mec_capped},
                             {"Y", row.greedy_unoriented},
                             {"unique_Y", row.greedy_unique},
                             {"log2L_Y", row.greedy_log2_mec},
                             {"L_capped_Y", row.greedy_mec_capped}});
        out.push_back({{"n", rec.n},
                       {"rho", rec.rho},
                       {"seed", rec.seed},
                       {"index", rec.index},
                       {"X", rec.unoriented},
                       {"unique", rec.unique},
                       {"I", rec.interventions},
                       {"I_exact", rec.interventions_exact},
                       {"I_greedy", rec.greedy_interventions},
                       {"log2L", rec.log2_mec},
                       {"L_capped", rec.mec_capped},
                       {"per_r", per_r}});
    }
    return out;
}

nlohmann::json summary_json(const std::vector<CellSummary>& cells) {
    nlohmann::json out = nlohmann::json::array();
    for (const CellSummary& cell : cells)
        for (const MetricStat& s : cell.stats)
            out.push_back({{"n", cell.n},
                           {"rho", cell.rho},
                           {"metric", s.metric},
                           {"r", s.r},
                           {"mean", s.mean},
                           {"variance", s.variance},
                           {"ci95_half", s.ci95_half},
                           {"count", s.count},
                           {"exact", s.exact},
                           {"greedy", s.greedy},
                           {"capped", s.capped}});
    return out;
}

std::vector<CellSummary> parse_summary_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        line != "n,rho,metric,r,mean,variance,ci95_half,count,exact,greedy,capped")
        throw std::invalid_argument("bad summary CSV header");
    std::vector<CellSummary> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 11) throw std::invalid_argument("bad summary CSV row: " + line);
        const int n = std::stoi(fields[0]);
        const double rho = std::stod(fields[1]);
        if (cells.empty() || cells.back().n != n || cells.back().rho != rho) {
            cells.push_back(CellSummary{n, rho, {}});
        }
        MetricStat s;
        s.metric = fields[2];
        s.r = std::stoi(fields[3]);
        s.mean = std::stod(fields[4]);
        s.variance = std::stod(fields[5]);
        s.ci95_half = std::stod(fields[6]);
        s.count = std::stoull(fields[7]);
        s.exact = std::stoull(fields[8]);
        s.greedy = std::stoull(fields[9]);
        s.capped = std::stoull(fields[10]);
        cells.back().stats.push_back(std::move(s));
    }
    return cells;
}

void write_outputs(const SweepResult& result, const std::string& prefix, OutputFormat format) {
    const bool csv = format == OutputFormat::kCsv;
    const std::string rec_path = prefix + (csv ? "_records.csv" : "_records.json");
    const std::string sum_path = prefix + (csv ? "_summary.csv" : "_summary.json");
    std::ofstream rec(rec_path);
    std::ofstream sum(sum_path);
    if (!rec || !sum) throw std::runtime_error("cannot open output files at prefix " + prefix);
    if (csv) {
        rec << records_csv(result);
        sum << summary_csv(result.cells);
    } else {
        rec << records_json(result).dump(2) << "\n";
        sum << summary_json(result.cells).dump(2) << "\n";
    }
    if (!rec.good() || !sum.good()) throw std::runtime_error("write failed at prefix " + prefix);
}

namespace {

struct PairMetrics {
    int x;
    std::uint64_t l;
    bool l_capped;
    int i;
    std::vector<int> xr;
    std::vector<int> uniq_r;
    std::vector<std::uint64_t> lr;
    std::vector<bool> lr_capped;
    Pdag essential{0};
};

PairMetrics exact_pair_metrics(const Dag& g, const std::vector<int>& r_values,
                               std::uint64_t cap) {
    PairMetrics m;
    m.essential = essential_graph(g);
    m.x = m.essential.undirected_count();
    MecSize size = mec_size(m.essential, cap);
    m.l = size.value;
    m.l_capped = size.capped;
    m.i = metric_I(g, kMaxVertices).first;  // always the exact search
    for (int r : r_values) {
        std::optional<XrResult> xr =
            metric_Xr_exact(g, r, std::numeric_limits<std::uint64_t>::max());
        if (!xr) throw std::logic_error("exact X_r search unexpectedly over budget");
        m.xr.push_back(xr->min_unoriented);
        m.uniq_r.push_back(xr->min_unoriented == 0 ? 1 : 0);
        MecSize lr = metric_Lr(g, xr->argmin, cap);
        m.lr.push_back(lr.value);
        m.lr_capped.push_back(lr.capped);
    }
    return m;
}

}  // namespace

CouplingReport run_coupling_campaign(const CouplingConfig& cfg) {
    const int workers = resolve_workers(cfg.workers);
    CouplingReport report;
    for (int n : cfg.n_values) {
        for (double rho : cfg.rho_values) {
            std::vector<std::vector<CouplingViolation>> found(cfg.samples);
            parallel_indices(cfg.samples, workers, [&, n, rho](std::uint64_t i) {
                SampleConfig sample_cfg{n, rho, cfg.seed, i};
                CoupledPair pair = sample_coupled(sample_cfg);
                PairMetrics small = exact_pair_metrics(pair.g_small, cfg.r_values, cfg.cap);
                PairMetrics big = exact_pair_metrics(pair.g_big, cfg.r_values, cfg.cap);

                auto flag = [&](const std::string& relation, int r, const std::string& detail) {
                    found[i].push_back({relation, n, rho, r, i, detail});
                };
                auto require = [&](bool ok, const std::string& relation, int r,
                                   const std::string& detail) {
                    if (!ok) flag(relation, r, detail);
                };

                require(big.x >= small.x, "X_monotone", -1,
                        std::to_string(small.x) + " -> " + std::to_string(big.x));
                require(!small.l_capped && !big.l_capped, "L_exactness", -1, "cap hit");
                require(big.l >= small.l, "L_monotone", -1,
                        std::to_string(small.l) + " -> " + std::to_string(big.l));
                require(big.i >= small.i, "I_monotone", -1,
                        std::to_string(small.i) + " -> " + std::to_string(big.i));
                for (std::size_t k = 0; k < cfg.r_values.size(); ++k) {
                    const int r = cfg.r_values[k];
                    require(big.xr[k] >= small.xr[k], "Xr_monotone", r,
                            std::to_string(small.xr[k]) + " -> " + std::to_string(big.xr[k]));
                    require(big.uniq_r[k] <= small.uniq_r[k], "unique_r_antitone", r,
                            std::to_string(small.uniq_r[k]) + " -> " +
                                std::to_string(big.uniq_r[k]));
                    require(big.lr[k] >= small.lr[k], "Lr_monotone", r,
                            std::to_string(small.lr[k]) + " -> " + std::to_string(big.lr[k]));
                }
                // Edge containment: undirected edges of the smaller essential
                // graph stay undirected in the bigger one.
                for (const auto& [a, b] : small.essential.undirected_edges())
                    require(big.essential.has_undirected(a, b), "undirected_containment", -1,
                            "edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
            });
            report.pairs_checked += cfg.samples;
            report.relations_checked +=
                static_cast<std::uint64_t>(cfg.samples) * (4 + 3 * cfg.r_values.size() + 1);
            for (auto& v : found)
                report.violations.insert(report.violations.end(), v.begin(), v.end());
        }
    }
    return report;
}

Moments estimate_x_moments(int n, double rho, std::uint64_t samples, std::uint64_t seed,
                           int workers) {
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    const int nworkers = resolve_workers(workers);
    // Integer accumulation keeps the fold exact, so the result cannot depend
    // on how indices were split across workers.
    std::atomic<std::uint64_t> sum{0}, sumsq{0};
    parallel_indices(samples, nworkers, [&](std::uint64_t i) {
        SampleConfig cfg{n, rho, seed, i};
        const std::uint64_t x = metric_X(sample_order_dag(cfg));
        sum.fetch_add(x, std::memory_order_relaxed);
        sumsq.fetch_add(x * x, std::memory_order_relaxed);
    });
    Moments m;
    m.samples = samples;
    const long double s = static_cast<long double>(samples);
    const long double mean = static_cast<long double>(sum.load()) / s;
    m.mean = static_cast<double>(mean);
    m.variance = static_cast<double>((static_cast<long double>(sumsq.load()) - s * mean * mean) /
                                     (s - 1.0L));
    return m;
}

DiffEstimate estimate_x_successive_diff(int n, double rho, std::uint64_t samples,
                                        std::uint64_t seed, int workers) {
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    const int nworkers = resolve_workers(workers);
    std::atomic<std::int64_t> sum{0};
    std::atomic<std::uint64_t> sumsq{0};
    parallel_indices(samples, nworkers, [&](std::uint64_t i) {
        SampleConfig cfg{n, rho, seed, i};
        CoupledPair pair = sample_coupled(cfg);
        const std::int64_t diff = metric_X(pair.g_big) - metric_X(pair.g_small);
        sum.fetch_add(diff, std::memory_order_relaxed);
        sumsq.fetch_add(static_cast<std::uint64_t>(diff * diff), std::memory_order_relaxed);
    });
    DiffEstimate est;
    est.samples = samples;
    const long double s = static_cast<long double>(samples);
    const long double mean = static_cast<long double>(sum.load()) / s;
    est.mean_diff = static_cast<double>(mean);
    const long double var =
        (static_cast<long double>(sumsq.load()) - s * mean * mean) / (s - 1.0L);
    est.std_error = static_cast<double>(std::sqrt(std::max(0.0L, var) / s));
    return est;
}

}  // namespace ordermec::harness
