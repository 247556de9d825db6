#include "ordermec/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordermec {

namespace {

// Number of k-subsets of a set of size c, saturating at limit+1.
std::uint64_t choose_capped(int c, int k, std::uint64_t limit) {
    if (k < 0 || k > c) return 0;
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * std::uint64_t(c - k + i) / std::uint64_t(i);
        if (result > limit) return limit + 1;
    }
    return result;
}

// Calls fn on each size-k subset of `pool` in lexicographic order until fn
// returns false.
template <class Fn>
void for_each_subset(const std::vector<int>& pool, int k, Fn fn) {
    const int c = static_cast<int>(pool.size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<int> subset(k);
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        if (!fn(subset)) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == c - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Pads `targets` up to size r with the smallest vertices not already used.
InterventionSet pad_targets(std::vector<int> targets, int r, int n) {
    for (int v = 0; v < n && static_cast<int>(targets.size()) < r; ++v)
        if (std::find(targets.begin(), targets.end(), v) == targets.end())
            targets.push_back(v);
    return InterventionSet(std::move(targets));
}

}  // namespace

int metric_X(const Dag& g) { return unoriented_count(essential_graph(g)); }

std::vector<int> intervention_candidates(const Pdag& essential) {
    std::vector<int> out;
    for (int v = 0; v < essential.size(); ++v)
        if (essential.neighbors(v).any()) out.push_back(v);
    return out;
}

namespace {

// Iterative deepening: the first subset size that fully orients is the
// minimum. Intervening on every candidate always succeeds, so this
// terminates.
int exact_interventions(const Dag& g, const std::vector<int>& candidates) {
    for (int r = 1; r <= static_cast<int>(candidates.size()); ++r) {
        bool found = false;
        for_each_subset(candidates, r, [&](const std::vector<int>& subset) {
            Pdag state = interventional_essential_graph(g, InterventionSet(subset));
            if (state.fully_directed()) {
                found = true;
                return false;
            }
            return true;
        });
        if (found) return r;
    }
    return static_cast<int>(candidates.size());  // unreachable
}

}  // namespace

std::pair<int, bool> metric_I(const Dag& g, int exact_limit) {
    Pdag essential = essential_graph(g);
    if (essential.fully_directed()) return {0, true};
    std::vector<int> candidates = intervention_candidates(essential);
    if (static_cast<int>(candidates.size()) > exact_limit)
        return {static_cast<int>(greedy_to_completion(g).chosen.size()), false};
    return {exact_interventions(g, candidates), true};
}

std::optional<XrResult> metric_Xr_exact(const Dag& g, int r, std::uint64_t budget) {
    if (r < 0) throw std::invalid_argument("r must be >= 0");
    Pdag essential = essential_graph(g);
    const int n = g.size();
    if (r == 0 || essential.fully_directed())
        return XrResult{essential.undirected_count(), pad_targets({}, std::min(r, n), n)};

    std::vector<int> candidates = intervention_candidates(essential);
    const int r_eff = std::min(r, static_cast<int>(candidates.size()));
    if (choose_capped(static_cast<int>(candidates.size()), r_eff, budget) > budget)
        return std::nullopt;

    int best = essential.undirected_count() + 1;
    std::vector<int> best_set;
    for_each_subset(candidates, r_eff, [&](const std::vector<int>& subset) {
        Pdag state = interventional_essential_graph(g, InterventionSet(subset));
        if (state.undirected_count() < best) {
            best = state.undirected_count();
            best_set = subset;
        }
        return best > 0;  // a zero cannot be improved
    });
    return XrResult{best, pad_targets(std::move(best_set), std::min(r, n), n)};
}

MecSize metric_Lr(const Dag& g, const InterventionSet& argmin, std::uint64_t cap) {
    return mec_size(interventional_essential_graph(g, argmin), cap);
}

MetricRecord compute_metric_record(const Dag& g, const SampleConfig& cfg,
                                   const MetricKnobs& knobs) {
    MetricRecord rec;
    rec.n = cfg.n;
    rec.rho = cfg.rho;
    rec.seed = cfg.seed;
    rec.index = cfg.index;

    Pdag essential = essential_graph(g);
    rec.unoriented = essential.undirected_count();
    rec.unique = essential.fully_directed() ? 1 : 0;

    MecSize obs_size = mec_size(essential, knobs.cap);
    rec.log2_mec = obs_size.log2_value;
    rec.mec_capped = obs_size.capped;

    GreedyRun greedy = greedy_to_completion(g);
    rec.greedy_interventions = static_cast<int>(greedy.chosen.size());

    if (essential.fully_directed()) {
        rec.interventions = 0;
        rec.interventions_exact = true;
    } else {
        std::vector<int> candidates = intervention_candidates(essential);
        if (static_cast<int>(candidates.size()) > knobs.exact_limit) {
            rec.interventions = rec.greedy_interventions;
            rec.interventions_exact = false;
        } else {
            rec.interventions = exact_interventions(g, candidates);
            rec.interventions_exact = true;
        }
    }

    for (int r : knobs.r_values) {
        MetricRecord::PerR row;
        row.r = r;

        const std::size_t picks = std::min<std::size_t>(r, greedy.after_each.size());
        const Pdag& greedy_state = picks == 0 ? essential : greedy.after_each[picks - 1];
        row.greedy_unoriented = greedy_state.undirected_count();
        row.greedy_unique = greedy_state.fully_directed() ? 1 : 0;
        MecSize greedy_size = mec_size(greedy_state, knobs.cap);
        row.greedy_log2_mec = greedy_size.log2_value;
        row.greedy_mec_capped = greedy_size.capped;

        std::optional<XrResult> exact = metric_Xr_exact(g, r, knobs.subset_budget);
        if (exact) {
            row.exact = true;
            row.min_unoriented = exact->min_unoriented;
            MecSize lr = metric_Lr(g, exact->argmin, knobs.cap);
            row.log2_mec = lr.log2_value;
            row.mec_capped = lr.capped;
        } else {
            row.exact = false;
            row.min_unoriented = row.greedy_unoriented;
            row.log2_mec = row.greedy_log2_mec;
            row.mec_capped = row.greedy_mec_capped;
        }
        row.unique = row.min_unoriented == 0 ? 1 : 0;
        rec.per_r.push_back(row);
    }
    return rec;
}

}  // namespace ordermec
