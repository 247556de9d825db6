#include "ordermec/design.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordermec {

namespace {

// Orients all still-undirected edges at `target` with their true direction
// from g and closes under the Meek rules. Equivalent to recomputing the
// interventional essential graph with `target` added, since closure is
// idempotent over already-derived orientations.
Pdag apply_intervention(const Pdag& current, const Dag& g, int target) {
    Pdag next = current;
    VertexSet nb = current.neighbors(target);
    for (int u = nb.next(0); u != -1; u = nb.next(u + 1)) {
        if (g.has_edge(u, target))
            next.orient(u, target);
        else
            next.orient(target, u);
    }
    return meek_closure(next);
}

std::vector<int> undirected_incident(const Pdag& p) {
    std::vector<int> out;
    for (int v = 0; v < p.size(); ++v)
        if (p.neighbors(v).any()) out.push_back(v);
    return out;
}

}  // namespace

GreedyRun greedy_select(const Dag& g, int r) {
    GreedyRun run;
    Pdag current = essential_graph(g);
    while ((r < 0 || static_cast<int>(run.chosen.size()) < r) && !current.fully_directed()) {
        int best = -1;
        int best_gain = -1;
        Pdag best_state(0);
        // Vertices with no incident undirected edge gain nothing: their edges
        // are already oriented, so seeding them leaves the closure unchanged.
        for (int v : undirected_incident(current)) {
            Pdag state = apply_intervention(current, g, v);
            int gain = state.directed_count() - current.directed_count();
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
                best_state = std::move(state);
            }
        }
        if (best == -1) break;
        run.chosen.push_back(best);
        current = std::move(best_state);
        run.after_each.push_back(current);
        run.unoriented_after.push_back(current.undirected_count());
    }
    return run;
}

GreedyRun greedy_to_completion(const Dag& g) { return greedy_select(g, -1); }

std::vector<int> greedy_algorithm(const Dag& g) { return greedy_to_completion(g).chosen; }

StripResult strip_downstream(const Pdag& p) {
    const int n = p.size();
    std::vector<bool> removed(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (removed[v] || p.neighbors(v).any()) continue;
            bool live_out = false;
            p.children(v).for_each([&](int w) { live_out = live_out || !removed[w]; });
            if (!live_out) {
                removed[v] = true;
                changed = true;
            }
        }
    }
    StripResult result{Pdag(0), {}, {}};
    for (int v = 0; v < n; ++v) (removed[v] ? result.removed : result.kept).push_back(v);
    result.reduced = induced_pdag(p, result.kept);
    return result;
}

bool check_downstream_independence(const InterventionAlgorithm& algorithm, const Dag& g) {
    StripResult strip = strip_downstream(essential_graph(g));
    std::vector<int> full = algorithm(g);
    if (strip.kept.empty()) return full.empty();
    std::vector<int> sub = algorithm(induced_subdag(g, strip.kept));
    for (int& v : sub) v = strip.kept[v];
    return full == sub;
}

AlgorithmMetrics metrics_after_algorithm(const Dag& g, int r, std::uint64_t cap) {
    if (r < 0) throw std::invalid_argument("r must be >= 0");
    GreedyRun run = greedy_to_completion(g);
    const std::size_t picks = std::min<std::size_t>(r, run.after_each.size());
    Pdag state = picks == 0 ? essential_graph(g) : run.after_each[picks - 1];
    MecSize size = mec_size(state, cap);
    AlgorithmMetrics out;
    out.unoriented = state.undirected_count();
    out.unique = out.unoriented == 0 ? 1 : 0;
    out.log2_mec = size.log2_value;
    out.mec_capped = size.capped;
    out.interventions = static_cast<int>(run.chosen.size());
    return out;
}

}  // namespace ordermec
