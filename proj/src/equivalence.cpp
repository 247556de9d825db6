#include "ordermec/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ordermec {

namespace {

// splitmix64, used only to scramble the worklist order in the confluence
// test entry point.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Worklist-driven fixpoint of the four Meek rules over the undirected edges
// of a Pdag. Rule motifs, for a candidate orientation a -> b:
//   R1: c -> a, c and b nonadjacent
//   R2: a -> c -> b
//   R3: a - c -> b and a - d -> b with c, d nonadjacent
//   R4: a - c, c -> d -> b, c and b nonadjacent
struct ClosureEngine {
    Pdag p;
    ClosureTrace* trace = nullptr;
    std::deque<Edge> work;
    bool conflict = false;

    explicit ClosureEngine(const Pdag& input, ClosureTrace* t) : p(input), trace(t) {}

    std::optional<OrientRule> forces(int a, int b) const {
        // R1
        {
            VertexSet c = p.parents(a);
            c.and_not(p.adjacency(b));
            c.reset(b);
            if (c.any()) return OrientRule::kR1;
        }
        // R2
        if (p.children(a).intersects(p.parents(b))) return OrientRule::kR2;
        // R3
        {
            VertexSet s = p.neighbors(a);
            s &= p.parents(b);
            for (int c = s.next(0); c != -1; c = s.next(c + 1)) {
                VertexSet rest = s;
                rest.and_not(p.adjacency(c));
                rest.reset(c);
                if (rest.any()) return OrientRule::kR3;
            }
        }
        // R4
        {
            VertexSet cs = p.neighbors(a);
            cs.and_not(p.adjacency(b));
            cs.reset(b);
            for (int c = cs.next(0); c != -1; c = cs.next(c + 1))
                if (p.children(c).intersects(p.parents(b))) return OrientRule::kR4;
        }
        return std::nullopt;
    }

    void push_all_undirected() {
        for (const auto& e : p.undirected_edges()) work.push_back(e);
    }

    // New directed edge x -> y can newly satisfy a rule premise for
    // undirected edges touching x or y, plus (for R4's middle chain link
    // x -> y standing as c -> d) edges {a, b} with a - x and y -> b.
    void push_triggers(int x, int y) {
        p.neighbors(x).for_each([&](int v) { work.emplace_back(x, v); });
        p.neighbors(y).for_each([&](int v) { work.emplace_back(y, v); });
        if (p.children(y).any()) {
            p.neighbors(x).for_each([&](int a) {
                VertexSet bs = p.neighbors(a);
                bs &= p.children(y);
                bs.for_each([&](int b) { work.emplace_back(a, b); });
            });
        }
    }

    void record(OrientRule rule, int from, int to) {
        if (trace) trace->steps.push_back({rule, from, to});
    }

    // Orients the undirected edge {from, to} as from -> to if present.
    void seed_orientation(int from, int to, OrientRule rule) {
        if (conflict) return;
        if (p.has_directed(from, to)) return;
        if (p.has_directed(to, from)) {
            conflict = true;
            return;
        }
        p.orient(from, to);
        record(rule, from, to);
        push_triggers(from, to);
    }

    // Processes one candidate; returns true if it oriented an edge.
    bool step(int x, int y) {
        if (!p.has_undirected(x, y)) return false;
        std::optional<OrientRule> fwd = forces(x, y);
        std::optional<OrientRule> bwd = forces(y, x);
        if (fwd && bwd) {
            conflict = true;
            return false;
        }
        if (bwd) {
            std::swap(x, y);
            fwd = bwd;
        }
        if (!fwd) return false;
        p.orient(x, y);
        record(*fwd, x, y);
        push_triggers(x, y);
        return true;
    }

    void drain() {
        while (!work.empty() && !conflict) {
            auto [x, y] = work.front();
            work.pop_front();
            step(x, y);
        }
    }

    void run() {
        push_all_undirected();
        while (!conflict) {
            drain();
            if (conflict) break;
            // Safety sweep: the trigger bookkeeping above is an optimization;
            // the fixpoint condition is that a full pass fires nothing.
            bool fired = false;
            for (const auto& [x, y] : p.undirected_edges()) {
                if (step(x, y)) {
                    fired = true;
                    break;
                }
            }
            if (!fired) break;
        }
    }
};

void seed_v_structures(ClosureEngine& eng, const Dag& g) {
    for (const auto& [i, j, k] : v_structures(g)) {
        eng.seed_orientation(i, k, OrientRule::kVStructure);
        eng.seed_orientation(j, k, OrientRule::kVStructure);
    }
}

void seed_interventions(ClosureEngine& eng, const Dag& g, const InterventionSet& targets) {
    for (int t : targets.targets()) {
        if (t < 0 || t >= g.size())
            throw std::out_of_range("intervention target out of range");
        g.parents(t).for_each([&](int u) { eng.seed_orientation(u, t, OrientRule::kIntervention); });
        g.children(t).for_each([&](int w) { eng.seed_orientation(t, w, OrientRule::kIntervention); });
    }
}

Pdag finish(ClosureEngine& eng, const Pdag& input, ClosureTrace* trace) {
    eng.run();
    if (eng.conflict)
        throw std::logic_error(
            "meek closure conflict: an edge is forced in both directions "
            "(internal inconsistency, input is not a valid orientation state)");
    if (trace) {
        trace->initial = input;
        trace->final_state = eng.p;
    }
    return eng.p;
}

}  // namespace

const char* rule_name(OrientRule rule) {
    switch (rule) {
        case OrientRule::kVStructure: return "V";
        case OrientRule::kIntervention: return "INT";
        case OrientRule::kR1: return "R1";
        case OrientRule::kR2: return "R2";
        case OrientRule::kR3: return "R3";
        case OrientRule::kR4: return "R4";
    }
    return "?";
}

Pdag replay_trace(const ClosureTrace& trace) {
    Pdag p = trace.initial;
    for (const auto& step : trace.steps) p.orient(step.from, step.to);
    return p;
}

std::string trace_to_json_lines(const ClosureTrace& trace) {
    std::ostringstream out;
    for (const auto& step : trace.steps)
        out << "{\"rule\":\"" << rule_name(step.rule) << "\",\"edge\":[" << step.from << ","
            << step.to << "]}\n";
    return out.str();
}

Pdag meek_closure(const Pdag& p, ClosureTrace* trace) {
    if (trace) trace->steps.clear();
    ClosureEngine eng(p, trace);
    return finish(eng, p, trace);
}

Pdag meek_closure_shuffled(const Pdag& p, std::uint64_t shuffle_seed) {
    ClosureEngine eng(p, nullptr);
    eng.push_all_undirected();
    std::uint64_t state = shuffle_seed;
    while (!eng.conflict) {
        // Fisher-Yates over the pending candidates, then drain.
        for (std::size_t i = eng.work.size(); i > 1; --i) {
            state = mix64(state);
            std::swap(eng.work[i - 1], eng.work[state % i]);
        }
        eng.drain();
        if (eng.conflict) break;
        bool fired = false;
        for (const auto& [x, y] : eng.p.undirected_edges()) {
            if (eng.step(x, y)) {
                fired = true;
                break;
            }
        }
        if (!fired) break;
    }
    if (eng.conflict)
        throw std::logic_error("meek closure conflict under shuffled order");
    return eng.p;
}

Pdag essential_graph(const Dag& g, ClosureTrace* trace) {
    if (trace) trace->steps.clear();
    Pdag start = Pdag::undirected_skeleton(g);
    ClosureEngine eng(start, trace);
    seed_v_structures(eng, g);
    return finish(eng, start, trace);
}

Pdag interventional_essential_graph(const Dag& g, const InterventionSet& targets,
                                    ClosureTrace* trace) {
    if (trace) trace->steps.clear();
    Pdag start = Pdag::undirected_skeleton(g);
    ClosureEngine eng(start, trace);
    seed_v_structures(eng, g);
    seed_interventions(eng, g, targets);
    return finish(eng, start, trace);
}

namespace {

// A complete orientation of an initially-undirected component is a valid
// class member iff it is acyclic and collider-free within the component.
bool valid_extension(const Pdag& p) {
    if (has_directed_cycle(p)) return false;
    const int n = p.size();
    for (int k = 0; k < n; ++k) {
        const VertexSet& par = p.parents(k);
        for (int i = par.next(0); i != -1; i = par.next(i + 1)) {
            VertexSet rest = par;
            rest.and_not(p.adjacency(i));
            rest.reset(i);
            if (rest.next(i + 1) != -1) return false;
        }
    }
    return true;
}

struct CountBudget {
    std::uint64_t produced = 0;
    std::uint64_t cap = kDefaultMecCap;
    bool hit = false;
};

// Counts consistent extensions of a (component-local) Pdag by branching on
// one undirected edge at a time and propagating the Meek rules after each
// choice. The rules are sound, so no extension is lost to a branch; invalid
// leaves are rejected by the explicit check above.
void count_extensions(const Pdag& state, CountBudget& budget) {
    if (budget.hit) return;
    Edge branch{-1, -1};
    for (int a = 0; a < state.size() && branch.first == -1; ++a) {
        int b = state.neighbors(a).next(a + 1);
        if (b != -1) branch = {a, b};
    }
    if (branch.first == -1) {
        if (valid_extension(state)) {
            if (++budget.produced > budget.cap) budget.hit = true;
        }
        return;
    }
    for (const auto& [from, to] : {branch, Edge{branch.second, branch.first}}) {
        Pdag next = state;
        next.orient(from, to);
        ClosureEngine eng(next, nullptr);
        eng.run();
        if (!eng.conflict) count_extensions(eng.p, budget);
        if (budget.hit) return;
    }
}

std::vector<std::vector<int>> undirected_components(const Pdag& p) {
    std::vector<std::vector<int>> components;
    std::vector<bool> seen(p.size(), false);
    for (int v = 0; v < p.size(); ++v) {
        if (seen[v] || p.neighbors(v).none()) continue;
        std::vector<int> comp, stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            p.neighbors(u).for_each([&](int w) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            });
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace

MecSize mec_size(const Pdag& p, std::uint64_t cap) {
    if (cap == 0) throw std::invalid_argument("cap must be positive");
    if (has_directed_cycle(p))
        throw std::invalid_argument("mec_size: directed part of the input has a cycle");

    MecSize result;
    for (const auto& comp : undirected_components(p)) {
        // Orientations of distinct undirected components are independent, so
        // the class size is the product of per-component extension counts.
        Pdag sub(static_cast<int>(comp.size()));
        {
            std::vector<int> label(p.size(), -1);
            for (int i = 0; i < static_cast<int>(comp.size()); ++i) label[comp[i]] = i;
            for (int a : comp)
                for (int b = p.neighbors(a).next(a + 1); b != -1; b = p.neighbors(a).next(b + 1))
                    sub.add_undirected(label[a], label[b]);
        }
        CountBudget budget;
        budget.cap = cap;
        count_extensions(sub, budget);
        std::uint64_t cnt = budget.produced;
        if (budget.hit) result.capped = true;
        if (cnt == 0) {
            // Unreachable for valid (I-)essential graphs; the input admitted
            // no consistent extension at all.
            result.value = 0;
            result.log2_value = -std::numeric_limits<double>::infinity();
            return result;
        }
        result.log2_value += std::log2(static_cast<double>(cnt));
        if (result.value > std::numeric_limits<std::uint64_t>::max() / cnt) {
            result.value = std::numeric_limits<std::uint64_t>::max();
            result.capped = true;
        } else {
            result.value *= cnt;
        }
    }
    return result;
}

int unoriented_count(const Pdag& p) { return p.undirected_count(); }

bool is_unique(const Pdag& p) { return p.undirected_count() == 0; }

}  // namespace ordermec
