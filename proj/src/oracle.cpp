#include "ordermec/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordermec::oracle {

namespace {

struct InterventionView {
    std::vector<Edge> skel;
    std::vector<std::array<int, 3>> colliders;
};

InterventionView intervention_view(const Dag& g, int target) {
    Dag cut = intervened_dag(g, target);
    return {skeleton(cut), v_structures(cut)};
}

}  // namespace

DagClass oracle_mec(const Dag& g) {
    const std::vector<Edge> skel = skeleton(g);
    const int m = static_cast<int>(skel.size());
    if (m > kMaxSkeletonEdges)
        throw std::invalid_argument("oracle_mec: skeleton too large for exhaustive enumeration");
    const auto target_vs = v_structures(g);

    DagClass cls;
    cls.skeleton = skel;
    std::vector<Edge> edges(m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        for (int e = 0; e < m; ++e) {
            auto [a, b] = skel[e];
            edges[e] = ((mask >> e) & 1) ? Edge{b, a} : Edge{a, b};
        }
        std::optional<Dag> cand = Dag::try_from_edges(g.size(), edges);
        if (cand && v_structures(*cand) == target_vs) cls.members.push_back(*std::move(cand));
    }
    return cls;
}

DagClass filter_imec(const DagClass& base, const Dag& g, const InterventionSet& targets) {
    for (int t : targets.targets())
        if (t < 0 || t >= g.size()) throw std::out_of_range("intervention target out of range");

    std::vector<InterventionView> views;
    views.reserve(targets.size());
    for (int t : targets.targets()) views.push_back(intervention_view(g, t));

    DagClass cls;
    cls.skeleton = base.skeleton;
    for (const Dag& member : base.members) {
        bool keep = true;
        for (int k = 0; k < targets.size() && keep; ++k) {
            InterventionView mv = intervention_view(member, targets.targets()[k]);
            keep = mv.skel == views[k].skel && mv.colliders == views[k].colliders;
        }
        if (keep) cls.members.push_back(member);
    }
    return cls;
}

DagClass oracle_imec(const Dag& g, const InterventionSet& targets) {
    return filter_imec(oracle_mec(g), g, targets);
}

Pdag consensus(const DagClass& cls) {
    if (cls.members.empty()) throw std::invalid_argument("consensus of an empty class");
    const int n = cls.members.front().size();
    Pdag out(n);
    for (const auto& [a, b] : cls.skeleton) {
        bool all_ab = true, all_ba = true;
        for (const Dag& member : cls.members) {
            if (!member.has_edge(a, b)) all_ab = false;
            if (!member.has_edge(b, a)) all_ba = false;
        }
        if (all_ab)
            out.add_directed(a, b);
        else if (all_ba)
            out.add_directed(b, a);
        else
            out.add_undirected(a, b);
    }
    return out;
}

Pdag oracle_essential(const Dag& g) { return consensus(oracle_mec(g)); }

Pdag oracle_i_essential(const Dag& g, const InterventionSet& targets) {
    return consensus(oracle_imec(g, targets));
}

void for_each_dag(int n, const std::function<void(const Dag&)>& visit) {
    if (n < 1 || n > 6) throw std::invalid_argument("for_each_dag supports 1 <= n <= 6");
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());
    std::vector<Edge> edges;
    for (std::uint64_t skel = 0; skel < (std::uint64_t(1) << m); ++skel) {
        const int picked = __builtin_popcountll(skel);
        for (std::uint64_t orient = 0; orient < (std::uint64_t(1) << picked); ++orient) {
            edges.clear();
            int bit = 0;
            for (int e = 0; e < m; ++e) {
                if (!((skel >> e) & 1)) continue;
                auto [a, b] = pairs[e];
                edges.push_back(((orient >> bit) & 1) ? Edge{b, a} : Edge{a, b});
                ++bit;
            }
            std::optional<Dag> g = Dag::try_from_edges(n, edges);
            if (g) visit(*g);
        }
    }
}


void for_each_skeleton_mec(int n, const std::function<void(const DagClass&)>& visit) {
    if (n < 1 || n > 6) throw std::invalid_argument("for_each_skeleton_mec supports 1 <= n <= 6");
    std::vector<Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());
    std::vector<Edge> edges;
    for (std::uint64_t skel = 0; skel < (std::uint64_t(1) << m); ++skel) {
        std::vector<Edge> skeleton_pairs;
        for (int e = 0; e < m; ++e)
            if ((skel >> e) & 1) skeleton_pairs.push_back(pairs[e]);
        const int picked = static_cast<int>(skeleton_pairs.size());
        // Partition this skeleton's acyclic orientations by v-structure set.
        std::vector<std::vector<std::array<int, 3>>> keys;
        std::vector<DagClass> classes;
        for (std::uint64_t orient = 0; orient < (std::uint64_t(1) << picked); ++orient) {
            edges.clear();
            for (int e = 0; e < picked; ++e) {
                auto [a, b] = skeleton_pairs[e];
                edges.push_back(((orient >> e) & 1) ? Edge{b, a} : Edge{a, b});
            }
            std::optional<Dag> g = Dag::try_from_edges(n, edges);
            if (!g) continue;
            auto vs = v_structures(*g);
            std::size_t slot = keys.size();
            for (std::size_t k = 0; k < keys.size(); ++k)
                if (keys[k] == vs) {
                    slot = k;
                    break;
                }
            if (slot == keys.size()) {
                keys.push_back(std::move(vs));
                classes.push_back(DagClass{{}, skeleton_pairs});
            }
            classes[slot].members.push_back(*std::move(g));
        }
        for (const DagClass& cls : classes) visit(cls);
    }
}

}  // namespace ordermec::oracle
