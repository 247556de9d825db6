#include "ordermec/pdag.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ordermec {

Pdag::Pdag(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("vertex count out of supported range");
    parents_.assign(n, VertexSet(n));
    children_.assign(n, VertexSet(n));
    neighbors_.assign(n, VertexSet(n));
    adj_.assign(n, VertexSet(n));
}

Pdag Pdag::undirected_skeleton(const Dag& g) {
    Pdag p(g.size());
    for (const auto& [a, b] : g.edges()) p.add_undirected(a, b);
    return p;
}

Pdag Pdag::fully_directed(const Dag& g) {
    Pdag p(g.size());
    for (const auto& [a, b] : g.edges()) p.add_directed(a, b);
    return p;
}

Pdag Pdag::of(int n, const std::vector<Edge>& directed, const std::vector<Edge>& undirected) {
    Pdag p(n);
    for (const auto& [a, b] : directed) {
        if (p.adjacent(a, b)) throw std::invalid_argument("duplicate edge pair in Pdag");
        p.add_directed(a, b);
    }
    for (const auto& [a, b] : undirected) {
        if (p.adjacent(a, b)) throw std::invalid_argument("edge pair is both directed and undirected");
        p.add_undirected(a, b);
    }
    return p;
}

void Pdag::check_pair(int a, int b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
}

void Pdag::add_directed(int from, int to) {
    check_pair(from, to);
    if (children_[from].test(to)) return;
    if (adjacent(from, to)) throw std::invalid_argument("pair already present in Pdag");
    children_[from].set(to);
    parents_[to].set(from);
    adj_[from].set(to);
    adj_[to].set(from);
    ++n_directed_;
}

void Pdag::add_undirected(int a, int b) {
    check_pair(a, b);
    if (neighbors_[a].test(b)) return;
    if (adjacent(a, b)) throw std::invalid_argument("pair already present in Pdag");
    neighbors_[a].set(b);
    neighbors_[b].set(a);
    adj_[a].set(b);
    adj_[b].set(a);
    ++n_undirected_;
}

void Pdag::orient(int from, int to) {
    check_pair(from, to);
    if (!neighbors_[from].test(to))
        throw std::invalid_argument("orient() requires an undirected edge");
    neighbors_[from].reset(to);
    neighbors_[to].reset(from);
    children_[from].set(to);
    parents_[to].set(from);
    --n_undirected_;
    ++n_directed_;
}

std::vector<Edge> Pdag::directed_edges() const {
    std::vector<Edge> out;
    out.reserve(n_directed_);
    for (int from = 0; from < n_; ++from)
        children_[from].for_each([&](int to) { out.emplace_back(from, to); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> Pdag::undirected_edges() const {
    std::vector<Edge> out;
    out.reserve(n_undirected_);
    for (int a = 0; a < n_; ++a)
        for (int b = neighbors_[a].next(a + 1); b != -1; b = neighbors_[a].next(b + 1))
            out.emplace_back(a, b);
    return out;
}

std::vector<Edge> Pdag::skeleton_edges() const {
    std::vector<Edge> out;
    out.reserve(n_directed_ + n_undirected_);
    for (int a = 0; a < n_; ++a)
        for (int b = adj_[a].next(a + 1); b != -1; b = adj_[a].next(b + 1))
            out.emplace_back(a, b);
    return out;
}

bool Pdag::operator==(const Pdag& o) const {
    if (n_ != o.n_ || n_directed_ != o.n_directed_ || n_undirected_ != o.n_undirected_)
        return false;
    for (int v = 0; v < n_; ++v)
        if (children_[v] != o.children_[v] || neighbors_[v] != o.neighbors_[v]) return false;
    return true;
}

bool has_directed_cycle(const Pdag& p) {
    const int n = p.size();
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = p.parents(v).count();
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int visited = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++visited;
        p.children(v).for_each([&](int w) {
            if (--indeg[w] == 0) ready.push_back(w);
        });
    }
    return visited != n;
}

Pdag induced_pdag(const Pdag& p, const std::vector<int>& vertices) {
    const int k = static_cast<int>(vertices.size());
    std::vector<int> label(p.size(), -1);
    for (int i = 0; i < k; ++i) {
        int v = vertices[i];
        if (v < 0 || v >= p.size()) throw std::out_of_range("vertex out of range");
        if (i > 0 && vertices[i - 1] >= v)
            throw std::invalid_argument("vertices must be sorted ascending");
        label[v] = i;
    }
    Pdag sub(k);
    for (const auto& [a, b] : p.directed_edges())
        if (label[a] != -1 && label[b] != -1) sub.add_directed(label[a], label[b]);
    for (const auto& [a, b] : p.undirected_edges())
        if (label[a] != -1 && label[b] != -1) sub.add_undirected(label[a], label[b]);
    return sub;
}

}  // namespace ordermec
