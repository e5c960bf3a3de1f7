#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spread/hypergraph.hpp"

namespace spread {

/// Budget measured in search-node expansions, not wall time, so exhaustion is
/// replayable. A "none" answer is definitive only when the search completed.
struct SearchBudget {
    std::uint64_t limit = 50'000'000;
    std::uint64_t used = 0;

    bool consume() {
        if (used >= limit) return false;
        ++used;
        return true;
    }
};

enum class SearchStatus { kFound, kNone, kBudgetExhausted };

template <typename T>
struct SearchResult {
    SearchStatus status = SearchStatus::kNone;
    std::optional<T> value;

    bool found() const { return status == SearchStatus::kFound; }
};

/// Maximum-cardinality bipartite matching (Hopcroft-Karp). match_a[a] is the
/// B-partner of a or -1. Deterministic given the input and `order_a` (pass
/// empty for ascending order).
struct BipartiteMatching {
    std::vector<int> match_a;
    std::vector<int> match_b;
    std::size_t size = 0;

    std::vector<std::pair<Vertex, Vertex>> pairs() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex a = 0; a < match_a.size(); ++a)
            if (match_a[a] >= 0) out.push_back({a, static_cast<Vertex>(match_a[a])});
        return out;
    }
};

inline BipartiteMatching max_bipartite_matching(const BipartiteGraph& g,
                                                const std::vector<Vertex>& order_a = {}) {
    const Vertex na = g.size_a(), nb = g.size_b();
    std::vector<Vertex> order = order_a;
    if (order.empty()) {
        order.resize(na);
        for (Vertex a = 0; a < na; ++a) order[a] = a;
    }

    std::vector<int> match_a(na, -1), match_b(nb, -1);
    std::vector<int> dist(na);
    std::vector<Vertex> queue(na);

    auto bfs = [&]() -> bool {
        std::size_t head = 0, tail = 0;
        for (Vertex a : order) {
            if (match_a[a] < 0) {
                dist[a] = 0;
                queue[tail++] = a;
            } else {
                dist[a] = -1;
            }
        }
        bool reachable_free_b = false;
        while (head < tail) {
            Vertex a = queue[head++];
            g.row(a).for_each([&](std::size_t b) {
                int a2 = match_b[b];
                if (a2 < 0) {
                    reachable_free_b = true;
                } else if (dist[a2] < 0) {
                    dist[a2] = dist[a] + 1;
                    queue[tail++] = static_cast<Vertex>(a2);
                }
            });
        }
        return reachable_free_b;
    };

    // Iterative DFS along level graph.
    std::vector<std::uint32_t> iter(na);
    auto dfs = [&](Vertex root) -> bool {
        struct Frame {
            Vertex a;
            std::vector<Vertex> nbrs;
            std::size_t idx;
        };
        std::vector<Frame> stack;
        stack.push_back({root, g.row(root).to_vector(), 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.idx >= f.nbrs.size()) {
                dist[f.a] = -1;  // dead end; exclude from this phase
                stack.pop_back();
                if (!stack.empty()) ++stack.back().idx;
                continue;
            }
            Vertex b = f.nbrs[f.idx];
            int a2 = match_b[b];
            if (a2 < 0) {
                // Augment along the stack.
                for (std::size_t i = stack.size(); i-- > 0;) {
                    Vertex aa = stack[i].a;
                    Vertex bb = stack[i].nbrs[stack[i].idx];
                    match_a[aa] = static_cast<int>(bb);
                    match_b[bb] = static_cast<int>(aa);
                }
                return true;
            }
            if (dist[a2] == dist[f.a] + 1) {
                stack.push_back({static_cast<Vertex>(a2), g.row(static_cast<Vertex>(a2)).to_vector(), 0});
            } else {
                ++f.idx;
            }
        }
        return false;
    };

    BipartiteMatching result;
    while (bfs()) {
        bool progressed = false;
        for (Vertex a : order) {
            if (match_a[a] < 0 && dist[a] == 0) {
                if (dfs(a)) progressed = true;
            }
        }
        if (!progressed) break;
    }
    result.match_a = std::move(match_a);
    result.match_b = std::move(match_b);
    for (int m : result.match_a)
        if (m >= 0) ++result.size;
    return result;
}

/// König-style minimum vertex cover from a maximum matching: Z = vertices
/// alternately reachable from free A vertices; cover = (A \ Z) union (B cap Z).
inline std::pair<std::vector<Vertex>, std::vector<Vertex>> min_vertex_cover(
    const BipartiteGraph& g, const BipartiteMatching& m) {
    const Vertex na = g.size_a(), nb = g.size_b();
    std::vector<char> za(na, 0), zb(nb, 0);
    std::vector<Vertex> queue;
    for (Vertex a = 0; a < na; ++a)
        if (m.match_a[a] < 0) {
            za[a] = 1;
            queue.push_back(a);
        }
    while (!queue.empty()) {
        Vertex a = queue.back();
        queue.pop_back();
        g.row(a).for_each([&](std::size_t b) {
            if (zb[b]) return;
            zb[b] = 1;
            int a2 = m.match_b[b];
            if (a2 >= 0 && !za[a2]) {
                za[a2] = 1;
                queue.push_back(static_cast<Vertex>(a2));
            }
        });
    }
    std::vector<Vertex> cover_a, cover_b;
    for (Vertex a = 0; a < na; ++a)
        if (!za[a]) cover_a.push_back(a);
    for (Vertex b = 0; b < nb; ++b)
        if (zb[b]) cover_b.push_back(b);
    return {cover_a, cover_b};
}

namespace detail {

/// Exact-cover style state for perfect matching search in a k-uniform
/// hypergraph: per-edge blocker counts keep per-vertex available degrees
/// current so starved vertices prune immediately.
class PmSearcher {
public:
    PmSearcher(const Hypergraph& host, SearchBudget& budget)
        : host_(host),
          budget_(budget),
          incidence_(host.incidence()),
          covered_(host.num_vertices(), 0),
          blockers_(host.num_edges(), 0),
          avail_(host.num_vertices(), 0) {
        for (Vertex v = 0; v < host.num_vertices(); ++v)
            avail_[v] = static_cast<std::int64_t>(incidence_[v].size());
    }

    SearchResult<Matching> run() {
        SearchResult<Matching> result;
        if (host_.num_vertices() % host_.uniformity() != 0)
            throw std::invalid_argument("exact_hypergraph_pm: k must divide n");
        chosen_.clear();
        SearchStatus status = search(0);
        result.status = status;
        if (status == SearchStatus::kFound) {
            Matching m;
            for (std::uint32_t ei : chosen_) m.edges.push_back(host_.edge_vec(ei));
            result.value = std::move(m);
        }
        return result;
    }

private:
    SearchStatus search(Vertex from) {
        Vertex pivot = from;
        while (pivot < host_.num_vertices() && covered_[pivot]) ++pivot;
        if (pivot == host_.num_vertices()) return SearchStatus::kFound;
        if (!budget_.consume()) return SearchStatus::kBudgetExhausted;

        bool budget_hit = false;
        for (std::uint32_t ei : incidence_[pivot]) {
            if (blockers_[ei] != 0) continue;
            if (!cover(ei)) {  // starves some vertex; undo and continue
                uncover(ei);
                continue;
            }
            chosen_.push_back(ei);
            SearchStatus sub = search(pivot + 1);
            if (sub == SearchStatus::kFound) return sub;
            chosen_.pop_back();
            uncover(ei);
            if (sub == SearchStatus::kBudgetExhausted) {
                budget_hit = true;
                break;
            }
        }
        return budget_hit ? SearchStatus::kBudgetExhausted : SearchStatus::kNone;
    }

    // Covers the vertices of edge ei; returns false if an uncovered vertex
    // loses its last available edge. All k vertices are marked covered before
    // blocker propagation so the edge's own members never flag starvation.
    bool cover(std::uint32_t ei) {
        for (Vertex v : host_.edge(ei)) covered_[v] = 1;
        bool ok = true;
        for (Vertex v : host_.edge(ei)) {
            for (std::uint32_t f : incidence_[v]) {
                if (blockers_[f]++ == 0) {
                    for (Vertex u : host_.edge(f)) {
                        if (--avail_[u] == 0 && !covered_[u]) ok = false;
                    }
                }
            }
        }
        return ok;
    }

    void uncover(std::uint32_t ei) {
        for (Vertex v : host_.edge(ei)) {
            for (std::uint32_t f : incidence_[v]) {
                if (--blockers_[f] == 0) {
                    for (Vertex u : host_.edge(f)) ++avail_[u];
                }
            }
        }
        for (Vertex v : host_.edge(ei)) covered_[v] = 0;
    }

    const Hypergraph& host_;
    SearchBudget& budget_;
    std::vector<std::vector<std::uint32_t>> incidence_;
    std::vector<char> covered_;
    std::vector<std::uint32_t> blockers_;
    std::vector<std::int64_t> avail_;
    std::vector<std::uint32_t> chosen_;
};

}  // namespace detail

/// Perfect matching by backtracking, pivoting on the lowest uncovered vertex.
inline SearchResult<Matching> exact_hypergraph_pm(const Hypergraph& host, SearchBudget budget = {}) {
    detail::PmSearcher searcher(host, budget);
    return searcher.run();
}

namespace detail {

class FactorSearcher {
public:
    FactorSearcher(const Hypergraph& graph, int r, SearchBudget& budget, bool count_all)
        : graph_(graph), r_(r), budget_(budget), count_all_(count_all), adj_(graph.adjacency()),
          covered_(graph.num_vertices()) {}

    SearchStatus search() {
        Vertex pivot = 0;
        while (pivot < graph_.num_vertices() && covered_.test(pivot)) ++pivot;
        if (pivot == graph_.num_vertices()) {
            if (count_all_) {
                ++count_;
                return SearchStatus::kNone;  // keep enumerating
            }
            return SearchStatus::kFound;
        }
        if (!budget_.consume()) return SearchStatus::kBudgetExhausted;

        std::vector<Vertex> saved = std::move(clique_);
        covered_.set(pivot);
        clique_.assign(1, pivot);
        DynBitset candidates = adj_[pivot];
        candidates.words() = and_not_covered(adj_[pivot]);
        SearchStatus status = extend(candidates);
        covered_.reset(pivot);
        clique_ = std::move(saved);
        return status;
    }

    std::uint64_t count() const { return count_; }
    const std::vector<std::vector<Vertex>>& chosen() const { return chosen_; }

private:
    std::vector<std::uint64_t> and_not_covered(const DynBitset& bits) const {
        std::vector<std::uint64_t> words = bits.words();
        for (std::size_t i = 0; i < words.size(); ++i) words[i] &= ~covered_.words()[i];
        return words;
    }

    // Extends clique_ (which starts at the pivot) to an r-clique from
    // `candidates`, then recurses on the remaining vertices.
    SearchStatus extend(const DynBitset& candidates) {
        if (static_cast<int>(clique_.size()) == r_) {
            chosen_.push_back(clique_);
            for (Vertex v : clique_)
                if (v != clique_[0]) covered_.set(v);
            SearchStatus sub = search();
            for (Vertex v : clique_)
                if (v != clique_[0]) covered_.reset(v);
            if (sub == SearchStatus::kFound || sub == SearchStatus::kBudgetExhausted) return sub;
            chosen_.pop_back();
            return SearchStatus::kNone;
        }
        if (!budget_.consume()) return SearchStatus::kBudgetExhausted;

        SearchStatus out = SearchStatus::kNone;
        Vertex last = clique_.back();
        bool budget_hit = false;
        candidates.for_each([&](std::size_t v) {
            if (budget_hit || out == SearchStatus::kFound) return;
            if (v <= last && clique_.size() > 1) return;  // enforce ascending growth
            DynBitset next = candidates;
            next &= adj_[v];
            clique_.push_back(static_cast<Vertex>(v));
            SearchStatus sub = extend(next);
            clique_.pop_back();
            if (sub == SearchStatus::kFound) out = sub;
            if (sub == SearchStatus::kBudgetExhausted) budget_hit = true;
        });
        return budget_hit ? SearchStatus::kBudgetExhausted : out;
    }

    const Hypergraph& graph_;
    int r_;
    SearchBudget& budget_;
    bool count_all_;
    std::vector<DynBitset> adj_;
    DynBitset covered_;
    std::vector<Vertex> clique_;
    std::vector<std::vector<Vertex>> chosen_;
    std::uint64_t count_ = 0;
};

}  // namespace detail

/// Perfect K_r-factor by backtracking over r-cliques through the lowest
/// uncovered vertex.
inline SearchResult<Factor> exact_kr_factor(const Hypergraph& graph, int r,
                                            SearchBudget budget = {}) {
    if (graph.uniformity() != 2) throw std::invalid_argument("exact_kr_factor: host must be a graph");
    if (graph.num_vertices() % r != 0)
        throw std::invalid_argument("exact_kr_factor: r must divide n");
    detail::FactorSearcher searcher(graph, r, budget, false);
    SearchResult<Factor> result;
    result.status = searcher.search();
    if (result.status == SearchStatus::kFound) {
        Factor f;
        f.cliques = searcher.chosen();
        result.value = std::move(f);
    }
    return result;
}

/// Exact number of perfect K_r-factors (exhaustive; budget-capped).
inline SearchResult<std::uint64_t> count_kr_factors(const Hypergraph& graph, int r,
                                                    SearchBudget budget = {}) {
    if (graph.uniformity() != 2)
        throw std::invalid_argument("count_kr_factors: host must be a graph");
    if (graph.num_vertices() % r != 0)
        throw std::invalid_argument("count_kr_factors: r must divide n");
    detail::FactorSearcher searcher(graph, r, budget, true);
    SearchStatus status = searcher.search();
    SearchResult<std::uint64_t> result;
    if (status == SearchStatus::kBudgetExhausted) {
        result.status = status;
    } else {
        result.status = SearchStatus::kFound;
        result.value = searcher.count();
    }
    return result;
}

}  // namespace spread
