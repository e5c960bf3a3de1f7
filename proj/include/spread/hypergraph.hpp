#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "spread/bitset.hpp"
#include "spread/rng.hpp"

namespace spread {

using Vertex = std::uint32_t;

/// Exact rational with 64-bit parts, for densities and certificates.
struct Rational64 {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational64() = default;
    Rational64(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational64: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational64& a, const Rational64& b) {
        return a.num == b.num && a.den == b.den;
    }
};

inline std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // Exact as long as the result fits; instances here stay far below 2^63.
        result = result / i * (n - k + i) + result % i * (n - k + i) / i;
    }
    return result;
}

/// k-uniform hypergraph on dense vertex ids [0, n). Edges are sorted k-sets,
/// stored in lexicographic order without duplicates. Immutable after
/// construction; graphs are the k = 2 case.
class Hypergraph {
public:
    Hypergraph() : n_(0), k_(2) {}

    Hypergraph(Vertex n, int k, std::vector<std::vector<Vertex>> edges) : n_(n), k_(k) {
        if (k < 2) throw std::invalid_argument("Hypergraph: uniformity must be >= 2");
        for (auto& e : edges) {
            if (static_cast<int>(e.size()) != k)
                throw std::invalid_argument("Hypergraph: edge has wrong arity");
            std::sort(e.begin(), e.end());
            if (std::adjacent_find(e.begin(), e.end()) != e.end())
                throw std::invalid_argument("Hypergraph: repeated vertex in edge");
            if (e.back() >= n) throw std::invalid_argument("Hypergraph: vertex id out of range");
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        flat_.reserve(edges.size() * static_cast<std::size_t>(k));
        for (const auto& e : edges) flat_.insert(flat_.end(), e.begin(), e.end());
    }

    Vertex num_vertices() const { return n_; }
    int uniformity() const { return k_; }
    std::size_t num_edges() const { return flat_.size() / static_cast<std::size_t>(k_); }

    std::span<const Vertex> edge(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }

    std::vector<Vertex> edge_vec(std::size_t i) const {
        auto e = edge(i);
        return {e.begin(), e.end()};
    }

    bool has_edge(std::span<const Vertex> sorted_edge) const {
        std::size_t lo = 0, hi = num_edges();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            auto e = edge(mid);
            if (std::lexicographical_compare(e.begin(), e.end(), sorted_edge.begin(),
                                             sorted_edge.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == num_edges()) return false;
        auto e = edge(lo);
        return std::equal(e.begin(), e.end(), sorted_edge.begin(), sorted_edge.end());
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(n_, 0);
        for (std::size_t i = 0; i < num_edges(); ++i)
            for (Vertex v : edge(i)) ++deg[v];
        return deg;
    }

    /// Edge indices through each vertex.
    std::vector<std::vector<std::uint32_t>> incidence() const {
        std::vector<std::vector<std::uint32_t>> inc(n_);
        for (std::size_t i = 0; i < num_edges(); ++i)
            for (Vertex v : edge(i)) inc[v].push_back(static_cast<std::uint32_t>(i));
        return inc;
    }

    /// Adjacency bitsets; only meaningful for k = 2.
    std::vector<DynBitset> adjacency() const {
        if (k_ != 2) throw std::logic_error("adjacency: requires k = 2");
        std::vector<DynBitset> adj(n_, DynBitset(n_));
        for (std::size_t i = 0; i < num_edges(); ++i) {
            auto e = edge(i);
            adj[e[0]].set(e[1]);
            adj[e[1]].set(e[0]);
        }
        return adj;
    }

    /// Induced sub-hypergraph on `keep`, preserving original vertex ids
    /// (same n, edges restricted to keep).
    Hypergraph restrict_to(const DynBitset& keep) const {
        std::vector<std::vector<Vertex>> kept;
        for (std::size_t i = 0; i < num_edges(); ++i) {
            auto e = edge(i);
            bool inside = true;
            for (Vertex v : e)
                if (!keep.test(v)) {
                    inside = false;
                    break;
                }
            if (inside) kept.emplace_back(e.begin(), e.end());
        }
        return Hypergraph(n_, k_, std::move(kept));
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.flat_ == b.flat_;
    }

private:
    Vertex n_;
    int k_;
    std::vector<Vertex> flat_;
};

/// A set of pairwise vertex-disjoint hyperedges.
struct Matching {
    std::vector<std::vector<Vertex>> edges;

    std::size_t covered_vertices() const {
        std::size_t total = 0;
        for (const auto& e : edges) total += e.size();
        return total;
    }

    bool is_valid_in(const Hypergraph& host) const {
        DynBitset used(host.num_vertices());
        for (const auto& e : edges) {
            std::vector<Vertex> sorted(e.begin(), e.end());
            std::sort(sorted.begin(), sorted.end());
            if (!host.has_edge(sorted)) return false;
            for (Vertex v : sorted) {
                if (used.test(v)) return false;
                used.set(v);
            }
        }
        return true;
    }

    bool is_perfect_in(const Hypergraph& host) const {
        return is_valid_in(host) && covered_vertices() == host.num_vertices();
    }
};

/// A set of pairwise vertex-disjoint r-cliques of a graph.
struct Factor {
    std::vector<std::vector<Vertex>> cliques;

    bool is_valid_in(const Hypergraph& graph) const {
        if (graph.uniformity() != 2) return false;
        DynBitset used(graph.num_vertices());
        for (const auto& q : cliques) {
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = i + 1; j < q.size(); ++j) {
                    std::vector<Vertex> e = {std::min(q[i], q[j]), std::max(q[i], q[j])};
                    if (!graph.has_edge(e)) return false;
                }
            for (Vertex v : q) {
                if (used.test(v)) return false;
                used.set(v);
            }
        }
        return true;
    }

    bool is_perfect_in(const Hypergraph& graph) const {
        std::size_t covered = 0;
        for (const auto& q : cliques) covered += q.size();
        return is_valid_in(graph) && covered == graph.num_vertices();
    }
};

/// Bipartite graph with parts A and B; adjacency stored as bitset rows over B.
class BipartiteGraph {
public:
    BipartiteGraph() : na_(0), nb_(0) {}
    BipartiteGraph(Vertex na, Vertex nb) : na_(na), nb_(nb), rows_(na, DynBitset(nb)) {}

    Vertex size_a() const { return na_; }
    Vertex size_b() const { return nb_; }

    void add_edge(Vertex a, Vertex b) {
        if (a >= na_ || b >= nb_) throw std::invalid_argument("BipartiteGraph: vertex out of range");
        rows_[a].set(b);
    }

    bool has_edge(Vertex a, Vertex b) const { return rows_[a].test(b); }
    const DynBitset& row(Vertex a) const { return rows_[a]; }

    std::size_t degree_a(Vertex a) const { return rows_[a].count(); }
    std::size_t degree_b(Vertex b) const {
        std::size_t total = 0;
        for (Vertex a = 0; a < na_; ++a)
            if (rows_[a].test(b)) ++total;
        return total;
    }

    std::size_t num_edges() const {
        std::size_t total = 0;
        for (const auto& r : rows_) total += r.count();
        return total;
    }

    std::vector<std::vector<Vertex>> neighbor_lists_a() const {
        std::vector<std::vector<Vertex>> out(na_);
        for (Vertex a = 0; a < na_; ++a) out[a] = rows_[a].to_vector();
        return out;
    }

    std::vector<std::vector<Vertex>> neighbor_lists_b() const {
        std::vector<std::vector<Vertex>> out(nb_);
        for (Vertex a = 0; a < na_; ++a)
            rows_[a].for_each([&](std::size_t b) { out[b].push_back(a); });
        return out;
    }

private:
    Vertex na_, nb_;
    std::vector<DynBitset> rows_;
};

// ---------------------------------------------------------------------------
// Colex ranking of k-sets: rank{a_1 < ... < a_k} = sum_i C(a_i, i). Used to
// subsample complete hosts without materializing their edge sets.

inline std::vector<Vertex> unrank_kset(std::uint64_t rank, int k) {
    std::vector<Vertex> out(k);
    for (int i = k; i >= 1; --i) {
        // Largest c with C(c, i) <= rank.
        std::uint64_t c = static_cast<std::uint64_t>(i) - 1;
        std::uint64_t coeff = 0;  // C(c, i) for current c
        while (true) {
            std::uint64_t next = binomial_coefficient(c + 1, static_cast<std::uint64_t>(i));
            if (next > rank) break;
            ++c;
            coeff = next;
        }
        out[i - 1] = static_cast<Vertex>(c);
        rank -= coeff;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generators and basic operations.

inline Hypergraph complete_hypergraph(Vertex n, int k) {
    std::vector<std::vector<Vertex>> edges;
    std::vector<Vertex> cur(k);
    // Iterative k-subset enumeration.
    for (int i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i);
    if (n < static_cast<Vertex>(k)) return Hypergraph(n, k, {});
    while (true) {
        edges.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - static_cast<Vertex>(k - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return Hypergraph(n, k, std::move(edges));
}

inline Hypergraph complete_bipartite_as_graph(Vertex na, Vertex nb) {
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(na) * nb);
    for (Vertex a = 0; a < na; ++a)
        for (Vertex b = 0; b < nb; ++b) edges.push_back({a, static_cast<Vertex>(na + b)});
    return Hypergraph(na + nb, 2, std::move(edges));
}

/// Each edge of `host` retained independently with probability p. Draws one
/// uniform per edge in index order, so replay is bit-identical and sharing a
/// stream across p <= p' yields nested edge sets.
inline Hypergraph binomial_subgraph(const Hypergraph& host, double p, RngStream rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial_subgraph: p out of range");
    std::vector<std::vector<Vertex>> kept;
    for (std::size_t i = 0; i < host.num_edges(); ++i) {
        double u = rng.next_double();
        if (u < p) kept.push_back(host.edge_vec(i));
    }
    return Hypergraph(host.num_vertices(), host.uniformity(), std::move(kept));
}

/// Binomial(p) subgraph of the complete k-uniform hypergraph on [0, n),
/// sampled in O(#kept log n) via geometric skips over colex ranks.
inline Hypergraph binomial_complete_subgraph(Vertex n, int k, double p, RngStream rng) {
    std::uint64_t total = binomial_coefficient(n, static_cast<std::uint64_t>(k));
    // table[i][c] = C(c, i) for 1 <= i <= k, 0 <= c <= n.
    std::vector<std::vector<std::uint64_t>> table(k + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (Vertex c = 0; c <= n; ++c) {
        for (int i = 1; i <= k; ++i)
            table[i][c] = binomial_coefficient(c, static_cast<std::uint64_t>(i));
    }
    std::vector<std::vector<Vertex>> kept;
    BernoulliSkipSampler sampler(total, p, rng);
    std::vector<Vertex> buf(k);
    while (sampler.has_next()) {
        std::uint64_t rank = sampler.next();
        for (int i = k; i >= 1; --i) {
            // Largest c with table[i][c] <= rank, via binary search.
            Vertex lo = static_cast<Vertex>(i - 1), hi = n;
            while (lo + 1 < hi) {
                Vertex mid = lo + (hi - lo) / 2;
                if (table[i][mid] <= rank)
                    lo = mid;
                else
                    hi = mid;
            }
            buf[i - 1] = lo;
            rank -= table[i][lo];
        }
        kept.emplace_back(buf);
    }
    return Hypergraph(n, k, std::move(kept));
}

/// Binomial random graph G(n, p) as a k = 2 hypergraph.
inline Hypergraph gnp_graph(Vertex n, double p, RngStream rng) {
    return binomial_complete_subgraph(n, 2, p, rng);
}

/// Random k-uniform hypergraph with a fixed number of distinct edges.
inline Hypergraph random_hypergraph(Vertex n, int k, std::size_t edge_count, RngStream rng) {
    std::uint64_t total = binomial_coefficient(n, static_cast<std::uint64_t>(k));
    if (edge_count > total) throw std::invalid_argument("random_hypergraph: too many edges");
    std::unordered_set<std::uint64_t> ranks;
    while (ranks.size() < edge_count) ranks.insert(rng.next_below(total));
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(edge_count);
    for (std::uint64_t r : ranks) edges.push_back(unrank_kset(r, k));
    return Hypergraph(n, k, std::move(edges));
}

inline BipartiteGraph random_bipartite(Vertex na, Vertex nb, double p, RngStream rng) {
    BipartiteGraph g(na, nb);
    for (Vertex a = 0; a < na; ++a)
        for (Vertex b = 0; b < nb; ++b)
            if (rng.bernoulli(p)) g.add_edge(a, b);
    return g;
}

inline BipartiteGraph complete_bipartite(Vertex na, Vertex nb) {
    BipartiteGraph g(na, nb);
    for (Vertex a = 0; a < na; ++a)
        for (Vertex b = 0; b < nb; ++b) g.add_edge(a, b);
    return g;
}

/// Minimum degree of an l-set together with one minimizing set.
struct EllDegree {
    std::uint64_t value = 0;
    std::vector<Vertex> witness;
};

inline EllDegree min_ell_degree(const Hypergraph& host, int ell) {
    const int k = host.uniformity();
    const Vertex n = host.num_vertices();
    if (ell < 1 || ell >= k) throw std::invalid_argument("min_ell_degree: need 1 <= l < k");
    if (n < static_cast<Vertex>(k)) throw std::invalid_argument("min_ell_degree: n < k");

    if (ell == 1) {
        auto deg = host.degrees();
        auto it = std::min_element(deg.begin(), deg.end());
        return {*it, {static_cast<Vertex>(it - deg.begin())}};
    }
    if (ell == 2) {
        std::vector<std::uint64_t> deg(static_cast<std::size_t>(n) * n, 0);
        for (std::size_t i = 0; i < host.num_edges(); ++i) {
            auto e = host.edge(i);
            for (std::size_t a = 0; a < e.size(); ++a)
                for (std::size_t b = a + 1; b < e.size(); ++b)
                    ++deg[static_cast<std::size_t>(e[a]) * n + e[b]];
        }
        std::uint64_t best = UINT64_MAX;
        std::vector<Vertex> witness;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                std::uint64_t d = deg[static_cast<std::size_t>(a) * n + b];
                if (d < best) {
                    best = d;
                    witness = {a, b};
                }
            }
        return {best, witness};
    }

    // General l: enumerate l-sets, counting degrees from the edge list.
    std::uint64_t sets = binomial_coefficient(n, static_cast<std::uint64_t>(ell));
    if (sets > 20'000'000ULL) throw std::invalid_argument("min_ell_degree: l-set space too large");
    std::uint64_t best = UINT64_MAX;
    std::vector<Vertex> witness;
    std::vector<Vertex> cur(ell);
    for (int i = 0; i < ell; ++i) cur[i] = static_cast<Vertex>(i);
    while (true) {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < host.num_edges(); ++i) {
            auto e = host.edge(i);
            if (std::includes(e.begin(), e.end(), cur.begin(), cur.end())) ++d;
        }
        if (d < best) {
            best = d;
            witness = cur;
        }
        int i = ell - 1;
        while (i >= 0 && cur[i] == n - static_cast<Vertex>(ell - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < ell; ++j) cur[j] = cur[j - 1] + 1;
    }
    return {best, witness};
}

/// Number of hyperedges containing S with the rest of the edge inside `inside`.
inline std::uint64_t degree_into(const Hypergraph& host, std::span<const Vertex> sorted_set,
                                 const DynBitset& inside) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < host.num_edges(); ++i) {
        auto e = host.edge(i);
        if (!std::includes(e.begin(), e.end(), sorted_set.begin(), sorted_set.end())) continue;
        bool ok = true;
        for (Vertex v : e) {
            if (std::find(sorted_set.begin(), sorted_set.end(), v) != sorted_set.end()) continue;
            if (!inside.test(v)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

/// The r-clique complex: a k = r hypergraph whose edges are the vertex sets
/// of r-cliques of the graph.
inline Hypergraph clique_complex(const Hypergraph& graph, int r) {
    if (graph.uniformity() != 2) throw std::invalid_argument("clique_complex: host must be a graph");
    if (r < 2) throw std::invalid_argument("clique_complex: r must be >= 2");
    const Vertex n = graph.num_vertices();
    auto adj = graph.adjacency();
    std::vector<std::vector<Vertex>> cliques;
    std::vector<Vertex> stack;

    // Grow cliques by ascending vertex id; candidates tracked as bitsets.
    auto extend = [&](auto&& self, const DynBitset& candidates) -> void {
        if (static_cast<int>(stack.size()) == r) {
            cliques.push_back(stack);
            return;
        }
        candidates.for_each([&](std::size_t v) {
            if (static_cast<int>(stack.size()) == r) return;
            DynBitset next = candidates;
            next &= adj[v];
            // Only vertices above v remain candidates.
            for (std::size_t w = 0; w <= v; ++w)
                if (next.test(w)) next.reset(w);
            stack.push_back(static_cast<Vertex>(v));
            if (static_cast<int>(stack.size()) + static_cast<int>(next.count()) >= r)
                self(self, next);
            stack.pop_back();
        });
    };

    DynBitset all(n);
    for (Vertex v = 0; v < n; ++v) all.set(v);
    extend(extend, all);
    return Hypergraph(n, r, std::move(cliques));
}

}  // namespace spread
