#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spread/hypergraph.hpp"

namespace spread {

using nlohmann::json;

inline constexpr int kSchemaMajor = 1;
inline const char* kSchemaTag = "spreadlab/1";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejects documents whose declared major version is unknown. Missing tags
/// are accepted as version 1 (the hypergraph format predates the tag).
inline void check_schema(const json& j) {
    if (!j.contains("schema")) return;
    std::string tag = j.at("schema").get<std::string>();
    auto slash = tag.find('/');
    if (slash == std::string::npos) throw IoError("malformed schema tag: " + tag);
    int major = std::stoi(tag.substr(slash + 1));
    if (major != kSchemaMajor)
        throw IoError("unsupported schema major version: " + tag);
}

inline json hypergraph_to_json(const Hypergraph& h) {
    json edges = json::array();
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
        json e = json::array();
        for (Vertex v : h.edge(i)) e.push_back(v);
        edges.push_back(std::move(e));
    }
    return json{{"schema", kSchemaTag},
                {"n", h.num_vertices()},
                {"k", h.uniformity()},
                {"edges", std::move(edges)}};
}

inline Hypergraph hypergraph_from_json(const json& j) {
    check_schema(j);
    Vertex n = j.at("n").get<Vertex>();
    int k = j.at("k").get<int>();
    std::vector<std::vector<Vertex>> edges;
    for (const auto& e : j.at("edges")) edges.push_back(e.get<std::vector<Vertex>>());
    return Hypergraph(n, k, std::move(edges));
}

/// Bipartite graphs use the k = 2 hypergraph format with B ids offset by |A|
/// and an extra "bipartition" field recording |A|.
inline json bipartite_to_json(const BipartiteGraph& g) {
    json edges = json::array();
    for (Vertex a = 0; a < g.size_a(); ++a)
        g.row(a).for_each([&](std::size_t b) {
            edges.push_back(json::array({a, g.size_a() + static_cast<Vertex>(b)}));
        });
    return json{{"schema", kSchemaTag},
                {"n", g.size_a() + g.size_b()},
                {"k", 2},
                {"bipartition", g.size_a()},
                {"edges", std::move(edges)}};
}

inline BipartiteGraph bipartite_from_json(const json& j) {
    check_schema(j);
    Vertex n = j.at("n").get<Vertex>();
    Vertex na = j.at("bipartition").get<Vertex>();
    if (na > n) throw IoError("bipartition larger than n");
    BipartiteGraph g(na, n - na);
    for (const auto& e : j.at("edges")) {
        auto pair = e.get<std::vector<Vertex>>();
        if (pair.size() != 2) throw IoError("bipartite edge must have two endpoints");
        Vertex lo = std::min(pair[0], pair[1]), hi = std::max(pair[0], pair[1]);
        if (lo >= na || hi < na) throw IoError("edge does not cross the bipartition");
        g.add_edge(lo, hi - na);
    }
    return g;
}

inline json matching_to_json(const Matching& m) {
    json edges = json::array();
    for (const auto& e : m.edges) edges.push_back(e);
    return json{{"schema", kSchemaTag}, {"type", "matching"}, {"edges", std::move(edges)}};
}

inline Matching matching_from_json(const json& j) {
    check_schema(j);
    Matching m;
    for (const auto& e : j.at("edges")) m.edges.push_back(e.get<std::vector<Vertex>>());
    return m;
}

inline json factor_to_json(const Factor& f) {
    json cliques = json::array();
    for (const auto& q : f.cliques) cliques.push_back(q);
    return json{{"schema", kSchemaTag}, {"type", "factor"}, {"cliques", std::move(cliques)}};
}

inline Factor factor_from_json(const json& j) {
    check_schema(j);
    Factor f;
    for (const auto& q : j.at("cliques")) f.cliques.push_back(q.get<std::vector<Vertex>>());
    return f;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out.good()) throw IoError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json_file(const std::string& path) {
    return json::parse(read_text_file(path));
}

inline void save_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace spread
