#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtri {

using Vertex = int;                       // 1-indexed, in [1, n]
using VertexPair = std::pair<int, int>;   // canonical order a < b
using Triangle = std::array<int, 3>;      // sorted ascending

// Undirected simple graph on [n], adjacency stored as packed bit rows so
// neighborhood intersections are word-parallel popcounts.
class Graph {
  public:
    explicit Graph(int n);

    int n() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    bool adjacent(int a, int b) const;
    void add_edge(int a, int b);
    void remove_edge(int a, int b);

    int degree(int v) const;

    // Neighbors of v as a bit row; bit (u-1) set iff (v,u) is an edge.
    const std::uint64_t* row(int v) const { return bits_.data() + words_ * static_cast<std::size_t>(v - 1); }
    std::size_t words_per_row() const { return words_; }

    std::vector<int> neighbors(int v) const;
    std::vector<VertexPair> edges() const;

    void check_vertex(int v) const;
    void check_pair(int a, int b) const;

  private:
    int n_;
    std::size_t words_;
    std::size_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;
};

// t(G,a,b): number of common neighbors of a and b. Reference oracle, never
// touches any query meter.
int two_path_count(const Graph& g, int a, int b);

// Pairs (a,b), a<b, with t(G,a,b) <= k.
std::vector<VertexPair> threshold_graph(const Graph& g, int k);

// Total number of triangles.
std::uint64_t triangle_count(const Graph& g);

// Lexicographically smallest triangle, or nullopt. Ground truth for all
// soundness tests.
std::optional<Triangle> brute_find_triangle(const Graph& g);

// Injective mapping of V(h) into V(g) preserving every edge of h (subgraph
// containment, not induced), or nullopt. h is limited to 8 vertices.
std::optional<std::vector<int>> brute_find_copy(const Graph& g, const Graph& h);

enum class GraphFamily { ErdosRenyi, PlantedTriangle, TriangleFreeBipartite, Complete };

GraphFamily parse_family(const std::string& name);
std::string family_name(GraphFamily family);

// Deterministic for fixed (family, n, seed, p). planted_triangle draws an
// erdos_renyi(p) base and forces one uniformly random triple to be a triangle.
Graph gen_graph(GraphFamily family, int n, std::uint64_t seed, double p = 0.5);

// Edge-list text format: "n m" header, then m lines "a b" with 1 <= a < b <= n.
// Duplicate or self-loop lines are parse errors.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

// Thrown by read_edge_list with the offending 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line);
    int line;
};

}  // namespace qtri
