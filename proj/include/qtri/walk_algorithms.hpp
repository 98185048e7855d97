#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtri/collision.hpp"
#include "qtri/graph.hpp"
#include "qtri/oracle.hpp"

namespace qtri {

// Pattern graph with a distinguished vertex; its degree sets the checking
// exponent of the copy search.
struct HPattern {
    Graph pattern;
    int root = 1;

    HPattern(Graph p, int root_vertex);
    int vertex_count() const { return pattern.n(); }
    int root_degree() const { return pattern.degree(root); }
};

HPattern clique_pattern(int k);

// Pattern file: the edge-list format plus a final "root v" line.
HPattern read_pattern_file(const std::string& path);

// Collision pair: f(u) = f(u') = 1 and (u,u') an edge of the explicitly known
// graph. The known graph is an edge list so the ground set can be large.
std::optional<VertexPair> graph_collision(OracleSession& session, int n,
                                          const std::vector<VertexPair>& known_edges,
                                          const std::vector<std::uint8_t>& f);

// Walk-based triangle search: one generic schedule at r = ceil(n^{3/5}) with
// the recursive checking procedure charged at its proven cost, then a Grover
// charge for the third vertex.
std::optional<Triangle> walk_triangle(OracleSession& session);

// (k-1)-collision search for a copy of the pattern, r = ceil(n^{1-1/k}).
std::optional<std::vector<int>> h_copy(OracleSession& session, const HPattern& pattern);

// Runs h_copy per certificate and returns the first verified copy.
std::optional<std::vector<int>> monotone_property(OracleSession& session,
                                                  const std::vector<HPattern>& certificates);

}  // namespace qtri
