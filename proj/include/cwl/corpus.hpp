#pragma once

#include <cstdint>

#include "cwl/graph.hpp"
#include "cwl/minors.hpp"

namespace cwl {

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_grid(int rows, int cols);

/// K_{1,arms} with each edge subdivided `sub` times (arms of sub+1 edges).
/// Vertex 0 is the hub; arms are numbered consecutively outward.
Graph make_subdivided_star(int arms, int sub);

/// H_ell with every edge subdivided `sub` times. The first 3*2^ell-2 vertex
/// ids are the pattern vertices in their canonical numbering; subdivision
/// vertices follow per canonical pattern edge, ordered from the parent side.
Graph make_subdivided_tree(int ell, int sub);

/// Three subdivided-star tripods (arms of `arm` edges) whose hubs join a
/// central junction by spokes of `spoke` edges. Hubs and their arms are
/// numbered before the spokes; the junction is the last vertex.
Graph make_tripod_junction(int spoke, int arm);

/// Random attachment tree on n vertices (vertex i >= 1 joins a uniform
/// earlier vertex); deterministic in the seed.
Graph make_random_tree(int n, std::uint64_t seed);

/// Connected random graph: random tree plus `extra_edges` distinct random
/// non-tree edges.
Graph make_random_connected(int n, int extra_edges, std::uint64_t seed);

}  // namespace cwl
