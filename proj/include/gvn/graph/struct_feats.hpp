#pragma once

#include <string>
#include <vector>

#include "gvn/graph/graph.hpp"

namespace gvn::sf {

enum class SfKind { CN, AA, RA, SPD, DRNL, DE };
enum class PeKind { ImageCoords2D, LaplacianPE, DistanceVector, DegreeCentrality };

std::string sf_name(SfKind k);
SfKind sf_from_name(const std::string& s);
std::string pe_name(PeKind k);
PeKind pe_from_name(const std::string& s);

// Pairwise heuristics. CN and SPD are integer-valued (returned as double);
// SPD returns kInfDist cast to double when disconnected. AA skips common
// neighbors of degree 1 (impossible in a simple graph; guards corrupt input).
double pair_sf(const graph::Graph& g, SfKind kind, NodeId u, NodeId v);

// SPD clamped to 2k+2 for use as a learning target.
double pair_spd_clamped(const graph::Graph& g, NodeId u, NodeId v, int k);

// Double-radius labels for every node of `view` w.r.t. the link (u,v):
// u,v get 1; node x gets 1 + min(du,dv) + (d/2)*((d/2) + d%2 - 1) with
// d = du + dv, du computed with v removed and dv with u removed;
// nodes unreachable from either endpoint get 0.
std::vector<int32_t> drnl_labels(const graph::Graph& g, NodeId u, NodeId v,
                                 const graph::SubgraphView& view);

// Node positional encodings, n x dim. LaplacianPE uses the eigenvectors of
// the symmetric-normalized Laplacian for the dim smallest nonzero
// eigenvalues. DistanceVector uses the dim highest-degree nodes (ties by id)
// as anchors, distances clamped to 2*dim. DegreeCentrality broadcasts the
// degree. ImageCoords2D requires layout coordinates supplied by the caller.
std::vector<std::vector<double>> node_pe(const graph::Graph& g, PeKind kind, int dim,
                                         const std::vector<std::pair<double, double>>*
                                             layout_xy = nullptr);

graph::Graph gen_erdos_renyi(NodeId n, double p, uint64_t seed);
graph::Graph gen_random_regular(NodeId m, int d, uint64_t seed);

enum class Substructure { Triangle, ThreeStar };

// Triangle: 3-cliques. ThreeStar: sum over nodes of C(deg, 3).
int64_t count_substructure(const graph::Graph& g, Substructure kind);

// Per-node counts whose sums tie to the graph totals: triangles through v
// (each triangle counted at all 3 corners) and stars centered at v.
std::vector<int64_t> per_node_triangles(const graph::Graph& g);
std::vector<int64_t> per_node_three_stars(const graph::Graph& g);

} // namespace gvn::sf
