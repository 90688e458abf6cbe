#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvn/common.hpp"

namespace gvn::graph {

using Edge = std::pair<NodeId, NodeId>; // stored with first < second

// Immutable undirected simple graph. Edges are symmetric-closed and
// deduplicated at construction; adjacency lists are sorted and derived
// exactly from the edge set. Optional dense node features (n x F).
class Graph {
public:
    Graph() = default;
    Graph(NodeId n, std::vector<Edge> edges,
          std::vector<std::vector<double>> features = {});

    NodeId num_nodes() const { return n_; }
    size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<NodeId>& neighbors(NodeId v) const;
    NodeId degree(NodeId v) const { return NodeId(neighbors(v).size()); }
    bool has_edge(NodeId u, NodeId v) const;

    bool has_features() const { return feature_dim_ > 0; }
    int feature_dim() const { return feature_dim_; }
    const std::vector<std::vector<double>>& features() const { return features_; }

    // Stable digest over (n, sorted edge set); identifies the structure for
    // cache/repository staleness checks.
    const std::string& digest() const { return digest_; }

private:
    NodeId n_ = 0;
    std::vector<Edge> edges_;                 // canonical: u < v, sorted
    std::vector<std::vector<NodeId>> adj_;    // sorted neighbor lists
    int feature_dim_ = 0;
    std::vector<std::vector<double>> features_;
    std::string digest_;
};

struct LinkCenter {
    NodeId u;
    NodeId v;
};
struct NodeCenter {
    NodeId v;
};

// Local k-hop subgraph, either link-centered (around a queried pair) or
// node-centered. local_nodes holds global ids: center node(s) first
// (u then v), then the rest ascending; local_edges are in local ids.
struct SubgraphView {
    enum class CenterKind { Link, Node };
    CenterKind kind = CenterKind::Node;
    NodeId center_u = 0; // center node for Node views
    NodeId center_v = 0; // second endpoint for Link views
    int k = 1;
    bool mask_center_link = false;
    std::vector<NodeId> local_nodes;                   // local -> global
    std::vector<std::pair<int, int>> local_edges;      // local ids, a < b

    size_t size() const { return local_nodes.size(); }
    int local_id_of(NodeId global) const; // -1 if absent

    // Stable textual encoding of (center kind, k, mask, structure in local
    // ids). Equal encodings render identically: the layout seed is derived
    // from this string.
    std::string canonical_encoding() const;
};

struct SplitSet {
    std::vector<Edge> train_pos;
    std::vector<Edge> valid_pos;
    std::vector<Edge> test_pos;
    std::vector<Edge> valid_neg;
    std::vector<Edge> test_neg;
    bool use_valid_as_message_paths = false;
};

// --- ingestion ---------------------------------------------------------

// UTF-8 text, one "u v" pair per line, '#' comments ignored. Edges are
// symmetrized and deduplicated; n = max id + 1 (or n_hint if larger).
Graph load_edge_list(const std::string& path, std::optional<NodeId> n_hint = {});
Graph parse_edge_list(const std::string& text, std::optional<NodeId> n_hint = {},
                      const std::string& origin = "<memory>");

// n lines of F whitespace-separated reals, attached to an existing graph.
Graph with_features_from_file(const Graph& g, const std::string& path);

void save_edge_list(const std::string& path, const std::vector<Edge>& edges);

// --- distances and subgraphs -------------------------------------------

// Unweighted BFS distances from src; kInfDist where unreachable. If
// max_depth >= 0 the search stops expanding beyond it.
std::vector<int32_t> bfs_distances(const Graph& g, NodeId src, int max_depth = -1);

// BFS distances with one node removed from the graph (used by DRNL).
std::vector<int32_t> bfs_distances_excluding(const Graph& g, NodeId src,
                                             NodeId removed, int max_depth = -1);

SubgraphView k_hop_link_subgraph(const Graph& g, NodeId u, NodeId v, int k, bool mask);
SubgraphView k_hop_node_subgraph(const Graph& g, NodeId v, int k);

// View over the entire graph (probe experiments render whole tiny graphs).
SubgraphView whole_graph_view(const Graph& g, NodeId highlight = -1);

// --- splits and negatives ----------------------------------------------

struct SplitRatios {
    double train = 0.70;
    double valid = 0.10;
    double test = 0.20;
};

// Deterministic per seed. Positive lists partition E; sizes follow
// floor(ratio * |E|) with the remainder assigned to train. Also draws the
// fixed evaluation negatives (min(100 * |pos|, capacity) per split).
SplitSet make_splits(const Graph& g, SplitRatios ratios, uint64_t seed);

// `count` distinct unordered non-edges outside `exclude`; deterministic.
std::vector<Edge> sample_negatives(const Graph& g, size_t count,
                                   const std::vector<Edge>& exclude, uint64_t seed);

Edge canonical_edge(NodeId u, NodeId v);

} // namespace gvn::graph
