#include "gvn/graph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "gvn/rng.hpp"
#include "gvn/sha256.hpp"

namespace gvn::graph {

Edge canonical_edge(NodeId u, NodeId v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

Graph::Graph(NodeId n, std::vector<Edge> edges,
             std::vector<std::vector<double>> features)
    : n_(n), features_(std::move(features)) {
    for (auto& e : edges) {
        if (e.first == e.second)
            throw ArgumentError("self-loop (" + std::to_string(e.first) + "," +
                                std::to_string(e.second) + ") not allowed");
        if (e.first < 0 || e.second < 0 || e.first >= n_ || e.second >= n_)
            throw ArgumentError("edge endpoint out of range: (" +
                                std::to_string(e.first) + "," +
                                std::to_string(e.second) + ") with n=" +
                                std::to_string(n_));
        e = canonical_edge(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adj_.assign(size_t(n_), {});
    for (const auto& [u, v] : edges_) {
        adj_[size_t(u)].push_back(v);
        adj_[size_t(v)].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

    if (!features_.empty()) {
        if (NodeId(features_.size()) != n_)
            throw ArgumentError("feature row count " + std::to_string(features_.size()) +
                                " != node count " + std::to_string(n_));
        feature_dim_ = int(features_.front().size());
        for (const auto& row : features_)
            if (int(row.size()) != feature_dim_)
                throw ArgumentError("ragged feature rows");
    }

    Sha256 h;
    h.update("graph:v1:");
    const int64_t n64 = n_;
    h.update(&n64, sizeof(n64));
    for (const auto& [u, v] : edges_) {
        h.update(&u, sizeof(u));
        h.update(&v, sizeof(v));
    }
    digest_ = to_hex(h.finish());
}

const std::vector<NodeId>& Graph::neighbors(NodeId v) const {
    if (v < 0 || v >= n_) throw ArgumentError("node id out of range: " + std::to_string(v));
    return adj_[size_t(v)];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& nb = adj_[size_t(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
}

// --- ingestion ---------------------------------------------------------

Graph parse_edge_list(const std::string& text, std::optional<NodeId> n_hint,
                      const std::string& origin) {
    std::vector<Edge> edges;
    NodeId max_id = -1;
    size_t lineno = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        long long a, b;
        if (!(ls >> a >> b))
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": expected two integers, got \"" + line + "\"");
        std::string trailing;
        if (ls >> trailing && !trailing.empty() && trailing[0] != '#')
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": unexpected trailing token \"" + trailing + "\"");
        if (a < 0 || b < 0)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": negative node id");
        if (a == b)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": self-loop " + std::to_string(a) + " " + std::to_string(b));
        edges.emplace_back(NodeId(a), NodeId(b));
        max_id = std::max({max_id, NodeId(a), NodeId(b)});
    }
    NodeId n = max_id + 1;
    if (n_hint && *n_hint > n) n = *n_hint;
    return Graph(n, std::move(edges));
}

Graph load_edge_list(const std::string& path, std::optional<NodeId> n_hint) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open edge list: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_edge_list(ss.str(), n_hint, path);
}

Graph with_features_from_file(const Graph& g, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open feature file: " + path);
    std::vector<std::vector<double>> rows;
    rows.reserve(size_t(g.num_nodes()));
    std::string line;
    size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double x;
        while (ls >> x) row.push_back(x);
        if (row.empty())
            throw ParseError(path + ":" + std::to_string(lineno) + ": empty feature row");
        rows.push_back(std::move(row));
    }
    if (NodeId(rows.size()) != g.num_nodes())
        throw ParseError(path + ": " + std::to_string(rows.size()) +
                         " feature rows for " + std::to_string(g.num_nodes()) + " nodes");
    return Graph(g.num_nodes(), g.edges(), std::move(rows));
}

void save_edge_list(const std::string& path, const std::vector<Edge>& edges) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write edge list: " + path);
    for (const auto& [u, v] : edges) f << u << " " << v << "\n";
    if (!f) throw IoError("write failed: " + path);
}

// --- distances ---------------------------------------------------------

namespace {

std::vector<int32_t> bfs_impl(const Graph& g, NodeId src, NodeId removed, int max_depth) {
    std::vector<int32_t> dist(size_t(g.num_nodes()), kInfDist);
    if (src == removed) return dist;
    dist[size_t(src)] = 0;
    std::deque<NodeId> q{src};
    while (!q.empty()) {
        const NodeId x = q.front();
        q.pop_front();
        const int32_t dx = dist[size_t(x)];
        if (max_depth >= 0 && dx >= max_depth) continue;
        for (NodeId y : g.neighbors(x)) {
            if (y == removed) continue;
            if (dist[size_t(y)] == kInfDist) {
                dist[size_t(y)] = dx + 1;
                q.push_back(y);
            }
        }
    }
    return dist;
}

} // namespace

std::vector<int32_t> bfs_distances(const Graph& g, NodeId src, int max_depth) {
    if (src < 0 || src >= g.num_nodes())
        throw ArgumentError("bfs source out of range: " + std::to_string(src));
    return bfs_impl(g, src, -1, max_depth);
}

std::vector<int32_t> bfs_distances_excluding(const Graph& g, NodeId src,
                                             NodeId removed, int max_depth) {
    if (src < 0 || src >= g.num_nodes())
        throw ArgumentError("bfs source out of range: " + std::to_string(src));
    return bfs_impl(g, src, removed, max_depth);
}

// --- subgraph extraction -------------------------------------------------

namespace {

void check_k(int k) {
    if (k < 1 || k > 3)
        throw ArgumentError("hop count k must be in [1,3], got " + std::to_string(k));
}

// Shared body: nodes within `k` of the center set, edges whose nearer
// endpoint (w.r.t. the center set) is within k-1 — exactly the edges a
// k-hop walk from a center can traverse.
void build_view(const Graph& g, const std::vector<NodeId>& centers, int k,
                bool drop_center_pair, SubgraphView& view) {
    std::vector<int32_t> dmin(size_t(g.num_nodes()), kInfDist);
    for (NodeId c : centers) {
        auto d = bfs_distances(g, c, k);
        for (size_t i = 0; i < d.size(); ++i) dmin[i] = std::min(dmin[i], d[i]);
    }

    std::vector<NodeId> nodes;
    for (NodeId c : centers) nodes.push_back(c);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (dmin[size_t(v)] <= k &&
            std::find(centers.begin(), centers.end(), v) == centers.end())
            nodes.push_back(v);
    }
    view.local_nodes = std::move(nodes);

    std::vector<int> local(size_t(g.num_nodes()), -1);
    for (size_t i = 0; i < view.local_nodes.size(); ++i)
        local[size_t(view.local_nodes[i])] = int(i);

    view.local_edges.clear();
    for (const auto& [a, b] : g.edges()) {
        if (local[size_t(a)] < 0 || local[size_t(b)] < 0) continue;
        if (std::min(dmin[size_t(a)], dmin[size_t(b)]) > k - 1) continue;
        if (drop_center_pair && centers.size() == 2 &&
            canonical_edge(a, b) == canonical_edge(centers[0], centers[1]))
            continue;
        int la = local[size_t(a)];
        int lb = local[size_t(b)];
        if (la > lb) std::swap(la, lb);
        view.local_edges.emplace_back(la, lb);
    }
    std::sort(view.local_edges.begin(), view.local_edges.end());
}

} // namespace

SubgraphView k_hop_link_subgraph(const Graph& g, NodeId u, NodeId v, int k, bool mask) {
    check_k(k);
    if (u < 0 || v < 0 || u >= g.num_nodes() || v >= g.num_nodes())
        throw ArgumentError("link endpoint out of range");
    if (u == v) throw ArgumentError("link endpoints must differ");
    SubgraphView view;
    view.kind = SubgraphView::CenterKind::Link;
    view.center_u = u;
    view.center_v = v;
    view.k = k;
    view.mask_center_link = mask;
    build_view(g, {u, v}, k, mask, view);
    return view;
}

SubgraphView k_hop_node_subgraph(const Graph& g, NodeId v, int k) {
    check_k(k);
    if (v < 0 || v >= g.num_nodes()) throw ArgumentError("node id out of range");
    SubgraphView view;
    view.kind = SubgraphView::CenterKind::Node;
    view.center_u = v;
    view.center_v = v;
    view.k = k;
    build_view(g, {v}, k, false, view);
    return view;
}

SubgraphView whole_graph_view(const Graph& g, NodeId highlight) {
    SubgraphView view;
    view.kind = SubgraphView::CenterKind::Node;
    view.center_u = highlight >= 0 ? highlight : 0;
    view.center_v = view.center_u;
    view.k = 1;
    view.local_nodes.reserve(size_t(g.num_nodes()));
    if (highlight >= 0) view.local_nodes.push_back(highlight);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (v != highlight) view.local_nodes.push_back(v);
    std::vector<int> local(size_t(g.num_nodes()), -1);
    for (size_t i = 0; i < view.local_nodes.size(); ++i)
        local[size_t(view.local_nodes[i])] = int(i);
    for (const auto& [a, b] : g.edges()) {
        int la = local[size_t(a)];
        int lb = local[size_t(b)];
        if (la > lb) std::swap(la, lb);
        view.local_edges.emplace_back(la, lb);
    }
    std::sort(view.local_edges.begin(), view.local_edges.end());
    return view;
}

int SubgraphView::local_id_of(NodeId global) const {
    for (size_t i = 0; i < local_nodes.size(); ++i)
        if (local_nodes[i] == global) return int(i);
    return -1;
}

std::string SubgraphView::canonical_encoding() const {
    // Everything the raster depends on, in local ids only. Two views with
    // the same encoding are the same picture.
    std::string s = kind == CenterKind::Link ? "L" : "N";
    s += ";k=" + std::to_string(k);
    s += ";m=" + std::string(mask_center_link ? "1" : "0");
    s += ";n=" + std::to_string(local_nodes.size());
    s += ";c=0";
    if (kind == CenterKind::Link) s += ",1";
    s += ";e=";
    for (const auto& [a, b] : local_edges) {
        s += std::to_string(a) + "-" + std::to_string(b) + ",";
    }
    return s;
}

// --- splits and negatives -------------------------------------------------

SplitSet make_splits(const Graph& g, SplitRatios ratios, uint64_t seed) {
    const double sum = ratios.train + ratios.valid + ratios.test;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("split ratios must sum to 1");
    const size_t m = g.num_edges();
    if (m < 10) throw ConfigError("graph has fewer than 10 edges; cannot split");

    std::vector<Edge> edges = g.edges();
    Rng rng = Rng(seed).derive("splits");
    rng.shuffle(edges);

    // floor each ratio; leftover goes to train so test never exceeds its ratio
    size_t n_train = size_t(ratios.train * double(m));
    size_t n_valid = size_t(ratios.valid * double(m));
    size_t n_test = size_t(ratios.test * double(m));
    n_train += m - (n_train + n_valid + n_test);

    SplitSet s;
    s.train_pos.assign(edges.begin(), edges.begin() + n_train);
    s.valid_pos.assign(edges.begin() + n_train, edges.begin() + n_train + n_valid);
    s.test_pos.assign(edges.begin() + n_train + n_valid, edges.end());

    const size_t capacity =
        size_t(g.num_nodes()) * size_t(g.num_nodes() - 1) / 2 - m;
    const size_t want_valid = std::min<size_t>(100 * s.valid_pos.size(), capacity / 2);
    const size_t want_test = std::min<size_t>(100 * s.test_pos.size(), capacity / 2);
    if (want_valid > 0)
        s.valid_neg = sample_negatives(g, want_valid, {}, Rng(seed).derive("vneg").next_u64());
    if (want_test > 0)
        s.test_neg = sample_negatives(g, want_test, s.valid_neg,
                                      Rng(seed).derive("tneg").next_u64());
    return s;
}

std::vector<Edge> sample_negatives(const Graph& g, size_t count,
                                   const std::vector<Edge>& exclude, uint64_t seed) {
    const NodeId n = g.num_nodes();
    const size_t total_pairs = size_t(n) * size_t(n - 1) / 2;
    const size_t capacity = total_pairs - g.num_edges() - exclude.size();
    if (count > capacity)
        throw CapacityError("requested " + std::to_string(count) +
                            " negatives but only " + std::to_string(capacity) +
                            " non-edges available");

    std::set<Edge> excl(exclude.begin(), exclude.end());
    std::set<Edge> out;
    Rng rng(seed);

    if (count * 3 > total_pairs) {
        // dense regime: enumerate all non-edges and sample without replacement
        std::vector<Edge> pool;
        pool.reserve(total_pairs - g.num_edges());
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v) && !excl.count({u, v})) pool.emplace_back(u, v);
        rng.shuffle(pool);
        return {pool.begin(), pool.begin() + count};
    }

    while (out.size() < count) {
        const NodeId u = NodeId(rng.next_below(uint64_t(n)));
        const NodeId v = NodeId(rng.next_below(uint64_t(n)));
        if (u == v) continue;
        const Edge e = canonical_edge(u, v);
        if (g.has_edge(e.first, e.second) || excl.count(e)) continue;
        out.insert(e);
    }
    return {out.begin(), out.end()};
}

} // namespace gvn::graph
