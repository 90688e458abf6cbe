#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gvn/graph/graph.hpp"
#include "oracles.hpp"

using namespace gvn;
using namespace gvn::graph;

namespace {

// T1: path 0-1-2-3 plus chord (1,3)
Graph t1() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}}); }

Graph cycle(NodeId n) {
    std::vector<Edge> e;
    for (NodeId i = 0; i < n; ++i) e.push_back(canonical_edge(i, (i + 1) % n));
    return Graph(n, e);
}

std::set<std::pair<int, int>> global_edges(const SubgraphView& v) {
    std::set<std::pair<int, int>> out;
    for (auto [a, b] : v.local_edges) {
        int ga = v.local_nodes[size_t(a)];
        int gb = v.local_nodes[size_t(b)];
        if (ga > gb) std::swap(ga, gb);
        out.insert({ga, gb});
    }
    return out;
}

} // namespace

TEST_CASE("edge list parsing") {
    const Graph g = parse_edge_list("0 1\n1 2\n");
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 1));
    CHECK(!g.has_edge(0, 2));

    CHECK_THROWS_AS(parse_edge_list("1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 x\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("3\n"), ParseError);

    // comments, duplicate + reversed edges collapse
    const Graph g2 = parse_edge_list("# header\n0 1\n1 0\n0 1\n");
    CHECK(g2.num_edges() == 1);

    // n_hint can only grow the node count
    CHECK(parse_edge_list("0 1\n", 10).num_nodes() == 10);
    CHECK(parse_edge_list("0 5\n", 2).num_nodes() == 6);
}

TEST_CASE("adjacency is sorted and consistent with the edge set") {
    const Graph g = t1();
    CHECK(g.neighbors(1) == std::vector<NodeId>{0, 2, 3});
    size_t adj_pairs = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) adj_pairs += g.neighbors(v).size();
    CHECK(adj_pairs == 2 * g.num_edges());
}

TEST_CASE("link-centered k-hop subgraph: spec examples") {
    const Graph c6 = cycle(6);
    const auto view = k_hop_link_subgraph(c6, 0, 3, 1, true);
    std::set<int> nodes(view.local_nodes.begin(), view.local_nodes.end());
    CHECK(nodes == std::set<int>{0, 1, 2, 3, 4, 5});
    CHECK(global_edges(view) ==
          std::set<std::pair<int, int>>{{0, 5}, {0, 1}, {2, 3}, {3, 4}});
    // ordering: centers first, rest ascending
    CHECK(view.local_nodes[0] == 0);
    CHECK(view.local_nodes[1] == 3);
    CHECK(std::is_sorted(view.local_nodes.begin() + 2, view.local_nodes.end()));

    const Graph g = t1();
    const auto v2 = k_hop_link_subgraph(g, 0, 2, 1, false);
    std::set<int> n2(v2.local_nodes.begin(), v2.local_nodes.end());
    CHECK(n2 == std::set<int>{0, 1, 2, 3});
    CHECK(global_edges(v2) ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});

    // isolated pair
    const Graph iso(5, {{2, 3}});
    const auto v3 = k_hop_link_subgraph(iso, 0, 1, 2, false);
    CHECK(v3.local_nodes == std::vector<NodeId>{0, 1});
    CHECK(v3.local_edges.empty());
}

TEST_CASE("masking removes the queried link when present") {
    const Graph g = t1();
    const auto masked = k_hop_link_subgraph(g, 1, 3, 1, true);
    const auto open = k_hop_link_subgraph(g, 1, 3, 1, false);
    CHECK(!global_edges(masked).count({1, 3}));
    CHECK(global_edges(open).count({1, 3}));
    auto rest = global_edges(open);
    rest.erase({1, 3});
    CHECK(global_edges(masked) == rest);
}

TEST_CASE("node-centered k-hop subgraph: spec examples") {
    const Graph g = t1();
    const auto v1 = k_hop_node_subgraph(g, 0, 1);
    CHECK(v1.local_nodes == std::vector<NodeId>{0, 1});
    CHECK(global_edges(v1) == std::set<std::pair<int, int>>{{0, 1}});

    const auto v2 = k_hop_node_subgraph(g, 0, 2);
    std::set<int> n2(v2.local_nodes.begin(), v2.local_nodes.end());
    CHECK(n2 == std::set<int>{0, 1, 2, 3});
    CHECK(global_edges(v2) ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}});

    const Graph lonely(3, {{1, 2}});
    const auto v3 = k_hop_node_subgraph(lonely, 0, 1);
    CHECK(v3.local_nodes == std::vector<NodeId>{0});
    CHECK(v3.local_edges.empty());

    CHECK_THROWS_AS(k_hop_node_subgraph(g, 0, 4), ArgumentError);
    CHECK_THROWS_AS(k_hop_node_subgraph(g, 0, 0), ArgumentError);
    CHECK_THROWS_AS(k_hop_link_subgraph(g, 0, 0, 1, false), ArgumentError);
}

TEST_CASE("k-hop extraction matches the BFS oracle on 200 random graphs") {
    uint64_t state = 0x1234abcdULL;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + int(state % 27); // up to 30
        const auto edges = oracle::random_graph(n, 0.2, state);
        std::vector<Edge> ge;
        for (auto [a, b] : edges) ge.push_back({NodeId(a), NodeId(b)});
        const Graph g(NodeId(n), ge);

        const int u = int(state % uint64_t(n));
        int v = int((state >> 13) % uint64_t(n));
        if (v == u) v = (v + 1) % n;
        const int k = 1 + trial % 3;

        const auto got = k_hop_link_subgraph(g, NodeId(u), NodeId(v), k, false);
        const auto want = oracle::khop(n, edges, {u, v}, k);
        CHECK(std::set<int>(got.local_nodes.begin(), got.local_nodes.end()) ==
              want.nodes);
        CHECK(global_edges(got) == want.edges);

        const auto gotn = k_hop_node_subgraph(g, NodeId(u), k);
        const auto wantn = oracle::khop(n, edges, {u}, k);
        CHECK(std::set<int>(gotn.local_nodes.begin(), gotn.local_nodes.end()) ==
              wantn.nodes);
        CHECK(global_edges(gotn) == wantn.edges);
    }
}

TEST_CASE("subgraph extraction is input-order invariant") {
    const std::vector<Edge> fwd{{0, 1}, {1, 2}, {2, 3}, {1, 3}, {3, 4}};
    std::vector<Edge> rev(fwd.rbegin(), fwd.rend());
    for (auto& e : rev) std::swap(e.first, e.second);
    const Graph a(5, fwd), b(5, rev);
    const auto va = k_hop_link_subgraph(a, 0, 3, 2, true);
    const auto vb = k_hop_link_subgraph(b, 0, 3, 2, true);
    CHECK(va.local_nodes == vb.local_nodes);
    CHECK(va.local_edges == vb.local_edges);
    CHECK(va.canonical_encoding() == vb.canonical_encoding());
}

TEST_CASE("make_splits partitions the edge set deterministically") {
    uint64_t state = 99;
    const auto edges = oracle::random_graph(12, 0.5, state);
    std::vector<Edge> ge;
    for (auto [a, b] : edges) ge.push_back({NodeId(a), NodeId(b)});
    const Graph g(12, ge);

    const auto s1 = make_splits(g, {}, 7);
    const auto s2 = make_splits(g, {}, 7);
    CHECK(s1.train_pos == s2.train_pos);
    CHECK(s1.valid_pos == s2.valid_pos);
    CHECK(s1.test_pos == s2.test_pos);
    CHECK(s1.valid_neg == s2.valid_neg);

    const auto s3 = make_splits(g, {}, 8);
    CHECK(s1.train_pos != s3.train_pos); // overwhelmingly likely

    // union of positives == E, pairwise disjoint
    std::set<Edge> all;
    for (const auto& part : {s1.train_pos, s1.valid_pos, s1.test_pos})
        for (const auto& e : part) CHECK(all.insert(e).second);
    CHECK(all == std::set<Edge>(g.edges().begin(), g.edges().end()));

    // negatives never collide with E
    for (const auto& e : s1.valid_neg) CHECK(!g.has_edge(e.first, e.second));
    for (const auto& e : s1.test_neg) CHECK(!g.has_edge(e.first, e.second));
}

TEST_CASE("split sizing follows the floor/remainder rule") {
    std::vector<Edge> e;
    for (NodeId i = 0; i < 10; ++i) e.push_back({i, NodeId(i + 10)});
    const Graph g(20, e);
    const auto s = make_splits(g, {}, 3);
    CHECK(s.train_pos.size() == 7);
    CHECK(s.valid_pos.size() == 1);
    CHECK(s.test_pos.size() == 2);
}

TEST_CASE("sample_negatives respects exclusions and capacity") {
    const Graph g = t1(); // non-edges: (0,2), (0,3)
    const auto neg = sample_negatives(g, 2, {}, 5);
    CHECK(neg.size() == 2);
    const std::set<Edge> want{{0, 2}, {0, 3}};
    CHECK(std::set<Edge>(neg.begin(), neg.end()) == want);
    CHECK(sample_negatives(g, 2, {}, 6) == sample_negatives(g, 2, {}, 6));

    const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK_THROWS_AS(sample_negatives(k4, 1, {}, 1), CapacityError);

    CHECK_THROWS_AS(sample_negatives(g, 2, {{0, 2}}, 1), CapacityError);
    const auto one = sample_negatives(g, 1, {{0, 2}}, 1);
    CHECK(one == std::vector<Edge>{{0, 3}});
}

TEST_CASE("sample_negatives never returns an existing edge (property)") {
    uint64_t state = 321;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 6 + int(state % 10);
        const auto edges = oracle::random_graph(n, 0.3, state);
        std::vector<Edge> ge;
        for (auto [a, b] : edges) ge.push_back({NodeId(a), NodeId(b)});
        const Graph g(NodeId(n), ge);
        const size_t cap = size_t(n) * size_t(n - 1) / 2 - g.num_edges();
        if (cap == 0) continue;
        const auto neg = sample_negatives(g, std::min<size_t>(cap, 5), {}, state);
        std::set<Edge> uniq(neg.begin(), neg.end());
        CHECK(uniq.size() == neg.size());
        for (const auto& e : neg) CHECK(!g.has_edge(e.first, e.second));
    }
}

TEST_CASE("bfs distances expose the infinity sentinel across components") {
    const Graph g(5, {{0, 1}, {2, 3}});
    const auto d = bfs_distances(g, 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == kInfDist);
    CHECK(d[4] == kInfDist);
}

TEST_CASE("graph digest tracks structure only") {
    const Graph a = t1();
    const Graph b(4, {{1, 0}, {2, 1}, {3, 2}, {3, 1}});
    CHECK(a.digest() == b.digest());
    const Graph c(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(a.digest() != c.digest());
}
