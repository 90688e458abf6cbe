#include "gvn/graph/struct_feats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gvn/rng.hpp"

namespace gvn::sf {

using graph::Graph;

std::string sf_name(SfKind k) {
    switch (k) {
        case SfKind::CN: return "CN";
        case SfKind::AA: return "AA";
        case SfKind::RA: return "RA";
        case SfKind::SPD: return "SPD";
        case SfKind::DRNL: return "DRNL";
        case SfKind::DE: return "DE";
    }
    return "?";
}

SfKind sf_from_name(const std::string& s) {
    if (s == "CN" || s == "cn") return SfKind::CN;
    if (s == "AA" || s == "aa") return SfKind::AA;
    if (s == "RA" || s == "ra") return SfKind::RA;
    if (s == "SPD" || s == "spd") return SfKind::SPD;
    if (s == "DRNL" || s == "drnl") return SfKind::DRNL;
    if (s == "DE" || s == "de") return SfKind::DE;
    throw ArgumentError("unknown structural feature: " + s);
}

std::string pe_name(PeKind k) {
    switch (k) {
        case PeKind::ImageCoords2D: return "image-coords";
        case PeKind::LaplacianPE: return "laplacian";
        case PeKind::DistanceVector: return "distance";
        case PeKind::DegreeCentrality: return "degree";
    }
    return "?";
}

PeKind pe_from_name(const std::string& s) {
    if (s == "image-coords" || s == "axis2d") return PeKind::ImageCoords2D;
    if (s == "laplacian") return PeKind::LaplacianPE;
    if (s == "distance") return PeKind::DistanceVector;
    if (s == "degree") return PeKind::DegreeCentrality;
    throw ArgumentError("unknown positional encoding: " + s);
}

namespace {

std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v) {
    const auto& nu = g.neighbors(u);
    const auto& nv = g.neighbors(v);
    std::vector<NodeId> out;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                          std::back_inserter(out));
    return out;
}

} // namespace

double pair_sf(const Graph& g, SfKind kind, NodeId u, NodeId v) {
    if (u < 0 || v < 0 || u >= g.num_nodes() || v >= g.num_nodes())
        throw ArgumentError("pair_sf: node out of range");
    if (u == v) throw ArgumentError("pair_sf: u == v");
    switch (kind) {
        case SfKind::CN:
            return double(common_neighbors(g, u, v).size());
        case SfKind::AA: {
            double s = 0.0;
            for (NodeId w : common_neighbors(g, u, v)) {
                const NodeId d = g.degree(w);
                if (d <= 1) continue; // ln(1) = 0; cannot occur in a simple graph
                s += 1.0 / std::log(double(d));
            }
            return s;
        }
        case SfKind::RA: {
            double s = 0.0;
            for (NodeId w : common_neighbors(g, u, v)) s += 1.0 / double(g.degree(w));
            return s;
        }
        case SfKind::SPD: {
            const auto d = graph::bfs_distances(g, u);
            return double(d[size_t(v)]);
        }
        default:
            throw ArgumentError("pair_sf supports CN/AA/RA/SPD only; got " + sf_name(kind));
    }
}

double pair_spd_clamped(const Graph& g, NodeId u, NodeId v, int k) {
    const double d = pair_sf(g, SfKind::SPD, u, v);
    const double cap = double(2 * k + 2);
    return d > cap ? cap : d;
}

std::vector<int32_t> drnl_labels(const Graph& g, NodeId u, NodeId v,
                                 const graph::SubgraphView& view) {
    const auto du_all = graph::bfs_distances_excluding(g, u, v);
    const auto dv_all = graph::bfs_distances_excluding(g, v, u);
    std::vector<int32_t> labels(view.local_nodes.size(), 0);
    for (size_t i = 0; i < view.local_nodes.size(); ++i) {
        const NodeId x = view.local_nodes[i];
        if (x == u || x == v) {
            labels[i] = 1;
            continue;
        }
        const int32_t du = du_all[size_t(x)];
        const int32_t dv = dv_all[size_t(x)];
        if (du == kInfDist || dv == kInfDist) {
            labels[i] = 0;
            continue;
        }
        const int64_t d = int64_t(du) + int64_t(dv);
        const int64_t half = d / 2;
        labels[i] = int32_t(1 + std::min(du, dv) + half * (half + d % 2 - 1));
    }
    return labels;
}

std::vector<std::vector<double>> node_pe(const Graph& g, PeKind kind, int dim,
                                         const std::vector<std::pair<double, double>>*
                                             layout_xy) {
    const NodeId n = g.num_nodes();
    if (dim <= 0) throw ArgumentError("node_pe: dim must be positive");
    std::vector<std::vector<double>> out(static_cast<size_t>(n));

    switch (kind) {
        case PeKind::DegreeCentrality: {
            for (NodeId v = 0; v < n; ++v)
                out[size_t(v)].assign(size_t(dim), double(g.degree(v)));
            return out;
        }
        case PeKind::ImageCoords2D: {
            if (!layout_xy || NodeId(layout_xy->size()) != n)
                throw ArgumentError("image-coords PE requires one layout point per node");
            for (NodeId v = 0; v < n; ++v)
                out[size_t(v)] = {(*layout_xy)[size_t(v)].first,
                                  (*layout_xy)[size_t(v)].second};
            return out;
        }
        case PeKind::DistanceVector: {
            // anchors: the dim highest-degree nodes, ties by id
            std::vector<NodeId> order(static_cast<size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
                return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
            });
            const int n_anchors = std::min<int>(dim, n);
            const double cap = double(2 * dim);
            for (NodeId v = 0; v < n; ++v) out[size_t(v)].assign(size_t(dim), cap);
            for (int a = 0; a < n_anchors; ++a) {
                const auto d = graph::bfs_distances(g, order[size_t(a)]);
                for (NodeId v = 0; v < n; ++v) {
                    const double val = d[size_t(v)] == kInfDist ? cap : double(d[size_t(v)]);
                    out[size_t(v)][size_t(a)] = std::min(val, cap);
                }
            }
            return out;
        }
        case PeKind::LaplacianPE: {
            if (dim >= n)
                throw ArgumentError("laplacian PE requires dim < n (dim=" +
                                    std::to_string(dim) + ", n=" + std::to_string(n) + ")");
            Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
            for (const auto& [a, b] : g.edges()) {
                const double w =
                    1.0 / std::sqrt(double(g.degree(a)) * double(g.degree(b)));
                lap(a, b) -= w;
                lap(b, a) -= w;
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
            if (es.info() != Eigen::Success)
                throw Error("laplacian eigendecomposition failed");
            const auto& evals = es.eigenvalues();  // ascending
            const auto& evecs = es.eigenvectors();
            // skip (near-)zero eigenvalues: the constant vector and one per
            // extra connected component
            constexpr double kZeroTol = 1e-9;
            std::vector<int> keep;
            for (int i = 0; i < n && int(keep.size()) < dim; ++i)
                if (evals(i) > kZeroTol) keep.push_back(i);
            if (int(keep.size()) < dim)
                throw ArgumentError("graph has fewer than dim nonzero Laplacian eigenvalues");
            for (NodeId v = 0; v < n; ++v) out[size_t(v)].assign(size_t(dim), 0.0);
            for (int c = 0; c < dim; ++c) {
                Eigen::VectorXd vec = evecs.col(keep[size_t(c)]);
                // canonical sign: first component of largest magnitude positive
                int arg = 0;
                for (int i = 1; i < n; ++i)
                    if (std::abs(vec(i)) > std::abs(vec(arg))) arg = i;
                if (vec(arg) < 0) vec = -vec;
                for (NodeId v = 0; v < n; ++v) out[size_t(v)][size_t(c)] = vec(v);
            }
            return out;
        }
    }
    throw ArgumentError("unhandled PE kind");
}

graph::Graph gen_erdos_renyi(NodeId n, double p, uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw ArgumentError("edge probability must be in [0,1]");
    Rng rng = Rng(seed).derive("erdos-renyi");
    std::vector<graph::Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

graph::Graph gen_random_regular(NodeId m, int d, uint64_t seed) {
    if (d < 0 || d >= m) throw ArgumentError("regular degree must satisfy 0 <= d < m");
    if ((int64_t(m) * d) % 2 != 0)
        throw ArgumentError("m*d must be even for a d-regular graph");
    Rng rng = Rng(seed).derive("random-regular");

    // pairing model, suitable-pair variant: draw stub pairs one at a time,
    // rejecting loops/multi-edges in place; a dead end restarts the attempt
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<NodeId> stubs;
        stubs.reserve(size_t(m) * size_t(d));
        for (NodeId v = 0; v < m; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);
        std::vector<graph::Edge> edges;
        edges.reserve(stubs.size() / 2);
        std::set<graph::Edge> seen;
        bool dead_end = false;
        while (!stubs.empty() && !dead_end) {
            bool placed = false;
            for (int tries = 0; tries < 200; ++tries) {
                const size_t i = size_t(rng.next_below(stubs.size()));
                size_t j = size_t(rng.next_below(stubs.size() - 1));
                if (j >= i) ++j;
                const NodeId a = stubs[i];
                const NodeId b = stubs[j];
                if (a == b) continue;
                const auto e = graph::canonical_edge(a, b);
                if (seen.count(e)) continue;
                seen.insert(e);
                edges.push_back(e);
                const size_t hi = std::max(i, j);
                const size_t lo = std::min(i, j);
                stubs[hi] = stubs.back();
                stubs.pop_back();
                stubs[lo] = stubs.back();
                stubs.pop_back();
                placed = true;
                break;
            }
            if (!placed) dead_end = true;
        }
        if (!dead_end) return Graph(m, std::move(edges));
    }
    throw Error("random regular generation failed after bounded retries (m=" +
                std::to_string(m) + ", d=" + std::to_string(d) + ")");
}

std::vector<int64_t> per_node_triangles(const Graph& g) {
    std::vector<int64_t> tri(size_t(g.num_nodes()), 0);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const auto& nb = g.neighbors(v);
        int64_t c = 0;
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++c;
        tri[size_t(v)] = c;
    }
    return tri;
}

std::vector<int64_t> per_node_three_stars(const Graph& g) {
    std::vector<int64_t> st(size_t(g.num_nodes()), 0);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const int64_t d = g.degree(v);
        st[size_t(v)] = d * (d - 1) * (d - 2) / 6;
    }
    return st;
}

int64_t count_substructure(const Graph& g, Substructure kind) {
    if (kind == Substructure::Triangle) {
        const auto tri = per_node_triangles(g);
        return std::accumulate(tri.begin(), tri.end(), int64_t(0)) / 3;
    }
    const auto st = per_node_three_stars(g);
    return std::accumulate(st.begin(), st.end(), int64_t(0));
}

} // namespace gvn::sf
