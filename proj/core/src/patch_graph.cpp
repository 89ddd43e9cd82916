#include "ggd/patch_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace ggd {

namespace {

// Mirror reflection about the border, border pixel not duplicated:
// -1 -> 1, n -> n-2. Valid for offsets up to n-1.
inline int reflect(int i, int n) {
    if (i < 0) return -i;
    if (i >= n) return 2 * (n - 1) - i;
    return i;
}

}  // namespace

PatchMatrix extract_patches(const GrayImage& image, int rho) {
    if (rho % 2 == 0) {
        throw std::invalid_argument("extract_patches: rho must be odd, got " +
                                    std::to_string(rho));
    }
    if (rho < 3 || rho > std::min(image.rows, image.cols)) {
        throw std::invalid_argument("extract_patches: rho " + std::to_string(rho) +
                                    " out of range [3, min(rows, cols) = " +
                                    std::to_string(std::min(image.rows, image.cols)) + "]");
    }
    const int half = (rho - 1) / 2;
    const Eigen::Index n_points = static_cast<Eigen::Index>(image.rows) * image.cols;

    PatchMatrix patches;
    patches.rho = rho;
    patches.image_rows = image.rows;
    patches.image_cols = image.cols;
    patches.data.resize(n_points, static_cast<Eigen::Index>(rho) * rho);

    Eigen::Index k = 0;
    for (int i = 0; i < image.rows; ++i) {
        for (int j = 0; j < image.cols; ++j, ++k) {
            Eigen::Index slot = 0;
            for (int dr = -half; dr <= half; ++dr) {
                const int r = reflect(i + dr, image.rows);
                for (int dc = -half; dc <= half; ++dc, ++slot) {
                    const int c = reflect(j + dc, image.cols);
                    patches.data(k, slot) = image.at(r, c);
                }
            }
        }
    }
    return patches;
}

NeighborGraph knn_graph(const PatchMatrix& patches, int delta) {
    const Eigen::Index n = patches.n_points();
    if (delta < 1 || delta >= n) {
        throw std::invalid_argument("knn_graph: delta " + std::to_string(delta) +
                                    " out of range [1, n_points)");
    }

    NeighborGraph graph;
    graph.n_vertices = static_cast<int>(n);
    graph.delta = delta;
    graph.adjacency.assign(static_cast<size_t>(n), {});

    // Exact brute-force search: squared distances row-block against all
    // points, then partial selection. Distances are evaluated directly
    // (not via the Gram expansion) so duplicates give exact zeros.
    const Eigen::Index block = 128;
    std::vector<std::pair<double, int>> cand(static_cast<size_t>(n));
    Eigen::VectorXd d2(n);

    for (Eigen::Index k = 0; k < n; ++k) {
        const auto row = patches.data.row(k);
        for (Eigen::Index j = 0; j < n; j += block) {
            const Eigen::Index m = std::min(block, n - j);
            d2.segment(j, m) =
                (patches.data.middleRows(j, m).rowwise() - row).rowwise().squaredNorm();
        }
        for (Eigen::Index j = 0; j < n; ++j) cand[static_cast<size_t>(j)] = {d2(j), static_cast<int>(j)};
        // drop self, keep (distance, index) order for deterministic ties
        std::swap(cand[static_cast<size_t>(k)], cand[static_cast<size_t>(n - 1)]);
        std::partial_sort(cand.begin(), cand.begin() + delta, cand.end() - 1);
        auto& adj = graph.adjacency[static_cast<size_t>(k)];
        adj.reserve(static_cast<size_t>(delta) * 2);
        for (int t = 0; t < delta; ++t) {
            adj.emplace_back(cand[static_cast<size_t>(t)].second,
                             std::sqrt(cand[static_cast<size_t>(t)].first));
        }
    }

    // Symmetrize by union.
    for (Eigen::Index k = 0; k < n; ++k) {
        const size_t degree = graph.adjacency[static_cast<size_t>(k)].size();
        for (size_t t = 0; t < degree; ++t) {
            const auto [j, w] = graph.adjacency[static_cast<size_t>(k)][t];
            auto& back = graph.adjacency[static_cast<size_t>(j)];
            bool found = false;
            for (const auto& e : back) {
                if (e.first == static_cast<int>(k)) {
                    found = true;
                    break;
                }
            }
            if (!found) back.emplace_back(static_cast<int>(k), w);
        }
    }
    for (auto& adj : graph.adjacency) {
        std::sort(adj.begin(), adj.end());
    }
    return graph;
}

namespace {

void check_connected(const NeighborGraph& graph) {
    const int n = graph.n_vertices;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [j, w] : graph.adjacency[static_cast<size_t>(v)]) {
            (void)w;
            if (!seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = 1;
                ++count;
                stack.push_back(j);
            }
        }
    }
    if (count != n) {
        int unreachable = -1;
        for (int v = 0; v < n; ++v) {
            if (!seen[static_cast<size_t>(v)]) {
                unreachable = v;
                break;
            }
        }
        throw std::runtime_error(
            "geodesic_distances: graph is disconnected (no path between vertices 0 and " +
            std::to_string(unreachable) + "); increase delta to raise connectivity");
    }
}

GeodesicMatrix floyd_warshall(const NeighborGraph& graph) {
    const Eigen::Index n = graph.n_vertices;
    const double inf = std::numeric_limits<double>::infinity();
    GeodesicMatrix geo;
    geo.d.setConstant(n, n, inf);
    for (Eigen::Index v = 0; v < n; ++v) geo.d(v, v) = 0.0;
    for (Eigen::Index v = 0; v < n; ++v) {
        for (const auto& [j, w] : graph.adjacency[static_cast<size_t>(v)]) {
            geo.d(v, j) = std::min(geo.d(v, j), w);
        }
    }
    auto& d = geo.d;
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double dik = d(i, k);
            if (dik == inf) continue;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double via = dik + d(k, j);
                if (via < d(i, j)) d(i, j) = via;
            }
        }
    }
    return geo;
}

GeodesicMatrix dijkstra_all_sources(const NeighborGraph& graph) {
    const Eigen::Index n = graph.n_vertices;
    const double inf = std::numeric_limits<double>::infinity();
    GeodesicMatrix geo;
    geo.d.resize(n, n);

    using Item = std::pair<double, int>;
    std::vector<double> dist(static_cast<size_t>(n));
    for (Eigen::Index src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[static_cast<size_t>(src)] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0.0, static_cast<int>(src));
        while (!heap.empty()) {
            const auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[static_cast<size_t>(u)]) continue;
            for (const auto& [v, w] : graph.adjacency[static_cast<size_t>(u)]) {
                const double cand = du + w;
                if (cand < dist[static_cast<size_t>(v)]) {
                    dist[static_cast<size_t>(v)] = cand;
                    heap.emplace(cand, v);
                }
            }
        }
        for (Eigen::Index j = 0; j < n; ++j) geo.d(src, j) = dist[static_cast<size_t>(j)];
    }
    return geo;
}

}  // namespace

GeodesicMatrix geodesic_distances(const NeighborGraph& graph, GeodesicAlgorithm algorithm) {
    if (graph.n_vertices <= 0) {
        throw std::invalid_argument("geodesic_distances: empty graph");
    }
    check_connected(graph);
    switch (algorithm) {
        case GeodesicAlgorithm::floyd:
            return floyd_warshall(graph);
        case GeodesicAlgorithm::dijkstra_all:
            return dijkstra_all_sources(graph);
    }
    throw std::invalid_argument("geodesic_distances: unknown algorithm");
}

}  // namespace ggd
