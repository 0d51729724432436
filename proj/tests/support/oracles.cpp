#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace topotex::testing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cell {
    int dim = 0;
    double value = 0.0;
    std::vector<int> boundary;  // ids of (dim-1)-cells
};

bool cell_order(const Cell& a, const Cell& b, int ia, int ib) {
    return std::tie(a.value, a.dim, ia) < std::tie(b.value, b.dim, ib);
}

}  // namespace

std::vector<OraclePair> boundary_matrix_diagram(const ScalarGrid& g) {
    const int rows = g.rows, cols = g.cols;
    const auto vid = [cols](int i, int j) { return i * cols + j; };

    std::vector<Cell> cells;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) cells.push_back({0, g(i, j), {}});

    // Edges join 8-neighbors; every 3-clique of that graph lies inside some
    // 2x2 block, so triangles are the four vertex triples of each block.
    std::map<std::pair<int, int>, int> edge_id;
    auto add_edge = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        if (edge_id.count({u, v})) return;
        edge_id[{u, v}] = static_cast<int>(cells.size());
        cells.push_back({1, std::max(cells[u].value, cells[v].value), {u, v}});
    };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) add_edge(vid(i, j), vid(i, j + 1));
            if (i + 1 < rows) add_edge(vid(i, j), vid(i + 1, j));
            if (i + 1 < rows && j + 1 < cols) add_edge(vid(i, j), vid(i + 1, j + 1));
            if (i + 1 < rows && j > 0) add_edge(vid(i, j), vid(i + 1, j - 1));
        }
    for (int i = 0; i + 1 < rows; ++i)
        for (int j = 0; j + 1 < cols; ++j) {
            const int block[4] = {vid(i, j), vid(i, j + 1), vid(i + 1, j), vid(i + 1, j + 1)};
            for (int skip = 0; skip < 4; ++skip) {
                std::vector<int> tri;
                for (int k = 0; k < 4; ++k)
                    if (k != skip) tri.push_back(block[k]);
                std::vector<int> bd;
                for (int a = 0; a < 3; ++a)
                    for (int b = a + 1; b < 3; ++b) {
                        int u = tri[a], v = tri[b];
                        if (u > v) std::swap(u, v);
                        bd.push_back(edge_id.at({u, v}));
                    }
                double val = std::max({cells[tri[0]].value, cells[tri[1]].value,
                                       cells[tri[2]].value});
                cells.push_back({2, val, bd});
            }
        }

    const int n = static_cast<int>(cells.size());
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cell_order(cells[a], cells[b], a, b); });
    std::vector<int> rank(n);
    for (int k = 0; k < n; ++k) rank[order[k]] = k;

    // Standard reduction: columns hold filtration ranks of boundary cells.
    std::vector<std::vector<int>> col(n);
    for (int k = 0; k < n; ++k) {
        std::vector<int> c;
        for (int b : cells[order[k]].boundary) c.push_back(rank[b]);
        std::sort(c.begin(), c.end());
        col[k] = std::move(c);
    }
    auto add_into = [](std::vector<int>& dst, const std::vector<int>& src) {
        std::vector<int> out;
        std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                      std::back_inserter(out));
        dst = std::move(out);
    };

    std::vector<int> pair_of(n, -1);   // low rank -> killing column rank
    std::vector<char> positive(n, 0);  // column reduced to zero (creates a class)
    for (int k = 0; k < n; ++k) {
        while (!col[k].empty()) {
            const int low = col[k].back();
            if (pair_of[low] < 0) break;
            add_into(col[k], col[pair_of[low]]);
        }
        if (col[k].empty()) {
            positive[k] = 1;
        } else {
            pair_of[col[k].back()] = k;
        }
    }

    std::vector<OraclePair> out;
    for (int k = 0; k < n; ++k) {
        if (!positive[k]) continue;
        const Cell& birth_cell = cells[order[k]];
        if (pair_of[k] >= 0) {
            const Cell& death_cell = cells[order[pair_of[k]]];
            if (death_cell.value > birth_cell.value)
                out.push_back({birth_cell.dim, birth_cell.value, death_cell.value});
        } else {
            out.push_back({birth_cell.dim, birth_cell.value, kInf});
        }
    }
    return out;
}

std::vector<OraclePair> diagram_points(const Diagram& d, int dim) {
    std::vector<OraclePair> out;
    for (const auto& p : d.pairs)
        if (p.dim == dim) out.push_back({p.dim, p.birth, p.death});
    return oracle_points(out, dim);
}

std::vector<OraclePair> oracle_points(const std::vector<OraclePair>& pairs, int dim) {
    std::vector<OraclePair> out;
    for (const auto& p : pairs)
        if (p.dim == dim) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const OraclePair& a, const OraclePair& b) {
        return std::tie(a.birth, a.death) < std::tie(b.birth, b.death);
    });
    return out;
}

bool same_points(const std::vector<OraclePair>& a, const std::vector<OraclePair>& b) {
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k].birth != b[k].birth || a[k].death != b[k].death) return false;
    return true;
}

ScalarGrid brute_force_distance_transform(const BinaryGrid& b) {
    std::vector<std::pair<int, int>> black;
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (!b(i, j)) black.emplace_back(i, j);
    if (black.empty()) throw std::domain_error("no black pixel");

    ScalarGrid out;
    out.rows = b.rows;
    out.cols = b.cols;
    out.width_mm = static_cast<double>(b.cols);
    out.values.resize(b.size());
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            long long best = std::numeric_limits<long long>::max();
            for (const auto& [bi, bj] : black) {
                const long long di = i - bi, dj = j - bj;
                best = std::min(best, di * di + dj * dj);
            }
            out(i, j) = std::sqrt(static_cast<double>(best));
        }
    return out;
}

double transport_emd(const LifetimeDistribution& u, const LifetimeDistribution& v) {
    const int m = static_cast<int>(u.points.size());
    const int n = static_cast<int>(v.points.size());
    if (m == 0 || n == 0) throw std::domain_error("empty distribution");

    // Min-cost flow on source -> suppliers -> consumers -> sink with
    // Bellman-Ford shortest paths over the residual network.
    const int S = m + n, T = m + n + 1, N = m + n + 2;
    struct Arc {
        int to;
        double cap;
        double cost;
        int rev;
    };
    std::vector<std::vector<Arc>> adj(N);
    auto add_arc = [&](int a, int b, double cap, double cost) {
        adj[a].push_back({b, cap, cost, static_cast<int>(adj[b].size())});
        adj[b].push_back({a, 0.0, -cost, static_cast<int>(adj[a].size()) - 1});
    };
    for (int i = 0; i < m; ++i) add_arc(S, i, u.weights[i], 0.0);
    for (int j = 0; j < n; ++j) add_arc(m + j, T, v.weights[j], 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            add_arc(i, m + j, kInf, std::abs(u.points[i] - v.points[j]));

    double total_cost = 0.0;
    for (;;) {
        std::vector<double> dist(N, kInf);
        std::vector<int> prev_node(N, -1), prev_arc(N, -1);
        dist[S] = 0.0;
        for (int pass = 0; pass < N; ++pass) {
            bool changed = false;
            for (int a = 0; a < N; ++a) {
                if (dist[a] == kInf) continue;
                for (int e = 0; e < static_cast<int>(adj[a].size()); ++e) {
                    const Arc& arc = adj[a][e];
                    if (arc.cap <= 1e-15) continue;
                    if (dist[a] + arc.cost < dist[arc.to] - 1e-15) {
                        dist[arc.to] = dist[a] + arc.cost;
                        prev_node[arc.to] = a;
                        prev_arc[arc.to] = e;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (dist[T] == kInf) break;
        double push = kInf;
        for (int a = T; a != S; a = prev_node[a])
            push = std::min(push, adj[prev_node[a]][prev_arc[a]].cap);
        for (int a = T; a != S; a = prev_node[a]) {
            Arc& arc = adj[prev_node[a]][prev_arc[a]];
            arc.cap -= push;
            adj[arc.to][arc.rev].cap += push;
        }
        total_cost += push * dist[T];
    }
    return total_cost;
}

}  // namespace topotex::testing
