#include "topotex/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace topotex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
    std::vector<int> parent;
    std::vector<int> size;
    // Index of the pixel that created each component (its extremum); the
    // component's birth value is the grid value there.
    std::vector<int> origin;

    explicit UnionFind(int n) : parent(n), size(n, 1), origin(n, -1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        int root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            int next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }

    int unite(int a, int b) {  // returns the surviving root
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return a;
    }
};

int neighbor_count(Connectivity conn) { return conn == Connectivity::Eight ? 8 : 4; }

constexpr int kDi[8] = {0, 0, -1, 1, -1, -1, 1, 1};
constexpr int kDj[8] = {-1, 1, 0, 0, -1, 1, -1, 1};

}  // namespace

int Diagram::count(int dim, bool include_essential) const {
    int c = 0;
    for (const auto& p : pairs)
        if (p.dim == dim && (include_essential || !p.essential())) ++c;
    return c;
}

Diagram sublevel_h0(const ScalarGrid& g, Connectivity conn) {
    validate(g, "sublevel_h0");
    const int rows = g.rows, cols = g.cols;
    const int total = rows * cols;
    const double* v = g.values.data();

    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [v](int a, int b) {
        return v[a] != v[b] ? v[a] < v[b] : a < b;
    });

    UnionFind uf(total);
    std::vector<char> seen(total, 0);
    const int nn = neighbor_count(conn);

    Diagram d;
    d.rows = rows;
    d.cols = cols;

    for (int idx : order) {
        const int i = idx / cols, j = idx % cols;
        seen[idx] = 1;
        uf.origin[idx] = idx;
        int root = idx;
        for (int k = 0; k < nn; ++k) {
            const int ni = i + kDi[k], nj = j + kDj[k];
            if (ni < 0 || ni >= rows || nj < 0 || nj >= cols) continue;
            const int nidx = ni * cols + nj;
            if (!seen[nidx]) continue;
            const int nroot = uf.find(nidx);
            root = uf.find(root);
            if (nroot == root) continue;
            // Elder rule: the component with the lower (value, index) minimum
            // survives; the younger one dies here.
            int elder = nroot, younger = root;
            const int oe = uf.origin[nroot], oy = uf.origin[root];
            if (v[oe] > v[oy] || (v[oe] == v[oy] && oe > oy)) {
                std::swap(elder, younger);
            }
            const int dead_origin = uf.origin[younger];
            if (v[dead_origin] != v[idx]) {
                PersistencePair p;
                p.dim = 0;
                p.birth = v[dead_origin];
                p.death = v[idx];
                p.birth_row = dead_origin / cols;
                p.birth_col = dead_origin % cols;
                p.death_row = i;
                p.death_col = j;
                d.pairs.push_back(p);
            }
            const int survivor = uf.unite(elder, younger);
            uf.origin[survivor] = uf.origin[elder];
            root = survivor;
        }
    }

    // One essential class per connected component (a full grid has one).
    std::vector<char> reported(total, 0);
    for (int idx : order) {
        const int root = uf.find(idx);
        if (reported[root]) continue;
        reported[root] = 1;
        const int o = uf.origin[root];
        PersistencePair p;
        p.dim = 0;
        p.birth = v[o];
        p.death = kInf;
        p.birth_row = o / cols;
        p.birth_col = o % cols;
        d.pairs.push_back(p);
    }
    return d;
}

Diagram sublevel_h1(const ScalarGrid& g, Connectivity conn) {
    validate(g, "sublevel_h1");
    const int rows = g.rows, cols = g.cols;
    const int total = rows * cols;
    const double* v = g.values.data();

    // Loops of the sublevel filtration are components of the superlevel one
    // under the complementary adjacency, tracked against a virtual outside
    // region that is elder to everything and adjacent to every border pixel.
    const Connectivity dual =
        conn == Connectivity::Eight ? Connectivity::Four : Connectivity::Eight;
    const int nn = neighbor_count(dual);

    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [v](int a, int b) {
        return v[a] != v[b] ? v[a] > v[b] : a < b;
    });

    const int outside = total;  // extra union-find slot
    UnionFind uf(total + 1);
    uf.origin[outside] = outside;
    std::vector<char> seen(total, 0);

    Diagram d;
    d.rows = rows;
    d.cols = cols;

    // Higher max wins; the outside slot outranks any pixel.
    auto is_elder = [&](int origin_a, int origin_b) {
        if (origin_a == outside) return true;
        if (origin_b == outside) return false;
        if (v[origin_a] != v[origin_b]) return v[origin_a] > v[origin_b];
        return origin_a < origin_b;
    };

    for (int idx : order) {
        const int i = idx / cols, j = idx % cols;
        seen[idx] = 1;
        uf.origin[idx] = idx;
        int root = idx;
        const bool border = i == 0 || i == rows - 1 || j == 0 || j == cols - 1;
        for (int k = 0; k <= nn; ++k) {
            int nidx;
            if (k < nn) {
                const int ni = i + kDi[k], nj = j + kDj[k];
                if (ni < 0 || ni >= rows || nj < 0 || nj >= cols) continue;
                nidx = ni * cols + nj;
                if (!seen[nidx]) continue;
            } else {
                if (!border) continue;
                nidx = outside;
            }
            const int nroot = uf.find(nidx);
            root = uf.find(root);
            if (nroot == root) continue;
            int elder = nroot, younger = root;
            if (!is_elder(uf.origin[nroot], uf.origin[root])) std::swap(elder, younger);
            const int dead_origin = uf.origin[younger];
            if (v[dead_origin] != v[idx]) {
                PersistencePair p;
                p.dim = 1;
                p.birth = v[idx];
                p.death = v[dead_origin];
                p.birth_row = i;
                p.birth_col = j;
                p.death_row = dead_origin / cols;
                p.death_col = dead_origin % cols;
                d.pairs.push_back(p);
            }
            const int survivor = uf.unite(elder, younger);
            uf.origin[survivor] = uf.origin[elder];
            root = survivor;
        }
    }
    return d;
}

std::vector<double> lifetimes(const Diagram& d, int dim, bool include_essential) {
    std::vector<double> out;
    for (const auto& p : d.pairs) {
        if (p.dim != dim) continue;
        if (p.essential() && !include_essential) continue;
        out.push_back(p.lifetime());
    }
    return out;
}

namespace {

struct Point {
    double birth, death;
};

double linf(const Point& a, const Point& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Kuhn augmenting-path matching on the standard diagram-vs-diagram bipartite
// graph: left side holds A's points plus one diagonal slot per B point, right
// side holds B's points plus one diagonal slot per A point. A point may pair
// with its own diagonal projection when its half-lifetime fits the budget;
// diagonal slots pair with each other freely.
struct BottleneckGraph {
    const std::vector<Point>& a;
    const std::vector<Point>& b;
    double c = 0.0;
    std::vector<int> match_right;  // right vertex -> left vertex
    std::vector<char> visited;

    BottleneckGraph(const std::vector<Point>& a_, const std::vector<Point>& b_) : a(a_), b(b_) {}

    int left_count() const { return static_cast<int>(a.size() + b.size()); }
    int right_count() const { return static_cast<int>(a.size() + b.size()); }

    bool edge(int l, int r) const {
        const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
        const bool l_real = l < na;          // a point (else diagonal slot of b[l - na])
        const bool r_real = r < nb;          // b point (else diagonal slot of a[r - nb])
        if (l_real && r_real) return linf(a[l], b[r]) <= c;
        if (l_real && !r_real)
            return r - nb == l && (a[l].death - a[l].birth) / 2.0 <= c;
        if (!l_real && r_real)
            return l - na == r && (b[r].death - b[r].birth) / 2.0 <= c;
        return true;
    }

    bool try_augment(int l) {
        for (int r = 0; r < right_count(); ++r) {
            if (visited[r] || !edge(l, r)) continue;
            visited[r] = 1;
            if (match_right[r] < 0 || try_augment(match_right[r])) {
                match_right[r] = l;
                return true;
            }
        }
        return false;
    }

    bool perfect_matching(double budget) {
        c = budget;
        match_right.assign(right_count(), -1);
        for (int l = 0; l < left_count(); ++l) {
            visited.assign(right_count(), 0);
            if (!try_augment(l)) return false;
        }
        return true;
    }
};

}  // namespace

double bottleneck(const Diagram& da, const Diagram& db, int dim) {
    std::vector<Point> a, b;
    std::vector<double> ess_a, ess_b;
    for (const auto& p : da.pairs) {
        if (p.dim != dim) continue;
        if (p.essential())
            ess_a.push_back(p.birth);
        else
            a.push_back({p.birth, p.death});
    }
    for (const auto& p : db.pairs) {
        if (p.dim != dim) continue;
        if (p.essential())
            ess_b.push_back(p.birth);
        else
            b.push_back({p.birth, p.death});
    }

    if (ess_a.size() != ess_b.size()) return kInf;
    std::sort(ess_a.begin(), ess_a.end());
    std::sort(ess_b.begin(), ess_b.end());
    double essential_cost = 0.0;
    for (size_t k = 0; k < ess_a.size(); ++k)
        essential_cost = std::max(essential_cost, std::abs(ess_a[k] - ess_b[k]));

    if (a.empty() && b.empty()) return essential_cost;

    std::vector<double> candidates;
    candidates.push_back(essential_cost);
    for (const auto& p : a) candidates.push_back((p.death - p.birth) / 2.0);
    for (const auto& p : b) candidates.push_back((p.death - p.birth) / 2.0);
    for (const auto& pa : a)
        for (const auto& pb : b) candidates.push_back(linf(pa, pb));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    candidates.erase(candidates.begin(),
                     std::lower_bound(candidates.begin(), candidates.end(), essential_cost));

    BottleneckGraph graph(a, b);
    size_t lo = 0, hi = candidates.size() - 1;
    // The largest candidate always admits a matching (everything fits the diagonal
    // or each other at max distance), so the search is well defined.
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (graph.perfect_matching(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

void save_diagram_csv(const Diagram& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << "dim,birth,death,birth_row,birth_col\n";
    char buf[96];
    for (const auto& p : d.pairs) {
        if (p.essential()) {
            std::snprintf(buf, sizeof(buf), "%d,%.17g,inf,%d,%d\n", p.dim, p.birth, p.birth_row,
                          p.birth_col);
        } else {
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d,%d\n", p.dim, p.birth, p.death,
                          p.birth_row, p.birth_col);
        }
        out << buf;
    }
    if (!out) throw std::invalid_argument(path + ": write failed");
}

Diagram load_diagram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open for reading");
    std::string line;
    if (!std::getline(in, line) || line.rfind("dim,birth,death,birth_row,birth_col", 0) != 0)
        throw std::invalid_argument(path + ": missing diagram CSV header");
    Diagram d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 5) throw std::invalid_argument(path + ": malformed diagram row");
        PersistencePair p;
        p.dim = std::stoi(cells[0]);
        p.birth = std::stod(cells[1]);
        p.death = cells[2] == "inf" ? kInf : std::stod(cells[2]);
        p.birth_row = std::stoi(cells[3]);
        p.birth_col = std::stoi(cells[4]);
        d.pairs.push_back(p);
    }
    return d;
}

}  // namespace topotex
