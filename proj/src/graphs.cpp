#include "drg/graphs.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

namespace drg {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges, std::string name,
             bool require_connected)
    : n_(n), adj_(n), am_(n, std::vector<bool>(n, false)), name_(std::move(name)) {
    if (n <= 0) throw ParseError("graph needs at least one vertex");
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        if (u == v) throw NotSimple("loop at vertex " + std::to_string(u));
        if (am_[u][v]) throw NotSimple("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        am_[u][v] = am_[v][u] = true;
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    // connectivity
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                q.push(w);
            }
    }
    connected_ = (reached == n);
    if (require_connected && !connected_) throw Disconnected("graph is not connected");
}

int Graph::edge_count() const {
    int m = 0;
    for (const auto& a : adj_) m += static_cast<int>(a.size());
    return m / 2;
}

bool Graph::is_regular() const {
    for (int v = 1; v < n_; ++v)
        if (degree(v) != degree(0)) return false;
    return true;
}

bool Graph::is_bipartite() const {
    std::vector<int> color(n_, -1);
    for (int s = 0; s < n_; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj_[v]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    q.push(w);
                } else if (color[w] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

Mat Graph::adjacency_matrix() const {
    Mat a(n_, n_);
    for (int v = 0; v < n_; ++v)
        for (int w : adj_[v]) a(v, w) = 1;
    return a;
}

DistancePartition distances(const Graph& g, int x) {
    DRG_CHECK(x >= 0 && x < g.n(), "distances: base vertex out of range");
    DistancePartition dp;
    dp.base = x;
    dp.dist.assign(g.n(), -1);
    dp.dist[x] = 0;
    std::queue<int> q;
    q.push(x);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v))
            if (dp.dist[w] == -1) {
                dp.dist[w] = dp.dist[v] + 1;
                q.push(w);
            }
    }
    dp.eccentricity = 0;
    for (int v = 0; v < g.n(); ++v) {
        DRG_CHECK(dp.dist[v] >= 0, "distances: graph must be connected");
        dp.eccentricity = std::max(dp.eccentricity, dp.dist[v]);
    }
    dp.cells.assign(dp.eccentricity + 1, {});
    for (int v = 0; v < g.n(); ++v) dp.cells[dp.dist[v]].push_back(v);
    return dp;
}

Graph from_edge_list(const std::string& text, const std::string& name) {
    std::vector<long> tokens;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t pos = 0;
                long v = std::stol(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                tokens.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("bad token '" + tok + "' in edge list");
            }
        }
    }
    if (tokens.empty()) throw ParseError("empty edge list");
    if (tokens.size() % 2 == 0) throw ParseError("edge list must be: n, then u v pairs");
    long n = tokens[0];
    if (n <= 0 || n > 1000000) throw ParseError("bad vertex count");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 1; i + 1 < tokens.size(); i += 2)
        edges.emplace_back(static_cast<int>(tokens[i]), static_cast<int>(tokens[i + 1]));
    return Graph(static_cast<int>(n), edges, name);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string base = path;
    auto slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    return from_edge_list(ss.str(), base);
}

Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e, "cycle(" + std::to_string(n) + ")");
}

Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e, "path(" + std::to_string(n) + ")");
}

Graph hypercube(int d) {
    if (d < 1 || d > 20) throw std::invalid_argument("hypercube needs 1 <= d <= 20");
    int n = 1 << d;
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < d; ++b) {
            int w = v ^ (1 << b);
            if (v < w) e.emplace_back(v, w);
        }
    return Graph(n, e, "hypercube(" + std::to_string(d) + ")");
}

Graph folded_hypercube(int m) {
    if (m < 3 || m > 21) throw std::invalid_argument("folded_hypercube needs 3 <= m <= 21");
    int n = 1 << (m - 1);
    int mask = (1 << m) - 1;
    std::set<std::pair<int, int>> e;
    for (int v = 0; v < n; ++v)
        for (int b = 0; b < m; ++b) {
            int w = v ^ (1 << b);
            if (w & (1 << (m - 1))) w ^= mask; // canonical class representative
            e.insert({std::min(v, w), std::max(v, w)});
        }
    std::vector<std::pair<int, int>> ev(e.begin(), e.end());
    return Graph(n, ev, "folded_hypercube(" + std::to_string(m) + ")");
}

Graph hamming(int d, int n) {
    if (d < 1 || n < 2) throw std::invalid_argument("hamming needs d >= 1, n >= 2");
    long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= n;
        if (total > 1000000) throw std::invalid_argument("hamming graph too large");
    }
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < total; ++v) {
        int place = 1;
        for (int pos = 0; pos < d; ++pos) {
            int digit = (v / place) % n;
            for (int other = 0; other < n; ++other) {
                if (other == digit) continue;
                int w = v + (other - digit) * place;
                if (v < w) e.emplace_back(v, w);
            }
            place *= n;
        }
    }
    return Graph(static_cast<int>(total), e,
                 "hamming(" + std::to_string(d) + "," + std::to_string(n) + ")");
}

namespace {

std::vector<unsigned> k_subsets(int n, int d) {
    std::vector<unsigned> out;
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
        unsigned m = 0;
        for (int i : idx) m |= 1u << i;
        out.push_back(m);
        int i = d - 1;
        while (i >= 0 && idx[i] == n - d + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

} // namespace

Graph johnson(int n, int d) {
    if (n < 2 || d < 1 || d >= n || n > 20) throw std::invalid_argument("johnson needs 1 <= d < n <= 20");
    auto verts = k_subsets(n, d);
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (__builtin_popcount(verts[i] & verts[j]) == d - 1) e.emplace_back(i, j);
    return Graph(static_cast<int>(verts.size()), e,
                 "johnson(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

Graph petersen() {
    auto verts = k_subsets(5, 2);
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if ((verts[i] & verts[j]) == 0) e.emplace_back(i, j);
    return Graph(10, e, "petersen");
}

namespace {

// d x n matrices over GF(q) in reduced echelon form, one per d-subspace.
struct Gf {
    int q;
    int add(int a, int b) const { return (a + b) % q; }
    int sub(int a, int b) const { return (a - b % q + q) % q; }
    int mul(int a, int b) const { return (a * b) % q; }
    int inv(int a) const {
        for (int x = 1; x < q; ++x)
            if (mul(a, x) == 1) return x;
        throw internal_error("gf inverse of zero");
    }
};

int gf_rank(std::vector<std::vector<int>> m, const Gf& f) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == -1) continue;
        std::swap(m[r], m[piv]);
        int iv = f.inv(m[r][c]);
        for (int j = 0; j < cols; ++j) m[r][j] = f.mul(m[r][j], iv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            int factor = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
        }
        ++r;
    }
    return r;
}

} // namespace

Graph grassmann_q(int n, int d, int q) {
    if (q != 2 && q != 3) throw std::invalid_argument("grassmann_q supports field orders 2 and 3");
    if (n < 2 || d < 1 || d >= n || n > 5) throw std::invalid_argument("grassmann_q needs 1 <= d < n <= 5");
    Gf f{q};
    std::vector<std::vector<std::vector<int>>> spaces;
    // enumerate RREF shapes: pivot columns + free entries
    std::vector<int> cols(d);
    std::function<void(int, int)> pick = [&](int pos, int start) {
        if (pos == d) {
            std::vector<std::pair<int, int>> free_cells;
            for (int i = 0; i < d; ++i)
                for (int j = cols[i] + 1; j < n; ++j) {
                    bool pivot_col = false;
                    for (int t = 0; t < d; ++t)
                        if (cols[t] == j) pivot_col = true;
                    if (!pivot_col) free_cells.emplace_back(i, j);
                }
            long total = 1;
            for (std::size_t t = 0; t < free_cells.size(); ++t) total *= q;
            for (long code = 0; code < total; ++code) {
                std::vector<std::vector<int>> m(d, std::vector<int>(n, 0));
                for (int i = 0; i < d; ++i) m[i][cols[i]] = 1;
                long c = code;
                for (auto [i, j] : free_cells) {
                    m[i][j] = static_cast<int>(c % q);
                    c /= q;
                }
                spaces.push_back(std::move(m));
            }
            return;
        }
        for (int c = start; c <= n - (d - pos); ++c) {
            cols[pos] = c;
            pick(pos + 1, c + 1);
        }
    };
    pick(0, 0);

    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < spaces.size(); ++i)
        for (std::size_t j = i + 1; j < spaces.size(); ++j) {
            std::vector<std::vector<int>> stacked = spaces[i];
            stacked.insert(stacked.end(), spaces[j].begin(), spaces[j].end());
            if (gf_rank(std::move(stacked), f) == d + 1) e.emplace_back(i, j);
        }
    return Graph(static_cast<int>(spaces.size()), e,
                 "grassmann_q(" + std::to_string(n) + "," + std::to_string(d) + "," +
                     std::to_string(q) + ")");
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    std::vector<std::vector<int>> d(g.n());
    for (int v = 0; v < g.n(); ++v) d[v] = distances(g, v).dist;
    return d;
}

int count_common(const Graph& g, const std::vector<std::vector<int>>& dist, int x, int y, int i,
                 int j) {
    int c = 0;
    for (int z = 0; z < g.n(); ++z)
        if (dist[x][z] == i && dist[y][z] == j) ++c;
    return c;
}

DrgCheck is_distance_regular(const Graph& g, bool full_check) {
    DrgCheck out;
    auto dist = all_pairs_distances(g);
    int D = 0;
    for (int v = 0; v < g.n(); ++v)
        for (int w = 0; w < g.n(); ++w) D = std::max(D, dist[v][w]);
    // all eccentricities must agree
    for (int v = 0; v < g.n(); ++v) {
        int ecc = *std::max_element(dist[v].begin(), dist[v].end());
        if (ecc != D) {
            out.witness = NotDrgWitness{v, -1, "eccentricity " + std::to_string(ecc) +
                                                   " differs from diameter " + std::to_string(D)};
            return out;
        }
    }
    std::vector<int> cs(D + 1, -1), as(D + 1, -1), bs(D + 1, -1);
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) {
            int h = dist[x][y];
            int c = 0, a = 0, b = 0;
            for (int z : g.neighbors(y)) {
                if (dist[x][z] == h - 1) ++c;
                else if (dist[x][z] == h) ++a;
                else ++b;
            }
            if (cs[h] == -1) {
                cs[h] = c;
                as[h] = a;
                bs[h] = b;
            } else if (cs[h] != c || as[h] != a || bs[h] != b) {
                out.witness = NotDrgWitness{
                    x, y,
                    "intersection numbers at distance " + std::to_string(h) + " differ: (" +
                        std::to_string(c) + "," + std::to_string(a) + "," + std::to_string(b) +
                        ") vs (" + std::to_string(cs[h]) + "," + std::to_string(as[h]) + "," +
                        std::to_string(bs[h]) + ")"};
                return out;
            }
        }
    std::vector<Rat> bvec, cvec;
    for (int i = 0; i < D; ++i) bvec.emplace_back(bs[i]);
    for (int i = 1; i <= D; ++i) cvec.emplace_back(cs[i]);
    IntersectionArray ia = array_from_bc(bvec, cvec);
    DRG_CHECK(ia.n == g.n(), "detected array disagrees with vertex count");

    if (full_check) {
        IntersectionNumbers tab(ia);
        for (int x = 0; x < g.n(); ++x)
            for (int y = 0; y < g.n(); ++y) {
                int h = dist[x][y];
                for (int i = 0; i <= D; ++i)
                    for (int j = 0; j <= D; ++j)
                        if (Rat(count_common(g, dist, x, y, i, j)) != tab.p(h, i, j)) {
                            out.witness = NotDrgWitness{
                                x, y, "p^" + std::to_string(h) + "_{" + std::to_string(i) + "," +
                                          std::to_string(j) + "} varies"};
                            return out;
                        }
            }
    }
    out.array = std::move(ia);
    return out;
}

Graph local_graph(const Graph& g, int x) {
    DRG_CHECK(x >= 0 && x < g.n(), "local_graph: vertex out of range");
    const auto& nb = g.neighbors(x);
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (g.adjacent(nb[i], nb[j])) e.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return Graph(static_cast<int>(nb.size()), e, g.name() + "/local(" + std::to_string(x) + ")",
                 /*require_connected=*/false);
}

Mat distance_matrix(const Graph& g, int i) {
    auto dist = all_pairs_distances(g);
    int D = 0;
    for (int v = 0; v < g.n(); ++v)
        for (int w = 0; w < g.n(); ++w) D = std::max(D, dist[v][w]);
    if (i < 0 || i > D) throw std::invalid_argument("distance_matrix: index out of range");
    Mat a(g.n(), g.n());
    for (int v = 0; v < g.n(); ++v)
        for (int w = 0; w < g.n(); ++w)
            if (dist[v][w] == i) a(v, w) = 1;
    return a;
}

} // namespace drg
