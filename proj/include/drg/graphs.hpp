#pragma once

#include "drg/matrix.hpp"
#include "drg/params.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drg {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotSimple : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite simple graph on vertices 0..n-1. Connectivity is checked at
// construction unless explicitly relaxed (local graphs may be disconnected).
class Graph {
public:
    Graph(int n, const std::vector<std::pair<int, int>>& edges, std::string name,
          bool require_connected = true);

    int n() const { return n_; }
    const std::string& name() const { return name_; }
    bool adjacent(int u, int v) const { return am_[u][v]; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int edge_count() const;
    bool connected() const { return connected_; }

    bool is_regular() const;
    bool is_bipartite() const;

    Mat adjacency_matrix() const;

private:
    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<bool>> am_;
    std::string name_;
    bool connected_;
};

struct DistancePartition {
    int base = 0;
    std::vector<int> dist;
    int eccentricity = 0;
    std::vector<std::vector<int>> cells; // cells[i] = vertices at distance i
};

DistancePartition distances(const Graph& g, int x);

Graph from_edge_list(const std::string& text, const std::string& name = "edge-list");
Graph load_edge_list_file(const std::string& path);

// generators
Graph cycle(int n);
Graph path_graph(int n);
Graph hypercube(int d);
Graph folded_hypercube(int m);
Graph hamming(int d, int n);
Graph johnson(int n, int d);
Graph petersen();
Graph grassmann_q(int n, int d, int q);

struct NotDrgWitness {
    int x = -1, y = -1;
    std::string reason;
};

struct DrgCheck {
    std::optional<IntersectionArray> array;
    std::optional<NotDrgWitness> witness;
    bool is_drg() const { return array.has_value(); }
};

// Cheap pass: constancy of (c_i, a_i, b_i) over all base pairs. The full
// pass additionally verifies constancy of every p^h_{ij} by brute count.
DrgCheck is_distance_regular(const Graph& g, bool full_check = false);

Graph local_graph(const Graph& g, int x);

// 0/1 distance matrix A_i.
Mat distance_matrix(const Graph& g, int i);

// Brute-force count |Gamma_i(x) cap Gamma_j(y)| for one pair.
int count_common(const Graph& g, const std::vector<std::vector<int>>& dist, int x, int y, int i,
                 int j);

// All-pairs distances by BFS from every vertex.
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

} // namespace drg
