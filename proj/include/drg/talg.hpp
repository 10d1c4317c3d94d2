#pragma once

#include "drg/graphs.hpp"
#include "drg/matrix.hpp"

#include <optional>
#include <vector>

namespace drg {

enum class TMode { full, bipartite_quotient };

struct NotThin : std::runtime_error {
    NotThin() : std::runtime_error("operation needs a thin module") {}
};
struct NotEndpointOne : std::runtime_error {
    NotEndpointOne() : std::runtime_error("operation needs an endpoint-1 module") {}
};
struct NotBipartite : std::runtime_error {
    NotBipartite() : std::runtime_error("operation needs a bipartite context (F = 0)") {}
};

// Base-vertex context: dual idempotent partition and the lowering / flat /
// raising action, over exact rationals. In bipartite_quotient mode the
// working adjacency is A_f = L + R on the same vertex set.
class TerwilligerContext {
public:
    TerwilligerContext(Graph g, int x, TMode mode);

    const Graph& graph() const { return g_; }
    int base() const { return x_; }
    int eccentricity() const { return eps_; }
    TMode mode() const { return mode_; }
    int n() const { return g_.n(); }
    int level_of(int v) const { return dp_.dist[v]; }
    const DistancePartition& partition() const { return dp_; }

    // F = 0, i.e. no edge joins two vertices of the same cell
    bool flat_is_zero() const { return flat_edges_.empty(); }

    Vec apply_L(const Vec& v) const;
    Vec apply_F(const Vec& v) const;
    Vec apply_R(const Vec& v) const;
    // working adjacency: L+F+R in full mode, L+R in quotient mode
    Vec apply_adjacency(const Vec& v) const;
    Vec project_level(const Vec& v, int i) const;

    Mat matrix_L() const;
    Mat matrix_F() const;
    Mat matrix_R() const;
    Mat dual_idempotent(int i) const;

private:
    Graph g_;
    int x_;
    TMode mode_;
    DistancePartition dp_;
    int eps_;
    std::vector<std::pair<int, int>> down_edges_; // (v, w) with level(w) = level(v) - 1
    std::vector<std::pair<int, int>> flat_edges_;

    void check_invariants() const;
};

TerwilligerContext build_context(const Graph& g, int x, TMode mode);

// A T-invariant subspace split into its level components; levels hold
// orthogonal (non-normalized) bases.
struct TModule {
    int endpoint = 0;
    int diameter = 0;
    std::vector<std::vector<Vec>> levels; // indexed by absolute level 0..eps
    bool thin = false;
    bool irreducible_verified = false;
    std::optional<Rat> local_eigenvalue;  // thin endpoint-1 modules
    std::vector<Rat> level_products;      // thin modules: pi_0..pi_{d-1}

    int dim() const;
    int level_dim(int i) const;
    // the unique (up to scale) level vector of a thin module
    const Vec& line(int i) const;
};

struct Decomposition {
    std::vector<TModule> modules;
    int total_dim = 0;
};

// Orthogonal decomposition of the standard module into T-invariant pieces:
// trivial module first, then endpoints in increasing order. Thin modules
// carry verified irreducibility via the level-regeneration test.
Decomposition decompose(const TerwilligerContext& ctx);

// Same machinery restricted to the T-closure of the given vectors; used to
// split injected reducible subspaces.
Decomposition decompose_subspace(const TerwilligerContext& ctx, const std::vector<Vec>& span);

// T-closure of a single seed vector.
TModule closure_of(const TerwilligerContext& ctx, const Vec& seed);

Rat local_eigenvalue(const TerwilligerContext& ctx, const TModule& w);

std::vector<Rat> level_products(const TerwilligerContext& ctx, const TModule& w);

// Thin modules are T_f-isomorphic iff endpoint, diameter, and level
// products all agree.
bool tf_isomorphic(const TModule& a, const TModule& b);

struct CanonicalBasis {
    std::vector<Vec> vectors; // E_{i+1}* A_i v
    std::vector<Rat> beta;    // L action: beta_1..beta_d
    std::vector<Rat> gamma;   // R action: gamma_0..gamma_{d-1}
    int actual_diameter = 0;  // reported when the vectors vanish early
};

CanonicalBasis canonical_basis(const TerwilligerContext& ctx, const TModule& w, const Vec& v);

struct ThinnessReport {
    std::vector<bool> thin;
    bool all_thin = true;
};

ThinnessReport thinness_report(const Decomposition& dec);

} // namespace drg
