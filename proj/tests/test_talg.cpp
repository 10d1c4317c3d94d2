#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drg/linalg.hpp"
#include "drg/talg.hpp"

#include <map>

using namespace drg;

namespace {

Vec unit(int n, int v) {
    Vec e(n, Rat(0));
    e[v] = 1;
    return e;
}

void check_action_containment(const TerwilligerContext& ctx, const TModule& m) {
    for (int i = 0; i <= ctx.eccentricity(); ++i)
        for (const auto& w : m.levels[i]) {
            Vec lw = ctx.apply_L(w), rw = ctx.apply_R(w);
            for (int v = 0; v < ctx.n(); ++v) {
                if (lw[v] != 0) CHECK(ctx.level_of(v) == i - 1);
                if (rw[v] != 0) CHECK(ctx.level_of(v) == i + 1);
            }
            if (ctx.mode() == TMode::full) {
                Vec fw = ctx.apply_F(w);
                for (int v = 0; v < ctx.n(); ++v)
                    if (fw[v] != 0) CHECK(ctx.level_of(v) == i);
            }
        }
}

void check_orthogonality(const Decomposition& dec) {
    for (std::size_t a = 0; a < dec.modules.size(); ++a)
        for (std::size_t b = a + 1; b < dec.modules.size(); ++b)
            for (std::size_t i = 0; i < dec.modules[a].levels.size(); ++i)
                for (const auto& u : dec.modules[a].levels[i])
                    for (const auto& v : dec.modules[b].levels[i]) CHECK(dot(u, v) == 0);
}

} // namespace

TEST_SUITE_BEGIN("terwilliger algebra");

TEST_CASE("build_context invariants") {
    SUBCASE("hypercube(3) is bipartite: F = 0") {
        auto ctx = build_context(hypercube(3), 0, TMode::full);
        CHECK(ctx.flat_is_zero());
        CHECK(ctx.matrix_F().is_zero());
    }
    SUBCASE("folded 5-cube: F nonzero and A_f = A - F") {
        Graph g = folded_hypercube(5);
        auto ctx = build_context(g, 0, TMode::bipartite_quotient);
        CHECK_FALSE(ctx.flat_is_zero());
        Mat af = ctx.matrix_L() + ctx.matrix_R();
        CHECK(af == g.adjacency_matrix() - ctx.matrix_F());
    }
    SUBCASE("triangle from a vertex: eps = 1, L has two entries") {
        Graph tri = from_edge_list("3\n0 1\n0 2\n1 2\n");
        auto ctx = build_context(tri, 0, TMode::full);
        CHECK(ctx.eccentricity() == 1);
        Mat l = ctx.matrix_L();
        int nz = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (l(i, j) != 0) ++nz;
        CHECK(nz == 2);
    }
}

TEST_CASE("decompose the triangle") {
    Graph tri = from_edge_list("3\n0 1\n0 2\n1 2\n");
    auto ctx = build_context(tri, 0, TMode::full);
    auto dec = decompose(ctx);
    REQUIRE(dec.modules.size() == 2);
    CHECK(dec.total_dim == 3);
    const TModule& trivial = dec.modules[0];
    CHECK(trivial.endpoint == 0);
    CHECK(trivial.diameter == 1);
    CHECK(trivial.dim() == 2);
    const TModule& w = dec.modules[1];
    CHECK(w.endpoint == 1);
    CHECK(w.diameter == 0);
    CHECK(w.thin);
    CHECK(w.irreducible_verified);
    // local graph of the triangle is a single edge: spectrum {1, -1}, and the
    // non-principal endpoint-1 module carries -1
    CHECK(local_eigenvalue(ctx, w) == Rat(-1));
}

TEST_CASE("decompose hypercube(4)") {
    auto ctx = build_context(hypercube(4), 0, TMode::full);
    auto dec = decompose(ctx);
    CHECK(dec.total_dim == 16);
    CHECK(dec.modules[0].endpoint == 0);
    CHECK(dec.modules[0].diameter == 4);
    auto rep = thinness_report(dec);
    CHECK(rep.all_thin);
    for (const auto& m : dec.modules) CHECK(m.irreducible_verified);
    check_orthogonality(dec);
    for (const auto& m : dec.modules) check_action_containment(ctx, m);
}

TEST_CASE("decompose folded 5-cube in quotient mode") {
    auto ctx = build_context(folded_hypercube(5), 0, TMode::bipartite_quotient);
    auto dec = decompose(ctx);
    CHECK(dec.total_dim == 16);
    auto rep = thinness_report(dec);
    CHECK(rep.all_thin);
    int endpoint1 = 0;
    for (const auto& m : dec.modules)
        if (m.endpoint == 1) {
            ++endpoint1;
            CHECK(local_eigenvalue(ctx, m) == 0); // the local graph is empty
        }
    CHECK(endpoint1 > 0);
}

TEST_CASE("hypercube decompositions have the classical shape") {
    // endpoint r carries binomial(D,r) - binomial(D,r-1) modules of diameter D-2r
    auto binom = [](int n, int k) {
        if (k < 0 || k > n) return 0L;
        long b = 1;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return b;
    };
    for (int D : {3, 4, 5, 6}) {
        auto ctx = build_context(hypercube(D), 0, TMode::full);
        auto dec = decompose(ctx);
        std::map<int, long> count;
        for (const auto& m : dec.modules) {
            ++count[m.endpoint];
            CHECK(m.diameter == D - 2 * m.endpoint);
            CHECK(m.thin);
            CHECK(m.irreducible_verified);
        }
        for (int r = 0; 2 * r <= D; ++r) CHECK(count[r] == binom(D, r) - binom(D, r - 1));
    }
}

TEST_CASE("trivial module level products of hypercubes") {
    for (int D : {3, 4, 5}) {
        auto ctx = build_context(hypercube(D), 0, TMode::full);
        auto dec = decompose(ctx);
        const TModule& triv = dec.modules[0];
        auto pis = level_products(ctx, triv);
        REQUIRE(static_cast<int>(pis.size()) == D);
        // direct oracle: apply LR to the distance-cell indicator vectors
        for (int i = 0; i < D; ++i) {
            Vec si(ctx.n(), Rat(0));
            for (int v : ctx.partition().cells[i]) si[v] = 1;
            Vec u = ctx.apply_L(ctx.apply_R(si));
            CHECK(u == vec_scale(si, pis[i]));
            CHECK(pis[i] == Rat((i + 1) * (D - i)));
        }
    }
}

TEST_CASE("level products are basis independent") {
    auto ctx = build_context(folded_hypercube(5), 0, TMode::bipartite_quotient);
    auto dec = decompose(ctx);
    for (const auto& m : dec.modules) {
        if (!m.thin) continue;
        TModule scaled = m;
        Rat factor(7, 3);
        for (auto& lvl : scaled.levels)
            for (auto& v : lvl) v = vec_scale(v, factor);
        CHECK(level_products(ctx, scaled) == level_products(ctx, m));
    }
}

TEST_CASE("tf-isomorphism") {
    auto ctx = build_context(folded_hypercube(5), 0, TMode::bipartite_quotient);
    auto dec = decompose(ctx);
    std::vector<const TModule*> ep1;
    for (const auto& m : dec.modules)
        if (m.endpoint == 1 && m.thin) ep1.push_back(&m);
    REQUIRE(ep1.size() >= 2);
    for (const auto* m : ep1) CHECK(tf_isomorphic(*m, *m));
    // modules with equal products are isomorphic; different diameters are not
    for (std::size_t a = 0; a < ep1.size(); ++a)
        for (std::size_t b = a + 1; b < ep1.size(); ++b) {
            bool same = ep1[a]->diameter == ep1[b]->diameter &&
                        ep1[a]->level_products == ep1[b]->level_products;
            CHECK(tf_isomorphic(*ep1[a], *ep1[b]) == same);
        }
    const TModule& triv = dec.modules[0];
    for (const auto* m : ep1)
        if (m->diameter != triv.diameter) CHECK_FALSE(tf_isomorphic(triv, *m));
}

TEST_CASE("local eigenvalues are roots of the local characteristic polynomial") {
    for (auto make : {+[] { return petersen(); }, +[] { return grassmann_q(4, 2, 2); },
                      +[] { return hamming(3, 3); }, +[] { return johnson(5, 2); }}) {
        Graph g = make();
        auto ctx = build_context(g, 0, TMode::full);
        auto dec = decompose(ctx);
        IntPoly local_cp = char_poly(local_graph(g, 0).adjacency_matrix());
        for (const auto& m : dec.modules) {
            if (m.endpoint != 1 || !m.thin) continue;
            CHECK(local_cp.eval(local_eigenvalue(ctx, m)) == 0);
        }
    }
}

TEST_CASE("grassmann endpoint-1 local eigenvalues are among the candidates") {
    Graph g = grassmann_q(4, 2, 2);
    auto ctx = build_context(g, 0, TMode::full);
    auto dec = decompose(ctx);
    CHECK(dec.total_dim == 35);
    ClassicalParams cp(2, Int(2), Rat(2), Rat(6));
    auto cand = local_eig_candidates(cp);
    int found = 0;
    for (const auto& m : dec.modules) {
        if (m.endpoint != 1 || !m.thin) continue;
        Rat eta = local_eigenvalue(ctx, m);
        bool among = eta == cand.eta[0] || eta == cand.eta[1] || eta == cand.eta[2] ||
                     eta == cand.eta[3];
        CHECK(among);
        ++found;
    }
    CHECK(found > 0);
}

TEST_CASE("canonical basis") {
    SUBCASE("grassmann module with eta = -1 has gamma_0 = c_1 = 1") {
        Graph g = grassmann_q(4, 2, 2);
        auto ctx = build_context(g, 0, TMode::full);
        auto dec = decompose(ctx);
        const TModule* target = nullptr;
        for (const auto& m : dec.modules)
            if (m.endpoint == 1 && m.thin && local_eigenvalue(ctx, m) == Rat(-1)) {
                target = &m;
                break;
            }
        REQUIRE(target != nullptr);
        auto cb = canonical_basis(ctx, *target, target->line(1));
        REQUIRE(!cb.gamma.empty());
        CHECK(cb.gamma[0] == 1);
        // beta_{i+1} gamma_i = pi_i, the level products
        auto pis = level_products(ctx, *target);
        for (std::size_t i = 0; i < cb.gamma.size() && i < cb.beta.size(); ++i)
            CHECK(cb.beta[i] * cb.gamma[i] == pis[i]);
    }
    SUBCASE("trivial-module analog reproduces the distance partition") {
        auto ctx = build_context(hypercube(3), 0, TMode::full);
        // E_i* A_i x-hat is the cell indicator
        Vec xhat = unit(8, 0);
        for (int i = 0; i <= 3; ++i) {
            Vec v = ctx.project_level(distance_matrix(ctx.graph(), i) * xhat, i);
            Vec ind(8, Rat(0));
            for (int w : ctx.partition().cells[i]) ind[w] = 1;
            CHECK(v == ind);
        }
    }
}

TEST_CASE("canonical-basis scalars match the array and the parameter-level sequences") {
    // gamma_i = c_{i+1} on every thin endpoint-1 module of these graphs
    for (auto make : {+[] { return hypercube(4); }, +[] { return hamming(3, 3); },
                      +[] { return grassmann_q(4, 2, 2); }}) {
        Graph g = make();
        auto arr = is_distance_regular(g).array;
        REQUIRE(arr.has_value());
        auto ctx = build_context(g, 0, TMode::full);
        auto dec = decompose(ctx);
        for (const auto& m : dec.modules) {
            if (m.endpoint != 1 || !m.thin) continue;
            auto cb = canonical_basis(ctx, m, m.line(1));
            CHECK(cb.actual_diameter == m.diameter);
            for (std::size_t i = 0; i < cb.gamma.size(); ++i)
                CHECK(cb.gamma[i] == arr->ci(static_cast<int>(i) + 1));
        }
    }
    // the grassmann eta = -1 module has diameter D-1 and beta_i = b_i, the
    // same sequence thin_module_scalars produces for that class
    Graph g = grassmann_q(4, 2, 2);
    ClassicalParams cp(2, Int(2), Rat(2), Rat(6));
    auto ctx = build_context(g, 0, TMode::full);
    auto dec = decompose(ctx);
    auto ia = intersection_array(cp);
    auto scal = thin_module_scalars(cp, DiameterClass::DMinus1);
    bool found = false;
    for (const auto& m : dec.modules) {
        if (m.endpoint != 1 || !m.thin || local_eigenvalue(ctx, m) != Rat(-1)) continue;
        found = true;
        CHECK(m.diameter == cp.D - 1);
        auto cb = canonical_basis(ctx, m, m.line(1));
        REQUIRE(cb.beta.size() == scal.beta.size());
        for (std::size_t i = 0; i < cb.beta.size(); ++i) {
            CHECK(cb.beta[i] == scal.beta[i]);
            CHECK(cb.beta[i] == ia.bi(static_cast<int>(i) + 1));
        }
        for (std::size_t i = 0; i < cb.gamma.size(); ++i) CHECK(cb.gamma[i] == scal.gamma[i]);
    }
    CHECK(found);
}

TEST_CASE("injected reducible subspaces are split") {
    auto ctx = build_context(hypercube(4), 0, TMode::full);
    auto dec = decompose(ctx);
    REQUIRE(dec.modules.size() >= 2);
    const TModule& a = dec.modules[0];
    const TModule& b = dec.modules[1];
    // union of spanning vectors of two modules
    std::vector<Vec> span;
    for (const auto& m : {a, b})
        for (const auto& lvl : m.levels)
            for (const auto& v : lvl) span.push_back(v);
    auto split = decompose_subspace(ctx, span);
    CHECK(split.total_dim == a.dim() + b.dim());
    CHECK(split.modules.size() == 2);

    // a diagonally embedded seed across non-isomorphic modules closes up
    // to a non-thin subspace, which the regeneration test refuses to verify
    Vec mixed = vec_sub(a.line(a.endpoint + 1), vec_scale(b.line(b.endpoint), Rat(-1)));
    TModule chunk = closure_of(ctx, mixed);
    CHECK(chunk.dim() > a.dim());
    CHECK_FALSE(chunk.thin);
    CHECK_FALSE(chunk.irreducible_verified);
    auto resplit = decompose_subspace(ctx, {mixed});
    CHECK(resplit.modules.size() >= 2);
    CHECK(resplit.total_dim == chunk.dim());
}

TEST_CASE("non-DRG graphs still decompose cleanly") {
    // 6-vertex tree
    Graph tree = from_edge_list("6\n0 1\n1 2\n1 3\n3 4\n3 5\n");
    for (int x : {0, 1, 3}) {
        auto ctx = build_context(tree, x, TMode::full);
        auto dec = decompose(ctx);
        CHECK(dec.total_dim == 6);
        check_orthogonality(dec);
        for (const auto& m : dec.modules) check_action_containment(ctx, m);
        auto rep = thinness_report(dec);
        CHECK(rep.thin.size() == dec.modules.size());
    }
}

TEST_CASE("cycle(5) decomposes into the trivial and one thin 2-dimensional module") {
    auto ctx = build_context(cycle(5), 0, TMode::full);
    auto dec = decompose(ctx);
    CHECK(dec.total_dim == 5);
    REQUIRE(dec.modules.size() == 2);
    CHECK(dec.modules[0].dim() == 3);
    CHECK(dec.modules[1].dim() == 2);
    CHECK(dec.modules[1].thin);
    CHECK(dec.modules[1].endpoint == 1);
    CHECK(dec.modules[1].diameter == 1);
    CHECK(local_eigenvalue(ctx, dec.modules[1]) == 0);
}

TEST_SUITE_END();
