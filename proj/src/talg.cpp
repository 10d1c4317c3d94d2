#include "drg/talg.hpp"

#include "drg/linalg.hpp"
#include "drg/poly.hpp"

#include <algorithm>
#include <deque>

namespace drg {

TerwilligerContext::TerwilligerContext(Graph g, int x, TMode mode)
    : g_(std::move(g)), x_(x), mode_(mode), dp_(distances(g_, x)), eps_(dp_.eccentricity) {
    for (int v = 0; v < g_.n(); ++v)
        for (int w : g_.neighbors(v)) {
            if (dp_.dist[w] == dp_.dist[v] - 1) down_edges_.emplace_back(v, w);
            if (dp_.dist[w] == dp_.dist[v] && v < w) flat_edges_.emplace_back(v, w);
        }
    check_invariants();
}

TerwilligerContext build_context(const Graph& g, int x, TMode mode) {
    return TerwilligerContext(g, x, mode);
}

void TerwilligerContext::check_invariants() const {
    Mat L = matrix_L(), F = matrix_F(), R = matrix_R();
    DRG_CHECK(R == L.transpose(), "R must be the transpose of L");
    Mat A = g_.adjacency_matrix();
    DRG_CHECK(L + F + R == A, "A must split as L + F + R");
    // sum of dual idempotents is the identity
    Mat s(g_.n(), g_.n());
    for (int i = 0; i <= eps_; ++i) s = s + dual_idempotent(i);
    DRG_CHECK(s == Mat::identity(g_.n()), "dual idempotents must sum to I");
    // action containment on every standard basis vector
    for (int v = 0; v < g_.n(); ++v) {
        Vec e(g_.n(), Rat(0));
        e[v] = 1;
        int lv = dp_.dist[v];
        Vec lw = apply_L(e), fw = apply_F(e), rw = apply_R(e);
        for (int w = 0; w < g_.n(); ++w) {
            DRG_CHECK(lw[w] == 0 || dp_.dist[w] == lv - 1, "L must lower the level by one");
            DRG_CHECK(fw[w] == 0 || dp_.dist[w] == lv, "F must preserve the level");
            DRG_CHECK(rw[w] == 0 || dp_.dist[w] == lv + 1, "R must raise the level by one");
        }
    }
    if (mode_ == TMode::bipartite_quotient) {
        // the quotient's distance partition from x equals the original's
        std::vector<std::pair<int, int>> fe;
        for (auto [v, w] : down_edges_) fe.emplace_back(v, w);
        Graph gf(g_.n(), fe, g_.name() + "_f");
        auto dpf = distances(gf, x_);
        DRG_CHECK(dpf.dist == dp_.dist, "quotient distance partition must match");
        DRG_CHECK(gf.is_bipartite(), "quotient graph must be bipartite");
    }
}

Vec TerwilligerContext::apply_L(const Vec& v) const {
    Vec out(g_.n(), Rat(0));
    for (auto [a, b] : down_edges_)
        if (v[a] != 0) out[b] += v[a]; // b one level below a
    return out;
}

Vec TerwilligerContext::apply_R(const Vec& v) const {
    Vec out(g_.n(), Rat(0));
    for (auto [a, b] : down_edges_)
        if (v[b] != 0) out[a] += v[b];
    return out;
}

Vec TerwilligerContext::apply_F(const Vec& v) const {
    Vec out(g_.n(), Rat(0));
    for (auto [a, b] : flat_edges_) {
        if (v[b] != 0) out[a] += v[b];
        if (v[a] != 0) out[b] += v[a];
    }
    return out;
}

Vec TerwilligerContext::apply_adjacency(const Vec& v) const {
    Vec out = apply_L(v);
    Vec r = apply_R(v);
    for (int i = 0; i < g_.n(); ++i) out[i] += r[i];
    if (mode_ == TMode::full) {
        Vec f = apply_F(v);
        for (int i = 0; i < g_.n(); ++i) out[i] += f[i];
    }
    return out;
}

Vec TerwilligerContext::project_level(const Vec& v, int i) const {
    Vec out(g_.n(), Rat(0));
    if (i < 0 || i > eps_) return out;
    for (int w = 0; w < g_.n(); ++w)
        if (dp_.dist[w] == i) out[w] = v[w];
    return out;
}

Mat TerwilligerContext::matrix_L() const {
    Mat m(g_.n(), g_.n());
    for (auto [a, b] : down_edges_) m(b, a) = 1;
    return m;
}

Mat TerwilligerContext::matrix_R() const {
    Mat m(g_.n(), g_.n());
    for (auto [a, b] : down_edges_) m(a, b) = 1;
    return m;
}

Mat TerwilligerContext::matrix_F() const {
    Mat m(g_.n(), g_.n());
    for (auto [a, b] : flat_edges_) {
        m(a, b) = 1;
        m(b, a) = 1;
    }
    return m;
}

Mat TerwilligerContext::dual_idempotent(int i) const {
    Mat m(g_.n(), g_.n());
    for (int v = 0; v < g_.n(); ++v)
        if (dp_.dist[v] == i) m(v, v) = 1;
    return m;
}

int TModule::dim() const {
    int d = 0;
    for (const auto& l : levels) d += static_cast<int>(l.size());
    return d;
}

int TModule::level_dim(int i) const {
    if (i < 0 || i >= static_cast<int>(levels.size())) return 0;
    return static_cast<int>(levels[i].size());
}

const Vec& TModule::line(int i) const {
    DRG_CHECK(level_dim(i) == 1, "line() needs a one-dimensional level");
    return levels[i][0];
}

namespace {

// Orthogonal (non-normalized) level basis with exact Gram data.
struct LevelBasis {
    std::vector<Vec> vecs;
    std::vector<Rat> gram; // <b, b> for each basis vector

    // Project v against the basis; returns the residual.
    Vec residual(const Vec& v) const {
        Vec r = v;
        for (std::size_t j = 0; j < vecs.size(); ++j) {
            Rat c = dot(r, vecs[j]);
            if (c != 0) r = vec_sub(r, vec_scale(vecs[j], c / gram[j]));
        }
        return r;
    }

    bool add(const Vec& v) {
        Vec r = residual(v);
        if (vec_is_zero(r)) return false;
        gram.push_back(dot(r, r));
        vecs.push_back(std::move(r));
        return true;
    }
};

struct Closure {
    std::vector<LevelBasis> levels;

    explicit Closure(int eps) : levels(eps + 1) {}

    int dim() const {
        int d = 0;
        for (const auto& l : levels) d += static_cast<int>(l.vecs.size());
        return d;
    }
};

// Grow the closure of seed under {L, R, F (full mode)} with implicit level
// projection; the result is a T-invariant subspace.
Closure close_under_algebra(const TerwilligerContext& ctx, const Vec& seed) {
    Closure cl(ctx.eccentricity());
    std::deque<std::pair<int, Vec>> queue;
    for (int i = 0; i <= ctx.eccentricity(); ++i) {
        Vec p = ctx.project_level(seed, i);
        if (!vec_is_zero(p) && cl.levels[i].add(p)) queue.emplace_back(i, cl.levels[i].vecs.back());
    }
    while (!queue.empty()) {
        auto [lvl, w] = queue.front();
        queue.pop_front();
        auto push = [&](int target, Vec img) {
            if (target < 0 || target > ctx.eccentricity()) return;
            if (vec_is_zero(img)) return;
            if (cl.levels[target].add(img))
                queue.emplace_back(target, cl.levels[target].vecs.back());
        };
        push(lvl - 1, ctx.apply_L(w));
        push(lvl + 1, ctx.apply_R(w));
        if (ctx.mode() == TMode::full) push(lvl, ctx.apply_F(w));
    }
    return cl;
}

TModule module_from_closure(const TerwilligerContext& ctx, Closure cl) {
    TModule m;
    m.levels.assign(ctx.eccentricity() + 1, {});
    int first = -1, count = 0;
    for (int i = 0; i <= ctx.eccentricity(); ++i) {
        if (!cl.levels[i].vecs.empty()) {
            if (first < 0) first = i;
            ++count;
        }
        m.levels[i] = std::move(cl.levels[i].vecs);
    }
    DRG_CHECK(count > 0, "empty closure");
    m.endpoint = first;
    m.diameter = count - 1;
    m.thin = true;
    for (const auto& l : m.levels)
        if (l.size() > 1) m.thin = false;
    return m;
}

// Proportionality test: u = c * w for some scalar c (w nonzero).
std::optional<Rat> proportion(const Vec& u, const Vec& w) {
    Rat c = 0;
    bool have = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) {
            if (u[i] != 0) return std::nullopt;
            continue;
        }
        Rat ci = u[i] / w[i];
        if (!have) {
            c = ci;
            have = true;
        } else if (ci != c) {
            return std::nullopt;
        }
    }
    if (!have) return std::nullopt;
    return c;
}

void fill_thin_data(const TerwilligerContext& ctx, TModule& m) {
    if (!m.thin) return;
    // level products pi_i = eigenvalue of LR on level endpoint+i
    m.level_products.clear();
    for (int i = 0; i < m.diameter; ++i) {
        const Vec& w = m.line(m.endpoint + i);
        Vec u = ctx.apply_L(ctx.apply_R(w));
        auto c = proportion(u, w);
        DRG_CHECK(c.has_value(), "LR must act as a scalar on a thin level line");
        m.level_products.push_back(*c);
    }
    if (m.endpoint == 1) {
        // eigenvalue of E_1* A E_1* on the first level, defined whenever the
        // line is invariant under the compressed adjacency of the graph
        const Vec& w = m.line(1);
        Vec u = ctx.project_level(ctx.apply_F(w), 1);
        auto c = proportion(u, w);
        if (c) m.local_eigenvalue = *c;
    }
    // regeneration: every level line must regenerate the whole module
    m.irreducible_verified = true;
    for (int i = m.endpoint; i <= m.endpoint + m.diameter; ++i) {
        if (m.level_dim(i) != 1) {
            m.irreducible_verified = false;
            break;
        }
        Closure re = close_under_algebra(ctx, m.line(i));
        if (re.dim() != m.dim()) {
            m.irreducible_verified = false;
            break;
        }
    }
}

// E_r G^s E_r with G = adjacency + sum_i t_i E_i*, t_i = i.
Vec apply_compressed_power(const TerwilligerContext& ctx, const Vec& v, int r, int s) {
    Vec w = v;
    for (int step = 0; step < s; ++step) {
        Vec a = ctx.apply_adjacency(w);
        for (int u = 0; u < ctx.n(); ++u)
            if (w[u] != 0) a[u] += Rat(ctx.level_of(u)) * w[u];
        w = std::move(a);
    }
    return ctx.project_level(w, r);
}

// Split a level-r subspace (orthogonal basis) into simultaneous rational
// eigenspaces of the compressed powers s = 1..4; blocks that resist stay
// merged.
std::vector<std::vector<Vec>> refine_blocks(const TerwilligerContext& ctx,
                                            const std::vector<Vec>& space, int r) {
    std::vector<std::vector<Vec>> blocks{space};
    for (int s = 1; s <= 4; ++s) {
        std::vector<std::vector<Vec>> next;
        for (auto& block : blocks) {
            if (block.size() <= 1) {
                next.push_back(std::move(block));
                continue;
            }
            // operator matrix in block coordinates
            std::size_t m = block.size();
            std::vector<Rat> gram(m);
            for (std::size_t j = 0; j < m; ++j) gram[j] = dot(block[j], block[j]);
            Mat op(m, m);
            bool closed = true;
            for (std::size_t col = 0; col < m && closed; ++col) {
                Vec img = apply_compressed_power(ctx, block[col], r, s);
                Vec res = img;
                for (std::size_t row = 0; row < m; ++row) {
                    Rat c = dot(img, block[row]) / gram[row];
                    op(row, col) = c;
                    if (c != 0) res = vec_sub(res, vec_scale(block[row], c));
                }
                if (!vec_is_zero(res)) closed = false; // block not invariant: skip operator
            }
            if (!closed) {
                next.push_back(std::move(block));
                continue;
            }
            auto roots = rational_roots(char_poly(op));
            std::vector<std::vector<Vec>> pieces;
            LevelBasis used;
            for (const auto& root : roots.roots) {
                Mat shifted = op;
                for (std::size_t d = 0; d < m; ++d) shifted(d, d) -= root.root;
                std::vector<Vec> eig;
                for (const auto& coord : nullspace(shifted)) {
                    Vec v(ctx.n(), Rat(0));
                    for (std::size_t j = 0; j < m; ++j)
                        if (coord[j] != 0) v = vec_sub(v, vec_scale(block[j], -coord[j]));
                    eig.push_back(std::move(v));
                }
                // orthogonalize inside the eigenspace and record coverage
                LevelBasis eb;
                std::vector<Vec> out;
                for (auto& v : eig)
                    if (eb.add(v)) {
                        out.push_back(eb.vecs.back());
                        used.add(eb.vecs.back());
                    }
                if (!out.empty()) pieces.push_back(std::move(out));
            }
            // residual part without rational eigenvalues
            std::vector<Vec> rest;
            LevelBasis rb;
            for (const auto& v : block) {
                Vec res = used.residual(v);
                if (!vec_is_zero(res) && rb.add(res)) rest.push_back(rb.vecs.back());
            }
            if (!rest.empty()) pieces.push_back(std::move(rest));
            for (auto& p : pieces) next.push_back(std::move(p));
        }
        blocks = std::move(next);
    }
    return blocks;
}

Decomposition decompose_levels(const TerwilligerContext& ctx,
                               std::vector<LevelBasis> remaining) {
    Decomposition dec;
    auto subtract_module = [&](const TModule& m) {
        for (int i = 0; i <= ctx.eccentricity(); ++i) {
            if (m.levels[i].empty() || remaining[i].vecs.empty()) continue;
            LevelBasis mod_basis;
            for (const auto& v : m.levels[i]) mod_basis.add(v);
            LevelBasis updated;
            for (const auto& v : remaining[i].vecs) {
                Vec r = mod_basis.residual(v);
                updated.add(r);
            }
            remaining[i] = std::move(updated);
        }
    };

    for (int r = 0; r <= ctx.eccentricity(); ++r) {
        while (!remaining[r].vecs.empty()) {
            auto blocks = refine_blocks(ctx, remaining[r].vecs, r);
            DRG_CHECK(!blocks.empty() && !blocks[0].empty(), "refinement lost the level space");
            Vec seed = blocks[0][0];
            TModule m = module_from_closure(ctx, close_under_algebra(ctx, seed));
            DRG_CHECK(m.endpoint == r, "closure endpoint must match the processing level");
            fill_thin_data(ctx, m);
            subtract_module(m);
            dec.total_dim += m.dim();
            dec.modules.push_back(std::move(m));
        }
    }
    return dec;
}

} // namespace

Decomposition decompose(const TerwilligerContext& ctx) {
    std::vector<LevelBasis> remaining(ctx.eccentricity() + 1);
    // standard basis vectors, grouped by level; the base vertex first so the
    // trivial module is extracted first
    for (int i = 0; i <= ctx.eccentricity(); ++i)
        for (int v : ctx.partition().cells[i]) {
            Vec e(ctx.n(), Rat(0));
            e[v] = 1;
            remaining[i].add(e);
        }
    Decomposition dec = decompose_levels(ctx, std::move(remaining));
    DRG_CHECK(dec.total_dim == ctx.n(), "module dimensions must sum to n");
    return dec;
}

Decomposition decompose_subspace(const TerwilligerContext& ctx, const std::vector<Vec>& span) {
    // work with the T-closure of the span so the level machinery always sees
    // an invariant subspace
    std::vector<LevelBasis> remaining(ctx.eccentricity() + 1);
    for (const auto& v : span) {
        if (vec_is_zero(v)) continue;
        Closure cl = close_under_algebra(ctx, v);
        for (int i = 0; i <= ctx.eccentricity(); ++i)
            for (const auto& w : cl.levels[i].vecs) remaining[i].add(w);
    }
    return decompose_levels(ctx, std::move(remaining));
}

TModule closure_of(const TerwilligerContext& ctx, const Vec& seed) {
    DRG_CHECK(!vec_is_zero(seed), "closure of the zero vector");
    TModule m = module_from_closure(ctx, close_under_algebra(ctx, seed));
    fill_thin_data(ctx, m);
    return m;
}

Rat local_eigenvalue(const TerwilligerContext& ctx, const TModule& w) {
    if (w.endpoint != 1) throw NotEndpointOne();
    if (!w.thin) throw NotThin();
    const Vec& v = w.line(1);
    Vec u = ctx.project_level(ctx.apply_F(v), 1);
    auto c = proportion(u, v);
    DRG_CHECK(c.has_value(), "first level is not invariant under the local adjacency action");
    return *c;
}

std::vector<Rat> level_products(const TerwilligerContext& ctx, const TModule& w) {
    if (!w.thin) throw NotThin();
    std::vector<Rat> out;
    for (int i = 0; i < w.diameter; ++i) {
        const Vec& v = w.line(w.endpoint + i);
        auto c = proportion(ctx.apply_L(ctx.apply_R(v)), v);
        DRG_CHECK(c.has_value(), "LR must act as a scalar on a thin level line");
        out.push_back(*c);
    }
    return out;
}

bool tf_isomorphic(const TModule& a, const TModule& b) {
    if (!a.thin || !b.thin) throw NotThin();
    return a.endpoint == b.endpoint && a.diameter == b.diameter &&
           a.level_products == b.level_products;
}

CanonicalBasis canonical_basis(const TerwilligerContext& ctx, const TModule& w, const Vec& v) {
    if (w.endpoint != 1) throw NotEndpointOne();
    if (!w.thin) throw NotThin();
    Vec v1 = ctx.project_level(v, 1);
    DRG_CHECK(!vec_is_zero(v1), "seed must have a nonzero first-level component");
    CanonicalBasis cb;
    for (int i = 0; i <= w.diameter; ++i) {
        Mat ai = distance_matrix(ctx.graph(), i);
        Vec u = ctx.project_level(ai * v1, i + 1);
        if (vec_is_zero(u)) break;
        cb.vectors.push_back(std::move(u));
    }
    cb.actual_diameter = static_cast<int>(cb.vectors.size()) - 1;
    for (std::size_t i = 0; i < cb.vectors.size(); ++i) {
        if (i >= 1) {
            auto beta = proportion(ctx.apply_L(cb.vectors[i]), cb.vectors[i - 1]);
            DRG_CHECK(beta.has_value(), "canonical basis: L action must be scalar");
            cb.beta.push_back(*beta);
        }
        if (i + 1 < cb.vectors.size()) {
            auto gamma = proportion(ctx.apply_R(cb.vectors[i]), cb.vectors[i + 1]);
            DRG_CHECK(gamma.has_value(), "canonical basis: R action must be scalar");
            cb.gamma.push_back(*gamma);
        }
    }
    return cb;
}

ThinnessReport thinness_report(const Decomposition& dec) {
    ThinnessReport rep;
    for (const auto& m : dec.modules) {
        rep.thin.push_back(m.thin);
        if (!m.thin) rep.all_thin = false;
    }
    return rep;
}

} // namespace drg
