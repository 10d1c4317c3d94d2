#include "drg/linalg.hpp"

#include <stdexcept>

namespace drg {

std::pair<Mat, std::size_t> rref(const Mat& m) {
    Mat r = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < r.cols() && rank < r.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < r.rows() && r(piv, col) == 0) ++piv;
        if (piv == r.rows()) continue;
        r.swap_rows(rank, piv);
        Rat inv = 1 / r(rank, col);
        for (std::size_t j = col; j < r.cols(); ++j) r(rank, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == rank || r(i, col) == 0) continue;
            Rat f = r(i, col);
            for (std::size_t j = col; j < r.cols(); ++j) r(i, j) -= f * r(rank, j);
        }
        ++rank;
    }
    return {r, rank};
}

std::size_t rank(const Mat& m) { return rref(m).second; }

std::vector<Vec> nullspace(const Mat& m) {
    auto [r, rk] = rref(m);
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(m.cols(), false);
    {
        std::size_t row = 0;
        for (std::size_t col = 0; col < m.cols() && row < rk; ++col) {
            if (r(row, col) == 1) {
                bool pivot = true;
                for (std::size_t i = 0; i < m.rows(); ++i)
                    if (i != row && r(i, col) != 0) { pivot = false; break; }
                // leading entry of this row?
                bool leading = true;
                for (std::size_t j = 0; j < col; ++j)
                    if (r(row, j) != 0) { leading = false; break; }
                if (pivot && leading) {
                    pivot_col.push_back(col);
                    is_pivot[col] = true;
                    ++row;
                }
            }
        }
    }
    std::vector<Vec> basis;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        if (is_pivot[col]) continue;
        Vec v(m.cols(), Rat(0));
        v[col] = 1;
        for (std::size_t row = 0; row < pivot_col.size(); ++row) v[pivot_col[row]] = -r(row, col);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat determinant(const Mat& m) {
    DRG_CHECK(m.is_square(), "determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;

    // clear each row to integers; divide the result back out
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    Rat row_scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < n; ++j) l = boost::multiprecision::lcm(l, den(m(i, j)));
        for (std::size_t j = 0; j < n; ++j) a[i][j] = num(m(i, j)) * (l / den(m(i, j)));
        row_scale *= Rat(l);
    }

    // Bareiss fraction-free elimination
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                DRG_CHECK(t % prev == 0, "bareiss: non-exact division");
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat d = Rat(a[n - 1][n - 1]) * sign;
    return d / row_scale;
}

std::optional<AffineSolution> solve_affine(const Mat& m, const Vec& b) {
    DRG_CHECK(b.size() == m.rows(), "solve_affine: rhs size mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto [r, rk_aug] = rref(aug);
    // inconsistent iff some row is (0 ... 0 | c) with c != 0
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (r(i, j) != 0) { zero = false; break; }
        if (zero && r(i, m.cols()) != 0) return std::nullopt;
    }
    AffineSolution sol;
    sol.particular.assign(m.cols(), Rat(0));
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        if (r(row, col) == 0) continue;
        // col is the pivot column of this row
        bool leading = true;
        for (std::size_t j = 0; j < col; ++j)
            if (r(row, j) != 0) { leading = false; break; }
        if (!leading) continue;
        sol.particular[col] = r(row, m.cols());
        ++row;
    }
    sol.homogeneous = nullspace(m);
    return sol;
}

std::optional<AffineSolution> solve_linear_combination(const std::vector<Mat>& targets,
                                                       const Mat& rhs) {
    for (const auto& t : targets)
        if (t.rows() != rhs.rows() || t.cols() != rhs.cols())
            throw std::invalid_argument("solve_linear_combination: dimension mismatch");
    std::size_t nent = rhs.rows() * rhs.cols();
    Mat sys(nent, targets.size());
    Vec b(nent);
    for (std::size_t i = 0; i < rhs.rows(); ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
            std::size_t row = i * rhs.cols() + j;
            for (std::size_t k = 0; k < targets.size(); ++k) sys(row, k) = targets[k](i, j);
            b[row] = rhs(i, j);
        }
    return solve_affine(sys, b);
}

IntPoly char_poly(const Mat& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly: non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return IntPoly::constant(1);

    // evaluate det(tI - M) at t = 0..n, then interpolate
    std::vector<Rat> ys(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Mat t = m * Rat(-1);
        for (std::size_t i = 0; i < n; ++i) t(i, i) += Rat(Int(k));
        ys[k] = determinant(t);
    }

    // Newton form on the nodes 0,1,...,n
    std::vector<Rat> dd = ys;
    for (std::size_t level = 1; level <= n; ++level)
        for (std::size_t i = n; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / Rat(Int(level));

    std::vector<Rat> coeff{dd[n]};
    for (std::size_t k = n; k-- > 0;) {
        // coeff = coeff * (t - k) + dd[k]
        coeff.insert(coeff.begin(), Rat(0));
        Rat node{Int(k)};
        for (std::size_t i = 0; i + 1 < coeff.size(); ++i) coeff[i] -= node * coeff[i + 1];
        coeff[0] += dd[k];
    }

    Int l = 1;
    for (const auto& c : coeff) l = boost::multiprecision::lcm(l, den(c));
    std::vector<Int> out(coeff.size());
    for (std::size_t i = 0; i < coeff.size(); ++i) out[i] = num(coeff[i]) * (l / den(coeff[i]));
    IntPoly p = IntPoly(std::move(out)).primitive();
    DRG_CHECK(p.degree() == static_cast<int>(n), "char_poly: degree mismatch");
    return p;
}

} // namespace drg
