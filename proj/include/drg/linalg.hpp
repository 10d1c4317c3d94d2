#pragma once

#include "drg/matrix.hpp"
#include "drg/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace drg {

// Reduced row echelon form; second member is the rank (= pivot rows).
std::pair<Mat, std::size_t> rref(const Mat& m);

std::size_t rank(const Mat& m);

// Basis of { x : M x = 0 }, one vector per free column, in column order,
// with the free coordinate set to 1.
std::vector<Vec> nullspace(const Mat& m);

// Exact determinant by fraction-free (Bareiss) elimination. Rational input
// is handled by pulling a common denominator out of each row first.
Rat determinant(const Mat& m);

// The full affine solution set of M x = b: any solution is
// particular + span(homogeneous).
struct AffineSolution {
    Vec particular;
    std::vector<Vec> homogeneous;

    bool unique() const { return homogeneous.empty(); }
};

std::optional<AffineSolution> solve_affine(const Mat& m, const Vec& b);

// Solution set of sum_k x_k * targets[k] = rhs over the unknown coefficient
// vector x. Empty optional means INFEASIBLE. All matrices must share
// dimensions (std::invalid_argument otherwise).
std::optional<AffineSolution> solve_linear_combination(const std::vector<Mat>& targets,
                                                       const Mat& rhs);

// det(tI - M) with exact coefficients, returned with integer coefficients
// after clearing rational content (monic for integer input). Throws
// std::invalid_argument for non-square input.
IntPoly char_poly(const Mat& m);

} // namespace drg
