#pragma once

#include "drg/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace drg {

// Polynomial with arbitrary-precision integer coefficients, lowest degree
// first. The zero polynomial has an empty coefficient vector; otherwise the
// leading coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    static IntPoly constant(const Int& c);
    // t - r
    static IntPoly linear_root(const Int& r);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return is_zero() ? -1 : static_cast<int>(c_.size()) - 1; }
    const Int& leading() const;
    const Int& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    Rat eval(const Rat& x) const;
    Int eval_int(const Int& x) const;
    int sign_at(const Rat& x) const;

    IntPoly derivative() const;
    // Divide out integer content; sign normalized so the leading
    // coefficient is positive.
    IntPoly primitive() const;

    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;

    std::string str(const std::string& var = "t") const;

private:
    std::vector<Int> c_;
    void trim();
};

struct RationalRoot {
    Rat root;
    int multiplicity;
};

struct RootIsolation {
    // Open/closed mixed bracketing (lo, hi], exact endpoints, containing one
    // real root of the (squarefree) remainder factor.
    Rat lo, hi;
};

struct RationalRootResult {
    std::vector<RationalRoot> roots;          // sorted decreasing
    IntPoly remainder;                        // no rational roots; 1 if none left
    std::vector<RootIsolation> remainder_intervals; // isolating intervals of distinct remainder roots, sorted decreasing
};

// All rational roots with exact multiplicities plus the rational-root-free
// remainder factor. Throws std::invalid_argument on the zero polynomial.
RationalRootResult rational_roots(const IntPoly& p);

// Exact quotient p / (t - r) when r is a root (asserts divisibility).
IntPoly deflate(const IntPoly& p, const Rat& r);

// Number of distinct real roots of p in (lo, hi], by Sturm's theorem.
int sturm_root_count(const std::vector<IntPoly>& sturm_chain, const Rat& lo, const Rat& hi);
std::vector<IntPoly> sturm_chain(const IntPoly& p);

// Cauchy bound B: every real root lies in [-B, B].
Rat root_bound(const IntPoly& p);

} // namespace drg
