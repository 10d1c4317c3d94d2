#pragma once

#include "drg/linalg.hpp"
#include "drg/poly.hpp"
#include "drg/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace drg {

// (D, q, alpha, beta). q is an integer outside {0, -1}; alpha and beta are
// accepted as rationals (integrality is a screen, not a type constraint).
struct ClassicalParams {
    int D;
    Int q;
    Rat alpha;
    Rat beta;

    ClassicalParams(int D_, Int q_, Rat alpha_, Rat beta_);

    bool operator==(const ClassicalParams&) const = default;
};

// [j] = 1 + q + ... + q^{j-1}; 0 for j = 0.
Int qbracket(int j, const Int& q);

struct NonPositiveIntersectionNumber : std::runtime_error {
    char kind; // 'b' or 'c'
    int index;
    Rat value;
    NonPositiveIntersectionNumber(char kind_, int index_, Rat value_);
};

// {b_0..b_{D-1}; c_1..c_D} with the conventions c_0 = 0, b_D = 0, plus the
// derived a_i, valencies k_i and vertex count n.
struct IntersectionArray {
    int D = 0;
    std::vector<Rat> b, c, a, k; // indexed 0..D
    Rat n;

    const Rat& bi(int i) const { return at(b, i); }
    const Rat& ci(int i) const { return at(c, i); }
    const Rat& ai(int i) const { return at(a, i); }
    const Rat& ki(int i) const { return at(k, i); }

    bool operator==(const IntersectionArray&) const = default;

private:
    static const Rat& at(const std::vector<Rat>& v, int i);
};

IntersectionArray intersection_array(const ClassicalParams& cp);

// Intersection array assembled directly from its b- and c-sequences
// (b_0..b_{D-1} and c_1..c_D).
IntersectionArray array_from_bc(const std::vector<Rat>& bs, const std::vector<Rat>& cs);

// All intersection numbers p^h_{ij} of an array, by the three-term
// recurrence from expanding A_1 A_i in the Bose-Mesner basis. Layers in i
// are computed on demand.
class IntersectionNumbers {
public:
    explicit IntersectionNumbers(IntersectionArray ia);
    // 0 <= h <= D required; any i, j (out of range gives 0)
    Rat p(int h, int i, int j) const;
    const IntersectionArray& array() const { return ia_; }

private:
    IntersectionArray ia_;
    mutable std::vector<std::vector<Rat>> layers_; // layers_[i][h*(D+1)+j]
    void ensure(int i) const;
};

Rat p_hij(const IntersectionArray& ia, int h, int i, int j);

// Eq. for the family-1 p^6_33 value as a closed form in q.
Rat p633_closed_form(const Int& q);

struct SpectrumEntry {
    Rat theta;
    Rat multiplicity;
};

struct Spectrum {
    Rat n;
    std::vector<SpectrumEntry> rational; // strictly decreasing in theta
    struct Irrational {
        IntPoly factor; // no rational roots, squarefree
        Rat total_multiplicity;
        Rat theta_weighted_multiplicity; // sum of theta * m(theta) over the factor's roots
        std::vector<RootIsolation> intervals; // sorted decreasing
    };
    std::optional<Irrational> irrational;
    IntPoly charpoly;

    // multiplicity of the i-th largest rational eigenvalue counted in the
    // full decreasing order theta_0 > theta_1 > ... (rationals only; throws
    // if the requested position is irrational)
    Rat multiplicity_of_sorted(int idx) const;
};

// Eigenvalues of the (D+1)x(D+1) tridiagonal intersection matrix with
// sub/diag/super entries c_i, a_i, b_i; multiplicities via the standard
// u-sequence.
Spectrum spectrum(const IntersectionArray& ia);

// (n, k, lambda, mu) with non-principal eigenvalues r > s.
struct SrgParams {
    Rat n, k, lambda, mu;
    Rat r, s;
};

enum class ClosedForm {
    f2_family1_D4,
    f2_family2,
    f3_family2,
    k2_family1_D5,
    kD_family2,
    fD_family2,
};

struct FamilyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlphaZero : std::runtime_error {
    AlphaZero() : std::runtime_error("alpha = 0 has no local SRG data") {}
};

// The two parameter families every surviving alpha != 0 case belongs to.
ClassicalParams family1_params(const Int& q, int D); // alpha = q+1
ClassicalParams family2_params(const Int& q, int D); // alpha = q
bool is_family1(const ClassicalParams& cp);
bool is_family2(const ClassicalParams& cp);

Rat multiplicity_closed_form(const ClassicalParams& cp, ClosedForm which);

// -1 - b1/(1+z), with infinity (nullopt) at z = -1.
std::optional<Rat> tilde(const Rat& z, const Rat& b1);

struct LocalEigCandidates {
    Rat eta[4]; // -q-1, beta-alpha-1, -1, alpha q [D-1] - 1
    bool eta4_eq_eta2;
    bool eta4_eq_eta3;
};

LocalEigCandidates local_eig_candidates(const ClassicalParams& cp);

struct LocalSrg {
    SrgParams srg;
    Rat forced_beta; // alpha (q^{D+1}-1)/(q-1) - q
    bool beta_matches;
};

LocalSrg srg_from_local(const ClassicalParams& cp);

enum class DiameterClass { DMinus2, DMinus1 };

struct ThinModuleScalars {
    // beta[i] holds beta_{i+1} (indices 1..d), gamma[i] holds gamma_i
    // (indices 0..d-1); gamma_i = c_{i+1} in both classes.
    std::vector<Rat> beta, beta_prime, gamma;
    int d;
};

ThinModuleScalars thin_module_scalars(const ClassicalParams& cp, DiameterClass cls);

} // namespace drg
