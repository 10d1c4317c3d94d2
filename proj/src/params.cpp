#include "drg/params.hpp"

#include <algorithm>
#include <sstream>

namespace drg {

namespace {

// Small rational-coefficient polynomial helpers, lowest degree first.
using RPoly = std::vector<Rat>;

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly radd(RPoly a, const RPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    rtrim(a);
    return a;
}

RPoly rmul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

RPoly rscale(RPoly a, const Rat& s) {
    for (auto& x : a) x *= s;
    rtrim(a);
    return a;
}

RPoly rmod(RPoly a, const RPoly& m) {
    rtrim(a);
    while (a.size() >= m.size() && !a.empty()) {
        Rat f = a.back() / m.back();
        std::size_t off = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[off + i] -= f * m[i];
        a.pop_back();
        rtrim(a);
    }
    return a;
}

Rat reval(const RPoly& p, const Rat& x) {
    Rat v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

RPoly from_int_poly(const IntPoly& p) {
    RPoly r(p.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = Rat(p.coeffs()[i]);
    return r;
}

// Inverse of a modulo m over Q[t] (gcd(a, m) must be a unit).
RPoly rinv_mod(const RPoly& a, const RPoly& m) {
    // extended Euclid: r0 = m, r1 = a
    RPoly r0 = m, r1 = rmod(a, m);
    RPoly t0{}, t1{Rat(1)};
    while (!r1.empty()) {
        // q = r0 / r1
        RPoly q;
        RPoly rem = r0;
        q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, Rat(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rat f = rem.back() / r1.back();
            q[rem.size() - r1.size()] = f;
            std::size_t off = rem.size() - r1.size();
            for (std::size_t i = 0; i < r1.size(); ++i) rem[off + i] -= f * r1[i];
            rem.pop_back();
            rtrim(rem);
        }
        r0.swap(r1);
        r1 = rem;
        RPoly tn = radd(t0, rscale(rmul(q, t1), Rat(-1)));
        t0.swap(t1);
        t1 = tn;
    }
    DRG_CHECK(r0.size() == 1, "rinv_mod: arguments not coprime");
    return rmod(rscale(t0, 1 / r0[0]), m);
}

// trace of the multiplication-by-v map on Q[t]/(m)
Rat rtrace_mul(const RPoly& v, const RPoly& m) {
    std::size_t deg = m.size() - 1;
    RPoly w = rmod(v, m);
    Rat tr = 0;
    for (std::size_t j = 0; j < deg; ++j) {
        if (j < w.size()) tr += w[j];
        if (j + 1 < deg) {
            w.insert(w.begin(), Rat(0)); // * t
            w = rmod(w, m);
        }
    }
    return tr;
}

} // namespace

ClassicalParams::ClassicalParams(int D_, Int q_, Rat alpha_, Rat beta_)
    : D(D_), q(std::move(q_)), alpha(std::move(alpha_)), beta(std::move(beta_)) {
    if (D < 1) throw std::invalid_argument("classical parameters need D >= 1");
    if (q == 0 || q == -1) throw std::invalid_argument("classical parameters need q not in {0, -1}");
}

Int qbracket(int j, const Int& q) {
    DRG_CHECK(j >= 0, "qbracket needs j >= 0");
    Int s = 0, p = 1;
    for (int t = 0; t < j; ++t) {
        s += p;
        p *= q;
    }
    return s;
}

NonPositiveIntersectionNumber::NonPositiveIntersectionNumber(char kind_, int index_, Rat value_)
    : std::runtime_error(std::string("intersection number ") + kind_ + "_" + std::to_string(index_) +
                         " = " + value_.str() + " is not positive"),
      kind(kind_), index(index_), value(std::move(value_)) {}

const Rat& IntersectionArray::at(const std::vector<Rat>& v, int i) {
    static const Rat zero(0);
    if (i < 0 || i >= static_cast<int>(v.size())) return zero;
    return v[i];
}

namespace {

IntersectionArray finish_array(int D, std::vector<Rat> b, std::vector<Rat> c) {
    IntersectionArray ia;
    ia.D = D;
    ia.b = std::move(b);
    ia.c = std::move(c);
    ia.b.resize(D + 1, Rat(0));
    ia.c.resize(D + 1, Rat(0));
    ia.a.assign(D + 1, Rat(0));
    for (int i = 0; i <= D; ++i) ia.a[i] = ia.b[0] - ia.b[i] - ia.c[i];
    ia.k.assign(D + 1, Rat(0));
    ia.k[0] = 1;
    for (int i = 0; i < D; ++i) ia.k[i + 1] = ia.k[i] * ia.b[i] / ia.c[i + 1];
    ia.n = 0;
    for (int i = 0; i <= D; ++i) ia.n += ia.k[i];
    return ia;
}

} // namespace

IntersectionArray intersection_array(const ClassicalParams& cp) {
    int D = cp.D;
    std::vector<Rat> b(D + 1, Rat(0)), c(D + 1, Rat(0));
    Rat bD(qbracket(D, cp.q));
    for (int i = 1; i <= D; ++i) {
        c[i] = Rat(qbracket(i, cp.q)) * (1 + cp.alpha * Rat(qbracket(i - 1, cp.q)));
        if (c[i] <= 0) throw NonPositiveIntersectionNumber('c', i, c[i]);
    }
    for (int i = 0; i <= D - 1; ++i) {
        b[i] = (bD - Rat(qbracket(i, cp.q))) * (cp.beta - cp.alpha * Rat(qbracket(i, cp.q)));
        if (b[i] <= 0) throw NonPositiveIntersectionNumber('b', i, b[i]);
    }
    return finish_array(D, std::move(b), std::move(c));
}

IntersectionArray array_from_bc(const std::vector<Rat>& bs, const std::vector<Rat>& cs) {
    DRG_CHECK(bs.size() == cs.size() && !bs.empty(), "array_from_bc: need b_0..b_{D-1} and c_1..c_D");
    int D = static_cast<int>(bs.size());
    std::vector<Rat> b(D + 1, Rat(0)), c(D + 1, Rat(0));
    for (int i = 0; i < D; ++i) {
        b[i] = bs[i];
        c[i + 1] = cs[i];
        if (b[i] <= 0) throw NonPositiveIntersectionNumber('b', i, b[i]);
        if (c[i + 1] <= 0) throw NonPositiveIntersectionNumber('c', i + 1, c[i + 1]);
    }
    return finish_array(D, std::move(b), std::move(c));
}

IntersectionNumbers::IntersectionNumbers(IntersectionArray ia) : ia_(std::move(ia)) {}

void IntersectionNumbers::ensure(int i) const {
    int D = ia_.D;
    int w = D + 1;
    while (static_cast<int>(layers_.size()) <= i) {
        int li = static_cast<int>(layers_.size());
        std::vector<Rat> layer(w * w, Rat(0));
        auto prev = [&](int h, int j) -> Rat {
            if (h < 0 || h > D || j < 0 || j > D) return Rat(0);
            return layers_[li - 1][h * w + j];
        };
        auto prev2 = [&](int h, int j) -> Rat {
            // only reached with coefficient b_{-1} = 0 when li < 2
            if (li < 2 || h < 0 || h > D || j < 0 || j > D) return Rat(0);
            return layers_[li - 2][h * w + j];
        };
        if (li == 0) {
            for (int h = 0; h <= D; ++h) layer[h * w + h] = 1;
        } else {
            // A_{i} A_j expanded via A_i = (A A_{i-1} - a_{i-1} A_{i-1} - b_{i-2} A_{i-2}) / c_i
            for (int h = 0; h <= D; ++h)
                for (int j = 0; j <= D; ++j) {
                    Rat v = ia_.bi(h) * prev(h + 1, j) + ia_.ai(h) * prev(h, j) +
                            ia_.ci(h) * prev(h - 1, j) - ia_.ai(li - 1) * prev(h, j) -
                            ia_.bi(li - 2) * prev2(h, j);
                    layer[h * w + j] = v / ia_.ci(li);
                }
        }
        layers_.push_back(std::move(layer));
    }
}

Rat IntersectionNumbers::p(int h, int i, int j) const {
    int D = ia_.D;
    DRG_CHECK(h >= 0 && h <= D, "p_hij: h out of range");
    if (i < 0 || i > D || j < 0 || j > D) return Rat(0);
    ensure(i);
    return layers_[i][h * (D + 1) + j];
}

Rat p_hij(const IntersectionArray& ia, int h, int i, int j) {
    IntersectionNumbers tab(ia);
    return tab.p(h, i, j);
}

Rat p633_closed_form(const Int& q) {
    Int a1 = ipow(q, 4) + ipow(q, 3) + q * q + q + 1;
    Int a2 = ipow(q, 4) + 2 * ipow(q, 3) + 2 * q * q + 2 * q + 2;
    Int a3 = ipow(q, 5) + 2 * ipow(q, 4) + 2 * ipow(q, 3) + 2 * q * q + 2 * q + 2;
    Rat numer = Rat((q + 1) * (q * q + 1) * (q * q - q + 1) *
                    (ipow(q, 3) + 2 * q * q + 2 * q + 2) * a1 * a2 * a3);
    Rat denom = Rat((q + 2) * (q * q + 2 * q + 2));
    return numer / denom;
}

Rat Spectrum::multiplicity_of_sorted(int idx) const {
    // merge rational entries and irrational intervals in decreasing order
    std::size_t ri = 0, ii = 0;
    int pos = 0;
    const auto& ivs = irrational ? irrational->intervals : std::vector<RootIsolation>{};
    while (ri < rational.size() || ii < ivs.size()) {
        bool take_rational;
        if (ri >= rational.size()) take_rational = false;
        else if (ii >= ivs.size()) take_rational = true;
        else take_rational = rational[ri].theta > ivs[ii].hi;
        if (pos == idx) {
            if (!take_rational) throw internal_error("requested eigenvalue position is irrational");
            return rational[ri].multiplicity;
        }
        ++pos;
        if (take_rational) ++ri; else ++ii;
    }
    throw internal_error("eigenvalue position out of range");
}

Spectrum spectrum(const IntersectionArray& ia) {
    int D = ia.D;
    for (int i = 1; i <= D; ++i) DRG_CHECK(ia.ci(i) > 0, "spectrum: c_i must be positive");
    for (int i = 0; i < D; ++i) DRG_CHECK(ia.bi(i) > 0, "spectrum: b_i must be positive");

    Mat B(D + 1, D + 1);
    for (int i = 0; i <= D; ++i) {
        if (i >= 1) B(i, i - 1) = ia.ci(i);
        B(i, i) = ia.ai(i);
        if (i <= D - 1) B(i, i + 1) = ia.bi(i);
    }
    IntPoly cp = char_poly(B);
    RationalRootResult rr = rational_roots(cp);

    // u_0 = 1, u_1 = t/k, c_j u_{j-1} + a_j u_j + b_j u_{j+1} = t u_j
    std::vector<RPoly> u(D + 1);
    u[0] = {Rat(1)};
    u[1] = {Rat(0), 1 / ia.bi(0)};
    for (int j = 1; j <= D - 1; ++j) {
        RPoly tu = rmul(u[j], {Rat(0), Rat(1)});
        RPoly rhs = radd(tu, radd(rscale(u[j], -ia.ai(j)), rscale(u[j - 1], -ia.ci(j))));
        u[j + 1] = rscale(rhs, 1 / ia.bi(j));
    }
    RPoly W = {};
    for (int j = 0; j <= D; ++j) W = radd(W, rscale(rmul(u[j], u[j]), ia.ki(j)));

    Spectrum sp;
    sp.n = ia.n;
    sp.charpoly = cp;
    for (const auto& root : rr.roots) {
        DRG_CHECK(root.multiplicity == 1, "intersection matrix must have simple eigenvalues");
        Rat w = reval(W, root.root);
        DRG_CHECK(w > 0, "spectrum: nonpositive norm sum");
        sp.rational.push_back({root.root, ia.n / w});
    }
    std::sort(sp.rational.begin(), sp.rational.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.theta > b.theta; });
    for (std::size_t t = 1; t < sp.rational.size(); ++t)
        DRG_CHECK(sp.rational[t - 1].theta > sp.rational[t].theta,
                  "eigenvalues must be strictly decreasing");

    if (rr.remainder.degree() >= 1) {
        Spectrum::Irrational ir;
        ir.factor = rr.remainder;
        RPoly g = from_int_poly(rr.remainder);
        RPoly winv = rinv_mod(rmod(W, g), g);
        ir.total_multiplicity = ia.n * rtrace_mul(winv, g);
        ir.theta_weighted_multiplicity =
            ia.n * rtrace_mul(rmod(rmul({Rat(0), Rat(1)}, winv), g), g);
        // refine intervals until they exclude every rational eigenvalue
        auto chain = sturm_chain(rr.remainder);
        ir.intervals = rr.remainder_intervals;
        for (auto& iv : ir.intervals) {
            bool again = true;
            while (again && iv.lo != iv.hi) {
                again = false;
                for (const auto& e : sp.rational) {
                    if (e.theta > iv.lo && e.theta <= iv.hi) {
                        // bisect toward the unique remainder root inside;
                        // rational midpoints are never roots of the remainder
                        Rat mid = (iv.lo + iv.hi) / 2;
                        if (sturm_root_count(chain, iv.lo, mid) == 1) iv.hi = mid;
                        else iv.lo = mid;
                        again = true;
                        break;
                    }
                }
            }
        }
        sp.irrational = std::move(ir);
    }
    return sp;
}

ClassicalParams family1_params(const Int& q, int D) {
    DRG_CHECK(q >= 2, "family-1 parameters need q >= 2");
    Int numer = ipow(q, D + 1) * (q + 1) - q * q - 1;
    DRG_CHECK(numer % (q - 1) == 0, "family-1 beta should be integral");
    return ClassicalParams(D, q, Rat(q + 1), Rat(numer / (q - 1)));
}

ClassicalParams family2_params(const Int& q, int D) {
    DRG_CHECK(q >= 2, "family-2 parameters need q >= 2");
    Int numer = q * q * (ipow(q, D) - 1);
    DRG_CHECK(numer % (q - 1) == 0, "family-2 beta should be integral");
    return ClassicalParams(D, q, Rat(q), Rat(numer / (q - 1)));
}

bool is_family1(const ClassicalParams& cp) {
    if (cp.q < 2) return false;
    return cp == family1_params(cp.q, cp.D);
}

bool is_family2(const ClassicalParams& cp) {
    if (cp.q < 2) return false;
    return cp == family2_params(cp.q, cp.D);
}

Rat multiplicity_closed_form(const ClassicalParams& cp, ClosedForm which) {
    const Int& q = cp.q;
    int D = cp.D;
    auto require = [&](bool ok, const char* what) {
        if (!ok) throw FamilyMismatch(std::string("closed form requires ") + what);
    };
    switch (which) {
    case ClosedForm::f2_family1_D4: {
        require(is_family1(cp) && D == 4, "family-1 parameters with D = 4");
        Rat n = Rat(q * q) * Rat(q * q + 1) * rpow(Rat(q * q + q + 1), 2) *
                Rat(ipow(q, 3) + q * q + 1) * Rat(ipow(q, 5) + ipow(q, 4) + 2) *
                Rat(ipow(q, 5) + 2 * ipow(q, 4) + 2 * ipow(q, 3) + 2 * q * q + q + 2);
        Rat d = Rat(q + 1) * Rat(q * q + 2 * q + 2) *
                Rat(ipow(q, 4) + 2 * ipow(q, 3) + 2 * q * q + 2 * q - 1);
        return n / d;
    }
    case ClosedForm::k2_family1_D5: {
        require(is_family1(cp) && D == 5, "family-1 parameters with D = 5");
        Rat n = Rat(ipow(q, 3)) * Rat(q * q + 1) * Rat(ipow(q, 4) + ipow(q, 3) + q * q + q + 1) *
                Rat(ipow(q, 4) + 2 * ipow(q, 3) + 2 * q * q + 2 * q + 2) *
                Rat(ipow(q, 6) + 2 * ipow(q, 5) + 2 * ipow(q, 4) + 2 * ipow(q, 3) + 2 * q * q + q + 1);
        return n / Rat(q + 2);
    }
    case ClosedForm::f2_family2: {
        require(is_family2(cp) && D >= 4, "family-2 parameters with D >= 4");
        Rat n = Rat(q * q) * Rat(ipow(q, D) - 1) * Rat(ipow(q, D + 1) + 1) *
                Rat(ipow(q, 2 * D - 2) - ipow(q, D - 2) + ipow(q, D - 3) - 1);
        Rat d = rpow(Rat(q - 1), 2) * Rat(q + 1);
        return n / d;
    }
    case ClosedForm::f3_family2: {
        require(is_family2(cp) && D >= 4, "family-2 parameters with D >= 4");
        Rat n = Rat(ipow(q, D) - 1) * Rat(ipow(q, D + 1) + 1) *
                Rat(ipow(q, 2 * D + 1) - ipow(q, D + 1) + ipow(q, D) - q) *
                Rat(ipow(q, 2 * D - 2) - ipow(q, D - 2) + ipow(q, D - 3) - q * q);
        Rat d = rpow(Rat(q - 1), 3) * Rat(q + 1) * Rat(q * q + q + 1);
        return n / d;
    }
    case ClosedForm::kD_family2: {
        require(is_family2(cp), "family-2 parameters");
        Rat prod = Rat(ipow(q, static_cast<unsigned long>(D) * (D + 1) / 2 + 1));
        Int qD = ipow(q, D);
        for (int i = 1; i <= D - 1; ++i) prod *= Rat(q * (qD - 1)) / Rat(ipow(q, i) - 1) - 1;
        return prod;
    }
    case ClosedForm::fD_family2: {
        require(is_family2(cp), "family-2 parameters");
        Int qD = ipow(q, D);
        Rat prod = Rat(qD * (q + 1) - q);
        for (int i = 2; i <= D; ++i) prod *= Rat(ipow(q, i + 1) * (qD - 1)) / Rat(ipow(q, i) - 1) + 1;
        return prod;
    }
    }
    throw FamilyMismatch("unknown closed form");
}

std::optional<Rat> tilde(const Rat& z, const Rat& b1) {
    if (z == -1) return std::nullopt;
    return Rat(-1) - b1 / (1 + z);
}

LocalEigCandidates local_eig_candidates(const ClassicalParams& cp) {
    LocalEigCandidates lc;
    lc.eta[0] = Rat(-cp.q - 1);
    lc.eta[1] = cp.beta - cp.alpha - 1;
    lc.eta[2] = Rat(-1);
    lc.eta[3] = cp.alpha * Rat(cp.q) * Rat(qbracket(cp.D - 1, cp.q)) - 1;
    lc.eta4_eq_eta2 = (lc.eta[3] == lc.eta[1]);
    lc.eta4_eq_eta3 = (lc.eta[3] == lc.eta[2]);
    DRG_CHECK(lc.eta4_eq_eta2 == (cp.beta == cp.alpha * Rat(qbracket(cp.D, cp.q))),
              "eta4 = eta2 coincidence criterion");
    DRG_CHECK(lc.eta4_eq_eta3 == (cp.alpha == 0), "eta4 = eta3 coincidence criterion");
    return lc;
}

LocalSrg srg_from_local(const ClassicalParams& cp) {
    if (cp.alpha == 0) throw AlphaZero();
    const Int& q = cp.q;
    int D = cp.D;
    Rat qr(q);
    LocalSrg out;
    out.forced_beta = cp.alpha * Rat(ipow(q, D + 1) - 1) / Rat(q - 1) - qr;
    out.beta_matches = (out.forced_beta == cp.beta);
    SrgParams& s = out.srg;
    Rat qm1 = qr - 1;
    s.n = Rat(ipow(q, D) - 1) * (cp.alpha * Rat(ipow(q, D + 1)) - qr * qr + qr - cp.alpha) / (qm1 * qm1);
    s.k = Rat(q + 1) * (cp.alpha * Rat(ipow(q, D)) - qr - cp.alpha + 1) / qm1;
    s.lambda = (cp.alpha * Rat(ipow(q, D)) + cp.alpha * qr * qr - qr * qr - cp.alpha * qr - qr -
                cp.alpha + 2) /
               qm1;
    s.mu = cp.alpha * Rat(q + 1);
    s.r = local_eig_candidates(cp).eta[3];
    s.s = Rat(-q - 1);
    return out;
}

ThinModuleScalars thin_module_scalars(const ClassicalParams& cp, DiameterClass cls) {
    IntersectionArray ia = intersection_array(cp);
    const Int& q = cp.q;
    int D = cp.D;
    ThinModuleScalars out;
    out.d = (cls == DiameterClass::DMinus2) ? D - 2 : D - 1;
    DRG_CHECK(out.d >= 1, "thin_module_scalars: diameter class out of range");
    Rat qm1(q - 1);
    for (int i = 0; i <= out.d - 1; ++i) out.gamma.push_back(ia.ci(i + 1));
    for (int i = 1; i <= out.d; ++i) {
        if (cls == DiameterClass::DMinus2) {
            out.beta.push_back(ia.bi(i + 1));
            Rat bp = (ia.ci(i + 1) / ia.ci(i)) * Rat(ipow(q, D) - ipow(q, i + 1)) /
                     Rat(ipow(q, i + 1) - 1) * Rat(ipow(q, i) - 1) / qm1 *
                     (cp.beta - cp.alpha * Rat(ipow(q, i) - 1) / qm1);
            out.beta_prime.push_back(bp);
        } else {
            out.beta.push_back(ia.bi(i));
            Rat bp = (ia.ci(i + 1) / ia.ci(i)) * Rat(ipow(q, D) - ipow(q, i)) /
                     Rat(ipow(q, i + 1) - 1) * Rat(ipow(q, i) - 1) / qm1 *
                     (cp.beta - cp.alpha * Rat(ipow(q, i + 1) - 1) / qm1);
            out.beta_prime.push_back(bp);
        }
    }
    return out;
}

} // namespace drg
