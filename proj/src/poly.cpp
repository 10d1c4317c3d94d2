#include "drg/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace drg {

namespace {

Int int_content(const std::vector<Int>& c) {
    Int g = 0;
    for (const auto& x : c) {
        g = boost::multiprecision::gcd(g, x);
        if (g == 1) break;
    }
    return g;
}

// Divide out the content, keeping the sign of the leading coefficient.
IntPoly content_normalized(const IntPoly& p) {
    if (p.is_zero()) return p;
    Int g = int_content(p.coeffs());
    std::vector<Int> c = p.coeffs();
    if (g > 1)
        for (auto& x : c) x /= g;
    return IntPoly(std::move(c));
}

// Rational-coefficient scratch polynomials for remainder sequences.
using RatCoeffs = std::vector<Rat>;

RatCoeffs to_rat(const IntPoly& p) {
    RatCoeffs r(p.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = Rat(p.coeffs()[i]);
    return r;
}

void rat_trim(RatCoeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// Remainder of a by b over Q; b nonzero.
RatCoeffs rat_rem(RatCoeffs a, const RatCoeffs& b) {
    rat_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        rat_trim(a);
    }
    return a;
}

IntPoly clear_denominators(const RatCoeffs& c) {
    Int l = 1;
    for (const auto& x : c) l = boost::multiprecision::lcm(l, den(x));
    std::vector<Int> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = num(c[i]) * (l / den(c[i]));
    return content_normalized(IntPoly(std::move(out)));
}

} // namespace

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const Int& c) {
    if (c == 0) return IntPoly();
    return IntPoly(std::vector<Int>{c});
}

IntPoly IntPoly::linear_root(const Int& r) { return IntPoly(std::vector<Int>{-r, Int(1)}); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& IntPoly::leading() const {
    DRG_CHECK(!is_zero(), "leading coefficient of zero polynomial");
    return c_.back();
}

Rat IntPoly::eval(const Rat& x) const {
    Rat v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + Rat(c_[i]);
    return v;
}

Int IntPoly::eval_int(const Int& x) const {
    Int v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

int IntPoly::sign_at(const Rat& x) const {
    Rat v = eval(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(i);
    return IntPoly(std::move(d));
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return *this;
    IntPoly p = content_normalized(*this);
    if (p.leading() < 0)
        for (auto& x : p.c_) x = -x;
    return p;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] += c_[i];
        if (i < o.c_.size()) r[i] -= o.c_[i];
    }
    return IntPoly(std::move(r));
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Int a = c_[i];
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int mag = boost::multiprecision::abs(a);
        if (i == 0 || mag != 1) os << mag.str();
        if (i >= 1) {
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
    std::vector<IntPoly> chain;
    chain.push_back(content_normalized(p));
    IntPoly d = content_normalized(p.derivative());
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const IntPoly& a = chain[chain.size() - 2];
        const IntPoly& b = chain.back();
        RatCoeffs r = rat_rem(to_rat(a), to_rat(b));
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        chain.push_back(clear_denominators(r));
    }
    return chain;
}

namespace {

int sign_variations(const std::vector<IntPoly>& chain, const Rat& x) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

} // namespace

int sturm_root_count(const std::vector<IntPoly>& chain, const Rat& lo, const Rat& hi) {
    DRG_CHECK(lo < hi, "sturm_root_count: empty interval");
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Rat root_bound(const IntPoly& p) {
    DRG_CHECK(!p.is_zero(), "root_bound of zero polynomial");
    Int lead = boost::multiprecision::abs(p.leading());
    Int mx = 0;
    for (const auto& c : p.coeffs()) {
        Int a = boost::multiprecision::abs(c);
        if (a > mx) mx = a;
    }
    return Rat(1) + Rat(mx) / Rat(lead);
}

namespace {

struct Isolator {
    const IntPoly& p; // squarefree
    std::vector<IntPoly> chain;
    std::vector<RootIsolation> out;
    Rat target_width;

    // Subdivide (lo, hi] until each piece brackets a single root. A sample
    // point that happens to be a root is reported exactly (zero width).
    void isolate(const Rat& lo, const Rat& hi, int count) {
        if (count == 0) return;
        if (count == 1 && target_width > 0 && hi - lo < target_width) {
            out.push_back({lo, hi});
            return;
        }
        Rat mid = (lo + hi) / 2;
        if (p.eval(mid) == 0) {
            out.push_back({mid, mid});
            Rat step = (hi - lo) / 4;
            for (int guard = 0; guard < 256; ++guard) {
                Rat lh = mid - step, rl = mid + step;
                if (p.eval(lh) != 0 && p.eval(rl) != 0 &&
                    sturm_root_count(chain, lh, mid) == 1 &&
                    sturm_root_count(chain, mid, rl) == 0) {
                    if (lh > lo) isolate(lo, lh, sturm_root_count(chain, lo, lh));
                    if (rl < hi) isolate(rl, hi, sturm_root_count(chain, rl, hi));
                    return;
                }
                step /= 2;
            }
            DRG_CHECK(false, "isolator failed to step off an exact root");
        }
        int left = sturm_root_count(chain, lo, mid);
        isolate(lo, mid, left);
        isolate(mid, hi, count - left);
    }
};

// Isolating intervals for the distinct real roots of a squarefree p, sorted
// decreasing. Intervals of zero width are exact roots. When target_width > 0
// every non-exact interval is narrower than it.
std::vector<RootIsolation> isolate_real_roots(const IntPoly& p, const Rat& target_width) {
    if (p.degree() <= 0) return {};
    Isolator iso{p, sturm_chain(p), {}, target_width};
    Rat b = root_bound(p);
    int total = sturm_root_count(iso.chain, -b, b);
    iso.isolate(-b, b, total);
    std::sort(iso.out.begin(), iso.out.end(),
              [](const RootIsolation& a, const RootIsolation& c) { return a.lo > c.lo; });
    return iso.out;
}

// p primitive with integer coefficients, r = a/b in lowest terms a known
// root: exact quotient p / (t - a/b), primitive. By Gauss's lemma
// (b t - a) | p over Z.
IntPoly deflate_primitive(const IntPoly& p, const Rat& r) {
    Int a = num(r), b = den(r);
    int n = p.degree();
    DRG_CHECK(n >= 1, "deflate: degree too small");
    std::vector<Int> d(n);
    Int carry = p.coeffs()[n];
    for (int i = n - 1; i >= 0; --i) {
        DRG_CHECK(carry % b == 0, "deflate: not a root (leading division)");
        d[i] = carry / b;
        carry = p.coeffs()[i] + a * d[i];
    }
    DRG_CHECK(carry == 0, "deflate: nonzero remainder, not a root");
    return IntPoly(std::move(d)).primitive();
}

// Full factorization by trial division; empty result means the value was
// too stubborn for the quick path.
std::optional<std::map<Int, int>> trial_factor(Int n, unsigned long limit) {
    std::map<Int, int> f;
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    for (Int p = 2; p * p <= n; ++p) {
        if (p > limit) return std::nullopt;
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

void all_divisors(const std::map<Int, int>& f, std::vector<Int>& out, std::size_t cap) {
    out.push_back(1);
    for (const auto& [p, e] : f) {
        std::size_t sz = out.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) {
                out.push_back(out[j] * pk);
                if (out.size() > cap) return;
            }
        }
    }
}

} // namespace

IntPoly deflate(const IntPoly& p, const Rat& r) { return deflate_primitive(p.primitive(), r); }

RationalRootResult rational_roots(const IntPoly& p_in) {
    if (p_in.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    RationalRootResult res;

    // peel off roots at zero
    std::vector<Int> c = p_in.coeffs();
    std::size_t z = 0;
    while (z < c.size() && c[z] == 0) ++z;
    if (z > 0) {
        res.roots.push_back({Rat(0), static_cast<int>(z)});
        c.erase(c.begin(), c.begin() + z);
    }
    IntPoly p = IntPoly(std::move(c)).primitive();

    auto take_root = [&](const Rat& r) {
        int mult = 0;
        while (!p.is_zero() && p.degree() >= 1 && p.eval(r) == 0) {
            p = deflate_primitive(p, r);
            ++mult;
        }
        if (mult > 0) res.roots.push_back({r, mult});
        return mult > 0;
    };

    if (p.degree() >= 1) {
        // quick path: both extreme coefficients factor easily
        bool done = false;
        constexpr std::size_t kDivCap = 40000;
        auto ft = trial_factor(p.coeffs().front(), 100000);
        auto fl = ft ? trial_factor(p.leading(), 100000) : std::nullopt;
        if (ft && fl) {
            std::vector<Int> dt, dl;
            all_divisors(*ft, dt, kDivCap);
            all_divisors(*fl, dl, kDivCap);
            if (dt.size() <= kDivCap && dl.size() <= kDivCap && dt.size() * dl.size() <= kDivCap) {
                for (const Int& a : dt)
                    for (const Int& b : dl) {
                        if (boost::multiprecision::gcd(a, b) != 1) continue;
                        take_root(Rat(a) / Rat(b));
                        if (p.degree() >= 1) take_root(Rat(-a) / Rat(b));
                        if (p.degree() < 1) break;
                    }
                done = true;
            }
        }

        if (!done) {
            // general path: y = lead * t turns rational roots into integer
            // roots of a monic polynomial; isolate those with Sturm.
            while (p.degree() >= 1) {
                Int lead = p.leading();
                int n = p.degree();
                // q(y) = lead^(n-1) p(y/lead), monic with integer coefficients
                std::vector<Int> m(n + 1);
                m[n] = 1;
                Int scale = 1; // lead^(n-1-i)
                for (int i = n - 1; i >= 0; --i) {
                    m[i] = p.coeffs()[i] * scale;
                    scale *= lead;
                }
                IntPoly q(std::move(m));
                IntPoly sf = q;
                {
                    // squarefree part for isolation
                    auto chain = sturm_chain(q);
                    if (chain.size() >= 2 && !chain.back().is_zero() && chain.back().degree() >= 1) {
                        RatCoeffs quot;
                        // q / gcd via rational division
                        RatCoeffs a = to_rat(q), g = to_rat(chain.back());
                        rat_trim(a);
                        quot.assign(a.size() - g.size() + 1, Rat(0));
                        while (a.size() >= g.size() && !a.empty()) {
                            Rat f = a.back() / g.back();
                            quot[a.size() - g.size()] = f;
                            std::size_t off = a.size() - g.size();
                            for (std::size_t i = 0; i < g.size(); ++i) a[off + i] -= f * g[i];
                            a.pop_back();
                            rat_trim(a);
                        }
                        sf = clear_denominators(quot);
                    }
                }
                bool found = false;
                for (const auto& iv : isolate_real_roots(sf, Rat(1) / 2)) {
                    Int cand;
                    bool have = false;
                    if (iv.lo == iv.hi) {
                        if (is_integer(iv.lo)) {
                            cand = num(iv.lo);
                            have = true;
                        }
                    } else {
                        Int f = num(iv.hi) / den(iv.hi);
                        if (Rat(f) > iv.hi) f -= 1; // floor for negatives
                        if (Rat(f) > iv.lo && Rat(f) <= iv.hi) {
                            cand = f;
                            have = true;
                        }
                    }
                    if (have && q.eval(Rat(cand)) == 0) {
                        found = take_root(Rat(cand) / Rat(lead)) || found;
                    }
                }
                if (!found) break;
            }
        }
    }

    res.remainder = p.degree() >= 1 ? p : IntPoly::constant(1);
    if (res.remainder.degree() >= 1) {
        // remainder is rational-root-free; still expose where its real roots live
        res.remainder_intervals = isolate_real_roots(res.remainder, Rat(1) / 1024);
    }
    std::sort(res.roots.begin(), res.roots.end(),
              [](const RationalRoot& a, const RationalRoot& b) { return a.root > b.root; });
    return res;
}

} // namespace drg
