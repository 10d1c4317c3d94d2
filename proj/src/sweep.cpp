#include "drg/sweep.hpp"

#include "drg/params.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace drg {

namespace {

// Both Remark products have the shape
//   prefactor * prod_i N_i / (q^{e_i} - 1)
// and are integers iff no prime has negative total valuation. The
// prefactor_coprime part (a power of q) can never cancel a denominator.
struct FactorSystem {
    Int prefactor_coprime;
    Int prefactor_mixed;
    std::vector<int> exps;
    std::vector<Int> numerators;
    std::vector<Int> denominators;
};

FactorSystem kD_system(long q, int D) {
    FactorSystem fs;
    Int Q(q);
    fs.prefactor_coprime = ipow(Q, static_cast<unsigned long>(D) * (D + 1) / 2 + 1);
    fs.prefactor_mixed = 1;
    Int qD1 = ipow(Q, D + 1);
    Int qi = Q;
    for (int i = 1; i <= D - 1; ++i) {
        fs.exps.push_back(i);
        fs.numerators.push_back(qD1 - Q - qi + 1); // q(q^D-1) - (q^i-1)
        fs.denominators.push_back(qi - 1);
        qi *= Q;
    }
    return fs;
}

FactorSystem fD_system(long q, int D) {
    FactorSystem fs;
    Int Q(q);
    Int qD = ipow(Q, D);
    fs.prefactor_coprime = 1;
    fs.prefactor_mixed = qD * (Q + 1) - Q;
    Int qi = Q * Q;
    for (int i = 2; i <= D; ++i) {
        fs.exps.push_back(i);
        fs.numerators.push_back(qi * Q * (qD - 1) + qi - 1); // q^{i+1}(q^D-1) + q^i - 1
        fs.denominators.push_back(qi - 1);
        qi *= Q;
    }
    return fs;
}

const std::vector<long>& primes_upto_200k() {
    static const std::vector<long> primes = [] {
        constexpr long bound = 200000;
        std::vector<char> sieve(bound + 1, 1);
        std::vector<long> out;
        for (long p = 2; p <= bound; ++p) {
            if (!sieve[p]) continue;
            out.push_back(p);
            for (long m = p * p; m <= bound; m += p) sieve[m] = 0;
        }
        return out;
    }();
    return primes;
}

// Multiplicative order of q mod p, or 0 when it exceeds cap.
long ord_mod(long q, long p, long cap) {
    long r = q % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    long acc = r;
    for (long e = 1; e <= cap; ++e) {
        if (acc == 1) return e;
        acc = (acc * r) % p;
    }
    return 0;
}

bool system_is_integer(const FactorSystem& fs, long q, std::optional<Int>* prime) {
    long cap = fs.exps.back();
    for (long p : primes_upto_200k()) {
        if (q % p == 0) continue;
        long e = ord_mod(q, p, cap);
        if (e == 0) continue; // p divides no denominator
        Int P(p);
        long vden = 0, vnum = 0;
        for (std::size_t idx = 0; idx < fs.exps.size(); ++idx) {
            if (fs.exps[idx] % e == 0) vden += valuation(fs.denominators[idx], P);
            if (fs.numerators[idx] % P == 0) vnum += valuation(fs.numerators[idx], P);
        }
        if (fs.prefactor_mixed % P == 0) vnum += valuation(fs.prefactor_mixed, P);
        if (vnum < vden) {
            if (prime) *prime = P;
            return false;
        }
    }
    // no certificate below the bound: settle it exactly
    Rat value(fs.prefactor_coprime);
    value *= Rat(fs.prefactor_mixed);
    for (std::size_t i = 0; i < fs.numerators.size(); ++i)
        value *= Rat(fs.numerators[i]) / Rat(fs.denominators[i]);
    if (prime) prime->reset();
    return is_integer(value);
}

} // namespace

bool kD_is_integer(long q, int D, std::optional<Int>* prime) {
    return system_is_integer(kD_system(q, D), q, prime);
}

bool fD_is_integer(long q, int D, std::optional<Int>* prime) {
    return system_is_integer(fD_system(q, D), q, prime);
}

namespace {

std::string shard_path(const std::string& dir, long q) {
    std::ostringstream name;
    name << dir << "/cells-q" << q << ".tsv";
    return name.str();
}

std::vector<SweepCell> load_shard(const std::string& path) {
    std::vector<SweepCell> cells;
    std::ifstream f(path);
    if (!f) return cells;
    long q;
    int D, kd, fd;
    while (f >> q >> D >> kd >> fd) cells.push_back({q, D, kd != 0, fd != 0});
    return cells;
}

void store_shard(const std::string& path, const std::vector<SweepCell>& cells) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        for (const auto& c : cells)
            f << c.q << '\t' << c.D << '\t' << (c.kD_integer ? 1 : 0) << '\t'
              << (c.fD_integer ? 1 : 0) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

std::string sweep_records(const SweepResult& r) {
    std::ostringstream out;
    for (const auto& c : r.cells)
        out << c.q << '\t' << c.D << '\t' << (c.kD_integer ? 1 : 0) << '\t'
            << (c.fD_integer ? 1 : 0) << '\n';
    return out.str();
}

SweepResult conjecture_sweep(long q_max, int D_max, int jobs, const std::string& checkpoint_dir) {
    if (q_max < 2) throw std::invalid_argument("sweep needs q_max >= 2");
    if (D_max < 6) throw std::invalid_argument("sweep needs D_max >= 6");
    if (jobs < 1) jobs = 1;

    std::vector<int> ds;
    for (int D = 6; D <= D_max; D += 6) ds.push_back(D);

    bool use_store = !checkpoint_dir.empty();
    if (use_store) std::filesystem::create_directories(checkpoint_dir);

    std::mutex mu;
    std::map<long, std::vector<SweepCell>> done;
    std::atomic<long> next_q{2};

    auto worker = [&]() {
        while (true) {
            long q = next_q.fetch_add(1);
            if (q > q_max) return;
            std::vector<SweepCell> cells;
            bool from_store = false;
            if (use_store) {
                auto loaded = load_shard(shard_path(checkpoint_dir, q));
                // a shard is only reusable when it covers exactly this grid
                if (loaded.size() == ds.size()) {
                    bool ok = true;
                    for (std::size_t i = 0; i < ds.size(); ++i)
                        if (loaded[i].q != q || loaded[i].D != ds[i]) ok = false;
                    if (ok) {
                        cells = std::move(loaded);
                        from_store = true;
                    }
                }
            }
            if (!from_store) {
                for (int D : ds) {
                    SweepCell c;
                    c.q = q;
                    c.D = D;
                    c.kD_integer = kD_is_integer(q, D);
                    c.fD_integer = fD_is_integer(q, D);
                    cells.push_back(c);
                }
                if (use_store) store_shard(shard_path(checkpoint_dir, q), cells);
            }
            std::lock_guard<std::mutex> g(mu);
            done[q] = std::move(cells);
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    SweepResult res;
    res.q_max = q_max;
    res.D_max = D_max;
    for (auto& [q, cells] : done)
        for (auto& c : cells) {
            if (c.kD_integer && c.fD_integer) res.counterexamples.push_back(c);
            if (c.kD_integer || c.fD_integer) res.single_integer_cells.push_back(c);
            res.cells.push_back(c);
        }
    std::sort(res.cells.begin(), res.cells.end());
    std::sort(res.counterexamples.begin(), res.counterexamples.end());
    std::sort(res.single_integer_cells.begin(), res.single_integer_cells.end());
    return res;
}

} // namespace drg
