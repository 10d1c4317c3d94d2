#pragma once

#include "drg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drg {

struct SweepCell {
    long q = 0;
    int D = 0;
    bool kD_integer = false;
    bool fD_integer = false;

    auto operator<=>(const SweepCell&) const = default;
};

struct SweepResult {
    long q_max = 0;
    int D_max = 0;
    std::vector<SweepCell> cells;           // sorted by (q, D)
    std::vector<SweepCell> counterexamples; // cells where BOTH values are integers
    // cells where at least one value is an integer (the stronger reading of
    // "never integers": neither may ever be one)
    std::vector<SweepCell> single_integer_cells;
};

// Exact integrality of the family-2 k_D and f_D products for one cell,
// decided by per-prime valuation certificates with an exact-product
// fallback. The optional out-parameters receive the certifying prime.
bool kD_is_integer(long q, int D, std::optional<Int>* prime = nullptr);
bool fD_is_integer(long q, int D, std::optional<Int>* prime = nullptr);

// Sweep over q in [2, q_max], D in [6, D_max] with D = 0 (mod 6).
// checkpoint_dir, when nonempty, holds per-q shard files in the cell record
// format `q<TAB>D<TAB>kD_int<TAB>fD_int`; an interrupted sweep resumes from
// them and never recomputes a stored cell.
SweepResult conjecture_sweep(long q_max, int D_max, int jobs = 1,
                             const std::string& checkpoint_dir = "");

// One record per line, sorted by (q, D).
std::string sweep_records(const SweepResult& r);

} // namespace drg
