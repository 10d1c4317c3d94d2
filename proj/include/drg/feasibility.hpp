#pragma once

#include "drg/params.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace drg {

enum class Verdict { pass, fail, inapplicable };

// Every elimination carries a certificate that re-verifies independently:
// either the exact non-integer value with its reduced denominator, or a
// divisibility fact checkable by one modular reduction.
struct Certificate {
    enum class Kind { none, non_integer, divisibility, mod_pattern, text };
    Kind kind = Kind::none;
    std::string quantity;
    Rat value;               // non_integer: the offending exact value
    Int divisor, dividend;   // divisibility: divisor must divide dividend but does not
    Int remainder;
    std::string detail;
};

struct FeasibilityCheck {
    std::string name;
    Verdict verdict = Verdict::inapplicable;
    Certificate certificate;
};

struct FeasibilityReport {
    std::optional<ClassicalParams> params;
    std::vector<FeasibilityCheck> checks;

    bool eliminated() const {
        for (const auto& c : checks)
            if (c.verdict == Verdict::fail) return true;
        return false;
    }
    const FeasibilityCheck* first_failure() const {
        for (const auto& c : checks)
            if (c.verdict == Verdict::fail) return &c;
        return nullptr;
    }
    const FeasibilityCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Nonnegative-integrality of all c_i, b_i, k_i, all p^h_{ij}, and all
// multiplicities. Every check is evaluated and recorded.
FeasibilityReport integrality_screen(const ClassicalParams& cp);

enum class NeumaierCase { case_i, case_ii_steiner, case_iii_latin };

struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Which of Neumaier's three alternatives hold; empty means the parameter
// set is ruled out. Requires s < -1 integral.
std::set<NeumaierCase> neumaier_cases(const SrgParams& srg);

// lambda = mu - 1 and k = 2 mu.
bool conference_check(const SrgParams& srg);

// Surviving alpha values for q >= 2, D >= 4: candidates alpha = m/(q+1)
// with mu = m a positive integer, all local SRG parameters nonnegative
// integers, and a nonempty Neumaier case set.
std::vector<Rat> alpha_classification(const Int& q, int D);

FeasibilityReport family1_eliminate(const Int& q, int D);

struct DNotCovered : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// D = 0 (mod 6) raises DNotCovered: those cells belong to the sweep.
FeasibilityReport family2_eliminate(const Int& q, int D);

} // namespace drg
