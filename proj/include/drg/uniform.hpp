#pragma once

#include "drg/talg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drg {

// Tridiagonal parameter matrix with unit diagonal; conventions e_1^- = 0
// and e_eps^+ = 0.
struct ParameterMatrixU {
    int eps = 0;
    std::vector<Rat> e_minus; // e_2^- .. e_eps^-
    std::vector<Rat> e_plus;  // e_1^+ .. e_{eps-1}^+

    Rat eminus(int i) const; // 1 <= i <= eps
    Rat eplus(int i) const;

    bool cond_ii_whole_range() const; // all e^- nonzero or all e^+ nonzero
    bool cond_ii_per_index() const;   // per-index disjunction (reported reading)
    bool cond_iii_blocks_nonsingular() const;
};

struct UniformSolution {
    ParameterMatrixU U;
    std::vector<Rat> f; // f_1 .. f_eps

    struct LevelSolve {
        int level = 0;
        // coordinates (e_i^-, e_i^+, f_i); forced boundary slots carry 0
        Vec particular;
        std::vector<Vec> homogeneous;
        bool eminus_forced_zero = false;
        bool eplus_forced_zero = false;
    };
    std::vector<LevelSolve> levels;
};

enum class UniformOutcome { uniform, no_uniform, undetermined_validation };

struct NoUniformWitness {
    int level = 0;
    // vector in the level subconstituent whose identity is unsatisfiable for
    // every coefficient triple (found by bounded search; may be absent)
    std::optional<Vec> vector;
    // exact separating functional: orthogonal to every target, not to the rhs
    Mat functional;
    std::string reason;
};

struct UniformVerdict {
    UniformOutcome outcome = UniformOutcome::undetermined_validation;
    std::optional<UniformSolution> solution;
    std::optional<NoUniformWitness> witness;
    std::string validation_note;
    // recorded necessary-condition data
    bool thin_screen_ran = false;
    bool thin_screen_all_thin = true;
    bool cond_ii_per_index = false;
};

enum class ValidationOutcome { valid, no_valid_choice, undetermined };

struct ValidationResult {
    ValidationOutcome outcome = ValidationOutcome::undetermined;
    std::optional<UniformSolution> choice;
    std::string note;
};

// Search the per-level affine solution families for a representative
// satisfying the parameter-matrix conditions: the canonical representative
// (free coordinates set to 1) first, then a bounded palette of small
// rational perturbations.
ValidationResult validate_parameter_matrix(const std::vector<UniformSolution::LevelSolve>& levels,
                                           int eps);

struct Bipartite : std::runtime_error {
    Bipartite() : std::runtime_error("graph is bipartite; solve_uniform applies directly") {}
};

// Exact per-level solve of e_i^- RL^2 + LRL + e_i^+ L^2 R = f_i L on E_i*V.
// The context must be bipartite: native (F = 0) or a bipartite quotient.
UniformVerdict solve_uniform(const TerwilligerContext& ctx);

// Non-bipartite entry point: builds the quotient context, records the
// thinness screen, and solves.
UniformVerdict supports_uniform(const Graph& g, int x);

// Exact re-substitution check of a claimed solution on every standard basis
// vector of every subconstituent.
bool verify_uniform_solution(const TerwilligerContext& ctx, const UniformSolution& sol);

} // namespace drg
