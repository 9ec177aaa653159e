#pragma once

#include "mcsp/enumerate.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/ip_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcsp {

/// A common partition: the same block multiset tiles both strings.
struct Solution {
    std::vector<CommonBlock> blocks;
    int value = 0; // |blocks|
};

enum class SolveStatus { optimal, feasible, timeout_no_incumbent };

struct SolveReport {
    std::optional<Solution> best;
    double lower_bound = 0.0; // proven bound on the optimum
    SolveStatus status = SolveStatus::feasible;
    double time_to_first_s = 0.0; // completion time of the greedy incumbent
    double time_to_best_s = 0.0;
    double total_time_s = 0.0;
    long long nodes = 0;      // search-tree descents beyond the root
    double opt_gap_pct = 0.0; // 100*(value - lower_bound)/value, clamped at 0
    double lp_gap_pct = 0.0;  // 100*(value - LP)/value; NaN when LP unused
    double lp_value = 0.0;    // root relaxation value; NaN when LP unused

    int value() const { return best ? best->value : 0; }
};

struct SolveOptions {
    ModelKind kind = ModelKind::cs;
    double time_limit_s = 60.0;
    bool use_lp_bound = true;
    bool use_dominance = true; // prune repeated (prefix, s2-coverage) states
};

/// All-singleton partition of value n; letters matched first-unused.
Solution trivial_solution(const Instance& inst);

/// Repeatedly places a longest string that is uncovered in both inputs,
/// tie-broken by (lex-smallest string, smallest k1, smallest k2).
Solution greedy_solution(const Instance& inst, const SubstringCatalog& catalog);

/// Depth-first exact search over blocks covering the leftmost uncovered s1
/// position, longest-first. Prunes with an adaptive combinatorial bound
/// (uncovered span over the longest still-common substring, per segment)
/// and, when enabled, the root LP bound of the chosen model; candidate
/// order then follows the root LP weights. The greedy solution seeds the
/// incumbent. Natural exhaustion proves optimality; timeouts report the
/// best incumbent with an honest gap.
SolveReport branch_and_bound(const Instance& inst, const SolveOptions& options);

SolveReport branch_and_bound(ModelKind kind, const Instance& inst, double time_limit_s,
                             bool use_lp_bound);

/// Exhaustive tiling search straight over the strings; guarded to n <= 14.
/// Independent of the catalog/LP machinery; used as the test oracle.
Solution brute_force(const Instance& inst);

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> reasons;

    explicit operator bool() const { return ok; }
};

/// Checks that the blocks tile s1 and s2 exactly, match both strings, and
/// sum to length n. Collects one reason per defect instead of throwing.
VerifyResult verify(const Instance& inst, const Solution& sol);

} // namespace mcsp
