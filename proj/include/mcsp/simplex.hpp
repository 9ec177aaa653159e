#pragma once

#include "mcsp/ip_model.hpp"

#include <vector>

namespace mcsp {

enum class LpStatus { optimal, infeasible, iteration_limit };

struct LpSolution {
    double objective = 0.0;
    std::vector<double> values; // structural variables, model order
    LpStatus status = LpStatus::optimal;
    long iterations = 0;
    bool bland_engaged = false;
};

struct LpOptions {
    double tol_feas = 1e-7;
    double tol_opt = 1e-7;
    long max_iters = 0; // 0 = automatic, scales with model size
};

/// Solves the LP relaxation of `model` (integrality dropped, bounds kept)
/// with a bounded-variable revised simplex: phase I on artificial variables,
/// Dantzig pricing, permanent switch to Bland's rule after a stall.
LpSolution solve_lp(const IpModel& model, const LpOptions& options = {});

} // namespace mcsp
