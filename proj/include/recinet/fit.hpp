#pragma once

#include <string>

#include "recinet/models.hpp"

namespace recinet {

struct FitOptions {
    double tolerance = 1e-4;  // sup-norm over per-constraint residuals
    int max_iterations = 500;
    double max_log_step = 5.0;     // per-iteration cap on |delta log-multiplier|
    double product_cap = 1.0 - 1e-12;  // pairwise l-products stay below this
};

struct FitReport {
    ParamSet params;
    bool converged = false;
    int iterations = 0;
    double residual_sup_norm = 0.0;
    /// target - expectation at the returned parameters, same shape as targets.
    NodeConstraints residuals;
    std::string message;
};

/// Solves the first-order conditions target = expectation for the model's
/// log-multipliers. Damped Newton using the exact constraint covariance as
/// Jacobian, with backtracking line search and a per-family multiplicative
/// fixed-point fallback. Channels whose targets are zero are pinned to
/// multiplier 0 and excluded from the solve. Deterministic: identical inputs
/// and options yield bitwise-identical reports. Never throws on
/// non-convergence; infeasible targets throw std::invalid_argument.
FitReport fit(const NodeConstraints& targets, const FitOptions& options = {});

}  // namespace recinet
