#pragma once

// Local minimizers used by the measurement and relative-entropy searches.

#include <functional>
#include <span>
#include <vector>

namespace qdk {

struct LocalMinimum {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;
/// Returns f(x) and writes the gradient into `grad` (same length as x).
using GradientObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct SimplexOptions {
    double initial_step = 0.25;
    /// Converged once max f - min f over the simplex is at most this.
    double tolerance = 1e-8;
    int max_iterations = 200;
};

/// Nelder-Mead with standard coefficients (reflect 1, expand 2, contract
/// 1/2, shrink 1/2). Vertices with equal value are ordered
/// lexicographically, so the result is a deterministic function of x0.
LocalMinimum nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opts);

struct GradientOptions {
    int memory = 8;
    int max_iterations = 1000;
    /// Stop when |grad|_inf drops below this.
    double gradient_tolerance = 1e-9;
    /// Stop when the relative decrease stays below this for 3 iterations.
    double value_tolerance = 1e-13;
};

/// Limited-memory BFGS with Armijo backtracking.
LocalMinimum lbfgs(const GradientObjective& fg, std::vector<double> x0, const GradientOptions& opts);

/// Lexicographic "is a strictly better than b" on (value, x) with values
/// closer than `tie` treated as equal.
bool better_point(const LocalMinimum& a, const LocalMinimum& b, double tie);

}  // namespace qdk
