#pragma once

#include "subfde/assembly.hpp"
#include "subfde/caputo.hpp"
#include "subfde/conditioning.hpp"

#include <functional>
#include <span>
#include <vector>

namespace subfde {

struct SolveResult {
    Grid grid;
    std::vector<double> y;
    ConditioningReport report;
    /// Smallest |d_m + p_m| over the eliminated rows.
    double pivot_min = 0.0;
    std::vector<int> degraded_rows;
};

/// Relative singular-pivot threshold: a row is singular when
/// |d_m + p_m| < kPivotTolerance * sum_{k<=m} |d_k|.
inline constexpr double kPivotTolerance = 1e-13;

/// y_j = sum_i ics[i] (j h)^i / i!, j = 0..r-1.
std::vector<double> init_prefix(std::span<const double> ics, double h, int r);

/// Forward elimination of rows (ascending m, contiguous after the prefix).
/// Returns y_0..y_M. Throws NumericalError on a singular pivot.
std::vector<double> forward_substitute(std::span<const AssembledRow> rows, std::vector<double> prefix);

/// Solves on the grid j h, j = 0..M.
SolveResult solve(const FdeProblem& problem, double h, int M);

/// Homogeneous problems only have the trivial solution for zero initial data.
/// Perturbs the first derivative initial condition (y(0) for first-order
/// problems) by epsilon, solves, then rescales so that y(t_ref) = u_ref.
/// Requires f == 0 on the grid, zero initial data and t_ref on the grid.
SolveResult calibrate(const FdeProblem& problem, double epsilon, double t_ref, double u_ref, double h, int M);

struct ConvergencePoint {
    double h = 0.0;
    double max_error = 0.0;
    /// log(err_prev / err) / log(h_prev / h); NaN for the first step.
    double observed_order = 0.0;
};

/// Solves on [0, t_end] for each step in `hs` (strictly decreasing, each
/// dividing t_end) and measures the max error against `oracle` on the nodes
/// of the coarsest grid.
std::vector<ConvergencePoint> convergence_study(const FdeProblem& problem,
                                                const std::function<double(double)>& oracle,
                                                std::span<const double> hs, double t_end);

/// Number of steps of size h in [0, t_end]; throws when h does not divide it.
int steps_for(double h, double t_end);

}  // namespace subfde
