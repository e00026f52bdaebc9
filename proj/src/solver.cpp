#include "subfde/solver.hpp"

#include "subfde/errors.hpp"
#include "subfde/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace subfde {

std::vector<double> init_prefix(std::span<const double> ics, double h, int r) {
    if (r < 1) throw std::invalid_argument("order must be at least 1");
    if (ics.size() != static_cast<std::size_t>(r))
        throw std::invalid_argument("expected " + std::to_string(r) + " initial conditions, got " +
                                    std::to_string(ics.size()));
    std::vector<double> y(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
        const double x = j * h;
        double term = 1.0;  // x^i / i!
        double sum = 0.0;
        for (int i = 0; i < r; ++i) {
            sum += ics[static_cast<std::size_t>(i)] * term;
            term *= x / (i + 1);
        }
        y[static_cast<std::size_t>(j)] = sum;
    }
    return y;
}

std::vector<double> forward_substitute(std::span<const AssembledRow> rows, std::vector<double> prefix) {
    std::vector<double> y = std::move(prefix);
    y.reserve(y.size() + rows.size());
    for (const auto& row : rows) {
        if (static_cast<std::size_t>(row.m) != y.size())
            throw std::invalid_argument("rows must continue the prefix without gaps");
        CompensatedSum lower;
        double norm = 0.0;
        for (std::size_t k = 0; k + 1 < row.d.size(); ++k) {
            lower += row.d[k] * y[k];
            norm += std::abs(row.d[k]);
        }
        norm += std::abs(row.d.back());
        const double pivot = row.pivot();
        if (!(std::abs(pivot) >= kPivotTolerance * norm) || pivot == 0.0)
            throw NumericalError("singular pivot " + std::to_string(pivot), row.m);
        y.push_back((row.rhs - lower.value()) / pivot);
    }
    return y;
}

SolveResult solve(const FdeProblem& problem, double h, int M) {
    const int r = problem.order();
    if (M < r) throw std::invalid_argument("need M >= " + std::to_string(r));
    const auto rows = assemble_system(problem, h, M);

    SolveResult result;
    result.grid = Grid::uniform(h, M);
    result.y = forward_substitute(rows, init_prefix(problem.initial_conditions(), h, r));
    result.report = check_conditioning(rows, r);
    result.pivot_min = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        result.pivot_min = std::min(result.pivot_min, std::abs(row.pivot()));
        if (row.degraded) result.degraded_rows.push_back(row.m);
    }
    return result;
}

SolveResult calibrate(const FdeProblem& problem, double epsilon, double t_ref, double u_ref, double h, int M) {
    const auto& ics = problem.initial_conditions();
    if (std::any_of(ics.begin(), ics.end(), [](double v) { return v != 0.0; }))
        throw std::invalid_argument("calibration needs zero initial data");
    for (int m = 0; m <= M; ++m)
        if (problem.f().eval(m * h) != 0.0)
            throw std::invalid_argument("calibration needs a homogeneous equation (f == 0)");
    const double ref_index = t_ref / h;
    const long j_ref = std::lround(ref_index);
    if (std::abs(ref_index - static_cast<double>(j_ref)) > 1e-9 * std::max(1.0, ref_index) || j_ref < 0 || j_ref > M)
        throw std::invalid_argument("reference point " + std::to_string(t_ref) + " is not a grid node");

    std::vector<double> perturbed(ics.size(), 0.0);
    perturbed[std::min<std::size_t>(1, ics.size() - 1)] = epsilon;
    SolveResult result = solve(problem.with_initial_conditions(std::move(perturbed)), h, M);

    const double at_ref = result.y[static_cast<std::size_t>(j_ref)];
    if (std::abs(at_ref) < 1e-12)
        throw NumericalError("solution vanishes at the reference point; cannot calibrate", j_ref);
    const double scale = u_ref / at_ref;
    for (double& v : result.y) v *= scale;
    return result;
}

int steps_for(double h, double t_end) {
    if (!(h > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("step and interval must be positive");
    const double ratio = t_end / h;
    const long steps = std::lround(ratio);
    if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
        throw std::invalid_argument("step " + std::to_string(h) + " does not divide " + std::to_string(t_end));
    return static_cast<int>(steps);
}

std::vector<ConvergencePoint> convergence_study(const FdeProblem& problem,
                                                const std::function<double(double)>& oracle,
                                                std::span<const double> hs, double t_end) {
    if (hs.empty()) throw std::invalid_argument("no steps given");
    for (std::size_t i = 1; i < hs.size(); ++i)
        if (!(hs[i] < hs[i - 1])) throw std::invalid_argument("steps must be strictly decreasing");

    const int coarse = steps_for(hs[0], t_end);
    std::vector<ConvergencePoint> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const int M = steps_for(hs[i], t_end);
        const SolveResult res = solve(problem, hs[i], M);
        int stride = 1;
        if (M % coarse == 0) stride = M / coarse;
        double err = 0.0;
        for (int j = 0; j <= M; j += stride)
            err = std::max(err, std::abs(res.y[static_cast<std::size_t>(j)] - oracle(j * hs[i])));
        ConvergencePoint pt;
        pt.h = hs[i];
        pt.max_error = err;
        pt.observed_order = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                                   : std::log(out.back().max_error / err) / std::log(hs[i - 1] / hs[i]);
        out.push_back(pt);
    }
    return out;
}

}  // namespace subfde
