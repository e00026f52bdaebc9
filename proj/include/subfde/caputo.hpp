#pragma once

#include "subfde/stencil.hpp"

#include <functional>
#include <span>
#include <vector>

namespace subfde {

/// Fractional order alpha with n - 1 < alpha < n, n = ceil(alpha).
/// Integer orders are rejected.
class FracOrder {
public:
    explicit FracOrder(double alpha);

    double alpha() const { return alpha_; }
    int n() const { return n_; }
    /// n - alpha, the exponent of the substituted variable; lies in (0, 1).
    double exponent() const { return n_ - alpha_; }

    friend bool operator==(const FracOrder&, const FracOrder&) = default;

private:
    double alpha_;
    int n_;
};

/// Partition 0 = x_0 < x_1 < ... < x_M.
class Grid {
public:
    /// Nodes j * h for j = 0..steps.
    static Grid uniform(double h, int steps);
    /// Arbitrary strictly increasing nodes starting at 0.
    static Grid from_nodes(std::vector<double> nodes);

    std::span<const double> nodes() const { return nodes_; }
    double operator[](std::size_t j) const { return nodes_[j]; }
    int steps() const { return static_cast<int>(nodes_.size()) - 1; }
    double end() const { return nodes_.back(); }
    bool is_uniform() const { return uniform_; }
    /// Step of a uniform grid; the largest step otherwise.
    double h() const { return h_; }

private:
    std::vector<double> nodes_;
    bool uniform_ = false;
    double h_ = 0.0;
};

/// (t - x_{k-1})^{n-alpha} - (t - x_k)^{n-alpha}: the trapezoid weight of
/// interval k in the substituted variable.
double substitution_increment(double t, double x_prev, double x_k, double exponent);

/// Caputo derivative of f at t = grid.end() from the singularity-free
/// substitution form, integrated by the trapezoid rule. `dnf` is the n-th
/// classical derivative of f. Works on non-uniform grids.
double caputo_substitution(const std::function<double(double)>& dnf, FracOrder order, const Grid& grid);

/// Same sum with the n-th derivative at each node replaced by finite
/// differences of the samples y_0..y_m on a uniform grid with step h
/// (stencils chosen by stencil_for_node). Requires m >= n.
double caputo_substitution_sampled(std::span<const double> samples, FracOrder order, double h,
                                   const StencilTable& table = StencilTable::shared());

/// Riemann-Liouville derivative from the Caputo value:
/// caputo + sum_{j<n} f^{(j)}(0) t^{j-alpha} / Gamma(j + 1 - alpha).
/// `taylor` holds f(0), f'(0), ..., f^{(n-1)}(0).
double riemann_liouville(std::span<const double> taylor, FracOrder order, double caputo_value, double t);

}  // namespace subfde
