#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

namespace subfde {

using Rational = boost::multiprecision::cpp_rational;

enum class StencilKind { central, forward, backward, fitted };

/// Finite-difference weights for the n-th derivative at one node.
///
/// The derivative is approximated by sum_l weights[l] * y[k + offsets[l]] /
/// (norm * h^n), where norm is 1 for even n and 2 for odd n. Weights are
/// stored ascending by offset. `fitted` stencils come from the boundary
/// fallback and use exactly the nodes of a short window.
struct Stencil {
    StencilKind kind = StencilKind::central;
    int order = 1;
    std::vector<int> offsets;
    std::vector<Rational> exact;
    std::vector<double> weights;
    int norm = 1;

    int lo() const { return offsets.front(); }
    int hi() const { return offsets.back(); }

    /// sum_l weights[l] * samples[k + offsets[l]] / (norm * h^order)
    double apply(std::span<const double> samples, int k, double h) const;
};

/// 1 for even n, 2 for odd n.
int stencil_norm(int n);

/// ceil(n / 2): half-width of the central stencil.
int central_half_width(int n);

Stencil central(int n);
Stencil forward(int n);
Stencil backward(int n);

/// Solves the square moment system for the n-th derivative on the given
/// distinct offsets (n + 1 <= offsets.size() <= n + 2) in exact arithmetic.
/// The result is exact for polynomials of degree < offsets.size().
Stencil fitted(int n, std::vector<int> offsets);

/// sum_l w_l * o_l^j, evaluated exactly.
Rational moment(const Stencil& s, int j);

/// Immutable cache of central/forward/backward stencils keyed by (kind, n).
/// Thread-safe.
class StencilTable {
public:
    const Stencil& get(StencilKind kind, int n) const;

    static const StencilTable& shared();

private:
    mutable std::mutex mutex_;
    mutable std::map<std::pair<StencilKind, int>, Stencil> cache_;
};

/// Stencil used for the n-th derivative at node k when only nodes 0..m exist.
struct NodeStencil {
    const Stencil* stencil = nullptr;
    Stencil owned;  // holds a fitted stencil when `degraded`
    bool degraded = false;

    const Stencil& get() const { return stencil ? *stencil : owned; }
};

/// Forward stencils for nodes k < ceil(n/2), backward for k > m - ceil(n/2),
/// central otherwise. A stencil that would leave 0..m is replaced by a fitted
/// one on the min(n + 2, m + 1) nodes at the boundary it crosses.
/// Requires m >= n.
NodeStencil stencil_for_node(const StencilTable& table, int n, int k, int m);

}  // namespace subfde
