#include "subfde/caputo.hpp"

#include "subfde/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace subfde {

FracOrder::FracOrder(double alpha) : alpha_(alpha), n_(static_cast<int>(std::ceil(alpha))) {
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw std::invalid_argument("fractional order must be positive, got " + std::to_string(alpha));
    if (alpha == std::floor(alpha))
        throw std::invalid_argument("integer order " + std::to_string(alpha) + " is not fractional");
}

Grid Grid::uniform(double h, int steps) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid step must be positive");
    if (steps < 1) throw std::invalid_argument("grid needs at least one step");
    Grid g;
    g.nodes_.resize(static_cast<std::size_t>(steps) + 1);
    for (int j = 0; j <= steps; ++j) g.nodes_[static_cast<std::size_t>(j)] = j * h;
    g.uniform_ = true;
    g.h_ = h;
    return g;
}

Grid Grid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("grid needs at least two nodes");
    if (nodes.front() != 0.0) throw std::invalid_argument("grid must start at 0");
    Grid g;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
        const double step = nodes[j] - nodes[j - 1];
        if (!(step > 0.0)) throw std::invalid_argument("grid nodes must be strictly increasing");
        g.h_ = std::max(g.h_, step);
    }
    g.nodes_ = std::move(nodes);
    return g;
}

double substitution_increment(double t, double x_prev, double x_k, double exponent) {
    return std::pow(t - x_prev, exponent) - std::pow(t - x_k, exponent);
}

double caputo_substitution(const std::function<double(double)>& dnf, FracOrder order, const Grid& grid) {
    const double t = grid.end();
    const auto x = grid.nodes();
    const double beta = order.exponent();
    CompensatedSum sum;
    double prev = dnf(x[0]);
    // Increments grow toward t, so k = 1..m accumulates in ascending magnitude.
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double cur = dnf(x[k]);
        sum += 0.5 * (cur + prev) * substitution_increment(t, x[k - 1], x[k], beta);
        prev = cur;
    }
    return sum.value() / std::tgamma(order.n() + 1 - order.alpha());
}

double caputo_substitution_sampled(std::span<const double> samples, FracOrder order, double h,
                                   const StencilTable& table) {
    if (samples.size() < 2) throw std::invalid_argument("need at least two samples");
    const int m = static_cast<int>(samples.size()) - 1;
    const int n = order.n();
    if (m < n)
        throw std::invalid_argument("grid of " + std::to_string(m) + " steps is too short for order " +
                                    std::to_string(order.alpha()));
    const double t = m * h;
    const double beta = order.exponent();

    std::vector<double> deriv(samples.size());
    for (int k = 0; k <= m; ++k)
        deriv[static_cast<std::size_t>(k)] = stencil_for_node(table, n, k, m).get().apply(samples, k, h);

    CompensatedSum sum;
    for (int k = 1; k <= m; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        sum += 0.5 * (deriv[ku] + deriv[ku - 1]) * substitution_increment(t, (k - 1) * h, k * h, beta);
    }
    return sum.value() / std::tgamma(n + 1 - order.alpha());
}

double riemann_liouville(std::span<const double> taylor, FracOrder order, double caputo_value, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("Riemann-Liouville correction needs t > 0");
    if (taylor.size() != static_cast<std::size_t>(order.n()))
        throw std::invalid_argument("expected " + std::to_string(order.n()) + " initial derivatives");
    double value = caputo_value;
    for (std::size_t j = 0; j < taylor.size(); ++j) {
        const double e = static_cast<double>(j) - order.alpha();
        value += taylor[j] * std::pow(t, e) / std::tgamma(e + 1.0);
    }
    return value;
}

}  // namespace subfde
