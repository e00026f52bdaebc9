#include "subfde/assembly.hpp"

#include "subfde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace subfde {

FdeProblem::FdeProblem(std::vector<DerivativeTerm> terms, Expression p, Expression f,
                       std::vector<double> initial_conditions)
    : terms_(std::move(terms)), p_(std::move(p)), f_(std::move(f)), ics_(std::move(initial_conditions)) {
    if (terms_.empty()) throw std::invalid_argument("problem needs at least one derivative term");
    std::stable_sort(terms_.begin(), terms_.end(), [](const DerivativeTerm& a, const DerivativeTerm& b) {
        return a.order.alpha() < b.order.alpha();
    });
    order_ = terms_.back().order.n();
    if (ics_.size() != static_cast<std::size_t>(order_))
        throw std::invalid_argument("order-" + std::to_string(order_) + " problem needs " + std::to_string(order_) +
                                    " initial conditions, got " + std::to_string(ics_.size()));
}

FdeProblem FdeProblem::with_rhs(Expression f) const { return FdeProblem(terms_, p_, std::move(f), ics_); }

FdeProblem FdeProblem::with_initial_conditions(std::vector<double> ics) const {
    return FdeProblem(terms_, p_, f_, std::move(ics));
}

double substitution_weight(double alpha, int n, int k, int m, double h) {
    const double beta = n - alpha;
    return std::pow((m - k + 1) * h, beta) - std::pow((m - k) * h, beta);
}

SchemeAssembler::SchemeAssembler(const FdeProblem& problem, double h, int max_row, const StencilTable& table)
    : problem_(problem), table_(&table), h_(h), max_row_(max_row) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step must be positive");
    if (max_row < 1) throw std::invalid_argument("need at least one row");
    powers_.reserve(problem_.terms().size());
    for (const auto& term : problem_.terms()) {
        const double beta = term.order.exponent();
        std::vector<double> pw(static_cast<std::size_t>(max_row) + 1);
        for (int j = 0; j <= max_row; ++j) pw[static_cast<std::size_t>(j)] = std::pow(j * h, beta);
        powers_.push_back(std::move(pw));
    }
}

AssembledRow SchemeAssembler::row(int m) const {
    if (m < 1 || m > max_row_) throw std::out_of_range("row " + std::to_string(m) + " outside 1.." +
                                                       std::to_string(max_row_));
    const auto mu = static_cast<std::size_t>(m);
    const double t = m * h_;

    AssembledRow out;
    out.m = m;
    std::vector<long double> acc(mu + 1, 0.0L);
    std::vector<long double> node_weight(mu + 1);

    for (std::size_t l = 0; l < problem_.terms().size(); ++l) {
        const auto& term = problem_.terms()[l];
        const int n = term.order.n();
        const auto& pw = powers_[l];
        const double q = term.coefficient.eval(t);
        const long double scale = static_cast<long double>(q) /
                                  (2.0L * stencil_norm(n) * std::pow(static_cast<long double>(h_), n) *
                                   std::tgamma(n + 1 - term.order.alpha()));

        // Node j enters the trapezoid pairs j and j + 1.
        auto increment = [&](int k) {
            const std::size_t i = mu - static_cast<std::size_t>(k);
            return static_cast<long double>(pw[i + 1]) - pw[i];
        };
        for (int j = 0; j <= m; ++j) {
            long double w = 0.0L;
            if (j >= 1) w += increment(j);
            if (j + 1 <= m) w += increment(j + 1);
            node_weight[static_cast<std::size_t>(j)] = w;
        }

        const int half = central_half_width(n);
        const Stencil& inner = table_->get(StencilKind::central, n);
        for (int j = 0; j <= m; ++j) {
            NodeStencil edge;
            const Stencil* s = &inner;
            if (j < half || j > m - half) {
                edge = stencil_for_node(*table_, n, j, m);
                out.degraded = out.degraded || edge.degraded;
                s = &edge.get();
            }
            const long double w = scale * node_weight[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < s->offsets.size(); ++i)
                acc[static_cast<std::size_t>(j + s->offsets[i])] += w * s->weights[i];
        }
    }

    out.d.assign(acc.begin(), acc.end());
    out.p = problem_.p().eval(t);
    out.rhs = problem_.f().eval(t);
    const bool finite = std::all_of(out.d.begin(), out.d.end(), [](double v) { return std::isfinite(v); });
    if (!finite || !std::isfinite(out.p) || !std::isfinite(out.rhs))
        throw NumericalError("non-finite coefficient in assembled row", m);
    return out;
}

AssembledRow assemble_row(const FdeProblem& problem, double h, int m) {
    return SchemeAssembler(problem, h, m).row(m);
}

std::vector<AssembledRow> assemble_system(const FdeProblem& problem, double h, int M) {
    const int r = problem.order();
    if (M < r) throw std::invalid_argument("need at least " + std::to_string(r) + " rows");
    SchemeAssembler assembler(problem, h, M);
    std::vector<AssembledRow> rows;
    rows.reserve(static_cast<std::size_t>(M - r + 1));
    for (int m = r; m <= M; ++m) rows.push_back(assembler.row(m));
    return rows;
}

}  // namespace subfde
