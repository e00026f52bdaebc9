#pragma once

#include "subfde/caputo.hpp"
#include "subfde/expr.hpp"
#include "subfde/stencil.hpp"

#include <vector>

namespace subfde {

/// q(t) * D^alpha y(t)
struct DerivativeTerm {
    FracOrder order;
    Expression coefficient;
};

/// sum_l q_l(t) D^{alpha_l} y(t) + p(t) y(t) = f(t) with
/// y^{(i)}(0) = initial_conditions[i], i = 0..r-1, r = ceil(max alpha_l).
class FdeProblem {
public:
    /// Terms are stored ascending by order. Throws std::invalid_argument when
    /// there are no terms or the number of initial conditions differs from r.
    FdeProblem(std::vector<DerivativeTerm> terms, Expression p, Expression f,
               std::vector<double> initial_conditions);

    const std::vector<DerivativeTerm>& terms() const { return terms_; }
    const Expression& p() const { return p_; }
    const Expression& f() const { return f_; }
    const std::vector<double>& initial_conditions() const { return ics_; }
    /// ceil of the largest fractional order.
    int order() const { return order_; }

    /// Copy with a different right-hand side or initial data.
    FdeProblem with_rhs(Expression f) const;
    FdeProblem with_initial_conditions(std::vector<double> ics) const;

private:
    std::vector<DerivativeTerm> terms_;
    Expression p_;
    Expression f_;
    std::vector<double> ics_;
    int order_ = 0;
};

/// One discrete equation sum_{k<=m} d_k y_k + p_m y_m = rhs.
struct AssembledRow {
    int m = 0;
    std::vector<double> d;
    double p = 0.0;
    double rhs = 0.0;
    /// Some node needed a fitted fallback stencil.
    bool degraded = false;

    double pivot() const { return d.back() + p; }
};

/// ((m-k+1)h)^{n-alpha} - ((m-k)h)^{n-alpha} for 1 <= k <= m.
double substitution_weight(double alpha, int n, int k, int m, double h);

/// Builds rows for a fixed problem and step. Powers (j h)^{n-alpha} are
/// cached per term, so assembling all rows up to M costs O(M^2) per term.
class SchemeAssembler {
public:
    SchemeAssembler(const FdeProblem& problem, double h, int max_row,
                    const StencilTable& table = StencilTable::shared());

    /// Row m, 1 <= m <= max_row.
    AssembledRow row(int m) const;

    double h() const { return h_; }
    int max_row() const { return max_row_; }

private:
    FdeProblem problem_;
    const StencilTable* table_;
    double h_;
    int max_row_;
    std::vector<std::vector<double>> powers_;  // per term: (j h)^{n-alpha}, j = 0..max_row
};

AssembledRow assemble_row(const FdeProblem& problem, double h, int m);

/// Rows m = r..M where r = problem.order(); rows below r are fixed by the
/// initial conditions.
std::vector<AssembledRow> assemble_system(const FdeProblem& problem, double h, int M);

}  // namespace subfde
