#pragma once

#include <vector>

namespace subfde {

/// Caputo derivative of t^beta: 0 for integer beta < ceil(alpha), else
/// Gamma(beta + 1) / Gamma(beta - alpha + 1) t^{beta - alpha}.
/// Throws DomainError when beta - alpha + 1 is a pole of Gamma.
double caputo_power(double alpha, double beta, double t);

/// Series sum_k z^k / Gamma(a k + b), stopped once three consecutive terms
/// fall below tol * |partial sum|. Valid for |z| <= 50.
/// Throws NumericalError after 10000 terms.
double mittag_leffler(double a, double b, double z, double tol = 1e-15);

/// Solution t^alpha E_{alpha, alpha+1}(-t^alpha) of D^alpha y + y = 1 with
/// zero initial data, 0 < alpha < 2.
double relaxation_solution(double alpha, double t);

/// One term  coeff * x^{shift} D^{alpha} u  of a fractional Bessel-type
/// equation. alpha = 0 stands for u itself. On x^beta it produces a multiple
/// of x^{beta + shift - alpha}.
struct BesselTerm {
    double coeff;
    double shift;
    double alpha;
};

/// Frobenius-type solution u(x) = sum_n c_n x^{gamma + s n}, c_0 = 1, of
///   1.5 x^1.5 D^1.5 u - 1.2 x^1.9 D^1.1 u + 3 x D^0.5 u + (x^2 - nu^2) u = 0.
struct SeriesSolution {
    double gamma = 0.0;
    double s = 0.1;
    std::vector<double> coeffs;
    /// Largest x for which the last 20 terms are below 1e-8.
    double radius_hint = 0.0;

    double operator()(double x) const;
    /// Caputo derivative of order alpha applied term by term.
    double derivative(double alpha, double x) const;
};

/// Terms of the equation above, including 1 * x^2 u and -nu^2 u.
std::vector<BesselTerm> bessel_terms(double nu);

/// Indicial polynomial 1.5 Gamma(g + 1) / Gamma(g - 0.5) - nu^2.
double bessel_indicial(double g, double nu);

inline constexpr int kMaxSeriesTerms = 2000;

/// Root of the indicial equation on (1, 20) by bisection, then coefficients
/// c_1..c_N from the power-matching recurrence. N <= kMaxSeriesTerms; about
/// 1200 terms are needed for 1e-12 accuracy at x = 5.
SeriesSolution bessel_series(double nu, int N);

/// Left-hand side of the equation evaluated with the series and term-wise
/// Caputo derivatives; vanishes for an exact solution.
double bessel_residual(const SeriesSolution& u, double nu, double x);

}  // namespace subfde
