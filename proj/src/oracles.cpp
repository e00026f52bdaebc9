#include "subfde/oracles.hpp"

#include "subfde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace subfde {

namespace {

bool is_gamma_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// 1 / Gamma(x), zero at the poles.
double rgamma(double x) {
    if (is_gamma_pole(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

// Gamma(beta + 1) / Gamma(beta - alpha + 1) for beta >= 0, with the integer
// annihilation of the Caputo power rule when alpha > 0.
long double power_rule_factor(long double alpha, long double beta) {
    if (alpha == 0.0L) return 1.0L;
    const long double n = std::ceil(alpha);
    if (beta == std::floor(beta) && beta < n) return 0.0L;
    const long double lower = beta - alpha + 1.0L;
    if (lower <= 0.0L && lower == std::floor(lower))
        throw DomainError("power rule hits a Gamma pole at " + std::to_string(static_cast<double>(lower)));
    if (lower > 0.0L) return std::exp(std::lgamma(beta + 1.0L) - std::lgamma(lower));
    return std::tgamma(beta + 1.0L) / std::tgamma(lower);
}

constexpr double kSeriesStep = 0.1;
constexpr double kTailTolerance = 1e-8;

int power_offset(const BesselTerm& term) {
    return static_cast<int>(std::lround((term.shift - term.alpha) / kSeriesStep));
}

}  // namespace

double caputo_power(double alpha, double beta, double t) {
    if (!(alpha > 0.0)) throw std::invalid_argument("order must be positive");
    if (!(beta >= 0.0)) throw std::invalid_argument("power must be non-negative");
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const long double factor = power_rule_factor(alpha, beta);
    if (factor == 0.0L) return 0.0;
    return static_cast<double>(factor * std::pow(static_cast<long double>(t), static_cast<long double>(beta - alpha)));
}

double mittag_leffler(double a, double b, double z, double tol) {
    if (!(a > 0.0)) throw std::invalid_argument("Mittag-Leffler parameter a must be positive");
    if (std::abs(z) > 50.0) throw std::invalid_argument("|z| > 50 is outside the series regime");
    constexpr int kMaxTerms = 10000;
    const double log_abs_z = std::log(std::abs(z));
    double sum = 0.0;
    int small = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double arg = a * k + b;
        double term = 0.0;
        if (k == 0) {
            term = rgamma(b);
        } else if (z != 0.0 && !is_gamma_pole(arg)) {
            if (arg > 0.0) {
                term = std::exp(k * log_abs_z - std::lgamma(arg));
                if (z < 0.0 && k % 2 == 1) term = -term;
            } else {
                term = std::pow(z, k) / std::tgamma(arg);
            }
        }
        sum += term;
        if (!std::isfinite(sum)) throw NumericalError("Mittag-Leffler series overflowed");
        if (std::abs(term) <= tol * std::abs(sum))
            ++small;
        else
            small = 0;
        if (small == 3) return sum;
    }
    throw NumericalError("Mittag-Leffler series did not converge in 10000 terms");
}

double relaxation_solution(double alpha, double t) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("relaxation oracle needs 0 < alpha < 2");
    if (t < 0.0) throw std::invalid_argument("t must be non-negative");
    if (t == 0.0) return 0.0;
    const double ta = std::pow(t, alpha);
    return ta * mittag_leffler(alpha, alpha + 1.0, -ta);
}

std::vector<BesselTerm> bessel_terms(double nu) {
    return {
        {1.5, 1.5, 1.5},
        {-1.2, 1.9, 1.1},
        {3.0, 1.0, 0.5},
        {1.0, 2.0, 0.0},
        {-nu * nu, 0.0, 0.0},
    };
}

double bessel_indicial(double g, double nu) {
    double sum = 0.0;
    for (const auto& term : bessel_terms(nu))
        if (power_offset(term) == 0) sum += term.coeff * power_rule_factor(term.alpha, g);
    return sum;
}

SeriesSolution bessel_series(double nu, int N) {
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
    if (N < 0 || N > kMaxSeriesTerms)
        throw std::invalid_argument("number of terms must lie in 0.." + std::to_string(kMaxSeriesTerms));

    double lo = 1.0;
    double hi = 20.0;
    double f_lo = bessel_indicial(lo, nu);
    const double f_hi = bessel_indicial(hi, nu);
    if (f_lo * f_hi > 0.0) throw NumericalError("indicial root not bracketed in (1, 20)");
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f_mid = bessel_indicial(mid, nu);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    SeriesSolution u;
    u.gamma = 0.5 * (lo + hi);
    u.s = kSeriesStep;
    u.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
    // Partial sums at x = 5 peak near 1e8 before cancelling to O(0.1), so the
    // recurrence runs in extended precision.
    std::vector<long double> c(static_cast<std::size_t>(N) + 1, 0.0L);
    c[0] = 1.0L;
    const auto terms = bessel_terms(nu);
    const long double g0 = u.gamma;
    const long double step = 0.1L;
    for (int n = 1; n <= N; ++n) {
        long double lead = 0.0L;
        long double rest = 0.0L;
        for (const auto& term : terms) {
            const int off = power_offset(term);
            if (off == 0) {
                lead += term.coeff * power_rule_factor(term.alpha, g0 + step * n);
            } else if (n - off >= 0) {
                const auto j = static_cast<std::size_t>(n - off);
                if (c[j] != 0.0L) rest += term.coeff * power_rule_factor(term.alpha, g0 + step * (n - off)) * c[j];
            }
        }
        if (lead == 0.0L) throw NumericalError("resonant exponent in series recurrence", n);
        c[static_cast<std::size_t>(n)] = -rest / lead;
    }
    for (std::size_t n = 0; n < c.size(); ++n) u.coeffs[n] = static_cast<double>(c[n]);

    // Tail estimate: the last 20 terms stay below the tolerance.
    auto tail = [&](double x) {
        double worst = 0.0;
        for (int n = std::max(0, N - 19); n <= N; ++n)
            worst = std::max(worst, std::abs(u.coeffs[static_cast<std::size_t>(n)]) * std::pow(x, u.gamma + u.s * n));
        return worst;
    };
    double r_lo = 0.0;
    double r_hi = 1000.0;
    if (tail(r_hi) < kTailTolerance) {
        r_lo = r_hi;
    } else {
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (r_lo + r_hi);
            (tail(mid) < kTailTolerance ? r_lo : r_hi) = mid;
        }
    }
    u.radius_hint = r_lo;
    return u;
}

double SeriesSolution::operator()(double x) const { return derivative(0.0, x); }

double SeriesSolution::derivative(double alpha, double x) const {
    if (x < 0.0) throw std::invalid_argument("series is defined for x >= 0");
    if (x == 0.0) return 0.0;
    const long double lx = std::log(static_cast<long double>(x));
    long double sum = 0.0L;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (coeffs[n] == 0.0) continue;
        const long double beta = gamma + static_cast<long double>(s) * static_cast<long double>(n);
        sum += coeffs[n] * power_rule_factor(alpha, beta) * std::exp((beta - alpha) * lx);
    }
    return static_cast<double>(sum);
}

double bessel_residual(const SeriesSolution& u, double nu, double x) {
    double sum = 0.0;
    for (const auto& term : bessel_terms(nu)) sum += term.coeff * std::pow(x, term.shift) * u.derivative(term.alpha, x);
    return sum;
}

}  // namespace subfde
