#include "subfde/caputo.hpp"
#include "subfde/errors.hpp"
#include "subfde/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace subfde;

TEST_SUITE("oracles") {

TEST_CASE("power rule") {
    CHECK(caputo_power(0.5, 0, 1) == 0.0);
    CHECK(caputo_power(1.5, 1, 2) == 0.0);
    CHECK(caputo_power(0.5, 1, 1) == doctest::Approx(1.1283792).epsilon(1e-7));
    CHECK(caputo_power(1.5, 2, 1) == doctest::Approx(2.2567583).epsilon(1e-7));
    CHECK(caputo_power(0.5, 2, 4) == doctest::Approx(2.0 / std::tgamma(2.5) * 8.0));
    CHECK_THROWS_AS(caputo_power(1.5, 0.5, 1), DomainError);
    CHECK_THROWS_AS(caputo_power(0.5, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(caputo_power(0.5, -1, 1), std::invalid_argument);
}

TEST_CASE("power rule agrees with the substitution quadrature") {
    const int m = 1 << 12;
    for (double alpha : {0.3, 0.5, 1.5})
        for (int beta : {1, 2, 3}) {
            CAPTURE(alpha);
            CAPTURE(beta);
            const FracOrder a(alpha);
            auto dnf = [&](double x) {
                double c = 1.0;
                for (int i = 0; i < a.n(); ++i) c *= beta - i;
                return c == 0.0 ? 0.0 : c * std::pow(x, beta - a.n());
            };
            CHECK(std::abs(caputo_substitution(dnf, a, Grid::uniform(1.0 / m, m)) - caputo_power(alpha, beta, 1.0)) < 5e-4);
        }
}

TEST_CASE("Mittag-Leffler identities") {
    CHECK(std::abs(mittag_leffler(1, 1, 1) - std::exp(1.0)) < 1e-9);
    CHECK(std::abs(mittag_leffler(1, 1, -3.5) - std::exp(-3.5)) < 1e-9);
    CHECK(std::abs(mittag_leffler(2, 1, -1) - std::cos(1.0)) < 1e-9);
    CHECK(std::abs(mittag_leffler(2, 1, 4) - std::cosh(2.0)) < 1e-9);
    CHECK(mittag_leffler(1.5, 2.5, 0) == doctest::Approx(0.7522528).epsilon(1e-7));
    CHECK(std::abs(mittag_leffler(1, 2, 2) - (std::exp(2.0) - 1) / 2) < 1e-9);
    CHECK_THROWS_AS(mittag_leffler(1, 1, 60), std::invalid_argument);
    CHECK_THROWS_AS(mittag_leffler(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mittag_leffler(0.1, 1, 20), NumericalError);
}

TEST_CASE("relaxation solution") {
    CHECK(relaxation_solution(1.5, 0.0) == 0.0);
    CHECK(relaxation_solution(1.0, 1.0) == doctest::Approx(0.6321206).epsilon(1e-7));
    CHECK_THROWS_AS(relaxation_solution(2.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(relaxation_solution(1.5, -1.0), std::invalid_argument);
}

TEST_CASE("relaxation solution satisfies its equation term by term") {
    // y = sum_k (-1)^k t^{a(k+1)} / Gamma(a k + a + 1); D^a maps term k to
    // (-1)^k t^{a k} / Gamma(a k + 1).
    const double a = 1.5;
    for (double t : {0.3, 1.0, 2.0}) {
        double y = 0.0;
        double dy = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double sign = k % 2 ? -1.0 : 1.0;
            const double scale = std::tgamma(a * (k + 1) + 1);
            y += sign * std::pow(t, a * (k + 1)) / scale;
            dy += sign * caputo_power(a, a * (k + 1), t) / scale;
        }
        CHECK(std::abs(dy + y - 1.0) < 1e-8);
        CHECK(std::abs(relaxation_solution(a, t) - y) < 1e-12);
    }
}

TEST_CASE("indicial roots") {
    const auto u2 = bessel_series(2.0, 0);
    CHECK(std::abs(u2.gamma - 2.1995) < 5e-4);
    CHECK(std::abs(bessel_indicial(u2.gamma, 2.0)) < 1e-10);
    const auto u35 = bessel_series(3.5, 0);
    CHECK(std::abs(u35.gamma - 4.3181) < 5e-4);
    CHECK(std::abs(bessel_indicial(u35.gamma, 3.5)) < 1e-10);
    CHECK(u2.coeffs == std::vector<double>{1.0});
}

TEST_CASE("series recurrence couples offsets 5, 8 and 20") {
    const auto u = bessel_series(2.0, 30);
    for (int n = 1; n <= 4; ++n) CHECK(u.coeffs[static_cast<std::size_t>(n)] == 0.0);
    CHECK(u.coeffs[5] != 0.0);
    CHECK(u.coeffs[6] == 0.0);
    CHECK(u.coeffs[8] != 0.0);
    CHECK(u.coeffs[20] != 0.0);
    // direct check of the n = 5 balance
    const double g = u.gamma;
    auto factor = [](double a, double b) { return std::tgamma(b + 1) / std::tgamma(b - a + 1); };
    const double lead = 1.5 * factor(1.5, g + 0.5) - 4.0;
    CHECK(u.coeffs[5] * lead + 3.0 * factor(0.5, g) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("series residual decreases with the number of terms") {
    double prev = 1e300;
    for (int N : {50, 100, 200, 400}) {
        const double r = std::abs(bessel_residual(bessel_series(2.0, N), 2.0, 1.0));
        CHECK(r < prev);
        prev = r;
    }
    CHECK(std::abs(bessel_residual(bessel_series(2.0, 200), 2.0, 1.0)) < 2e-6);
    CHECK(std::abs(bessel_residual(bessel_series(2.0, 1500), 2.0, 3.0)) < 1e-6);
}

TEST_CASE("series values and tail estimate") {
    const auto u = bessel_series(2.0, kMaxSeriesTerms);
    CHECK(u(0.0) == 0.0);
    CHECK(u(1.0) == doctest::Approx(0.126768644373).epsilon(1e-10));
    CHECK(u(5.0) == doctest::Approx(0.0532882).epsilon(1e-5));
    CHECK(u.radius_hint >= 5.0);
    CHECK(bessel_series(2.0, 50).radius_hint < 5.0);
    CHECK_THROWS_AS(bessel_series(-1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(bessel_series(2.0, kMaxSeriesTerms + 1), std::invalid_argument);
    CHECK_THROWS_AS(u(-1.0), std::invalid_argument);
}

}
