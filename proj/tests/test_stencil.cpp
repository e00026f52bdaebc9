#include "subfde/stencil.hpp"

#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <vector>

using namespace subfde;

namespace {

std::vector<long> ints(const Stencil& s) {
    std::vector<long> out;
    for (const auto& w : s.exact) {
        REQUIRE(denominator(w) == 1);
        out.push_back(static_cast<long>(numerator(w)));
    }
    return out;
}

std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_moments(const Stencil& s) {
    const int n = s.order;
    for (int j = 0; j < n; ++j) CHECK(moment(s, j) == 0);
    CHECK(moment(s, n) == factorial(n) * s.norm);
    if (s.kind != StencilKind::fitted || s.offsets.size() == static_cast<std::size_t>(n + 2))
        CHECK(moment(s, n + 1) == 0);
}

}  // namespace

TEST_SUITE("stencil") {

TEST_CASE("normalization and half width") {
    CHECK(stencil_norm(1) == 2);
    CHECK(stencil_norm(2) == 1);
    CHECK(stencil_norm(7) == 2);
    CHECK(central_half_width(1) == 1);
    CHECK(central_half_width(4) == 2);
    CHECK(central_half_width(5) == 3);
}

TEST_CASE("low-order closed forms") {
    CHECK(ints(central(1)) == std::vector<long>{-1, 0, 1});
    CHECK(central(1).lo() == -1);
    CHECK(central(1).norm == 2);
    CHECK(ints(central(2)) == std::vector<long>{1, -2, 1});
    CHECK(central(2).norm == 1);
    CHECK(ints(central(4)) == std::vector<long>{1, -4, 6, -4, 1});
    CHECK(ints(central(5)) == std::vector<long>{-1, 4, -5, 0, 5, -4, 1});
    CHECK(central(5).lo() == -3);
    CHECK(central(5).norm == 2);
    CHECK(ints(forward(1)) == std::vector<long>{-3, 4, -1});
    CHECK(ints(forward(2)) == std::vector<long>{2, -5, 4, -1});
    CHECK(ints(backward(1)) == std::vector<long>{1, -4, 3});
    CHECK(backward(1).lo() == -2);
    CHECK(ints(backward(2)) == std::vector<long>{-1, 4, -5, 2});
    CHECK(backward(2).lo() == -3);
}

TEST_CASE("moment conditions hold exactly for n = 1..8") {
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        check_moments(central(n));
        check_moments(forward(n));
        check_moments(backward(n));
        Rational sum = 0;
        for (const auto& w : forward(n).exact) sum += w;
        CHECK(sum == 0);
        CHECK(forward(n).lo() == 0);
        CHECK(forward(n).hi() == n + 1);
        CHECK(backward(n).lo() == -(n + 1));
        CHECK(central(n).lo() == -central_half_width(n));
        CHECK(central(n).hi() == central_half_width(n));
    }
}

TEST_CASE("backward mirrors forward") {
    for (int n = 1; n <= 6; ++n) {
        const Stencil f = forward(n);
        const Stencil b = backward(n);
        REQUIRE(f.offsets.size() == b.offsets.size());
        const int sign = n % 2 == 0 ? 1 : -1;
        for (std::size_t i = 0; i < f.offsets.size(); ++i) {
            const std::size_t j = f.offsets.size() - 1 - i;
            CHECK(b.offsets[j] == -f.offsets[i]);
            CHECK(b.exact[j] == f.exact[i] * sign);
        }
    }
}

TEST_CASE("binomial pattern of central weights") {
    for (int n = 2; n <= 8; n += 2) {
        const auto w = ints(central(n));
        REQUIRE(w.size() == static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) {
            const long binom = std::lround(boost::math::binomial_coefficient<double>(n, i));
            CHECK(w[static_cast<std::size_t>(i)] == ((n - i) % 2 == 0 ? binom : -binom));
        }
    }
    for (int n = 3; n <= 7; n += 2) {
        std::vector<long> base{1};
        for (int i = 0; i < n - 1; ++i) base = convolve(base, {1, -1});
        // (a - b)^{n-1} (a^2 - b^2), ascending in the power of a
        const auto expected = convolve(base, {-1, 0, 1});
        auto w = ints(central(n));
        CHECK(w == expected);
    }
}

TEST_CASE("central recursion through second differences") {
    for (int n = 3; n <= 8; ++n) {
        auto lower = ints(central(n - 2));
        CHECK(convolve(lower, {1, -2, 1}) == ints(central(n)));
    }
}

TEST_CASE("stencils differentiate polynomials exactly") {
    const double h = 0.125;
    for (int n = 1; n <= 6; ++n) {
        std::vector<double> y(40);
        // degree n + 1 polynomial
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = std::pow(j * h, n + 1);
        const int k = 20;
        const double exact = std::tgamma(n + 2) * k * h;
        CHECK(central(n).apply(y, k, h) == doctest::Approx(exact).epsilon(1e-9));
        CHECK(forward(n).apply(y, k, h) == doctest::Approx(exact).epsilon(1e-9));
        CHECK(backward(n).apply(y, k, h) == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("fitted stencils and their errors") {
    const Stencil s = fitted(1, {-1, 0});
    CHECK(s.exact == std::vector<Rational>{-2, 2});
    CHECK(s.kind == StencilKind::fitted);
    CHECK_THROWS_AS(fitted(2, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fitted(1, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS(central(0));
}

TEST_CASE("node stencil selection") {
    const auto& table = StencilTable::shared();
    CHECK(stencil_for_node(table, 1, 0, 10).get().kind == StencilKind::forward);
    CHECK(stencil_for_node(table, 1, 5, 10).get().kind == StencilKind::central);
    CHECK(stencil_for_node(table, 1, 10, 10).get().kind == StencilKind::backward);
    CHECK(stencil_for_node(table, 2, 9, 10).get().kind == StencilKind::central);
    CHECK(stencil_for_node(table, 3, 1, 10).get().kind == StencilKind::forward);
    CHECK(stencil_for_node(table, 3, 2, 10).get().kind == StencilKind::central);
    CHECK_FALSE(stencil_for_node(table, 1, 5, 10).degraded);

    // m = 1: backward y'_1 would need y_{-1}
    const auto edge = stencil_for_node(table, 1, 1, 1);
    CHECK(edge.degraded);
    CHECK(edge.get().lo() == -1);
    CHECK(edge.get().hi() == 0);
    CHECK(edge.get().apply(std::vector<double>{2.0, 5.0}, 1, 0.5) == doctest::Approx(6.0));

    // every chosen stencil stays inside 0..m
    for (int n = 1; n <= 4; ++n)
        for (int m = n; m <= 12; ++m)
            for (int k = 0; k <= m; ++k) {
                const auto ns = stencil_for_node(table, n, k, m);
                CHECK(k + ns.get().lo() >= 0);
                CHECK(k + ns.get().hi() <= m);
            }
    CHECK_THROWS(stencil_for_node(table, 2, 0, 1));
}

TEST_CASE("table caches identical stencils") {
    const auto& t = StencilTable::shared();
    CHECK(&t.get(StencilKind::central, 3) == &t.get(StencilKind::central, 3));
    CHECK(t.get(StencilKind::forward, 2).exact == forward(2).exact);
}

}
