#include "subfde/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace subfde {

namespace {

Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational ipow(int base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Gaussian elimination over the rationals; `a` is row-major n x n.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular moment system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

Stencil with_kind(Stencil s, StencilKind kind) {
    s.kind = kind;
    return s;
}

std::vector<int> iota_offsets(int lo, int hi) {
    std::vector<int> v(static_cast<std::size_t>(hi - lo + 1));
    std::iota(v.begin(), v.end(), lo);
    return v;
}

}  // namespace

double Stencil::apply(std::span<const double> samples, int k, double h) const {
    long double acc = 0.0L;
    for (std::size_t l = 0; l < offsets.size(); ++l)
        acc += static_cast<long double>(weights[l]) * samples[static_cast<std::size_t>(k + offsets[l])];
    return static_cast<double>(acc / (norm * std::pow(static_cast<long double>(h), order)));
}

int stencil_norm(int n) { return n % 2 == 0 ? 1 : 2; }

int central_half_width(int n) { return (n + 1) / 2; }

Stencil fitted(int n, std::vector<int> offsets) {
    if (n < 1) throw std::invalid_argument("derivative order must be positive");
    const std::size_t p = offsets.size();
    if (p < static_cast<std::size_t>(n) + 1 || p > static_cast<std::size_t>(n) + 2)
        throw std::invalid_argument("stencil for derivative " + std::to_string(n) + " needs " +
                                    std::to_string(n + 1) + " or " + std::to_string(n + 2) + " nodes");
    std::sort(offsets.begin(), offsets.end());
    if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
        throw std::invalid_argument("stencil offsets must be distinct");

    std::vector<std::vector<Rational>> a(p, std::vector<Rational>(p));
    std::vector<Rational> b(p, 0);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t l = 0; l < p; ++l) a[j][l] = ipow(offsets[l], static_cast<int>(j));
    b[static_cast<std::size_t>(n)] = factorial(n) * stencil_norm(n);

    Stencil s;
    s.kind = StencilKind::fitted;
    s.order = n;
    s.norm = stencil_norm(n);
    s.offsets = std::move(offsets);
    s.exact = solve_exact(std::move(a), std::move(b));
    s.weights.reserve(p);
    for (const auto& w : s.exact) s.weights.push_back(static_cast<double>(w));
    return s;
}

Rational moment(const Stencil& s, int j) {
    Rational sum = 0;
    for (std::size_t l = 0; l < s.offsets.size(); ++l) sum += s.exact[l] * ipow(s.offsets[l], j);
    return sum;
}

Stencil central(int n) {
    const int half = central_half_width(n);
    Stencil s = with_kind(fitted(n, iota_offsets(-half, half)), StencilKind::central);
    // For even n the n + 1 symmetric nodes leave moment n + 1 unconstrained;
    // symmetry forces it to vanish.
    if (moment(s, n + 1) != 0) throw std::logic_error("central stencil misses moment n + 1");
    return s;
}

Stencil forward(int n) { return with_kind(fitted(n, iota_offsets(0, n + 1)), StencilKind::forward); }

Stencil backward(int n) { return with_kind(fitted(n, iota_offsets(-(n + 1), 0)), StencilKind::backward); }

const Stencil& StencilTable::get(StencilKind kind, int n) const {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(kind, n);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Stencil s;
    switch (kind) {
    case StencilKind::central: s = central(n); break;
    case StencilKind::forward: s = forward(n); break;
    case StencilKind::backward: s = backward(n); break;
    case StencilKind::fitted: throw std::invalid_argument("fitted stencils are not tabulated");
    }
    return cache_.emplace(key, std::move(s)).first->second;
}

const StencilTable& StencilTable::shared() {
    static const StencilTable table;
    return table;
}

NodeStencil stencil_for_node(const StencilTable& table, int n, int k, int m) {
    if (m < n) throw std::invalid_argument("row " + std::to_string(m) + " too short for derivative order " +
                                           std::to_string(n));
    const int half = central_half_width(n);
    StencilKind kind = StencilKind::central;
    if (k < half)
        kind = StencilKind::forward;
    else if (k > m - half)
        kind = StencilKind::backward;

    NodeStencil out;
    const Stencil& s = table.get(kind, n);
    if (k + s.lo() >= 0 && k + s.hi() <= m) {
        out.stencil = &s;
        return out;
    }
    const int width = std::min(n + 2, m + 1);
    const int lo = k + s.hi() > m ? m - width + 1 : 0;
    out.owned = fitted(n, iota_offsets(lo - k, lo - k + width - 1));
    out.degraded = true;
    return out;
}

}  // namespace subfde
