#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "phd/errors.hpp"
#include "phd/special_functions.hpp"

namespace phd {

/// Central 5-point Laplacian, applied j times, at steps h, h/2, ..., h/2^(levels-1),
/// combined by Richardson extrapolation in h^2.
struct FDScheme {
    double step = 1e-2;
    int richardson_levels = 3;

    FDScheme() = default;
    FDScheme(double h, int levels) : step(h), richardson_levels(levels) { validate(); }

    void validate() const {
        if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("FD step must be positive");
        if (richardson_levels < 1) throw DomainError("FD needs at least one Richardson level");
    }
};

struct FDResult {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

/// Offsets (a, b) and weights of the j-fold discrete Laplacian in units of h,
/// without the 1/h^(2j) factor.
inline std::vector<std::pair<std::pair<int, int>, double>> iterated_laplacian_stencil(int j) {
    std::map<std::pair<int, int>, double> cur{{{0, 0}, 1.0}};
    static const std::pair<std::pair<int, int>, double> five[] = {
        {{0, 0}, -4.0}, {{1, 0}, 1.0}, {{-1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, -1}, 1.0}};
    for (int k = 0; k < j; ++k) {
        std::map<std::pair<int, int>, double> next;
        for (const auto& [p, w] : cur)
            for (const auto& [d, s] : five) next[{p.first + d.first, p.second + d.second}] += w * s;
        cur = std::move(next);
    }
    std::vector<std::pair<std::pair<int, int>, double>> out;
    for (const auto& [p, w] : cur)
        if (w != 0.0) out.emplace_back(p, w);
    return out;
}

}  // namespace detail

/// Richardson-extrapolated estimate of (Delta^j field)(z), Delta the true
/// Laplacian d_xx + d_yy. The widest stencil must stay strictly inside the
/// upper half-plane.
template <class Field>
FDResult fd_laplacian_iter(Field&& field, int j, cplx z, const FDScheme& scheme) {
    scheme.validate();
    if (j < 1) throw DomainError("fd_laplacian_iter: power must be at least 1");
    if (!(z.imag() - j * scheme.step > 0.0)) throw DomainError("fd_laplacian_iter: stencil leaves the upper half-plane");
    const auto stencil = detail::iterated_laplacian_stencil(j);
    const int L = scheme.richardson_levels;
    // a single requested level still gets a half-step companion for the error estimate
    const int levels = std::max(L, 2);
    std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
    double h = scheme.step;
    for (int level = 0; level < levels; ++level, h *= 0.5) {
        double acc = 0.0;
        for (const auto& [p, w] : stencil) acc += w * static_cast<double>(field(z + cplx(p.first * h, p.second * h)));
        auto& row = table[static_cast<std::size_t>(level)];
        row.push_back(acc / std::pow(h, 2 * j));
        double factor = 4.0;
        for (int k = 1; k <= level && k < L; ++k, factor *= 4.0) {
            const double fine = row[static_cast<std::size_t>(k - 1)];
            const double coarse = table[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(k - 1)];
            row.push_back(fine + (fine - coarse) / (factor - 1.0));
        }
    }
    FDResult r;
    if (L == 1) {
        r.value = table[0].back();
        r.error = std::abs(table[1].back() - table[0].back()) * 4.0 / 3.0;
    } else {
        r.value = table.back().back();
        r.error = std::abs(table.back().back() - table[static_cast<std::size_t>(levels - 2)].back());
    }
    return r;
}

}  // namespace phd
