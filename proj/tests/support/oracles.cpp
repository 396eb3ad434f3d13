#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace lorcone::oracle {

double dp_time_separation(const WarpSpec& warp, double t0, double t1, double d,
                          const DPGrid& grid) {
    const std::size_t N = grid.time_steps;
    const std::size_t M = grid.fiber_steps;
    const double dt = (t1 - t0) / static_cast<double>(N);
    const double dx = d / static_cast<double>(M);
    constexpr double none = -std::numeric_limits<double>::infinity();

    // f on the half-step time grid: fh[m] = f(t0 + m dt / 2).
    std::vector<double> fh(2 * N + 1);
    for (std::size_t m = 0; m <= 2 * N; ++m) {
        double t = t0 + 0.5 * dt * static_cast<double>(m);
        if (m == 2 * N) t = t1;
        fh[m] = warp(t);
    }

    std::vector<std::vector<double>> V(N + 1, std::vector<double>(M + 1, none));
    V[0][0] = 0.0;
    std::vector<double> piece;
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t k = 1; k <= std::min(grid.max_jump, i); ++k) {
            const std::size_t i0 = i - k;
            const double h = dt * static_cast<double>(k);
            // Simpson on the straight piece; f at both ends and the middle.
            const double fa = fh[2 * i0];
            const double fm = fh[i0 + i];
            const double fb = fh[2 * i];
            const double fmax = std::max({fa, fm, fb});
            std::size_t smax = M;
            if (dx > 0.0) smax = std::min<std::size_t>(M, static_cast<std::size_t>(h / (dx * fmax)));
            piece.assign(smax + 1, none);
            for (std::size_t s = 0; s <= smax; ++s) {
                const double v = dx * static_cast<double>(s) / h;
                const double ga = 1.0 - fa * fa * v * v;
                const double gm = 1.0 - fm * fm * v * v;
                const double gb = 1.0 - fb * fb * v * v;
                if (ga < 0.0 || gm < 0.0 || gb < 0.0) break;
                piece[s] = h / 6.0 * (std::sqrt(ga) + 4.0 * std::sqrt(gm) + std::sqrt(gb));
            }
            const std::vector<double>& from = V[i0];
            std::vector<double>& to = V[i];
            for (std::size_t j = 0; j <= M; ++j) {
                const std::size_t lo = j > smax ? j - smax : 0;
                double best = to[j];
                for (std::size_t jp = lo; jp <= j; ++jp) {
                    const double a = from[jp];
                    if (a == none) continue;
                    const double p = piece[j - jp];
                    if (p == none) continue;
                    best = std::max(best, a + p);
                }
                to[j] = best;
            }
        }
    }
    return V[N][M] == none ? 0.0 : V[N][M];
}

double minkowski_cone_tau(double s, double t, double d) {
    if (t <= s) return 0.0;
    if (d >= std::log(t / s)) return 0.0;
    return std::sqrt(std::max(0.0, s * s + t * t - 2.0 * s * t * std::cosh(d)));
}

double de_sitter_tau(double t0, double x0, double t1, double x1) {
    if (t1 <= t0) return 0.0;
    const double c = std::cosh(t0) * std::cosh(t1) * std::cos(x1 - x0) - std::sinh(t0) * std::sinh(t1);
    return c > 1.0 ? std::acosh(c) : 0.0;
}

double anti_de_sitter_tau(double t0, double x0, double t1, double x1) {
    if (t1 <= t0) return 0.0;
    const double c = std::cos(t0) * std::cos(t1) * std::cosh(x1 - x0) + std::sin(t0) * std::sin(t1);
    return c < 1.0 ? std::acos(std::max(-1.0, c)) : 0.0;
}

ll::TauTable enumerate_tau(const ll::CurveCatalog& c) {
    const std::size_t n = c.size();
    ll::TauTable T;
    T.n = n;
    T.values.assign(n * n, ll::TauValue{});
    std::vector<std::vector<const ll::Curve*>> out(n);
    for (const auto& e : c.curves()) out[e.from].push_back(&e);
    std::vector<char> visited(n, 0);
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t s, std::size_t v,
                                                                     double len) {
        auto& cell = T.values[s * n + v].value;
        cell = std::max(cell, len);
        for (const ll::Curve* e : out[v]) {
            if (visited[e->to]) continue;
            visited[e->to] = 1;
            walk(s, e->to, len + e->length);
            visited[e->to] = 0;
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        visited[s] = 1;
        walk(s, s, 0.0);
        visited[s] = 0;
    }
    return T;
}

ll::CurveCatalog random_catalog(std::size_t n, std::uint64_t seed, bool allow_cycles) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    ll::CurveCatalog c(names);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double density = 0.15 + 0.35 * unit(rng);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const bool forward = a < b;
            if (!forward && !(allow_cycles && a != b && unit(rng) < 0.05)) continue;
            if (forward && unit(rng) >= density) continue;
            const int copies = unit(rng) < 0.15 ? 2 : 1;
            for (int k = 0; k < copies; ++k) {
                const bool timelike = unit(rng) < 0.6;
                double len = timelike ? 0.05 + 2.0 * unit(rng) : (unit(rng) < 0.3 ? 0.0 : 2.0 * unit(rng));
                c.add_curve(order[a], order[b], len,
                            timelike ? ll::CurveClass::timelike : ll::CurveClass::causal);
            }
        }
    }
    return c;
}

}  // namespace lorcone::oracle
