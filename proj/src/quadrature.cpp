#include "lorcone/quadrature.hpp"

#include "lorcone/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lorcone::quad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr unsigned kMaxDepth = 20;
constexpr int kMaxTailPieces = 400;

double gk_piece(const Integrand& g, double u, double v, const Tolerance& tol) {
    double err = 0.0;
    double l1 = 0.0;
    // Boost's error estimate degrades on pieces of tiny absolute width (the
    // graded pieces near an endpoint), so every piece is mapped onto [0, 1].
    const double h = v - u;
    auto scaled = [&](double s) { return h * g(u + h * s); };
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        scaled, 0.0, 1.0, kMaxDepth, tol.rel, &err, &l1);
    if (!std::isfinite(value)) {
        throw ConvergenceError("quadrature produced a non-finite value on [" +
                                   std::to_string(u) + ", " + std::to_string(v) + "]",
                               err);
    }
    const double allowed = std::max(1e3 * tol.abs, 1e4 * tol.rel * l1);
    if (err > allowed && err > 1e-12) {
        throw ConvergenceError("quadrature did not converge on [" + std::to_string(u) + ", " +
                                   std::to_string(v) + "]",
                               err);
    }
    return value;
}

}  // namespace

double integrate(const Integrand& g, double lo, double hi, double a, double b,
                 const Tolerance& tol) {
    if (lo == hi) return 0.0;
    if (lo > hi) return -integrate(g, hi, lo, a, b, tol);

    auto dist = [&](double t) {
        double d = kInf;
        if (std::isfinite(a)) d = std::min(d, t - a);
        if (std::isfinite(b)) d = std::min(d, b - t);
        return d;
    };

    double total = 0.0;
    double u = lo;
    const double min_step = (hi - lo) * 1e-14;
    while (u < hi) {
        double step = 0.5 * dist(u);
        // The far end may be the one close to an endpoint; keep pieces no
        // longer than half its distance either.
        step = std::min(step, std::max(0.5 * dist(hi), (hi - u) * 0.5));
        step = std::max(step, min_step);
        double v = (step >= hi - u || !std::isfinite(step)) ? hi : u + step;
        if (hi - v < min_step) v = hi;
        total += gk_piece(g, u, v, tol);
        u = v;
    }
    return total;
}

TailIntegral integrate_to_endpoint(const Integrand& g, double from, double endpoint,
                                   const Tolerance& tol) {
    TailIntegral out;
    out.nodes.push_back(from);
    out.partial.push_back(0.0);
    if (from == endpoint) return out;

    const double dir = endpoint > from ? 1.0 : -1.0;
    const bool finite = std::isfinite(endpoint);
    const double span = finite ? std::abs(endpoint - from) : std::max(1.0, std::abs(from));

    auto node = [&](int k) {
        if (finite) return endpoint - dir * span * std::ldexp(1.0, -k);
        return from + dir * span * (std::ldexp(1.0, k) - 1.0);
    };

    std::vector<double> increments;
    double sum = 0.0;
    double prev = from;
    int small_run = 0;
    for (int k = 1; k <= kMaxTailPieces; ++k) {
        const double next = node(k);
        if (next == prev || !std::isfinite(next)) break;
        // Closer than this, sample positions are too coarse relative to the
        // remaining distance for the quadrature error estimate to mean anything.
        if (finite && std::abs(endpoint - next) < 1e-6 * std::max(1.0, std::abs(endpoint))) break;
        const double lo = std::min(prev, next);
        const double hi = std::max(prev, next);
        const double inc = std::abs(gk_piece(g, lo, hi, tol));
        sum += inc;
        increments.push_back(inc);
        out.nodes.push_back(next);
        out.partial.push_back(sum);
        prev = next;

        if (sum > tol.divergence_cap) {
            out.diverged = true;
            out.limit = kInf;
            return out;
        }
        if (inc <= 0.01 * std::max(tol.abs, tol.rel * sum)) {
            if (++small_run >= 3) {
                out.limit = sum;
                return out;
            }
        } else {
            small_run = 0;
        }
    }

    // Budget exhausted (or nodes stopped moving): decide from the trend of
    // the last pieces whether the remaining tail is summable.
    const std::size_t n = increments.size();
    if (n < 4) {
        out.limit = sum;
        return out;
    }
    const std::size_t window = std::min<std::size_t>(10, n - 1);
    double ratio_max = 0.0;
    for (std::size_t i = n - window; i < n; ++i) {
        const double prev_inc = increments[i - 1];
        const double r = prev_inc > 0.0 ? increments[i] / prev_inc : 0.0;
        ratio_max = std::max(ratio_max, r);
    }
    const double last = increments.back();
    if (ratio_max >= 0.99 && last > 1e3 * std::max(tol.abs, tol.rel * sum)) {
        out.diverged = true;
        out.limit = kInf;
        return out;
    }
    // Geometric tail estimate; for finite endpoints the nodes already sit
    // within rounding of the endpoint, so this is a small correction.
    const double r = std::min(ratio_max, 0.99);
    out.limit = sum + last * r / (1.0 - r);
    return out;
}

}  // namespace lorcone::quad
