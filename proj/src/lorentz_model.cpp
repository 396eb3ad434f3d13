#include "lorcone/lorentz_model.hpp"

#include "lorcone/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>

namespace lorcone {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

void check_chart_curvature(const WarpSpec& w, double K) {
    if (K == 0.0) return;
    const Interval& I = w.interval();
    const double span = I.finite() ? I.length() : 4.0;
    const double lo = I.finite() ? I.a : -2.0;
    for (int i = 1; i < 8; ++i) {
        const double t = lo + span * i / 8.0;
        const double ratio = w.second_derivative(t) / w(t);
        if (std::abs(ratio - K) > 1e-9 * std::max(1.0, std::abs(K)))
            throw DomainError("model chart has f''/f = " + num(ratio) + ", expected " + num(K));
    }
}

}  // namespace

WarpSpec model_chart_warp(double K) {
    if (!std::isfinite(K)) throw DomainError("model curvature must be finite");
    if (K == 0.0) return WarpSpec::constant(1.0, {-kInf, kInf});
    const double r = std::sqrt(std::abs(K));
    if (K > 0.0) return WarpSpec::elementary(WarpKind::cosh, {-kInf, kInf}, 1.0 / r, r);
    const double half = kPi / (2.0 * r);
    return WarpSpec::elementary(WarpKind::cos, {-half, half}, 1.0 / r, r);
}

LorentzModel::LorentzModel(double K)
    : K_(K), cone_(model_chart_warp(K), std::make_shared<RealLine>()) {
    check_chart_curvature(cone_.warp(), K);
}

ModelPoint LorentzModel::point(double t, double x) const {
    if (!cone_.warp().interval().contains(t))
        throw DomainError("t = " + num(t) + " is outside the model chart");
    return ModelPoint{K_, t, x};
}

ConePoint LorentzModel::to_cone(const ModelPoint& p) const {
    return ConePoint{p.t, FiberPoint{p.x}};
}

double LorentzModel::tau(const ModelPoint& p, const ModelPoint& q) const {
    if (K_ == 0.0) {
        const double dt = q.t - p.t;
        const double dx = q.x - p.x;
        if (dt <= 0.0) return 0.0;
        return std::sqrt(std::max(0.0, dt * dt - dx * dx));
    }
    return time_separation(cone_, to_cone(p), to_cone(q));
}

Relation LorentzModel::relation(const ModelPoint& p, const ModelPoint& q) const {
    const RelationVerdict v = relate(cone_, to_cone(p), to_cone(q));
    if (v.reversed) return Relation::not_related;
    return v.relation;
}

ModelPoint LorentzModel::along(const ModelPoint& p, const ModelPoint& q, double s) const {
    if (s <= 0.0) return p;
    if (K_ == 0.0) {
        const double T = tau(p, q);
        if (T <= 0.0) return p;
        const double u = std::min(1.0, s / T);
        return ModelPoint{K_, p.t + u * (q.t - p.t), p.x + u * (q.x - p.x)};
    }
    MaximizingSegment seg(cone_, to_cone(p), to_cone(q));
    if (s >= seg.tau()) return q;
    const ConePoint m = seg.point_at(seg.time_at_proper_time(s));
    return ModelPoint{K_, m.t, m.x[0]};
}

double model_tau(double K, const ModelPoint& p, const ModelPoint& q) {
    return LorentzModel(K).tau(p, q);
}

bool size_bounds_check(double K, double a, double b, double c) {
    if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) return false;
    const double sum = a + b;
    const bool equal = std::abs(c - sum) <= 1e-12 * std::max(1.0, c);
    if (c < sum && !equal) return false;
    const bool restricted = (equal && K > 0.0) || (!equal && K < 0.0);
    if (restricted) return c < kPi / std::sqrt(std::abs(K));
    return true;
}

std::string to_string(TriangleSide side) {
    switch (side) {
        case TriangleSide::xy: return "xy";
        case TriangleSide::yz: return "yz";
        case TriangleSide::xz: return "xz";
    }
    return "unknown";
}

namespace {

// y on the future null curve from x (sign = +1) or the past null curve into
// z (sign = -1), at the parameter where the remaining side has length target.
ModelPoint place_on_null_ray(const LorentzModel& model, const ModelPoint& from,
                             const ModelPoint& other, double target, int sign) {
    const WarpSpec& w = model.chart().warp();
    auto at = [&](double t) {
        const double x = from.x + std::abs(w.inverse_integral(from.t, t));
        return ModelPoint{model.curvature(), t, x};
    };
    auto r = [&](double t) {
        const ModelPoint y = at(t);
        return (sign > 0 ? model.tau(y, other) : model.tau(other, y)) - target;
    };
    double lo = from.t;
    double hi = other.t;
    if (sign < 0) std::swap(lo, hi);
    double r_lo = r(lo);
    double r_hi = r(hi);
    if (r_lo * r_hi > 0.0) throw DomainError("no null placement for degenerate side");
    std::uintmax_t iters = 200;
    auto sol = boost::math::tools::toms748_solve(r, lo, hi, r_lo, r_hi,
                                                 boost::math::tools::eps_tolerance<double>(50),
                                                 iters);
    return at(0.5 * (sol.first + sol.second));
}

ModelPoint newton_place(const LorentzModel& model, const ModelPoint& x, const ModelPoint& z,
                        double a, double b, double c) {
    const double K = model.curvature();
    // Minkowski placement as the starting guess.
    const double cosh_phi = std::max(1.0, (a * a + c * c - b * b) / (2.0 * a * c));
    const double sinh_phi = std::sqrt(cosh_phi * cosh_phi - 1.0);
    ModelPoint y{K, x.t + a * cosh_phi, x.x + a * sinh_phi};
    const Interval& I = model.chart().warp().interval();

    auto residual = [&](const ModelPoint& p) {
        return std::array<double, 2>{model.tau(x, p) - a, model.tau(p, z) - b};
    };
    auto norm = [](const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); };

    std::array<double, 2> r = residual(y);
    double rn = norm(r);
    const double h = 1e-7 * std::max(1.0, c);
    for (int iter = 0; iter < 60 && rn > 1e-13 * std::max(1.0, c); ++iter) {
        const std::array<double, 2> rt_p = residual({K, y.t + h, y.x});
        const std::array<double, 2> rt_m = residual({K, y.t - h, y.x});
        const std::array<double, 2> rx_p = residual({K, y.t, y.x + h});
        const std::array<double, 2> rx_m = residual({K, y.t, y.x - h});
        const double j00 = (rt_p[0] - rt_m[0]) / (2 * h);
        const double j10 = (rt_p[1] - rt_m[1]) / (2 * h);
        const double j01 = (rx_p[0] - rx_m[0]) / (2 * h);
        const double j11 = (rx_p[1] - rx_m[1]) / (2 * h);
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || det == 0.0) break;
        const double dt = -(j11 * r[0] - j01 * r[1]) / det;
        const double dx = -(-j10 * r[0] + j00 * r[1]) / det;
        double step = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k, step *= 0.5) {
            const ModelPoint cand{K, y.t + step * dt, y.x + step * dx};
            if (!I.contains(cand.t)) continue;
            const std::array<double, 2> rc = residual(cand);
            const double cn = norm(rc);
            if (cn < rn) {
                y = cand;
                r = rc;
                rn = cn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    return y;
}

// Point at proper time a along the timelike geodesic leaving x with rapidity
// phi; nullopt when the geodesic leaves the chart first.
std::optional<ModelPoint> shoot(const LorentzModel& model, const ModelPoint& x, double phi,
                                double a) {
    const WarpSpec& w = model.chart().warp();
    const Interval& I = w.interval();
    const double kappa = w(x.t) * std::sinh(phi);
    auto dtau = [&](double t) {
        const double f = w(t);
        return f / std::hypot(f, kappa);
    };
    auto dx = [&](double t) {
        const double f = w(t);
        return kappa / (f * std::hypot(f, kappa));
    };
    auto proper = [&](double t) {
        return quad::integrate(dtau, x.t, t, I.a, I.b, w.tolerance());
    };
    // dtau/dt <= 1, so the geodesic needs at least time a.
    double hi = x.t + a;
    double span = a;
    while (true) {
        if (!I.contains(hi)) {
            const double edge = I.b - 1e-9 * std::max(1.0, std::abs(I.b));
            if (!I.contains(edge) || proper(edge) < a) return std::nullopt;
            hi = edge;
            break;
        }
        if (proper(hi) >= a) break;
        span *= 2.0;
        hi = x.t + span;
    }
    auto r = [&](double t) { return proper(t) - a; };
    std::uintmax_t iters = 200;
    auto sol = boost::math::tools::toms748_solve(r, x.t, hi, -a, r(hi),
                                                 boost::math::tools::eps_tolerance<double>(50),
                                                 iters);
    const double t = 0.5 * (sol.first + sol.second);
    return ModelPoint{model.curvature(), t, x.x + quad::integrate(dx, x.t, t, I.a, I.b, w.tolerance())};
}

ModelPoint shooting_place(const LorentzModel& model, const ModelPoint& x, const ModelPoint& z,
                          double a, double b) {
    // tau(y(phi), z) decreases from c - a at phi = 0 to 0.
    auto r = [&](double phi) {
        const auto y = shoot(model, x, phi, a);
        return y ? model.tau(*y, z) - b : -b;
    };
    double lo = 0.0;
    double hi = 0.5;
    double r_lo = r(lo);
    double r_hi = r(hi);
    for (int k = 0; r_hi > 0.0 && k < 60; ++k) {
        lo = hi;
        r_lo = r_hi;
        hi *= 2.0;
        r_hi = r(hi);
    }
    if (r_lo * r_hi > 0.0) throw DomainError("no placement bracket for the comparison triangle");
    std::uintmax_t iters = 200;
    auto sol = boost::math::tools::toms748_solve(r, lo, hi, r_lo, r_hi,
                                                 boost::math::tools::eps_tolerance<double>(52),
                                                 iters);
    return *shoot(model, x, 0.5 * (sol.first + sol.second), a);
}

}  // namespace

ModelTriangle realize_timelike_triangle(const LorentzModel& model, double a, double b, double c) {
    const double K = model.curvature();
    if (!size_bounds_check(K, a, b, c)) {
        throw DomainError("size bounds fail for K = " + num(K) + ", sides (" + num(a) + ", " +
                          num(b) + ", " + num(c) + ")");
    }
    ModelTriangle T;
    T.K = K;
    T.a = a;
    T.b = b;
    T.c = c;
    const double t_base = K < 0.0 ? -0.5 * c : 0.0;
    if (!model.chart().warp().interval().contains(t_base) ||
        !model.chart().warp().interval().contains(t_base + c)) {
        throw DomainError("triangle with c = " + num(c) + " does not fit the model chart");
    }
    T.x = ModelPoint{K, t_base, 0.0};
    T.z = ModelPoint{K, t_base + c, 0.0};

    const bool collinear = std::abs(c - (a + b)) <= 1e-12 * std::max(1.0, c);
    if (collinear) {
        T.y = ModelPoint{K, t_base + a, 0.0};
    } else if (a == 0.0) {
        T.y = place_on_null_ray(model, T.x, T.z, b, +1);
    } else if (b == 0.0) {
        T.y = place_on_null_ray(model, T.z, T.x, a, -1);
    } else if (K == 0.0) {
        const double cosh_phi = (a * a + c * c - b * b) / (2.0 * a * c);
        const double sinh_phi = std::sqrt(std::max(0.0, cosh_phi * cosh_phi - 1.0));
        T.y = ModelPoint{K, t_base + a * cosh_phi, a * sinh_phi};
    } else {
        T.y = newton_place(model, T.x, T.z, a, b, c);
        const double res = std::max(std::abs(model.tau(T.x, T.y) - a), std::abs(model.tau(T.y, T.z) - b));
        // Newton stalls when its seed leaves the causal past of z, where
        // tau(., z) is flat zero.
        if (!(res <= 1e-10)) T.y = shooting_place(model, T.x, T.z, a, b);
    }
    if (T.y.x < 0.0) T.y.x = -T.y.x;

    T.residual = std::max({std::abs(model.tau(T.x, T.y) - a), std::abs(model.tau(T.y, T.z) - b),
                           std::abs(model.tau(T.x, T.z) - c)});
    if (!(T.residual <= 1e-8))
        throw ConvergenceError("comparison triangle placement did not converge", T.residual);
    return T;
}

ModelTriangle realize_timelike_triangle(double K, double a, double b, double c) {
    return realize_timelike_triangle(LorentzModel(K), a, b, c);
}

ModelPoint corresponding_point(const LorentzModel& model, const ModelTriangle& T,
                               TriangleSide side, double s) {
    const ModelPoint* from = &T.x;
    const ModelPoint* to = &T.y;
    double len = T.a;
    if (side == TriangleSide::yz) {
        from = &T.y;
        to = &T.z;
        len = T.b;
    } else if (side == TriangleSide::xz) {
        to = &T.z;
        len = T.c;
    }
    const double slack = 1e-12 * std::max(1.0, len);
    if (s < -slack || s > len + slack)
        throw DomainError("corresponding point parameter " + num(s) + " outside [0, " + num(len) +
                          "]");
    if (s <= 0.0) return *from;
    if (s >= len) return *to;
    return model.along(*from, *to, s);
}

ModelPoint corresponding_point(const ModelTriangle& T, TriangleSide side, double s) {
    return corresponding_point(LorentzModel(T.K), T, side, s);
}

double modified_distance(double K, double E) {
    const double u = K * E;
    if (std::abs(u) < 1e-6) return E / 2.0 - K * E * E / 24.0 + K * K * E * E * E / 720.0;
    if (u > 0.0) return (1.0 - std::cos(std::sqrt(u))) / K;
    return (1.0 - std::cosh(std::sqrt(-u))) / K;
}

}  // namespace lorcone
