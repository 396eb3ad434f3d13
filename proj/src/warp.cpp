#include "lorcone/warp.hpp"

#include "lorcone/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lorcone {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(9);
    os << x;
    return os.str();
}

// sin(u) > 0 on the open range (ua, ub)?
bool sin_positive_on(double ua, double ub) {
    const double k = std::floor(ua / (2.0 * kPi) + 1e-12);
    const double lo = 2.0 * kPi * k;
    return ua >= lo - 1e-12 && ub <= lo + kPi + 1e-12;
}

}  // namespace

std::string to_string(WarpKind kind) {
    switch (kind) {
        case WarpKind::constant: return "constant";
        case WarpKind::identity: return "identity";
        case WarpKind::sin: return "sin";
        case WarpKind::cos: return "cos";
        case WarpKind::sinh: return "sinh";
        case WarpKind::cosh: return "cosh";
        case WarpKind::exp: return "exp";
        case WarpKind::power: return "power";
        case WarpKind::sampled: return "sampled";
    }
    return "?";
}

WarpKind warp_kind_from_string(const std::string& name) {
    for (auto k : {WarpKind::constant, WarpKind::identity, WarpKind::sin, WarpKind::cos,
                   WarpKind::sinh, WarpKind::cosh, WarpKind::exp, WarpKind::power,
                   WarpKind::sampled}) {
        if (to_string(k) == name) return k;
    }
    if (name == "id") return WarpKind::identity;
    throw ConfigError("warp.kind", "unknown warp kind '" + name + "'");
}

WarpSpec WarpSpec::constant(double c, Interval interval) {
    WarpSpec w;
    w.kind_ = WarpKind::constant;
    w.interval_ = interval;
    w.amplitude_ = c;
    w.parameter_ = c;
    w.validate();
    return w;
}

WarpSpec WarpSpec::identity(Interval interval) {
    return elementary(WarpKind::identity, interval);
}

WarpSpec WarpSpec::power(double exponent, Interval interval, double amplitude) {
    WarpSpec w;
    w.kind_ = WarpKind::power;
    w.interval_ = interval;
    w.amplitude_ = amplitude;
    w.parameter_ = exponent;
    w.validate();
    return w;
}

WarpSpec WarpSpec::elementary(WarpKind kind, Interval interval, double amplitude, double rate) {
    if (kind == WarpKind::sampled || kind == WarpKind::power || kind == WarpKind::constant) {
        throw DomainError("elementary(): use the dedicated factory for kind " + to_string(kind));
    }
    WarpSpec w;
    w.kind_ = kind;
    w.interval_ = interval;
    w.amplitude_ = amplitude;
    w.rate_ = rate;
    w.validate();
    return w;
}

WarpSpec WarpSpec::sampled(std::vector<std::pair<double, double>> samples, Interpolation rule,
                           std::optional<Interval> interval) {
    WarpSpec w;
    w.kind_ = WarpKind::sampled;
    w.rule_ = rule;
    std::sort(samples.begin(), samples.end());
    w.samples_ = std::move(samples);
    if (w.samples_.size() < 2) throw DomainError("sampled warp needs at least two samples");
    for (std::size_t i = 0; i < w.samples_.size(); ++i) {
        if (!(w.samples_[i].second > 0.0) || !std::isfinite(w.samples_[i].second)) {
            throw DomainError("sampled warp value at t=" + fmt(w.samples_[i].first) +
                              " is not strictly positive");
        }
        if (i > 0 && !(w.samples_[i].first > w.samples_[i - 1].first)) {
            throw DomainError("sampled warp has repeated abscissa t=" +
                              fmt(w.samples_[i].first));
        }
    }
    const Interval grid{w.samples_.front().first, w.samples_.back().first};
    w.interval_ = interval.value_or(grid);
    if (w.interval_.a < grid.a || w.interval_.b > grid.b) {
        throw DomainError("sampled warp interval must lie inside the sample grid");
    }
    if (rule == Interpolation::cubic_spline) w.build_spline();
    w.validate();
    return w;
}

WarpSpec WarpSpec::with_tolerance(quad::Tolerance tol) const {
    WarpSpec w = *this;
    w.tolerance_ = tol;
    return w;
}

void WarpSpec::validate() const {
    const auto [a, b] = interval_;
    if (!(a < b)) throw DomainError("warp interval needs a < b");
    if (kind_ == WarpKind::sampled) {
        if (rule_ == Interpolation::cubic_spline) {
            // A spline can overshoot below zero between positive samples.
            for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
                const double t0 = samples_[i].first;
                const double t1 = samples_[i + 1].first;
                for (int j = 1; j < 64; ++j) {
                    const double t = t0 + (t1 - t0) * j / 64.0;
                    if (!((*this)(t) > 0.0)) {
                        throw DomainError("spline interpolation of sampled warp is not positive near t=" +
                                          fmt(t));
                    }
                }
            }
        }
        return;
    }
    if (!(amplitude_ > 0.0) || !std::isfinite(amplitude_)) {
        throw DomainError("warp amplitude must be positive");
    }
    if (!(rate_ > 0.0) || !std::isfinite(rate_)) throw DomainError("warp rate must be positive");
    const double ua = rate_ * a;
    const double ub = rate_ * b;
    switch (kind_) {
        case WarpKind::constant:
        case WarpKind::cosh:
        case WarpKind::exp:
            break;
        case WarpKind::identity:
        case WarpKind::sinh:
        case WarpKind::power:
            if (a < 0.0) {
                throw DomainError(to_string(kind_) + " warp is not positive on (" + fmt(a) + ", " +
                                  fmt(b) + "): needs a >= 0");
            }
            break;
        case WarpKind::sin:
            if (!interval_.finite() || !sin_positive_on(ua, ub)) {
                throw DomainError("sin warp is not positive on (" + fmt(a) + ", " + fmt(b) + ")");
            }
            break;
        case WarpKind::cos:
            if (!interval_.finite() || !sin_positive_on(ua + kPi / 2, ub + kPi / 2)) {
                throw DomainError("cos warp is not positive on (" + fmt(a) + ", " + fmt(b) + ")");
            }
            break;
        case WarpKind::sampled:
            break;
    }
}

double WarpSpec::g(double u) const {
    switch (kind_) {
        case WarpKind::constant: return 1.0;
        case WarpKind::identity: return u;
        case WarpKind::sin: return std::sin(u);
        case WarpKind::cos: return std::cos(u);
        case WarpKind::sinh: return std::sinh(u);
        case WarpKind::cosh: return std::cosh(u);
        case WarpKind::exp: return std::exp(u);
        case WarpKind::power: return std::pow(u, parameter_);
        case WarpKind::sampled: break;
    }
    return 0.0;
}

double WarpSpec::g1(double u) const {
    switch (kind_) {
        case WarpKind::constant: return 0.0;
        case WarpKind::identity: return 1.0;
        case WarpKind::sin: return std::cos(u);
        case WarpKind::cos: return -std::sin(u);
        case WarpKind::sinh: return std::cosh(u);
        case WarpKind::cosh: return std::sinh(u);
        case WarpKind::exp: return std::exp(u);
        case WarpKind::power: return parameter_ * std::pow(u, parameter_ - 1.0);
        case WarpKind::sampled: break;
    }
    return 0.0;
}

double WarpSpec::g2(double u) const {
    switch (kind_) {
        case WarpKind::constant:
        case WarpKind::identity: return 0.0;
        case WarpKind::sin: return -std::sin(u);
        case WarpKind::cos: return -std::cos(u);
        case WarpKind::sinh: return std::sinh(u);
        case WarpKind::cosh: return std::cosh(u);
        case WarpKind::exp: return std::exp(u);
        case WarpKind::power: return parameter_ * (parameter_ - 1.0) * std::pow(u, parameter_ - 2.0);
        case WarpKind::sampled: break;
    }
    return 0.0;
}

std::size_t WarpSpec::sample_segment(double t) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const auto& s) { return v < s.first; });
    std::size_t i = static_cast<std::size_t>(it - samples_.begin());
    if (i == 0) return 0;
    return std::min(i - 1, samples_.size() - 2);
}

void WarpSpec::build_spline() {
    const std::size_t n = samples_.size();
    spline_m_.assign(n, 0.0);
    if (n < 3) return;
    // Natural spline: Thomas algorithm on the interior second derivatives.
    std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = samples_[i].first - samples_[i - 1].first;
        const double h1 = samples_[i + 1].first - samples_[i].first;
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((samples_[i + 1].second - samples_[i].second) / h1 -
                        (samples_[i].second - samples_[i - 1].second) / h0);
        if (i > 1) {
            const double w = h0 / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        spline_m_[i] = (rhs[i] - upper[i] * spline_m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

double WarpSpec::operator()(double t) const {
    if (!interval_.contains(t)) {
        throw DomainError("t=" + fmt(t) + " outside warp interval (" + fmt(interval_.a) + ", " +
                          fmt(interval_.b) + ")");
    }
    if (kind_ != WarpKind::sampled) return amplitude_ * g(rate_ * t);
    const std::size_t i = sample_segment(t);
    const auto [t0, y0] = samples_[i];
    const auto [t1, y1] = samples_[i + 1];
    const double h = t1 - t0;
    if (rule_ == Interpolation::linear) return y0 + (y1 - y0) * (t - t0) / h;
    const double m0 = spline_m_[i];
    const double m1 = spline_m_[i + 1];
    const double l = t1 - t;
    const double r = t - t0;
    return m0 * l * l * l / (6 * h) + m1 * r * r * r / (6 * h) + (y0 / h - m0 * h / 6) * l +
           (y1 / h - m1 * h / 6) * r;
}

double WarpSpec::derivative(double t) const {
    if (!interval_.contains(t)) throw DomainError("t=" + fmt(t) + " outside warp interval");
    if (kind_ != WarpKind::sampled) return amplitude_ * rate_ * g1(rate_ * t);
    const std::size_t i = sample_segment(t);
    const auto [t0, y0] = samples_[i];
    const auto [t1, y1] = samples_[i + 1];
    const double h = t1 - t0;
    if (rule_ == Interpolation::linear) return (y1 - y0) / h;
    const double m0 = spline_m_[i];
    const double m1 = spline_m_[i + 1];
    const double l = t1 - t;
    const double r = t - t0;
    return -m0 * l * l / (2 * h) + m1 * r * r / (2 * h) + (y1 - y0) / h - (m1 - m0) * h / 6;
}

bool WarpSpec::has_second_derivative() const {
    return kind_ != WarpKind::sampled || rule_ == Interpolation::cubic_spline;
}

double WarpSpec::second_derivative(double t) const {
    if (!interval_.contains(t)) throw DomainError("t=" + fmt(t) + " outside warp interval");
    if (kind_ != WarpKind::sampled) return amplitude_ * rate_ * rate_ * g2(rate_ * t);
    if (rule_ == Interpolation::linear) {
        throw DomainError("sampled warp with linear interpolation has no second derivative");
    }
    const std::size_t i = sample_segment(t);
    const double t0 = samples_[i].first;
    const double t1 = samples_[i + 1].first;
    const double h = t1 - t0;
    return spline_m_[i] * (t1 - t) / h + spline_m_[i + 1] * (t - t0) / h;
}

bool WarpSpec::is_constant() const {
    if (kind_ == WarpKind::constant) return true;
    if (kind_ == WarpKind::power) return parameter_ == 0.0;
    if (kind_ != WarpKind::sampled) return false;
    return std::all_of(samples_.begin(), samples_.end(),
                       [&](const auto& s) { return s.second == samples_.front().second; });
}

double WarpSpec::min_on_interval(double s, double t) const {
    if (!(interval_.contains(s) && interval_.contains(t)) || s > t) {
        throw DomainError("min_on_interval needs a < s <= t < b, got [" + fmt(s) + ", " + fmt(t) +
                          "]");
    }
    const double fs = (*this)(s);
    const double ft = (*this)(t);
    double best = std::min(fs, ft);
    switch (kind_) {
        case WarpKind::constant:
            return amplitude_;
        case WarpKind::identity:
        case WarpKind::sinh:
        case WarpKind::exp:
        case WarpKind::power:
        case WarpKind::sin:  // concave on its positivity range
        case WarpKind::cos:
            return best;
        case WarpKind::cosh:
            if (s <= 0.0 && 0.0 <= t) best = std::min(best, amplitude_);
            return best;
        case WarpKind::sampled:
            break;
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const double ti = samples_[i].first;
        if (ti > s && ti < t) best = std::min(best, samples_[i].second);
    }
    if (rule_ == Interpolation::cubic_spline) {
        // Interior critical points of each cubic piece: roots of S'.
        for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
            const double t0 = samples_[i].first;
            const double t1 = samples_[i + 1].first;
            if (t1 <= s || t0 >= t) continue;
            const double h = t1 - t0;
            const double m0 = spline_m_[i];
            const double m1 = spline_m_[i + 1];
            const double qa = (m1 - m0) / (2 * h);
            const double qb = m0;
            const double qc = (samples_[i + 1].second - samples_[i].second) / h -
                              (m1 - m0) * h / 6 - m0 * h / 2;
            std::vector<double> roots;
            if (std::abs(qa) < 1e-300) {
                if (qb != 0.0) roots.push_back(-qc / qb);
            } else {
                const double disc = qb * qb - 4 * qa * qc;
                if (disc >= 0.0) {
                    const double sq = std::sqrt(disc);
                    roots.push_back((-qb + sq) / (2 * qa));
                    roots.push_back((-qb - sq) / (2 * qa));
                }
            }
            for (double x : roots) {
                const double u = t0 + x;
                if (u > std::max(s, t0) && u < std::min(t, t1)) best = std::min(best, (*this)(u));
            }
        }
    }
    return best;
}

double WarpSpec::inverse_integral(double p, double r) const {
    if (!interval_.contains(p) || !interval_.contains(r)) {
        throw DomainError("inverse_integral endpoints must lie inside the warp interval");
    }
    return quad::integrate([this](double t) { return 1.0 / (*this)(t); }, p, r, interval_.a,
                           interval_.b, tolerance_);
}

std::string WarpSpec::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    if (kind_ == WarpKind::constant) os << "(" << fmt(parameter_) << ")";
    if (kind_ == WarpKind::power) os << "(" << fmt(parameter_) << ")";
    if (kind_ != WarpKind::sampled && kind_ != WarpKind::constant &&
        (amplitude_ != 1.0 || rate_ != 1.0)) {
        os << "[A=" << fmt(amplitude_) << ",w=" << fmt(rate_) << "]";
    }
    os << " on (" << fmt(interval_.a) << ", " << fmt(interval_.b) << ")";
    return os.str();
}

// ---------------------------------------------------------------------------

NullTransport::NullTransport(WarpSpec warp, double base_point)
    : warp_(std::move(warp)), p0_(base_point) {
    if (!warp_.interval().contains(p0_)) {
        throw DomainError("null transport base point " + fmt(p0_) + " outside warp interval");
    }
    auto inv = [this](double t) { return 1.0 / warp_(t); };
    forward_ = quad::integrate_to_endpoint(inv, p0_, warp_.interval().b, warp_.tolerance());
    backward_ = quad::integrate_to_endpoint(inv, p0_, warp_.interval().a, warp_.tolerance());
}

double NullTransport::null_parameter(double r) const {
    if (!warp_.interval().contains(r)) {
        throw DomainError("null_parameter: r=" + fmt(r) + " outside warp interval");
    }
    const quad::TailIntegral& table = r >= p0_ ? forward_ : backward_;
    const double sign = r >= p0_ ? 1.0 : -1.0;
    // Last table node not past r.
    std::size_t k = 0;
    for (std::size_t i = 1; i < table.nodes.size(); ++i) {
        if (sign * (table.nodes[i] - r) <= 0.0) k = i;
        else break;
    }
    const double rest = warp_.inverse_integral(table.nodes[k], r);
    return sign * table.partial[k] + rest;
}

double NullTransport::h_solve(double s) const {
    const double lo_h = backward_horizon();
    const double hi_h = forward_horizon();
    if (!(s > lo_h && s < hi_h)) {
        throw DomainError("h_solve: s=" + fmt(s) + " outside horizon range (" + fmt(lo_h) + ", " +
                          fmt(hi_h) + ")");
    }
    if (s == 0.0) return p0_;
    const quad::TailIntegral& table = s > 0 ? forward_ : backward_;
    const double sign = s > 0 ? 1.0 : -1.0;
    const double target = std::abs(s);
    const double endpoint = s > 0 ? warp_.interval().b : warp_.interval().a;

    // Bracket [node_k, node_{k+1}] from the cached table, extending past the
    // last node if needed.
    double r_lo = table.nodes.back();
    double f_lo = table.partial.back();
    double r_hi = endpoint;
    for (std::size_t i = 1; i < table.nodes.size(); ++i) {
        if (table.partial[i] > target) {
            r_lo = table.nodes[i - 1];
            f_lo = table.partial[i - 1];
            r_hi = table.nodes[i];
            break;
        }
    }
    if (r_hi == endpoint) {
        double step = std::max(1.0, std::abs(r_lo - p0_));
        for (int it = 0; it < 2000; ++it) {
            double cand = std::isfinite(endpoint) ? r_lo + 0.5 * (endpoint - r_lo)
                                                  : r_lo + sign * step;
            if (cand == r_lo) break;
            const double fc = f_lo + std::abs(warp_.inverse_integral(r_lo, cand));
            if (fc > target) {
                r_hi = cand;
                break;
            }
            r_lo = cand;
            f_lo = fc;
            step *= 2.0;
        }
        if (r_hi == endpoint) return r_lo;  // target sits within rounding of the endpoint
    }

    const double base = r_lo;
    const double base_f = f_lo;
    auto phi = [&](double r) { return base_f + std::abs(warp_.inverse_integral(base, r)) - target; };
    double a = std::min(r_lo, r_hi);
    double b = std::max(r_lo, r_hi);
    double fa = phi(a);
    double fb = phi(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    boost::uintmax_t max_iter = 200;
    auto [x0, x1] = boost::math::tools::toms748_solve(phi, a, b, fa, fb,
                                                      boost::math::tools::eps_tolerance<double>(52),
                                                      max_iter);
    return 0.5 * (x0 + x1);
}

// ---------------------------------------------------------------------------

ConcavityResult concavity_check(const WarpSpec& warp, double K, std::size_t grid_size,
                                double window) {
    if (!warp.has_second_derivative()) {
        throw DomainError("concavity_check needs f''; sampled warps require the cubic_spline rule");
    }
    if (grid_size < 2) throw DomainError("concavity_check needs grid_size >= 2");
    const auto [a, b] = warp.interval();
    double lo;
    double hi;
    if (std::isfinite(a) && std::isfinite(b)) {
        lo = a;
        hi = b;
    } else if (std::isfinite(a)) {
        lo = a;
        hi = a + window;
    } else if (std::isfinite(b)) {
        lo = b - window;
        hi = b;
    } else {
        lo = -0.5 * window;
        hi = 0.5 * window;
    }
    const double clip = 1e-3 * (hi - lo);
    lo += clip;
    hi -= clip;

    constexpr double band = 1e-9;
    ConcavityResult out;
    out.worst_margin = -kInf;
    out.min_margin = kInf;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
        const double f = warp(t);
        const double m = (warp.second_derivative(t) - K * f) / std::max(1.0, std::abs(f));
        if (m > out.worst_margin) {
            out.worst_margin = m;
            out.worst_t = t;
        }
        out.min_margin = std::min(out.min_margin, m);
    }
    out.holds_concave = out.worst_margin <= band;
    out.holds_convex = out.min_margin >= -band;
    return out;
}

namespace {

struct EndpointLimit {
    bool singular = false;
    bool inconclusive = false;
};

// f -> 0 and f' -> +inf (dir = +1, approaching a from above) or
// f' -> -inf (dir = -1, approaching b from below).
EndpointLimit endpoint_limit(const WarpSpec& warp, double endpoint, double dir) {
    EndpointLimit out;
    if (!std::isfinite(endpoint)) return out;
    if (warp.kind() == WarpKind::sampled) {
        out.inconclusive = true;
        return out;
    }
    const double span = std::min(1.0, 0.5 * warp.interval().length());
    const double f_ref = std::max(1.0, warp(endpoint + dir * span));
    double prev_slope = -kInf;
    bool slope_growing = true;
    double f_last = 0.0;
    double slope_last = 0.0;
    for (int k = 1; k <= 12; ++k) {
        const double t = endpoint + dir * span * std::pow(10.0, -k);
        if (!warp.interval().contains(t)) break;
        f_last = warp(t);
        slope_last = dir * warp.derivative(t);
        if (slope_last < prev_slope) slope_growing = false;
        prev_slope = slope_last;
    }
    out.singular = f_last < 1e-6 * f_ref && slope_last > 1e3 && slope_growing;
    return out;
}

}  // namespace

SingularityReport singularity_report(const WarpSpec& warp, double K) {
    SingularityReport rep;
    const auto [a, b] = warp.interval();
    rep.interval_finite = {std::isfinite(a), std::isfinite(b)};
    const std::string ks = fmt(K);

    if (warp.has_second_derivative()) {
        const ConcavityResult c = concavity_check(warp, K);
        rep.lower_bound_K_consistent = c.holds_concave;
        if (!c.holds_concave) {
            rep.verdicts.push_back("lower curvature bound " + ks + " impossible: f'' - K f = " +
                                   fmt(c.worst_margin * std::max(1.0, std::abs(warp(c.worst_t)))) +
                                   " > 0 at t=" + fmt(c.worst_t));
        } else {
            rep.verdicts.push_back("f is " + ks + "-concave: lower curvature bound " + ks +
                                   " consistent");
        }
    } else {
        rep.verdicts.push_back("concavity inconclusive: sampled warp without f''");
    }

    if (rep.lower_bound_K_consistent && K < 0.0) {
        if (warp.interval().finite()) {
            rep.tau_diameter_bound = b - a;
            rep.verdicts.push_back("time separation bounded by b - a = " + fmt(b - a) +
                                   "; timelike geodesically incomplete");
        } else {
            rep.verdicts.push_back("inconsistent: lower bound " + ks +
                                   " < 0 requires a finite interval");
        }
    }
    if (rep.lower_bound_K_consistent && K == 0.0 && !warp.is_constant()) {
        if (rep.interval_finite.a_finite) rep.verdicts.push_back("past timelike geodesically incomplete");
        if (rep.interval_finite.b_finite) rep.verdicts.push_back("future timelike geodesically incomplete");
        if (!rep.interval_finite.a_finite && !rep.interval_finite.b_finite) {
            rep.verdicts.push_back("inconsistent: non-constant f with lower bound 0 needs a finite endpoint");
        }
    }

    const EndpointLimit bang = endpoint_limit(warp, a, +1.0);
    const EndpointLimit crunch = endpoint_limit(warp, b, -1.0);
    rep.big_bang = bang.singular;
    rep.big_crunch = crunch.singular;
    rep.big_bang_inconclusive = bang.inconclusive;
    rep.big_crunch_inconclusive = crunch.inconclusive;
    if (bang.inconclusive) rep.verdicts.push_back("big bang test inconclusive: sampled data end at t=" + fmt(a));
    if (crunch.inconclusive) rep.verdicts.push_back("big crunch test inconclusive: sampled data end at t=" + fmt(b));
    if (rep.big_bang) rep.verdicts.push_back("big bang singularity at t=" + fmt(a));
    if (rep.big_crunch) rep.verdicts.push_back("big crunch singularity at t=" + fmt(b));
    rep.upper_bound_possible = !(rep.big_bang || rep.big_crunch);
    if (!rep.upper_bound_possible) {
        rep.verdicts.push_back("no timelike curvature bound from above is possible");
    }
    return rep;
}

}  // namespace lorcone
