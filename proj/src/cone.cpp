#include "lorcone/cone.hpp"

#include "lorcone/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

namespace lorcone {

namespace {

double integrate_warp(const WarpSpec& warp, const quad::Integrand& g, double lo, double hi) {
    if (lo == hi) return 0.0;
    const Interval& I = warp.interval();
    return quad::integrate(g, lo, hi, I.a, I.b, warp.tolerance());
}

bool within_null_band(double reach, double d, double f_end, double t_end, double tol) {
    return std::abs(reach - d) * f_end <= tol * std::max(1.0, std::abs(t_end));
}

// G(kappa) = F - B(kappa), written without the cancellation in
// 1/f - kappa / (f sqrt(f^2 + kappa^2)).
double momentum_gap(const WarpSpec& warp, double t0, double t1, double kappa) {
    auto g = [&](double t) {
        const double f = warp(t);
        const double s = std::hypot(f, kappa);
        return f / (s * (s + kappa));
    };
    return integrate_warp(warp, g, t0, t1);
}

double proper_time_integral(const WarpSpec& warp, double t0, double t1, double kappa) {
    auto g = [&](double t) {
        const double f = warp(t);
        return f / std::hypot(f, kappa);
    };
    return integrate_warp(warp, g, t0, t1);
}

double fiber_progress_integral(const WarpSpec& warp, double t0, double t1, double kappa,
                               bool null) {
    auto g = [&](double t) {
        const double f = warp(t);
        if (null) return 1.0 / f;
        return kappa / (f * std::hypot(f, kappa));
    };
    return integrate_warp(warp, g, t0, t1);
}

}  // namespace

GeneralizedCone::GeneralizedCone(WarpSpec warp, FiberPtr fiber, ConeOptions options)
    : warp_(std::move(warp)), fiber_(std::move(fiber)), options_(options) {
    if (!fiber_) throw DomainError("cone requires a fiber space");
}

ConePoint GeneralizedCone::point(double t, FiberPoint x) const {
    if (!warp_.interval().contains(t)) {
        std::ostringstream os;
        os << "t = " << t << " is outside the base interval";
        throw DomainError(os.str());
    }
    return ConePoint{t, fiber_->canonical(x)};
}

double GeneralizedCone::product_distance(const ConePoint& p, const ConePoint& q) const {
    return std::abs(p.t - q.t) + fiber_->distance(p.x, q.x);
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::equal: return "equal";
        case Relation::chronological: return "chronological";
        case Relation::causal_null_boundary: return "causal_null_boundary";
        case Relation::not_related: return "not_related";
    }
    return "unknown";
}

RelationVerdict relate(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q,
                       bool with_witness) {
    const WarpSpec& warp = cone.warp();
    if (!warp.interval().contains(p.t) || !warp.interval().contains(q.t))
        throw DomainError("relate: point outside the base interval");
    RelationVerdict v;
    const ConePoint* a = &p;
    const ConePoint* b = &q;
    if (q.t < p.t) {
        std::swap(a, b);
        v.reversed = true;
    }
    v.fiber_distance = cone.fiber().distance(a->x, b->x);
    if (a->t == b->t) {
        v.relation = v.fiber_distance == 0.0 ? Relation::equal : Relation::not_related;
        return v;
    }
    v.null_reach = warp.inverse_integral(a->t, b->t);
    const double d = v.fiber_distance;
    if (within_null_band(v.null_reach, d, warp(b->t), b->t, cone.options().null_tolerance)) {
        if (!cone.fiber().is_geodesic())
            throw IndeterminateError(
                "null boundary pair on a fiber without minimizing geodesics");
        v.relation = Relation::causal_null_boundary;
    } else if (d < v.null_reach) {
        v.relation = Relation::chronological;
    } else {
        v.relation = Relation::not_related;
    }
    if (with_witness) {
        NullTransport transport(warp, a->t);
        v.forward_horizon = transport.forward_horizon();
        if (d < transport.forward_horizon()) v.h_of_distance = transport.h_solve(d);
    }
    return v;
}

SeparationProfile solve_separation(const WarpSpec& warp, double t0, double t1, double d,
                                   const ConeOptions& options) {
    if (!(d >= 0.0)) throw DomainError("fiber distance must be nonnegative");
    SeparationProfile prof;
    prof.t0 = t0;
    prof.t1 = t1;
    prof.distance = d;
    if (t1 < t0) return prof;
    if (t1 == t0) {
        if (d == 0.0) prof.relation = Relation::equal;
        return prof;
    }
    prof.null_reach = warp.inverse_integral(t0, t1);
    if (d == 0.0) {
        prof.relation = Relation::chronological;
        prof.tau = t1 - t0;
        return prof;
    }
    if (within_null_band(prof.null_reach, d, warp(t1), t1, options.null_tolerance)) {
        prof.relation = Relation::causal_null_boundary;
        prof.kappa = kInf;
        return prof;
    }
    if (d > prof.null_reach) return prof;
    prof.relation = Relation::chronological;

    // G is strictly decreasing from F (kappa = 0) to 0, so G(kappa) = F - d
    // has a unique root.
    const double target = prof.null_reach - d;
    auto residual = [&](double kappa) { return momentum_gap(warp, t0, t1, kappa) - target; };
    double lo = 0.0;
    double hi = std::max(warp(t0), 1e-300);
    double r_hi = residual(hi);
    int grow = 0;
    while (r_hi > 0.0) {
        lo = hi;
        hi *= 4.0;
        r_hi = residual(hi);
        if (++grow > 200) throw ConvergenceError("momentum bracket search failed", r_hi);
    }
    if (r_hi == 0.0) {
        prof.kappa = hi;
    } else {
        const double r_lo = lo == 0.0 ? d : residual(lo);
        std::uintmax_t iters = 200;
        auto sol = boost::math::tools::toms748_solve(
            residual, lo, hi, r_lo, r_hi, boost::math::tools::eps_tolerance<double>(50), iters);
        prof.kappa = 0.5 * (sol.first + sol.second);
        if (iters >= 200) {
            throw ConvergenceError("momentum root solve did not converge",
                                   std::abs(residual(prof.kappa)));
        }
    }
    prof.tau = proper_time_integral(warp, t0, t1, prof.kappa);
    return prof;
}

double time_separation(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q) {
    if (!cone.fiber().is_geodesic())
        throw DomainError("time separation needs a fiber with minimizing geodesics");
    if (q.t < p.t) return 0.0;
    const double d = cone.fiber().distance(p.x, q.x);
    return solve_separation(cone.warp(), p.t, q.t, d, cone.options()).tau;
}

MaximizingSegment::MaximizingSegment(const GeneralizedCone& cone, const ConePoint& p,
                                     const ConePoint& q)
    : cone_(cone), p_(p), q_(q) {
    if (!cone.fiber().is_geodesic())
        throw DomainError("maximizing segments need a fiber with minimizing geodesics");
    if (q.t < p.t) throw DomainError("maximizing segment endpoints are not future directed");
    const double d = cone.fiber().distance(p.x, q.x);
    profile_ = solve_separation(cone.warp(), p.t, q.t, d, cone.options());
    if (profile_.relation == Relation::not_related)
        throw DomainError("maximizing segment endpoints are not causally related");
    if (profile_.relation != Relation::equal && d > 0.0)
        progress_total_ = fiber_progress_integral(cone_.warp(), p.t, q.t, profile_.kappa, is_null());
}

double MaximizingSegment::fiber_speed(double t) const {
    const double f = cone_.warp()(t);
    if (is_null()) return 1.0 / f;
    const double k = profile_.kappa;
    return k / (f * std::hypot(f, k));
}

double MaximizingSegment::fiber_progress(double t) const {
    if (progress_total_ == 0.0) return 0.0;
    t = std::clamp(t, p_.t, q_.t);
    const double raw =
        fiber_progress_integral(cone_.warp(), p_.t, t, profile_.kappa, is_null());
    // Rescale so the endpoint lands exactly on d.
    return raw * profile_.distance / progress_total_;
}

double MaximizingSegment::proper_time_at(double t) const {
    if (is_null() || profile_.relation == Relation::equal) return 0.0;
    t = std::clamp(t, p_.t, q_.t);
    return proper_time_integral(cone_.warp(), p_.t, t, profile_.kappa);
}

double MaximizingSegment::time_at_proper_time(double s) const {
    if (is_null() || profile_.relation == Relation::equal) {
        if (s == 0.0) return p_.t;
        throw DomainError("proper time is identically zero on this segment");
    }
    if (s < 0.0 || s > profile_.tau) throw DomainError("proper time outside [0, tau]");
    if (s == 0.0) return p_.t;
    if (s == profile_.tau) return q_.t;
    auto r = [&](double t) { return proper_time_at(t) - s; };
    std::uintmax_t iters = 200;
    auto sol = boost::math::tools::toms748_solve(r, p_.t, q_.t, -s, profile_.tau - s,
                                                 boost::math::tools::eps_tolerance<double>(50),
                                                 iters);
    return 0.5 * (sol.first + sol.second);
}

ConePoint MaximizingSegment::point_at(double t) const {
    if (t <= p_.t) return p_;
    if (t >= q_.t) return q_;
    if (progress_total_ == 0.0) return ConePoint{t, p_.x};
    const double u = fiber_progress(t) / profile_.distance;
    return ConePoint{t, cone_.fiber().geodesic_point(p_.x, q_.x, u)};
}

CausalPath::CausalPath(std::vector<PathSample> samples, std::vector<double> parameters)
    : samples_(std::move(samples)), parameters_(std::move(parameters)) {
    if (!parameters_.empty() && parameters_.size() != samples_.size())
        throw DomainError("path parameters must match the number of samples");
    if (samples_.size() >= 2 && samples_.front().t > samples_.back().t) {
        std::reverse(samples_.begin(), samples_.end());
        std::reverse(parameters_.begin(), parameters_.end());
    }
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (!(samples_[i].t > samples_[i - 1].t))
            throw DomainError("path samples must have strictly monotone t (sample " +
                              std::to_string(i) + ")");
    }
}

CausalPath CausalPath::with_parameters(std::vector<double> parameters) const {
    if (parameters.size() != samples_.size())
        throw DomainError("path parameters must match the number of samples");
    CausalPath out = *this;
    out.parameters_ = std::move(parameters);
    return out;
}

std::vector<SegmentData> segment_data(const GeneralizedCone& cone, const CausalPath& path) {
    const WarpSpec& warp = cone.warp();
    const auto& s = path.samples();
    std::vector<SegmentData> out;
    if (s.size() < 2) return out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        SegmentData seg;
        seg.dt = s[i + 1].t - s[i].t;
        seg.d = cone.fiber().distance(s[i].x, s[i + 1].x);
        seg.f_mid = warp(0.5 * (s[i].t + s[i + 1].t));
        seg.min_f = warp.min_on_interval(s[i].t, s[i + 1].t);
        seg.null_reach = warp.inverse_integral(s[i].t, s[i + 1].t);
        const double ratio = seg.d / seg.null_reach;
        seg.normalized_radicand = 1.0 - ratio * ratio;
        out.push_back(seg);
    }
    return out;
}

CausalPath maximizing_geodesic(const GeneralizedCone& cone, const ConePoint& p,
                               const ConePoint& q, std::size_t n_samples) {
    if (n_samples < 2) throw DomainError("a geodesic needs at least two samples");
    MaximizingSegment seg(cone, p, q);
    if (seg.profile().relation == Relation::equal)
        throw DomainError("geodesic endpoints coincide");
    const double t0 = p.t;
    const double t1 = q.t;
    const double kappa = seg.profile().kappa;
    const bool moves = seg.profile().distance > 0.0;
    const double raw_total =
        moves ? fiber_progress_integral(cone.warp(), t0, t1, kappa, seg.is_null()) : 0.0;
    std::vector<PathSample> samples;
    samples.reserve(n_samples);
    samples.push_back({p.t, p.x});
    // Progress is accumulated piece by piece to keep the cost linear in n.
    double acc = 0.0;
    double last = t0;
    for (std::size_t i = 1; i + 1 < n_samples; ++i) {
        const double t =
            t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        FiberPoint x = p.x;
        if (moves) {
            acc += fiber_progress_integral(cone.warp(), last, t, kappa, seg.is_null());
            x = cone.fiber().geodesic_point(p.x, q.x, std::clamp(acc / raw_total, 0.0, 1.0));
        }
        last = t;
        samples.push_back({t, std::move(x)});
    }
    samples.push_back({q.t, q.x});
    return CausalPath(std::move(samples));
}

double path_length(const GeneralizedCone& cone, const CausalPath& path) {
    const auto segs = segment_data(cone, path);
    const double tol = cone.options().segment_tolerance;
    double total = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const SegmentData& s = segs[i];
        if (s.min_f * s.d > s.dt * (1.0 + 1e-9) + 1e-15) {
            std::ostringstream os;
            os.precision(9);
            os << "path is not causal: segment " << i << " has min f * d = " << s.min_f * s.d
               << " > dt = " << s.dt;
            throw DomainError(os.str());
        }
        if (std::abs(s.normalized_radicand) <= tol) continue;
        total += std::sqrt(std::max(0.0, s.dt * s.dt - s.f_mid * s.f_mid * s.d * s.d));
    }
    return total;
}

VariationalLength variational_length(const GeneralizedCone& cone, const CausalPath& path,
                                     std::size_t refinement_depth) {
    const WarpSpec& warp = cone.warp();
    const FiberSpace& fiber = cone.fiber();
    const auto& s = path.samples();
    VariationalLength out;
    for (std::size_t k = 0; k <= refinement_depth; ++k) {
        const std::size_t parts = std::size_t{1} << k;
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            const double dt = (s[i + 1].t - s[i].t) / static_cast<double>(parts);
            FiberPoint xa = s[i].x;
            for (std::size_t j = 0; j < parts; ++j) {
                const double ta = s[i].t + dt * static_cast<double>(j);
                const double tb = j + 1 == parts ? s[i + 1].t : ta + dt;
                FiberPoint xb = j + 1 == parts
                                    ? s[i + 1].x
                                    : fiber.geodesic_point(s[i].x, s[i + 1].x,
                                                           static_cast<double>(j + 1) /
                                                               static_cast<double>(parts));
                const double d = fiber.distance(xa, xb);
                const double m = warp.min_on_interval(ta, tb);
                const double h = tb - ta;
                total += std::sqrt(std::max(0.0, h * h - m * m * d * d));
                xa = std::move(xb);
            }
        }
        out.sequence.push_back(total);
    }
    out.value = out.sequence.empty() ? 0.0 : out.sequence.back();
    return out;
}

double segment_tau_bound(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q) {
    if (q.t < p.t) return 0.0;
    const double d = cone.fiber().distance(p.x, q.x);
    const double m = q.t == p.t ? cone.warp()(p.t) : cone.warp().min_on_interval(p.t, q.t);
    const double dt = q.t - p.t;
    return std::sqrt(std::max(0.0, dt * dt - m * m * d * d));
}

std::string to_string(PathClass c) {
    switch (c) {
        case PathClass::timelike: return "timelike";
        case PathClass::null: return "null";
        case PathClass::causal_mixed: return "causal_mixed";
        case PathClass::not_causal: return "not_causal";
    }
    return "unknown";
}

PathClass classify_path(const GeneralizedCone& cone, const CausalPath& path) {
    const auto segs = segment_data(cone, path);
    const double tol = cone.options().segment_tolerance;
    bool all_timelike = true;
    bool all_null = true;
    for (const auto& s : segs) {
        const double r = s.normalized_radicand;
        if (r < -tol) return PathClass::not_causal;
        if (r > tol) all_null = false;
        else all_timelike = false;
    }
    if (segs.empty() || all_null) return PathClass::null;
    if (all_timelike) return PathClass::timelike;
    return PathClass::causal_mixed;
}

double energy(const GeneralizedCone& cone, const CausalPath& path) {
    const auto segs = segment_data(cone, path);
    const auto& params = path.parameters();
    const double tol = cone.options().segment_tolerance;
    double total = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double ds = params.empty() ? 1.0 : params[i + 1] - params[i];
        if (!(ds > 0.0)) throw DomainError("energy needs strictly increasing parameters");
        const SegmentData& s = segs[i];
        if (std::abs(s.normalized_radicand) <= tol) continue;
        total += (s.dt * s.dt - s.f_mid * s.f_mid * s.d * s.d) / ds;
    }
    return 0.5 * total;
}

namespace {

double ball_radius(const WarpSpec& warp, double from, double to) {
    if (to <= from) return 0.0;
    return (to - from) / warp.min_on_interval(from, to);
}

}  // namespace

DiamondBox causal_diamond_box(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q,
                              std::size_t n_slices) {
    DiamondBox box;
    const RelationVerdict v = relate(cone, p, q);
    if (!v.causal() || v.reversed) return box;
    box.empty = false;
    box.t_min = p.t;
    box.t_max = q.t;
    if (v.relation == Relation::equal || n_slices < 2) {
        box.slices.push_back({p.t, 0.0, 0.0});
        return box;
    }
    for (std::size_t i = 0; i < n_slices; ++i) {
        const double t = i + 1 == n_slices
                             ? q.t
                             : p.t + (q.t - p.t) * static_cast<double>(i) /
                                         static_cast<double>(n_slices - 1);
        box.slices.push_back(
            {t, ball_radius(cone.warp(), p.t, t), ball_radius(cone.warp(), t, q.t)});
    }
    return box;
}

bool in_diamond_box(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q,
                    const ConePoint& y, double tol) {
    if (y.t < p.t - tol || y.t > q.t + tol) return false;
    const double t = std::clamp(y.t, p.t, q.t);
    const double r_p = ball_radius(cone.warp(), p.t, t);
    const double r_q = ball_radius(cone.warp(), t, q.t);
    return cone.fiber().distance(p.x, y.x) <= r_p + tol &&
           cone.fiber().distance(y.x, q.x) <= r_q + tol;
}

void write_path_csv(std::ostream& os, const FiberSpace& fiber, const CausalPath& path) {
    os << "t,fiber\n";
    std::ostringstream line;
    for (const auto& s : path.samples()) {
        line.str("");
        line.precision(17);
        line << s.t << ',' << fiber.encode(s.x, 17) << '\n';
        os << line.str();
    }
}

CausalPath read_path_csv(std::istream& is, const FiberSpace& fiber) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("line 1", "empty path file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,fiber") throw ConfigError("line 1", "expected header 't,fiber'");
    std::vector<PathSample> samples;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::string where = "line " + std::to_string(lineno);
        if (comma == std::string::npos) throw ConfigError(where, "expected 't,<fiber point>'");
        PathSample s;
        try {
            std::size_t used = 0;
            s.t = std::stod(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("t");
        } catch (const std::exception&) {
            throw ConfigError(where, "invalid time value");
        }
        try {
            s.x = fiber.canonical(fiber.decode(std::string_view(line).substr(comma + 1)));
        } catch (const DomainError& e) {
            throw ConfigError(where, e.what());
        }
        samples.push_back(std::move(s));
    }
    try {
        return CausalPath(std::move(samples));
    } catch (const DomainError& e) {
        throw ConfigError("", e.what());
    }
}

}  // namespace lorcone
