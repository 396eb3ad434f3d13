#include "lorcone/comparison.hpp"

#include "lorcone/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

namespace lorcone {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double max_on_window(const WarpSpec& w, double lo, double hi) {
    double m = 0.0;
    constexpr int n = 64;
    for (int i = 0; i <= n; ++i) m = std::max(m, w(lo + (hi - lo) * i / n));
    return m;
}

// Point of the maximizer from `from` to `to` at proper time s.
ConePoint point_at_proper_time(const MaximizingSegment& seg, double s) {
    if (s <= 0.0) return seg.start();
    if (s >= seg.tau()) return seg.end();
    return seg.point_at(seg.time_at_proper_time(s));
}

std::size_t grid_size(std::size_t pair_samples) {
    const auto k = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(pair_samples))));
    return std::max<std::size_t>(2, k);
}

}  // namespace

std::size_t worker_count(std::size_t requested) {
    std::size_t n = requested;
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LORCONE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    }
    return std::max<std::size_t>(1, n);
}

TimelikeTriangle make_timelike_triangle(const GeneralizedCone& cone, const ConePoint& x,
                                        const ConePoint& y, const ConePoint& z,
                                        std::size_t side_samples) {
    const auto check = [&](const ConePoint& p, const ConePoint& q, const char* name) {
        const RelationVerdict v = relate(cone, p, q);
        if (v.reversed || v.relation != Relation::chronological)
            throw DomainError(std::string("triangle vertices are not chronological along ") + name);
    };
    check(x, y, "xy");
    check(y, z, "yz");
    check(x, z, "xz");
    TimelikeTriangle T;
    T.x = x;
    T.y = y;
    T.z = z;
    T.a = time_separation(cone, x, y);
    T.b = time_separation(cone, y, z);
    T.c = time_separation(cone, x, z);
    if (side_samples >= 2) {
        T.side_xy = maximizing_geodesic(cone, x, y, side_samples);
        T.side_yz = maximizing_geodesic(cone, y, z, side_samples);
        T.side_xz = maximizing_geodesic(cone, x, z, side_samples);
    }
    return T;
}

double lift_diameter_bound(const GeneralizedCone& cone, double t0, double epsilon) {
    return epsilon / (2.0 * std::sqrt(2.0) * cone.warp()(t0));
}

TimelikeTriangle lift_fiber_triangle(const GeneralizedCone& cone,
                                     const std::array<FiberPoint, 3>& fiber_triangle, double t0,
                                     double epsilon, std::size_t side_samples) {
    const FiberSpace& X = cone.fiber();
    if (!X.is_geodesic()) throw DomainError("lifting needs a geodesic fiber");
    if (!(epsilon > 0.0)) throw DomainError("lift half-height must be positive");
    const Interval& I = cone.warp().interval();
    if (!I.contains(t0 - epsilon) || !I.contains(t0 + epsilon))
        throw DomainError("lift window [" + num(t0 - epsilon) + ", " + num(t0 + epsilon) +
                          "] leaves the base interval");
    const double d_xy = X.distance(fiber_triangle[0], fiber_triangle[1]);
    const double d_yz = X.distance(fiber_triangle[1], fiber_triangle[2]);
    const double d_xz = X.distance(fiber_triangle[0], fiber_triangle[2]);
    const double diam = std::max({d_xy, d_yz, d_xz});
    const double C = lift_diameter_bound(cone, t0, epsilon);
    if (diam > C)
        throw DomainError("fiber triangle diameter " + num(diam) + " exceeds lift bound " + num(C));
    const WarpSpec& w = cone.warp();
    const double f_lo = max_on_window(w, t0 - epsilon, t0);
    const double f_hi = max_on_window(w, t0, t0 + epsilon);
    const double f_all = std::max(f_lo, f_hi);
    const auto radicand = [](double f, double d, double dt) { return -1.0 + f * f * d * d / (dt * dt); };
    const double worst = std::max({radicand(f_lo, d_xy, epsilon), radicand(f_hi, d_yz, epsilon),
                                   radicand(f_all, d_xz, 2.0 * epsilon)});
    if (worst > -0.5)
        throw DomainError("lifted side radicand " + num(worst) + " exceeds -1/2");
    const ConePoint x{t0 - epsilon, fiber_triangle[0]};
    const ConePoint y{t0, fiber_triangle[1]};
    const ConePoint z{t0 + epsilon, fiber_triangle[2]};
    return make_timelike_triangle(cone, x, y, z, side_samples);
}

std::string to_string(BoundDirection d) { return d == BoundDirection::below ? "below" : "above"; }

BoundDirection bound_direction_from_string(const std::string& s) {
    if (s == "below") return BoundDirection::below;
    if (s == "above") return BoundDirection::above;
    throw ConfigError("dir", "expected 'below' or 'above', got '" + s + "'");
}

std::string to_string(PairStatus s) {
    switch (s) {
        case PairStatus::compared: return "compared";
        case PairStatus::unrelated: return "unrelated";
        case PairStatus::informational: return "informational";
    }
    return "unknown";
}

std::vector<PairRecord> compare_corresponding_points(const GeneralizedCone& cone,
                                                     const TimelikeTriangle& T,
                                                     const LorentzModel& model,
                                                     std::size_t pair_samples) {
    const ModelTriangle M = realize_timelike_triangle(model, T.a, T.b, T.c);
    const MaximizingSegment xy(cone, T.x, T.y);
    const MaximizingSegment yz(cone, T.y, T.z);
    const std::size_t k = grid_size(pair_samples);

    std::vector<ConePoint> ps(k), qs(k);
    std::vector<ModelPoint> ps_m(k), qs_m(k);
    std::vector<double> sp(k), sq(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(k - 1);
        sp[i] = u * T.a;
        sq[i] = u * T.b;
        ps[i] = point_at_proper_time(xy, sp[i]);
        qs[i] = point_at_proper_time(yz, sq[i]);
        ps_m[i] = corresponding_point(model, M, TriangleSide::xy, sp[i]);
        qs_m[i] = corresponding_point(model, M, TriangleSide::yz, sq[i]);
    }

    std::vector<PairRecord> out;
    out.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            // p = q = y carries no information.
            if (i + 1 == k && j == 0) continue;
            PairRecord r;
            r.p = ps[i];
            r.q = qs[j];
            r.s_p = sp[i];
            r.s_q = sq[j];
            const Relation rel_c = relate(cone, r.p, r.q).relation;
            const Relation rel_m = model.relation(ps_m[i], qs_m[j]);
            r.tau_cone = time_separation(cone, r.p, r.q);
            r.tau_model = model.tau(ps_m[i], qs_m[j]);
            r.gap = r.tau_cone - r.tau_model;
            const bool tc = rel_c == Relation::chronological;
            const bool tm = rel_m == Relation::chronological;
            if (tc && tm) r.status = PairStatus::compared;
            else if (rel_c == Relation::not_related && rel_m == Relation::not_related)
                r.status = PairStatus::unrelated;
            else r.status = PairStatus::informational;
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<PairRecord> compare_corresponding_points(const GeneralizedCone& cone,
                                                     const TimelikeTriangle& T, double K,
                                                     std::size_t pair_samples) {
    return compare_corresponding_points(cone, T, LorentzModel(K), pair_samples);
}

namespace {

struct TriangleDraw {
    double t0 = 0.0;
    double epsilon = 0.0;
    std::array<FiberPoint, 3> fiber;
};

std::pair<double, double> default_window(const Interval& I) {
    const bool fa = I.a > -kInf;
    const bool fb = I.b < kInf;
    if (fa && fb) return {I.a + 0.3 * I.length(), I.b - 0.3 * I.length()};
    if (fa) return {I.a + 1.0, I.a + 2.0};
    if (fb) return {I.b - 2.0, I.b - 1.0};
    return {-0.5, 0.5};
}

TriangleDraw draw_triangle(const GeneralizedCone& cone, const SamplingOptions& s, Rng& rng) {
    const Interval& I = cone.warp().interval();
    const auto [lo, hi] = s.t_window ? *s.t_window : default_window(I);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TriangleDraw d;
    d.t0 = lo + (hi - lo) * unit(rng);
    if (s.epsilon) {
        d.epsilon = *s.epsilon;
    } else {
        const double room = std::min(d.t0 - I.a, I.b - d.t0);
        d.epsilon = std::min(0.25, 0.45 * room);
    }
    const double C = lift_diameter_bound(cone, d.t0, d.epsilon);
    const double radius = 0.5 * s.diameter_fraction * C;
    const FiberSpace& X = cone.fiber();
    const FiberPoint centre = s.base_point ? X.canonical(*s.base_point)
                                           : X.sample_point(s.fiber_scale, rng);
    for (auto& v : d.fiber) v = X.sample_near(centre, radius, rng);
    return d;
}

struct TriangleOutcome {
    bool rejected = true;
    std::array<ConePoint, 3> vertices;
    double c = 0.0;
    std::vector<PairRecord> pairs;
};

// Fiber-side comparison for one lifted triangle: corresponding fiber points
// are the fiber projections of the cone's corresponding points.
std::vector<PairRecord> compare_fiber_points(const GeneralizedCone& cone,
                                             const TimelikeTriangle& T, double K,
                                             std::size_t pair_samples) {
    const FiberSpace& X = cone.fiber();
    const double d_xy = X.distance(T.x.x, T.y.x);
    const double d_yz = X.distance(T.y.x, T.z.x);
    const double d_xz = X.distance(T.x.x, T.z.x);
    const MetricTriangle M = realize_metric_triangle(K, d_xy, d_xz, d_yz);
    const MaximizingSegment xy(cone, T.x, T.y);
    const MaximizingSegment yz(cone, T.y, T.z);
    const std::size_t k = grid_size(pair_samples);
    std::vector<PairRecord> out;
    for (std::size_t i = 0; i < k; ++i) {
        const double sp = T.a * static_cast<double>(i) / static_cast<double>(k - 1);
        const ConePoint p = point_at_proper_time(xy, sp);
        const double up = d_xy > 0.0 ? std::clamp(X.distance(T.x.x, p.x) / d_xy, 0.0, 1.0) : 0.0;
        const FiberPoint pm = M.space->geodesic_point(M.vertices[0], M.vertices[1], up);
        for (std::size_t j = 0; j < k; ++j) {
            if (i + 1 == k && j == 0) continue;
            const double sq = T.b * static_cast<double>(j) / static_cast<double>(k - 1);
            const ConePoint q = point_at_proper_time(yz, sq);
            const double uq =
                d_yz > 0.0 ? std::clamp(X.distance(T.y.x, q.x) / d_yz, 0.0, 1.0) : 0.0;
            const FiberPoint qm = M.space->geodesic_point(M.vertices[1], M.vertices[2], uq);
            PairRecord r;
            r.p = p;
            r.q = q;
            r.s_p = sp;
            r.s_q = sq;
            r.tau_cone = X.distance(p.x, q.x);
            r.tau_model = M.space->distance(pm, qm);
            r.gap = r.tau_cone - r.tau_model;
            r.status = PairStatus::compared;
            out.push_back(std::move(r));
        }
    }
    return out;
}

template <typename Compare>
CurvatureReport run_sampling(const GeneralizedCone& cone, double K, BoundDirection direction,
                             const SamplingOptions& s, bool fiber_side, Compare compare) {
    if (!cone.fiber().is_geodesic()) throw DomainError("curvature sampling needs a geodesic fiber");
    std::vector<TriangleOutcome> outcomes(s.n_triangles);
    std::atomic<std::size_t> next{0};
    constexpr int kAttempts = 20;
    const auto work = [&]() {
        for (std::size_t i = next++; i < s.n_triangles; i = next++) {
            TriangleOutcome& o = outcomes[i];
            Rng rng(splitmix(s.seed ^ splitmix(i + 1)));
            for (int attempt = 0; attempt < kAttempts && o.rejected; ++attempt) {
                try {
                    const TriangleDraw d = draw_triangle(cone, s, rng);
                    const TimelikeTriangle T =
                        lift_fiber_triangle(cone, d.fiber, d.t0, d.epsilon, 0);
                    o.pairs = compare(T);
                    o.vertices = {T.x, T.y, T.z};
                    o.c = T.c;
                    o.rejected = false;
                } catch (const DomainError&) {
                    o.pairs.clear();
                }
            }
        }
    };
    const std::size_t n_workers = std::min(worker_count(s.threads), std::max<std::size_t>(1, s.n_triangles));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    CurvatureReport rep;
    rep.direction = direction;
    rep.K = K;
    rep.fiber_side = fiber_side;
    rep.tolerance = s.tolerance;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const TriangleOutcome& o = outcomes[i];
        if (o.rejected) {
            ++rep.triangles_rejected;
            continue;
        }
        ++rep.triangles_tested;
        const double scale = std::max(1.0, o.c);
        for (const PairRecord& r : o.pairs) {
            rep.rows.push_back({i, r});
            if (r.status != PairStatus::compared) {
                if (r.status == PairStatus::informational) ++rep.pairs_informational;
                continue;
            }
            ++rep.pairs_tested;
            // Cone side: below means tau_cone <= tau_model. Fiber side: below
            // means d_X >= d_M.
            const bool gap_positive_violates = (direction == BoundDirection::below) != fiber_side;
            const double measure = (gap_positive_violates ? r.gap : -r.gap) / scale;
            if (measure > rep.worst_gap) {
                rep.worst_gap = measure;
                rep.worst_witness = Witness{i, o.vertices, r};
            }
        }
    }
    if (rep.triangles_tested == 0 || rep.triangles_rejected * 2 > s.n_triangles) {
        throw DomainError("triangle sampling exhausted: " + std::to_string(rep.triangles_rejected) +
                          " of " + std::to_string(s.n_triangles) +
                          " triangles failed the lift or size-bound preconditions");
    }
    rep.violated = rep.worst_gap > rep.tolerance;
    return rep;
}

}  // namespace

CurvatureReport certify_bound(const GeneralizedCone& cone, double K, BoundDirection direction,
                              const SamplingOptions& sampling) {
    const LorentzModel model(K);
    return run_sampling(cone, K, direction, sampling, false, [&](const TimelikeTriangle& T) {
        if (!size_bounds_check(K, T.a, T.b, T.c))
            throw DomainError("size bounds fail for the lifted triangle");
        return compare_corresponding_points(cone, T, model, sampling.pair_samples);
    });
}

CurvatureReport fiber_bound_from_cone(const GeneralizedCone& cone, double K, double cone_K,
                                      BoundDirection direction, const SamplingOptions& sampling) {
    CurvatureReport rep =
        run_sampling(cone, K, direction, sampling, true, [&](const TimelikeTriangle& T) {
            return compare_fiber_points(cone, T, K, sampling.pair_samples);
        });
    rep.cone_K = cone_K;
    return rep;
}

void write_report_csv(std::ostream& os, const FiberSpace& fiber, const CurvatureReport& report) {
    std::ostringstream line;
    line.precision(9);
    os << "triangle,p_t,p_fiber,q_t,q_fiber,s_p,s_q,tau_cone,tau_model,gap,status\n";
    for (const ReportRow& row : report.rows) {
        const PairRecord& r = row.pair;
        line.str("");
        line << row.triangle << ',' << r.p.t << ",\"" << fiber.encode(r.p.x) << "\"," << r.q.t
             << ",\"" << fiber.encode(r.q.x) << "\"," << r.s_p << ',' << r.s_q << ','
             << r.tau_cone << ',' << r.tau_model << ',' << r.gap << ',' << to_string(r.status)
             << '\n';
        os << line.str();
    }
}

void write_report_summary(std::ostream& os, const FiberSpace& fiber,
                          const CurvatureReport& report) {
    std::ostringstream out;
    out.precision(9);
    out << (report.fiber_side ? "fiber curvature bound " : "timelike curvature bound ")
        << to_string(report.direction) << " by K = " << report.K << '\n';
    if (report.cone_K) out << "cone bound: " << *report.cone_K << '\n';
    out << "triangles tested: " << report.triangles_tested << '\n'
        << "triangles rejected: " << report.triangles_rejected << '\n'
        << "pairs tested: " << report.pairs_tested << '\n'
        << "pairs informational: " << report.pairs_informational << '\n'
        << "worst gap: " << report.worst_gap << '\n'
        << "tolerance: " << report.tolerance << '\n'
        << "verdict: " << report.verdict() << '\n';
    if (report.worst_witness) {
        const Witness& w = *report.worst_witness;
        out << "witness triangle " << w.triangle << ":";
        for (const ConePoint& v : w.vertices) out << " (" << v.t << "; " << fiber.encode(v.x) << ")";
        out << '\n'
            << "witness pair: p = (" << w.pair.p.t << "; " << fiber.encode(w.pair.p.x)
            << "), q = (" << w.pair.q.t << "; " << fiber.encode(w.pair.q.x) << ")\n"
            << "witness values: " << (report.fiber_side ? "d_fiber = " : "tau_cone = ")
            << w.pair.tau_cone << ", " << (report.fiber_side ? "d_model = " : "tau_model = ")
            << w.pair.tau_model << '\n';
    }
    os << out.str();
}

double two_model_margin(double K, double K_prime, const ModelTriangle& T, std::size_t samples) {
    const LorentzModel lower(K);
    const LorentzModel upper(K_prime);
    const ModelTriangle U = realize_timelike_triangle(upper, T.a, T.b, T.c);
    double margin = kInf;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double s = T.b * static_cast<double>(i) / static_cast<double>(samples + 1);
        const ModelPoint q = corresponding_point(lower, T, TriangleSide::yz, s);
        const ModelPoint q_up = corresponding_point(upper, U, TriangleSide::yz, s);
        margin = std::min(margin, upper.tau(U.x, q_up) - lower.tau(T.x, q));
    }
    return margin;
}

}  // namespace lorcone
