#include "acceptance.hpp"

#include "oracles.hpp"

#include "lorcone/comparison.hpp"
#include "lorcone/cone.hpp"
#include "lorcone/errors.hpp"
#include "lorcone/llstructure.hpp"
#include "lorcone/lorentz_model.hpp"
#include "lorcone/warp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace lorcone::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

struct Outcome {
    bool passed = false;
    std::string detail;
};

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Outcome flat_recovery() {
    Rng rng(101);
    double worst = 0.0;
    std::size_t pairs = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const GeneralizedCone cone(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(n));
        const std::size_t quota = n == 3 ? 334 : 333;
        for (std::size_t k = 0; k < quota; ++k) {
            const FiberPoint a = cone.fiber().sample_point(2.0, rng);
            const FiberPoint b = cone.fiber().sample_point(2.0, rng);
            const double d = cone.fiber().distance(a, b);
            const double t0 = uniform(rng, -2.0, 2.0);
            const double dt = std::max(d / uniform(rng, 0.05, 0.95), uniform(rng, 0.05, 0.2));
            const double exact = std::sqrt(dt * dt - d * d);
            const double tau = time_separation(cone, {t0, a}, {t0 + dt, b});
            worst = std::max(worst, std::abs(tau - exact) / exact);
            ++pairs;
        }
    }
    return {worst <= 1e-6, std::to_string(pairs) + " pairs, max rel err " + fmt(worst)};
}

Outcome minkowski_closed_form() {
    Rng rng(202);
    double worst = 0.0;
    std::size_t pairs = 0;
    const FiberPtr fibers[] = {std::make_shared<RealLine>(), std::make_shared<Hyperbolic2>(1.0)};
    for (const FiberPtr& X : fibers) {
        const GeneralizedCone cone(WarpSpec::identity(), X);
        for (int k = 0; k < 250; ++k) {
            const FiberPoint a = X->sample_point(1.5, rng);
            const FiberPoint b = X->sample_point(1.5, rng);
            const double d = X->distance(a, b);
            const double s = uniform(rng, 0.2, 3.0);
            const double t = s * std::exp(d / uniform(rng, 0.05, 0.95)) + uniform(rng, 0.01, 0.1);
            const double exact = oracle::minkowski_cone_tau(s, t, d);
            const double tau = time_separation(cone, {s, a}, {t, b});
            worst = std::max(worst, std::abs(tau - exact) / exact);
            ++pairs;
        }
    }
    return {worst <= 1e-6, std::to_string(pairs) + " pairs, max rel err " + fmt(worst)};
}

Outcome dp_agreement() {
    struct Case {
        const char* name;
        WarpSpec warp;
        double lo, hi;     // range of the first time
        double dmin, dmax;  // range of the time difference
    };
    const Case cases[] = {
        {"sin", WarpSpec::elementary(WarpKind::sin, {0.0, kPi}), 0.3, 1.2, 0.5, 1.6},
        {"cosh", WarpSpec::elementary(WarpKind::cosh, {-kInf, kInf}), -1.0, 0.5, 0.5, 1.5},
        {"exp", WarpSpec::elementary(WarpKind::exp, {-kInf, kInf}), -1.0, 0.5, 0.5, 1.5},
    };
    Rng rng(303);
    double worst = 0.0;
    std::string worst_case;
    for (const Case& c : cases) {
        for (int k = 0; k < 25; ++k) {
            const double t0 = uniform(rng, c.lo, c.hi);
            const double t1 = t0 + uniform(rng, c.dmin, c.dmax);
            const double d = uniform(rng, 0.0, 0.7) * c.warp.inverse_integral(t0, t1);
            const double tau = solve_separation(c.warp, t0, t1, d).tau;
            const double dp = oracle::dp_time_separation(c.warp, t0, t1, d);
            if (std::abs(tau - dp) > worst) {
                worst = std::abs(tau - dp);
                worst_case = c.name;
            }
        }
    }
    return {worst <= 2e-3, "75 pairs, max |solver - dp| " + fmt(worst) + " (" + worst_case + ")"};
}

Outcome conservation_law() {
    struct Case {
        WarpSpec warp;
        double lo, hi;
    };
    const Case cases[] = {
        {WarpSpec::elementary(WarpKind::cosh, {-kInf, kInf}), -1.0, 1.0},
        {WarpSpec::elementary(WarpKind::sin, {0.0, kPi}), 0.4, 2.7},
        {WarpSpec::elementary(WarpKind::exp, {-kInf, kInf}), -1.0, 1.0},
        {WarpSpec::identity(), 0.5, 2.5},
    };
    Rng rng(404);
    double worst = 0.0;
    std::size_t paths = 0;
    for (const Case& c : cases) {
        const GeneralizedCone cone(c.warp, std::make_shared<RealLine>());
        for (int k = 0; k < 10; ++k) {
            double t0 = uniform(rng, c.lo, c.hi);
            double t1 = uniform(rng, c.lo, c.hi);
            if (t1 < t0) std::swap(t0, t1);
            if (t1 - t0 < 0.3) t1 = std::min(c.hi, t0 + 0.3);
            const double d = uniform(rng, 0.1, 0.9) * c.warp.inverse_integral(t0, t1);
            const CausalPath path = maximizing_geodesic(cone, {t0, {0.0}}, {t1, {d}}, 257);
            const auto segs = segment_data(cone, path);
            double lo = kInf, hi = -kInf, sum = 0.0;
            for (const SegmentData& s : segs) {
                const double ell = std::sqrt(s.dt * s.dt - s.f_mid * s.f_mid * s.d * s.d);
                const double q = s.f_mid * s.f_mid * s.d / ell;
                lo = std::min(lo, q);
                hi = std::max(hi, q);
                sum += q;
            }
            const double mean = sum / static_cast<double>(segs.size());
            worst = std::max(worst, (hi - lo) / mean);
            ++paths;
        }
    }
    return {worst <= 1e-4, std::to_string(paths) + " maximizers, max rel variation " + fmt(worst)};
}

Outcome variational_agreement() {
    struct Case {
        WarpSpec warp;
        FiberPtr fiber;
        double lo, hi;
    };
    const Case cases[] = {
        {WarpSpec::elementary(WarpKind::sin, {0.0, kPi}), std::make_shared<RealLine>(), 0.3, 2.8},
        {WarpSpec::elementary(WarpKind::cosh, {-kInf, kInf}), std::make_shared<EuclideanN>(2), -1.0, 1.0},
        {WarpSpec::identity(), std::make_shared<Hyperbolic2>(1.0), 0.5, 2.0},
        {WarpSpec::elementary(WarpKind::exp, {-kInf, kInf}), std::make_shared<Sphere2>(1.0), -1.0, 0.5},
        {WarpSpec::constant(1.0), std::make_shared<EuclideanN>(3), -1.0, 1.0},
    };
    Rng rng(505);
    double worst_gap = 0.0;
    double worst_rise = 0.0;
    std::size_t paths = 0;
    for (const Case& c : cases) {
        const GeneralizedCone cone(c.warp, c.fiber);
        for (int k = 0; k < 10; ++k) {
            const std::size_t n = 33;
            std::vector<double> times(n);
            const double step = (c.hi - c.lo) / static_cast<double>(n - 1);
            for (std::size_t i = 0; i < n; ++i)
                times[i] = c.lo + step * (static_cast<double>(i) + (i == 0 || i + 1 == n ? 0.0 : uniform(rng, -0.3, 0.3)));
            std::vector<PathSample> samples;
            FiberPoint x = c.fiber->sample_point(0.5, rng);
            for (std::size_t i = 0; i < n; ++i) {
                samples.push_back({times[i], x});
                if (i + 1 < n) {
                    const double fmax = std::max(c.warp(times[i]), c.warp(times[i + 1])) * 1.05;
                    const double radius = uniform(rng, 0.0, 0.8) * (times[i + 1] - times[i]) / fmax;
                    x = c.fiber->sample_near(x, radius, rng);
                }
            }
            const CausalPath path(std::move(samples));
            const double L = path_length(cone, path);
            const VariationalLength var = variational_length(cone, path, 8);
            for (std::size_t i = 1; i < var.sequence.size(); ++i)
                worst_rise = std::max(worst_rise, var.sequence[i] - var.sequence[i - 1]);
            worst_gap = std::max(worst_gap, std::abs(var.value - L));
            ++paths;
        }
    }
    const bool ok = worst_gap <= 1e-3 && worst_rise <= 1e-12;
    return {ok, std::to_string(paths) + " paths, max |L_var - L| " + fmt(worst_gap) +
                    ", max increase along refinement " + fmt(worst_rise)};
}

SamplingOptions sampling(std::size_t n, std::uint64_t seed) {
    SamplingOptions s;
    s.n_triangles = n;
    s.seed = seed;
    return s;
}

Outcome curvature_table() {
    struct Row {
        const char* label;
        GeneralizedCone cone;
        double K;
        BoundDirection dir;
    };
    const Row rows[] = {
        {"(0,inf) id H2 below 0", GeneralizedCone(WarpSpec::identity(), std::make_shared<Hyperbolic2>(1.0)), 0.0,
         BoundDirection::below},
        {"R 1 E2 below 0", GeneralizedCone(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2)), 0.0,
         BoundDirection::below},
        {"R 1 E2 above 0", GeneralizedCone(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2)), 0.0,
         BoundDirection::above},
        {"R cosh S2 below 1",
         GeneralizedCone(WarpSpec::elementary(WarpKind::cosh, {-kInf, kInf}), std::make_shared<Sphere2>(1.0)), 1.0,
         BoundDirection::below},
    };
    bool ok = true;
    std::string detail;
    std::uint64_t seed = 606;
    for (const Row& r : rows) {
        const CurvatureReport rep = certify_bound(r.cone, r.K, r.dir, sampling(200, seed++));
        ok = ok && !rep.violated && rep.triangles_tested == 200;
        if (!detail.empty()) detail += "; ";
        detail += std::string(r.label) + ": " + rep.verdict() + " (worst " + fmt(rep.worst_gap) + ")";
    }
    return {ok, detail};
}

Outcome both_directions() {
    const GeneralizedCone hyperbolic(WarpSpec::identity(), std::make_shared<Hyperbolic2>(1.0));
    auto tripod_graph = std::make_shared<MetricGraph>(MetricGraph::from_edge_list("c a 1\nc b 1\nc d 1\n"));
    const GeneralizedCone tripod(WarpSpec::identity(), tripod_graph);
    SamplingOptions s = sampling(200, 707);
    const CurvatureReport h = certify_bound(hyperbolic, 0.0, BoundDirection::below, s);
    s.base_point = tripod_graph->vertex_point(tripod_graph->vertex_index("c"));
    // The branch-point defect enters tau quadratically in the fiber size, so
    // the tripod uses half the lift bound instead of the 0.1 default.
    s.diameter_fraction = 0.5;
    const CurvatureReport below = certify_bound(tripod, 0.0, BoundDirection::below, s);
    const CurvatureReport again = certify_bound(tripod, 0.0, BoundDirection::below, s);
    const CurvatureReport above = certify_bound(tripod, 0.0, BoundDirection::above, s);

    bool witness_ok = false;
    double direct_gap = 0.0;
    if (below.worst_witness && again.worst_witness) {
        const Witness& w = *below.worst_witness;
        const Witness& w2 = *again.worst_witness;
        const bool same = w.triangle == w2.triangle && w.pair.p.x == w2.pair.p.x &&
                          w.pair.q.x == w2.pair.q.x && w.pair.gap == w2.pair.gap;
        // Re-derive the witness gap from scratch.
        const auto& v = w.vertices;
        const double a = time_separation(tripod, v[0], v[1]);
        const double b = time_separation(tripod, v[1], v[2]);
        const double c = time_separation(tripod, v[0], v[2]);
        const ModelTriangle M = realize_timelike_triangle(0.0, a, b, c);
        const ModelPoint pm = corresponding_point(M, TriangleSide::xy, w.pair.s_p);
        const ModelPoint qm = corresponding_point(M, TriangleSide::yz, w.pair.s_q);
        direct_gap = time_separation(tripod, w.pair.p, w.pair.q) - model_tau(0.0, pm, qm);
        witness_ok = same && direct_gap > below.tolerance;
    }
    const bool ok = !h.violated && below.violated && witness_ok && !above.violated;
    return {ok, "H2 below 0: " + h.verdict() + "; tripod below 0: " + below.verdict() + " (witness gap " +
                    fmt(direct_gap) + (witness_ok ? ", reproduced" : ", NOT reproduced") +
                    "); tripod above 0: " + above.verdict()};
}

Outcome de_sitter_self() {
    const GeneralizedCone ds(WarpSpec::elementary(WarpKind::cosh, {-kInf, kInf}), std::make_shared<RealLine>());
    const CurvatureReport rep = certify_bound(ds, 1.0, BoundDirection::below, sampling(100, 808));
    double worst = 0.0;
    for (const ReportRow& r : rep.rows)
        if (r.pair.status == PairStatus::compared) worst = std::max(worst, std::abs(r.pair.gap));
    return {worst <= 1e-5 && rep.triangles_tested == 100,
            std::to_string(rep.pairs_tested) + " pairs, max |gap| " + fmt(worst)};
}

Outcome singularity_suite() {
    const WarpSpec sin_warp = WarpSpec::elementary(WarpKind::sin, {0.0, kPi});
    const SingularityReport rs = singularity_report(sin_warp, -1.0);
    const GeneralizedCone cone(sin_warp, std::make_shared<RealLine>());
    Rng rng(909);
    double max_tau = 0.0;
    for (int k = 0; k < 200; ++k) {
        double a = uniform(rng, 1e-3, kPi - 1e-3);
        double b = uniform(rng, 1e-3, kPi - 1e-3);
        if (b < a) std::swap(a, b);
        const double d = uniform(rng, 0.0, 1.0) * sin_warp.inverse_integral(a, b);
        max_tau = std::max(max_tau, time_separation(cone, {a, {0.0}}, {b, {d}}));
    }
    const bool sin_ok = std::abs(rs.tau_diameter_bound - kPi) <= 1e-12 && max_tau <= kPi + 1e-6;

    const SingularityReport re = singularity_report(WarpSpec::elementary(WarpKind::exp, {-kInf, kInf}), 0.0);
    const bool exp_ok = !re.lower_bound_K_consistent;

    const SingularityReport rp = singularity_report(WarpSpec::power(2.0 / 3.0), 0.0);
    const bool pow_ok = rp.big_bang && !rp.upper_bound_possible;

    return {sin_ok && exp_ok && pow_ok,
            "sin: diameter bound " + fmt(rs.tau_diameter_bound) + ", max sampled tau " + fmt(max_tau) +
                "; exp K=0 lower bound " + (exp_ok ? "flagged" : "NOT flagged") + "; t^(2/3) big bang " +
                (rp.big_bang ? "detected" : "missed") + ", upper bound " +
                (rp.upper_bound_possible ? "NOT excluded" : "excluded")};
}

Outcome modified_distance_suite() {
    Rng rng(1010);
    double worst = 0.0;
    for (double K : {-1.0, 0.0, 1.0}) {
        const LorentzModel model(K);
        for (int g = 0; g < 20; ++g) {
            const ModelPoint x{K, uniform(rng, -0.6, -0.4), uniform(rng, -0.2, 0.2)};
            // Geodesic from y to z, both in the future of x.
            const ModelPoint y{K, x.t + uniform(rng, 0.2, 0.3), x.x + uniform(rng, -0.1, 0.1)};
            const ModelPoint z{K, y.t + uniform(rng, 0.5, 0.7), y.x + uniform(rng, -0.3, 0.3)};
            const double L = model.tau(y, z);
            const auto g_at = [&](double s) {
                const double tau = model.tau(x, model.along(y, z, s));
                return modified_distance(K, -tau * tau);
            };
            const double h = 1e-3;
            for (int i = 1; i <= 5; ++i) {
                const double s = L * i / 6.0;
                const double second = (g_at(s + h) - 2.0 * g_at(s) + g_at(s - h)) / (h * h);
                // (h o gamma)'' + <g', g'> K (h o gamma) = <g', g'> with <g', g'> = -1.
                worst = std::max(worst, std::abs(second - K * g_at(s) + 1.0));
            }
        }
    }
    std::size_t strict = 0;
    std::size_t points = 0;
    double min_margin = kInf;
    for (auto [K, Kp] : {std::pair{0.0, 1.0}, std::pair{-1.0, 0.0}}) {
        for (int t = 0; t < 10; ++t) {
            const double a = uniform(rng, 0.2, 0.5);
            const double b = uniform(rng, 0.2, 0.5);
            const double c = a + b + uniform(rng, 0.05, 0.4);
            const ModelTriangle T = realize_timelike_triangle(K, a, b, c);
            const double m = two_model_margin(K, Kp, T, 5);
            min_margin = std::min(min_margin, m);
            points += 5;
            if (m > 0.0) strict += 5;
        }
    }
    const bool ok = worst <= 1e-4 && strict == points;
    return {ok, "ODE residual max " + fmt(worst) + " over 60 geodesics; strict two-model inequality on " +
                    std::to_string(strict) + "/" + std::to_string(points) + " points (min margin " +
                    fmt(min_margin) + ")"};
}

Outcome appendix_suite() {
    std::size_t failures = 0;
    std::size_t enum_checked = 0;
    std::size_t enum_mismatch = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const std::size_t n = 2 + k % 15;
        const bool cycles = k % 4 == 3;
        const ll::CurveCatalog c = oracle::random_catalog(n, 1100 + k, cycles);
        if (!ll::check_bare_llspace(c).passed()) ++failures;
        if (!cycles && n <= 12) {
            ++enum_checked;
            const ll::TauTable dp = ll::derived_tau(c);
            const ll::TauTable brute = oracle::enumerate_tau(c);
            for (std::size_t i = 0; i < dp.values.size(); ++i) {
                if (dp.values[i].infinite || std::abs(dp.values[i].value - brute.values[i].value) > 1e-12) {
                    ++enum_mismatch;
                    break;
                }
            }
        }
    }
    return {failures == 0 && enum_mismatch == 0,
            "100 catalogs, " + std::to_string(failures) + " check failures; " + std::to_string(enum_checked) +
                " acyclic catalogs <= 12 nodes vs enumeration, " + std::to_string(enum_mismatch) + " mismatches"};
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "flat recovery", 5.0, flat_recovery},
    {2, "Minkowski cone closed form", 10.0, minkowski_closed_form},
    {3, "DP oracle agreement", 120.0, dp_agreement},
    {4, "conservation law along maximizers", 10.0, conservation_law},
    {5, "length equals variational length", 30.0, variational_agreement},
    {6, "curvature table rows", 180.0, curvature_table},
    {7, "curvature bounds in both directions", 120.0, both_directions},
    {8, "de Sitter self-comparison", 60.0, de_sitter_self},
    {9, "singularity suite", 10.0, singularity_suite},
    {10, "modified distance", 30.0, modified_distance_suite},
    {11, "finite length structures", 10.0, appendix_suite},
};

}  // namespace

std::vector<CriterionResult> run(const std::vector<int>& only,
                                 const std::function<void(const CriterionResult&)>& report) {
    std::vector<CriterionResult> out;
    for (const Criterion& c : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.limit_seconds = c.limit;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run();
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds > r.limit_seconds) {
            r.passed = false;
            r.detail += "; runtime limit exceeded";
        }
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format(const CriterionResult& r) {
    std::ostringstream os;
    os.precision(3);
    os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.seconds << " s / "
       << r.limit_seconds << " s): " << r.detail;
    return os.str();
}

}  // namespace lorcone::acceptance
