#pragma once

#include "lorcone/cone.hpp"
#include "lorcone/lorentz_model.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lorcone {

/// x << y << z in a cone with maximizing sides.
struct TimelikeTriangle {
    ConePoint x;
    ConePoint y;
    ConePoint z;
    double a = 0.0;  // tau(x, y)
    double b = 0.0;  // tau(y, z)
    double c = 0.0;  // tau(x, z)
    CausalPath side_xy;
    CausalPath side_yz;
    CausalPath side_xz;
};

/// Builds the triangle directly from three vertices (x << y << z required).
TimelikeTriangle make_timelike_triangle(const GeneralizedCone& cone, const ConePoint& x,
                                        const ConePoint& y, const ConePoint& z,
                                        std::size_t side_samples = 33);

/// ε / (2 sqrt 2 f(t0)): largest fiber diameter the lift accepts.
double lift_diameter_bound(const GeneralizedCone& cone, double t0, double epsilon);

/// Lifts a small fiber triangle to x = (t0 - ε, x̄), y = (t0, ȳ),
/// z = (t0 + ε, z̄). DomainError when the fiber is not geodesic, the time
/// window leaves I, the diameter exceeds lift_diameter_bound, or the
/// normalized radicand -1 + f_max^2 d^2 / Δt^2 of a side exceeds -1/2.
TimelikeTriangle lift_fiber_triangle(const GeneralizedCone& cone,
                                     const std::array<FiberPoint, 3>& fiber_triangle, double t0,
                                     double epsilon, std::size_t side_samples = 33);

enum class BoundDirection { below, above };
std::string to_string(BoundDirection d);
BoundDirection bound_direction_from_string(const std::string& s);

enum class PairStatus {
    compared,       // both pairs chronological
    unrelated,      // neither pair chronological; not counted
    informational,  // relations disagree or a pair sits on the null boundary
};
std::string to_string(PairStatus s);

struct PairRecord {
    ConePoint p;  // on side xy (p = x allowed)
    ConePoint q;  // on side yz
    double s_p = 0.0;  // tau(x, p)
    double s_q = 0.0;  // tau(y, q)
    double tau_cone = 0.0;
    double tau_model = 0.0;
    double gap = 0.0;  // tau_cone - tau_model
    PairStatus status = PairStatus::compared;
};

/// Corresponding pairs p on xy, q on yz over a grid of proper-time
/// fractions (k x k with k = max(2, round(sqrt(pair_samples)))).
std::vector<PairRecord> compare_corresponding_points(const GeneralizedCone& cone,
                                                     const TimelikeTriangle& T, double K,
                                                     std::size_t pair_samples = 16);
std::vector<PairRecord> compare_corresponding_points(const GeneralizedCone& cone,
                                                     const TimelikeTriangle& T,
                                                     const LorentzModel& model,
                                                     std::size_t pair_samples = 16);

struct SamplingOptions {
    std::size_t n_triangles = 200;
    /// Range of the middle vertex time t0; derived from I when unset.
    std::optional<std::pair<double, double>> t_window;
    /// Lift half-height ε; derived from t0 and I when unset.
    std::optional<double> epsilon;
    /// Spread of fiber triangle centres (passed to sample_point).
    double fiber_scale = 1.0;
    /// Fixed centre for every fiber triangle (e.g. a graph branch vertex).
    std::optional<FiberPoint> base_point;
    /// Fiber triangle diameter as a fraction of the lift bound.
    double diameter_fraction = 0.1;
    std::size_t pair_samples = 16;
    /// Violation threshold, multiplied by max(1, c) per triangle.
    double tolerance = 1e-5;
    std::uint64_t seed = 1;
    /// 0 = use hardware concurrency, capped by LORCONE_THREADS.
    std::size_t threads = 0;
};

struct Witness {
    std::size_t triangle = 0;
    std::array<ConePoint, 3> vertices;
    PairRecord pair;
};

struct ReportRow {
    std::size_t triangle = 0;
    PairRecord pair;
};

struct CurvatureReport {
    BoundDirection direction = BoundDirection::below;
    double K = 0.0;
    /// Fiber-side reports only: the cone bound the check is paired with.
    std::optional<double> cone_K;
    bool fiber_side = false;
    std::size_t triangles_tested = 0;
    std::size_t triangles_rejected = 0;  // failed lift or size bounds
    std::size_t pairs_tested = 0;
    std::size_t pairs_informational = 0;
    /// Signed: positive means the bound is violated by that much.
    double worst_gap = -kInf;
    double tolerance = 1e-5;
    std::optional<Witness> worst_witness;
    bool violated = false;
    std::vector<ReportRow> rows;

    std::string verdict() const { return violated ? "violated" : "consistent"; }
};

/// Empirical check of a timelike curvature bound K by sampled lifted
/// triangles. Deterministic for a fixed seed regardless of thread count.
CurvatureReport certify_bound(const GeneralizedCone& cone, double K, BoundDirection direction,
                              const SamplingOptions& sampling = {});

/// Converse check on the fiber: lifted triangles' fiber projections are
/// compared with their comparison triangles in M^2(K) via corresponding
/// fiber points (below: d_X >= d_M, above: d_X <= d_M).
CurvatureReport fiber_bound_from_cone(const GeneralizedCone& cone, double K, double cone_K,
                                      BoundDirection direction,
                                      const SamplingOptions& sampling = {});

/// CSV columns: triangle,p_t,p_fiber,q_t,q_fiber,s_p,s_q,tau_cone,tau_model,gap,status
/// (fiber-side reports carry distances in the tau columns).
void write_report_csv(std::ostream& os, const FiberSpace& fiber, const CurvatureReport& report);
void write_report_summary(std::ostream& os, const FiberSpace& fiber,
                          const CurvatureReport& report);

/// Two-model comparison on one triangle of L^2(K): the comparison triangle
/// in L^2(K'), K' > K, should satisfy tau'(x', q') > tau(x, q) for q strictly
/// inside side yz. Returns the smallest margin tau' - tau over `samples`
/// interior points.
double two_model_margin(double K, double K_prime, const ModelTriangle& T, std::size_t samples);

/// Thread count honouring LORCONE_THREADS.
std::size_t worker_count(std::size_t requested);

}  // namespace lorcone
