#pragma once

#include "lorcone/fiber.hpp"
#include "lorcone/warp.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lorcone {

struct ConeOptions {
    /// Null boundary band: |q0 - h_{p0}(d)| <= null_tolerance * max(1, |q0|).
    double null_tolerance = 1e-9;
    /// Segment classification band on 1 - (d_i / F_i)^2, where F_i is the
    /// null reach (integral of 1/f) of the segment's time range.
    double segment_tolerance = 1e-6;
};

/// A point (t, x) of I x_f X.
struct ConePoint {
    double t = 0.0;
    FiberPoint x;
};

/// The generalized cone Y = I x_f X with product distance |t - t'| + d(x, x').
class GeneralizedCone {
public:
    GeneralizedCone(WarpSpec warp, FiberPtr fiber, ConeOptions options = {});

    const WarpSpec& warp() const { return warp_; }
    const FiberSpace& fiber() const { return *fiber_; }
    const FiberPtr& fiber_ptr() const { return fiber_; }
    const ConeOptions& options() const { return options_; }

    /// Validated point; DomainError when t is outside I or x is malformed.
    ConePoint point(double t, FiberPoint x) const;
    double product_distance(const ConePoint& p, const ConePoint& q) const;

private:
    WarpSpec warp_;
    FiberPtr fiber_;
    ConeOptions options_;
};

enum class Relation { equal, chronological, causal_null_boundary, not_related };

std::string to_string(Relation r);

struct RelationVerdict {
    Relation relation = Relation::not_related;
    /// True when the pair was swapped so that p0 <= q0 (q lies in the past of p).
    bool reversed = false;
    double fiber_distance = 0.0;
    /// F_{p0}(q0): fiber distance a null curve covers between the two times.
    double null_reach = 0.0;
    /// Only filled when requested: b_{p0} and h_{p0}(d) (nullopt if d >= b_{p0}).
    std::optional<double> forward_horizon;
    std::optional<double> h_of_distance;

    bool causal() const { return relation != Relation::not_related; }
};

/// Causal relation between p and q (after orientation normalization).
/// Throws IndeterminateError for a null-boundary pair on a fiber without
/// geodesics.
RelationVerdict relate(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q,
                       bool with_witness = false);

/// Solution of the one-dimensional maximization between base times t0 <= t1
/// at fiber distance d. kappa is the conserved momentum f^2 * dx/dtau
/// (+inf on the null boundary).
struct SeparationProfile {
    Relation relation = Relation::not_related;
    double t0 = 0.0;
    double t1 = 0.0;
    double distance = 0.0;
    double kappa = 0.0;
    double tau = 0.0;
    double null_reach = 0.0;
};

/// Fiber-independent core of the time separation: tau depends on the
/// fiber only through d. Throws ConvergenceError if the momentum root
/// solve fails.
SeparationProfile solve_separation(const WarpSpec& warp, double t0, double t1, double d,
                                   const ConeOptions& options = {});

/// tau(p, q); 0 unless p <= q. DomainError for non-geodesic fibers.
double time_separation(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q);

/// Maximizing curve between two related base events, parametrized by base
/// time: t -> (t, beta(t)) with beta running along a minimizing fiber
/// geodesic. Proper time and fiber progress are available at any t.
class MaximizingSegment {
public:
    MaximizingSegment(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q);

    const SeparationProfile& profile() const { return profile_; }
    const ConePoint& start() const { return p_; }
    const ConePoint& end() const { return q_; }
    double tau() const { return profile_.tau; }
    bool is_null() const { return profile_.relation == Relation::causal_null_boundary; }

    /// Fiber speed d beta / dt at base time t.
    double fiber_speed(double t) const;
    /// Fiber distance covered from p by base time t.
    double fiber_progress(double t) const;
    /// tau(p, point_at(t)), the proper time elapsed along the segment.
    double proper_time_at(double t) const;
    /// Inverse of proper_time_at; s in [0, tau].
    double time_at_proper_time(double s) const;
    ConePoint point_at(double t) const;

private:
    GeneralizedCone cone_;
    double progress_total_ = 0.0;
    ConePoint p_;
    ConePoint q_;
    SeparationProfile profile_;
};

/// Sampled causal curve, future directed and parametrized by base time.
/// `parameters` optionally records the curve's own parameter values for
/// energy evaluation (defaults to sample indices).
struct PathSample {
    double t = 0.0;
    FiberPoint x;
};

class CausalPath {
public:
    CausalPath() = default;
    /// Accepts samples with strictly monotone t; decreasing input is
    /// reversed to the future-directed orientation (parameters follow).
    /// DomainError when t is not strictly monotone.
    CausalPath(std::vector<PathSample> samples, std::vector<double> parameters = {});

    const std::vector<PathSample>& samples() const { return samples_; }
    const std::vector<double>& parameters() const { return parameters_; }
    std::size_t size() const { return samples_.size(); }
    CausalPath with_parameters(std::vector<double> parameters) const;

private:
    std::vector<PathSample> samples_;
    std::vector<double> parameters_;
};

/// Per-segment data of a sampled path.
struct SegmentData {
    double dt = 0.0;
    double d = 0.0;
    double f_mid = 0.0;
    double min_f = 0.0;
    double null_reach = 0.0;
    /// 1 - (d / null_reach)^2: > 0 timelike, ~0 null, < 0 not causal.
    double normalized_radicand = 0.0;
};

std::vector<SegmentData> segment_data(const GeneralizedCone& cone, const CausalPath& path);

CausalPath maximizing_geodesic(const GeneralizedCone& cone, const ConePoint& p,
                               const ConePoint& q, std::size_t n_samples = 257);

/// Midpoint-rule length; DomainError if a segment violates min f * d <= dt.
double path_length(const GeneralizedCone& cone, const CausalPath& path);

struct VariationalLength {
    double value = 0.0;
    std::vector<double> sequence;  // depth 0 .. refinement_depth
};

VariationalLength variational_length(const GeneralizedCone& cone, const CausalPath& path,
                                     std::size_t refinement_depth);

/// sqrt(max(0, (q0 - p0)^2 - m^2 d^2)) for p0 <= q0, else 0.
double segment_tau_bound(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q);

enum class PathClass { timelike, null, causal_mixed, not_causal };
std::string to_string(PathClass c);
PathClass classify_path(const GeneralizedCone& cone, const CausalPath& path);

/// 1/2 sum (dt^2 - f^2 d^2) / ds over the path's parameter grid.
double energy(const GeneralizedCone& cone, const CausalPath& path);

struct DiamondSlice {
    double t = 0.0;
    double radius_from_p = 0.0;  // (t - p0) / m_{p0, t}
    double radius_to_q = 0.0;    // (q0 - t) / m_{t, q0}
};

struct DiamondBox {
    bool empty = true;
    double t_min = 0.0;
    double t_max = 0.0;
    std::vector<DiamondSlice> slices;
};

DiamondBox causal_diamond_box(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q,
                              std::size_t n_slices = 33);
/// Whether y satisfies both fiber-ball bounds of J(p, q) at its own time.
bool in_diamond_box(const GeneralizedCone& cone, const ConePoint& p, const ConePoint& q,
                    const ConePoint& y, double tol = 1e-9);

/// CSV: header `t,fiber`, rows `t,<fiber encoding>`.
void write_path_csv(std::ostream& os, const FiberSpace& fiber, const CausalPath& path);
CausalPath read_path_csv(std::istream& is, const FiberSpace& fiber);

}  // namespace lorcone
