#pragma once

#include "lorcone/cone.hpp"

#include <string>

namespace lorcone {

/// Warping function of the canonical chart of L^2(K):
/// K = 0: f = 1 on R; K > 0: cosh(sqrt(K) t) / sqrt(K) on R;
/// K < 0: cos(sqrt(-K) t) / sqrt(-K) on (-pi/(2 sqrt(-K)), pi/(2 sqrt(-K))).
WarpSpec model_chart_warp(double K);

/// Chart coordinates (t, x) in L^2(K).
struct ModelPoint {
    double K = 0.0;
    double t = 0.0;
    double x = 0.0;
};

/// L^2(K) through its warped chart, with the chart cone built once.
class LorentzModel {
public:
    explicit LorentzModel(double K);

    double curvature() const { return K_; }
    const GeneralizedCone& chart() const { return cone_; }
    ModelPoint point(double t, double x) const;
    ConePoint to_cone(const ModelPoint& p) const;

    /// 0 unless p <= q.
    double tau(const ModelPoint& p, const ModelPoint& q) const;
    Relation relation(const ModelPoint& p, const ModelPoint& q) const;

    /// Point on the maximizer from p to q at proper time s from p.
    ModelPoint along(const ModelPoint& p, const ModelPoint& q, double s) const;

private:
    double K_;
    GeneralizedCone cone_;
};

double model_tau(double K, const ModelPoint& p, const ModelPoint& q);

/// c >= a + b, and c < pi / sqrt|K| when (c = a + b and K > 0) or
/// (c > a + b and K < 0). The equality branch uses tolerance 1e-12.
bool size_bounds_check(double K, double a, double b, double c);

struct ModelTriangle {
    double K = 0.0;
    ModelPoint x;
    ModelPoint y;
    ModelPoint z;
    double a = 0.0;  // tau(x, y)
    double b = 0.0;  // tau(y, z)
    double c = 0.0;  // tau(x, z)
    /// max |recomputed side - requested side|.
    double residual = 0.0;
};

/// Comparison triangle with x on the t-axis at t = 0 (t = -c/2 when K < 0,
/// keeping z inside the strip), z = x + (c, 0) and y on the side x >= 0.
/// DomainError on size-bound violation; ConvergenceError when the placement
/// residual stays above 1e-8.
ModelTriangle realize_timelike_triangle(double K, double a, double b, double c);
ModelTriangle realize_timelike_triangle(const LorentzModel& model, double a, double b, double c);

enum class TriangleSide { xy, yz, xz };
std::string to_string(TriangleSide side);

/// Point on `side` at proper time s from the side's first vertex.
ModelPoint corresponding_point(const ModelTriangle& T, TriangleSide side, double s);
ModelPoint corresponding_point(const LorentzModel& model, const ModelTriangle& T,
                               TriangleSide side, double s);

/// (1 - cos sqrt(K E)) / K with cos(i phi) = cosh(phi); E / 2 at K = 0.
double modified_distance(double K, double E);

}  // namespace lorcone
