#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lorcone {

using Rng = std::mt19937_64;

/// A point of a fiber space in that space's own coordinates: a real for
/// the line, an angle for the circle, Cartesian coordinates for E^n,
/// ambient unit vectors for spheres, hyperboloid coordinates (x0, x1, x2)
/// for H^2, and (edge id, offset) for metric graphs.
struct FiberPoint {
    std::vector<double> c;

    FiberPoint() = default;
    FiberPoint(std::initializer_list<double> coords) : c(coords) {}
    explicit FiberPoint(std::vector<double> coords) : c(std::move(coords)) {}

    std::size_t size() const { return c.size(); }
    double operator[](std::size_t i) const { return c[i]; }
    bool operator==(const FiberPoint&) const = default;
};

/// Abstract metric length space X.
class FiberSpace {
public:
    virtual ~FiberSpace() = default;

    virtual std::string name() const = 0;
    virtual double distance(const FiberPoint& x, const FiberPoint& y) const = 0;

    virtual bool is_geodesic() const { return true; }
    virtual bool is_proper() const { return true; }
    virtual bool is_locally_compact() const { return true; }
    /// Declared curvature bounds (informational only).
    virtual std::optional<double> curvature_lower_bound() const { return std::nullopt; }
    virtual std::optional<double> curvature_upper_bound() const { return std::nullopt; }

    /// Point m on a minimizing geodesic from x to y with d(x, m) = u d(x, y).
    /// Non-unique geodesics are resolved by the space's deterministic rule.
    virtual FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const;
    /// False for pairs joined by more than one minimizing geodesic.
    virtual bool unique_geodesic(const FiberPoint& x, const FiberPoint& y) const;

    /// Throws DomainError when p is not a valid encoding; returns the
    /// canonical form otherwise.
    virtual FiberPoint canonical(const FiberPoint& p) const = 0;

    /// Random point at distance <= radius from base.
    virtual FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const = 0;
    /// Random point in a bounded region of size ~scale around a fixed origin.
    virtual FiberPoint sample_point(double scale, Rng& rng) const = 0;

    /// Text encoding used in CSV files and on the command line.
    virtual std::string encode(const FiberPoint& p, int precision = 9) const;
    virtual FiberPoint decode(std::string_view text) const;
};

using FiberPtr = std::shared_ptr<const FiberSpace>;

class RealLine final : public FiberSpace {
public:
    std::string name() const override { return "real_line"; }
    double distance(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const override;
    std::optional<double> curvature_lower_bound() const override { return 0.0; }
    std::optional<double> curvature_upper_bound() const override { return 0.0; }
    FiberPoint canonical(const FiberPoint& p) const override;
    FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const override;
    FiberPoint sample_point(double scale, Rng& rng) const override;
};

class Circle final : public FiberSpace {
public:
    explicit Circle(double radius);
    std::string name() const override { return "circle"; }
    double radius() const { return radius_; }
    double distance(const FiberPoint& x, const FiberPoint& y) const override;
    /// Antipodal pairs go in the positive (counterclockwise) direction.
    FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const override;
    bool unique_geodesic(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint canonical(const FiberPoint& p) const override;
    FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const override;
    FiberPoint sample_point(double scale, Rng& rng) const override;

private:
    double radius_;
};

class EuclideanN final : public FiberSpace {
public:
    explicit EuclideanN(std::size_t n);
    std::string name() const override { return "euclidean"; }
    std::size_t dimension() const { return n_; }
    double distance(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const override;
    std::optional<double> curvature_lower_bound() const override { return 0.0; }
    std::optional<double> curvature_upper_bound() const override { return 0.0; }
    FiberPoint canonical(const FiberPoint& p) const override;
    FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const override;
    FiberPoint sample_point(double scale, Rng& rng) const override;

private:
    std::size_t n_;
};

/// Round sphere of radius r (curvature 1/r^2); points are ambient unit
/// vectors. Antipodal geodesics are chosen in the plane spanned by x and
/// the coordinate axis least aligned with x (lowest index on ties), rotated
/// by a seed-derived angle when a tie-break seed is set.
class Sphere2 final : public FiberSpace {
public:
    explicit Sphere2(double radius, std::optional<std::uint64_t> tie_break_seed = std::nullopt);
    std::string name() const override { return "sphere2"; }
    double radius() const { return radius_; }
    double distance(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const override;
    bool unique_geodesic(const FiberPoint& x, const FiberPoint& y) const override;
    std::optional<double> curvature_lower_bound() const override { return 1.0 / (radius_ * radius_); }
    std::optional<double> curvature_upper_bound() const override { return 1.0 / (radius_ * radius_); }
    FiberPoint canonical(const FiberPoint& p) const override;
    FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const override;
    FiberPoint sample_point(double scale, Rng& rng) const override;
    /// Point at distance rho from base in the unit tangent direction v.
    FiberPoint exp_map(const FiberPoint& base, const std::array<double, 3>& v, double rho) const;

private:
    double radius_;
    std::optional<std::uint64_t> tie_break_seed_;
};

/// Hyperbolic plane of curvature -1/r^2 in the hyperboloid model. Points
/// are (x0, x1, x2) with x0^2 - x1^2 - x2^2 = 1, x0 > 0; a two-coordinate
/// input (x1, x2) is lifted onto the hyperboloid.
class Hyperbolic2 final : public FiberSpace {
public:
    explicit Hyperbolic2(double radius);
    std::string name() const override { return "hyperbolic2"; }
    double radius() const { return radius_; }
    double distance(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const override;
    std::optional<double> curvature_lower_bound() const override { return -1.0 / (radius_ * radius_); }
    std::optional<double> curvature_upper_bound() const override { return -1.0 / (radius_ * radius_); }
    FiberPoint canonical(const FiberPoint& p) const override;
    FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const override;
    FiberPoint sample_point(double scale, Rng& rng) const override;
    FiberPoint exp_map(const FiberPoint& base, const std::array<double, 3>& v, double rho) const;

private:
    double radius_;
};

/// Finite connected metric graph. Points are (edge id, offset) with the
/// offset measured from the edge's first endpoint; vertices are stored
/// canonically on their smallest incident edge id.
class MetricGraph final : public FiberSpace {
public:
    struct Edge {
        std::size_t u;
        std::size_t v;
        double weight;
    };

    /// Parses `u v weight` lines (blank lines and `#` comments ignored).
    static MetricGraph from_edge_list(std::string_view text);
    MetricGraph(std::vector<std::string> vertex_labels, std::vector<Edge> edges);

    std::string name() const override { return "graph"; }
    double distance(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint geodesic_point(const FiberPoint& x, const FiberPoint& y, double u) const override;
    bool unique_geodesic(const FiberPoint& x, const FiberPoint& y) const override;
    FiberPoint canonical(const FiberPoint& p) const override;
    FiberPoint sample_near(const FiberPoint& base, double radius, Rng& rng) const override;
    FiberPoint sample_point(double scale, Rng& rng) const override;
    std::string encode(const FiberPoint& p, int precision = 9) const override;
    /// Accepts `edge_id:offset` or a vertex label.
    FiberPoint decode(std::string_view text) const override;

    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& labels() const { return labels_; }
    double vertex_distance(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
    FiberPoint vertex_point(std::size_t vertex) const;
    std::size_t vertex_index(std::string_view label) const;

private:
    struct Route {
        double length;
        // Entry/exit: which endpoint of x's edge (0 = u, 1 = v) and of y's
        // edge, or direct travel along a shared edge.
        bool direct;
        int x_end;
        int y_end;
    };
    Route best_route(const FiberPoint& x, const FiberPoint& y, bool* tie = nullptr) const;
    std::vector<std::size_t> vertex_path(std::size_t i, std::size_t j) const;

    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<double> dist_;
    std::vector<std::size_t> next_;
};

/// The Riemannian model surface M^2(K): E^2, S^2(1/sqrt K) or H^2(1/sqrt -K).
FiberPtr model_surface(double K);

struct MetricTriangle {
    FiberPtr space;
    std::array<FiberPoint, 3> vertices;  // x, y, z
};

/// Comparison triangle in M^2(K) with the given side lengths. x sits at the
/// base point, y on the reference geodesic (first axis), z on the positive
/// side. DomainError on triangle inequality or (K > 0) perimeter violation.
MetricTriangle realize_metric_triangle(double K, double d_xy, double d_xz, double d_yz);

}  // namespace lorcone
