#pragma once

#include "lorcone/quadrature.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lorcone {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (a, b); either end may be infinite.
struct Interval {
    double a = -kInf;
    double b = kInf;

    bool contains(double t) const { return a < t && t < b; }
    bool finite() const { return a > -kInf && b < kInf; }
    double length() const { return b - a; }
};

enum class WarpKind { constant, identity, sin, cos, sinh, cosh, exp, power, sampled };

enum class Interpolation { linear, cubic_spline };

std::string to_string(WarpKind kind);
WarpKind warp_kind_from_string(const std::string& name);

/// The warping function f : I -> (0, inf).
///
/// Closed-form kinds evaluate f(t) = A * g(w * t) with amplitude A > 0 and
/// rate w > 0 (both default 1), where g is the named elementary function;
/// `constant` ignores the rate and `power` uses g(u) = u^p. Construction
/// validates positivity on the whole interval.
///
/// Sampled warps interpolate a strictly positive grid linearly or with a
/// natural cubic spline. Only the spline rule provides f'', so only it is
/// accepted by the concavity tests.
class WarpSpec {
public:
    static WarpSpec constant(double c, Interval interval = {});
    static WarpSpec identity(Interval interval = {0.0, kInf});
    static WarpSpec power(double exponent, Interval interval = {0.0, kInf}, double amplitude = 1.0);
    /// sin, cos, sinh, cosh, exp, identity.
    static WarpSpec elementary(WarpKind kind, Interval interval, double amplitude = 1.0,
                               double rate = 1.0);
    static WarpSpec sampled(std::vector<std::pair<double, double>> samples, Interpolation rule,
                            std::optional<Interval> interval = std::nullopt);

    WarpKind kind() const { return kind_; }
    const Interval& interval() const { return interval_; }
    double amplitude() const { return amplitude_; }
    double rate() const { return rate_; }
    /// c for `constant`, p for `power`, unused otherwise.
    double parameter() const { return parameter_; }
    Interpolation interpolation() const { return rule_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    const quad::Tolerance& tolerance() const { return tolerance_; }
    WarpSpec with_tolerance(quad::Tolerance tol) const;

    /// f(t); DomainError if t is not strictly inside I.
    double operator()(double t) const;
    double eval(double t) const { return (*this)(t); }
    double derivative(double t) const;
    double second_derivative(double t) const;
    bool has_second_derivative() const;

    /// min of f over [s, t], a < s <= t < b.
    double min_on_interval(double s, double t) const;

    /// True when f is constant on I (constant kind, or a flat sampled grid).
    bool is_constant() const;

    /// Integral of 1/f over [p, r] (negative when r < p).
    double inverse_integral(double p, double r) const;

    std::string describe() const;

private:
    WarpSpec() = default;
    void validate() const;
    double g(double u) const;
    double g1(double u) const;
    double g2(double u) const;
    std::size_t sample_segment(double t) const;
    void build_spline();

    WarpKind kind_ = WarpKind::constant;
    Interval interval_;
    double amplitude_ = 1.0;
    double rate_ = 1.0;
    double parameter_ = 1.0;
    Interpolation rule_ = Interpolation::linear;
    std::vector<std::pair<double, double>> samples_;
    std::vector<double> spline_m_;  // second derivatives at the nodes
    quad::Tolerance tolerance_;
};

/// F_{p0}, its inverse h_{p0} and the horizons a_{p0} <= 0 <= b_{p0}.
///
/// The cumulative table of F over geometric nodes toward both endpoints is
/// built at construction; horizons are the limits of that table, +-inf when
/// the improper integral diverges.
class NullTransport {
public:
    NullTransport(WarpSpec warp, double base_point);

    double base_point() const { return p0_; }
    double forward_horizon() const { return forward_.limit; }
    double backward_horizon() const { return backward_.diverged ? -kInf : -backward_.limit; }
    const WarpSpec& warp() const { return warp_; }

    /// F_{p0}(r) = integral of 1/f from p0 to r.
    double null_parameter(double r) const;
    /// h_{p0}(s): the unique r with F_{p0}(r) = s. DomainError when s is
    /// outside (a_{p0}, b_{p0}).
    double h_solve(double s) const;

private:
    WarpSpec warp_;
    double p0_;
    quad::TailIntegral forward_;
    quad::TailIntegral backward_;
};

struct ConcavityResult {
    bool holds_concave = false;
    bool holds_convex = false;
    /// max over the grid of (f'' - K f) / max(1, |f|); <= band for concave.
    double worst_margin = 0.0;
    double worst_t = 0.0;
    /// min over the grid of the same scaled quantity.
    double min_margin = 0.0;
};

/// Grid test of f'' - K f <= 0 (concave) / >= 0 (convex) with the band
/// +-1e-9 * max(1, |f|). Infinite interval ends are clipped to a finite
/// window of `window` units.
ConcavityResult concavity_check(const WarpSpec& warp, double K, std::size_t grid_size = 2001,
                                double window = 20.0);

struct EndpointFinite {
    bool a_finite = false;
    bool b_finite = false;
};

struct SingularityReport {
    bool lower_bound_K_consistent = false;
    EndpointFinite interval_finite;
    double tau_diameter_bound = kInf;
    bool big_bang = false;
    bool big_crunch = false;
    bool big_bang_inconclusive = false;
    bool big_crunch_inconclusive = false;
    bool upper_bound_possible = true;
    std::vector<std::string> verdicts;
};

SingularityReport singularity_report(const WarpSpec& warp, double K);

}  // namespace lorcone
