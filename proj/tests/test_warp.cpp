#include "lorcone/errors.hpp"
#include "lorcone/warp.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lorcone;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
const Interval R{-kInf, kInf};
const Interval half_line{0.0, kInf};
const Interval zero_pi{0.0, pi};
}  // namespace

TEST_CASE("eval_warp on closed forms and samples") {
    CHECK(WarpSpec::identity()(2.0) == 2.0);
    CHECK(WarpSpec::elementary(WarpKind::sin, zero_pi)(pi / 2) == Approx(1.0).epsilon(1e-15));
    const auto s = WarpSpec::sampled({{0.0, 1.0}, {1.0, 3.0}}, Interpolation::linear);
    CHECK(s(0.5) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("evaluation outside the interval is a domain error") {
    CHECK_THROWS_AS(WarpSpec::identity()(-1.0), DomainError);
    CHECK_THROWS_AS(WarpSpec::elementary(WarpKind::sin, zero_pi)(pi), DomainError);
}

TEST_CASE("positivity is validated at construction") {
    CHECK_THROWS(WarpSpec::elementary(WarpKind::sin, {0.0, 7.0}));
    CHECK_THROWS(WarpSpec::constant(-1.0));
    CHECK_THROWS(WarpSpec::sampled({{0.0, 1.0}, {1.0, 0.0}}, Interpolation::linear));
}

TEST_CASE("min_on_interval") {
    CHECK(WarpSpec::constant(1.0).min_on_interval(-3.0, 5.0) == 1.0);
    const auto s = WarpSpec::elementary(WarpKind::sin, zero_pi);
    // dense grid scan
    double scan = 1e300;
    for (int i = 0; i <= 100000; ++i) scan = std::min(scan, std::sin(pi / 4 + i * (pi / 2) / 100000));
    CHECK(s.min_on_interval(pi / 4, 3 * pi / 4) == Approx(scan).epsilon(1e-10));
    CHECK(WarpSpec::elementary(WarpKind::exp, R).min_on_interval(0.0, 2.0) == Approx(1.0));
}

TEST_CASE("min_on_interval never exceeds f on the interval") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.05, pi - 0.05);
    const auto specs = {WarpSpec::elementary(WarpKind::sin, zero_pi),
                        WarpSpec::sampled({{0.1, 1.0}, {1.0, 0.2}, {2.0, 2.0}, {3.0, 0.7}},
                                          Interpolation::cubic_spline, Interval{0.1, 3.0})};
    for (const auto& w : specs) {
        for (int k = 0; k < 50; ++k) {
            double s = u(rng), t = u(rng);
            if (s > t) std::swap(s, t);
            if (!w.interval().contains(s) || !w.interval().contains(t)) continue;
            const double m = w.min_on_interval(s, t);
            for (int i = 0; i <= 200; ++i) CHECK(m <= w(s + (t - s) * i / 200.0) + 1e-12);
        }
    }
}

TEST_CASE("null_parameter against antiderivatives") {
    CHECK(NullTransport(WarpSpec::constant(1.0), 0.0).null_parameter(1.0) == Approx(1.0).epsilon(1e-12));
    const NullTransport e(WarpSpec::elementary(WarpKind::exp, R), 0.0);
    CHECK(e.null_parameter(1.0) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
    CHECK(e.null_parameter(-1.0) == Approx(1.0 - std::exp(1.0)).epsilon(1e-10));
    const NullTransport id(WarpSpec::identity(), 1.0);
    CHECK(id.null_parameter(std::exp(1.0)) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("h_solve inverts the null parameter") {
    CHECK(NullTransport(WarpSpec::constant(1.0), 0.0).h_solve(0.5) == Approx(0.5).epsilon(1e-12));
    CHECK(NullTransport(WarpSpec::elementary(WarpKind::exp, R), 0.0).h_solve(0.5) ==
          Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(NullTransport(WarpSpec::identity(), 1.0).h_solve(1.0) == Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("h_solve outside the horizon range is an error") {
    const NullTransport e(WarpSpec::elementary(WarpKind::exp, R), 0.0);
    CHECK(e.forward_horizon() == Approx(1.0).epsilon(1e-9));
    CHECK_THROWS(e.h_solve(1.5));
    const NullTransport id(WarpSpec::identity(), 2.0);
    CHECK(std::isinf(id.forward_horizon()));
}

TEST_CASE("round trip h(F(r)) = r and the ODE h' = f(h)") {
    const auto w = WarpSpec::elementary(WarpKind::cosh, R);
    const NullTransport nt(w, 0.3);
    for (double r = -3.0; r <= 3.0; r += 0.25) CHECK(nt.h_solve(nt.null_parameter(r)) == Approx(r).epsilon(1e-9));
    const double eps = 1e-4;
    for (double s = -0.5; s <= 0.5; s += 0.1) {
        const double dh = (nt.h_solve(s + eps) - nt.h_solve(s - eps)) / (2 * eps);
        CHECK(std::abs(dh - w(nt.h_solve(s))) < 1e-6);
    }
}

TEST_CASE("null_parameter is strictly increasing") {
    const NullTransport nt(WarpSpec::elementary(WarpKind::sin, zero_pi), 1.0);
    double prev = -kInf;
    for (double r = 0.05; r < pi - 0.05; r += 0.05) {
        const double v = nt.null_parameter(r);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("concavity verdicts") {
    const auto s = concavity_check(WarpSpec::elementary(WarpKind::sin, zero_pi), -1.0);
    CHECK(s.holds_concave);
    CHECK(s.holds_convex);
    const auto c = concavity_check(WarpSpec::elementary(WarpKind::cosh, R), 1.0);
    CHECK(c.holds_concave);
    CHECK(c.holds_convex);
    const auto p = concavity_check(WarpSpec::power(2.0 / 3.0), 0.0);
    CHECK(p.holds_concave);
    CHECK_FALSE(p.holds_convex);
}

TEST_CASE("singularity report") {
    const auto s = singularity_report(WarpSpec::elementary(WarpKind::sin, zero_pi), -1.0);
    CHECK(s.lower_bound_K_consistent);
    CHECK(s.interval_finite.a_finite);
    CHECK(s.interval_finite.b_finite);
    CHECK(s.tau_diameter_bound == Approx(pi));

    const auto e = singularity_report(WarpSpec::elementary(WarpKind::exp, R), 0.0);
    CHECK_FALSE(e.lower_bound_K_consistent);

    const auto b = singularity_report(WarpSpec::power(2.0 / 3.0), 0.0);
    CHECK(b.lower_bound_K_consistent);
    CHECK(b.big_bang);
    CHECK_FALSE(b.upper_bound_possible);
}
