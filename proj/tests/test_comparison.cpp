#include "lorcone/comparison.hpp"
#include "lorcone/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>

using namespace lorcone;
using doctest::Approx;

namespace {

const Interval R{-kInf, kInf};

SamplingOptions small_run(std::size_t n, std::uint64_t seed) {
    SamplingOptions s;
    s.n_triangles = n;
    s.seed = seed;
    s.pair_samples = 9;
    return s;
}

GeneralizedCone tripod_cone() {
    return {WarpSpec::identity(),
            std::make_shared<MetricGraph>(MetricGraph::from_edge_list("c a 1\nc b 1\nc d 1"))};
}

}  // namespace

TEST_CASE("lifting a small flat triangle") {
    const GeneralizedCone Y(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2));
    const auto T = lift_fiber_triangle(Y, {FiberPoint{0.0, 0.0}, FiberPoint{0.2, 0.0}, FiberPoint{0.1, 0.15}}, 0.0, 1.0);
    CHECK(relate(Y, T.x, T.y).relation == Relation::chronological);
    CHECK(relate(Y, T.y, T.z).relation == Relation::chronological);
    CHECK(relate(Y, T.x, T.z).relation == Relation::chronological);
    CHECK(T.c >= T.a + T.b - 1e-12);

    const auto V = lift_fiber_triangle(Y, {FiberPoint{0.3, 0.3}, FiberPoint{0.3, 0.3}, FiberPoint{0.3, 0.3}}, 0.0, 1.0);
    CHECK(V.a == Approx(1.0));
    CHECK(V.b == Approx(1.0));
    CHECK(V.c == Approx(2.0));
}

TEST_CASE("lifting on the Minkowski cone over the hyperbolic plane") {
    auto H = std::make_shared<Hyperbolic2>(1.0);
    const GeneralizedCone Y(WarpSpec::identity(), H);
    const FiberPoint o{1.0, 0.0, 0.0};
    const auto y = H->exp_map(o, {0.0, 1.0, 0.0}, 0.03);
    const auto z = H->exp_map(o, {0.0, 0.0, 1.0}, 0.04);
    REQUIRE(H->distance(y, z) == Approx(0.05).epsilon(1e-3));
    const auto T = lift_fiber_triangle(Y, {o, y, z}, 1.0, 0.25);
    CHECK(std::abs(path_length(Y, T.side_xy) - time_separation(Y, T.x, T.y)) <= 1e-6);
    CHECK(std::abs(path_length(Y, T.side_yz) - time_separation(Y, T.y, T.z)) <= 1e-6);
    CHECK(std::abs(path_length(Y, T.side_xz) - time_separation(Y, T.x, T.z)) <= 1e-6);
}

TEST_CASE("lifting rejects oversized triangles and windows outside I") {
    const GeneralizedCone Y(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2));
    const double C = lift_diameter_bound(Y, 0.0, 1.0);
    CHECK(C == Approx(1.0 / (2.0 * std::sqrt(2.0))));
    CHECK_THROWS_AS(lift_fiber_triangle(Y, {FiberPoint{0.0, 0.0}, FiberPoint{2 * C, 0.0}, FiberPoint{0.0, 0.0}}, 0.0, 1.0),
                    DomainError);
    const GeneralizedCone M(WarpSpec::identity(), std::make_shared<EuclideanN>(2));
    CHECK_THROWS_AS(lift_fiber_triangle(M, {FiberPoint{0.0, 0.0}, FiberPoint{0.0, 0.0}, FiberPoint{0.0, 0.0}}, 0.2, 0.5),
                    DomainError);
}

TEST_CASE("corresponding points of a vertical triangle have no gap") {
    const GeneralizedCone Y(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2));
    const auto T = lift_fiber_triangle(Y, {FiberPoint{0.0, 0.0}, FiberPoint{0.0, 0.0}, FiberPoint{0.0, 0.0}}, 0.0, 0.5);
    for (const auto& r : compare_corresponding_points(Y, T, 0.0, 16)) CHECK(std::abs(r.gap) <= 1e-12);
}

TEST_CASE("the cosh chart is its own comparison space") {
    const GeneralizedCone Y(WarpSpec::elementary(WarpKind::cosh, R), std::make_shared<RealLine>());
    const auto T = lift_fiber_triangle(Y, {FiberPoint{0.0}, FiberPoint{0.02}, FiberPoint{-0.01}}, 0.3, 0.2);
    const auto rows = compare_corresponding_points(Y, T, 1.0, 16);
    CHECK(rows.size() == 15);  // the pair p = q = y is skipped
    for (const auto& r : rows)
        if (r.status == PairStatus::compared) CHECK(std::abs(r.gap) <= 1e-5);
}

TEST_CASE("certify_bound on table rows") {
    SUBCASE("Minkowski cone over the hyperbolic plane, below by 0") {
        const GeneralizedCone Y(WarpSpec::identity(), std::make_shared<Hyperbolic2>(1.0));
        const auto rep = certify_bound(Y, 0.0, BoundDirection::below, small_run(30, 4));
        CHECK(rep.verdict() == "consistent");
        CHECK(rep.triangles_tested == 30);
    }
    SUBCASE("flat, both directions") {
        const GeneralizedCone Y(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2));
        CHECK_FALSE(certify_bound(Y, 0.0, BoundDirection::below, small_run(30, 5)).violated);
        CHECK_FALSE(certify_bound(Y, 0.0, BoundDirection::above, small_run(30, 5)).violated);
    }
    SUBCASE("tripod violates the lower bound at the branch point") {
        auto s = small_run(40, 6);
        const auto Y = tripod_cone();
        const auto& G = static_cast<const MetricGraph&>(Y.fiber());
        s.base_point = G.vertex_point(G.vertex_index("c"));
        s.diameter_fraction = 1.0;
        const auto rep = certify_bound(Y, 0.0, BoundDirection::below, s);
        CHECK(rep.violated);
        REQUIRE(rep.worst_witness);
        const auto& w = *rep.worst_witness;
        // direct re-evaluation of the witness
        CHECK(time_separation(Y, w.pair.p, w.pair.q) == Approx(w.pair.tau_cone).epsilon(1e-12));
        CHECK(rep.worst_gap > rep.tolerance);
        CHECK_FALSE(certify_bound(Y, 0.0, BoundDirection::above, s).violated);
    }
}

TEST_CASE("certify_bound is deterministic across thread counts") {
    const GeneralizedCone Y(WarpSpec::elementary(WarpKind::cosh, R), std::make_shared<Sphere2>(1.0));
    auto s = small_run(24, 77);
    s.threads = 1;
    const auto a = certify_bound(Y, 1.0, BoundDirection::below, s);
    s.threads = 4;
    const auto b = certify_bound(Y, 1.0, BoundDirection::below, s);
    std::ostringstream ca, cb;
    write_report_csv(ca, Y.fiber(), a);
    write_report_csv(cb, Y.fiber(), b);
    CHECK(ca.str() == cb.str());
    CHECK(a.worst_gap == b.worst_gap);
    CHECK(ca.str().rfind("triangle,p_t,p_fiber,q_t,q_fiber,s_p,s_q,tau_cone,tau_model,gap,status\n", 0) == 0);
}

TEST_CASE("fiber-side bounds") {
    const GeneralizedCone H(WarpSpec::identity(), std::make_shared<Hyperbolic2>(1.0));
    CHECK_FALSE(fiber_bound_from_cone(H, -1.0, 0.0, BoundDirection::below, small_run(20, 8)).violated);
    const GeneralizedCone E(WarpSpec::constant(1.0), std::make_shared<EuclideanN>(2));
    CHECK_FALSE(fiber_bound_from_cone(E, 0.0, 0.0, BoundDirection::below, small_run(20, 9)).violated);
    CHECK_FALSE(fiber_bound_from_cone(E, 0.0, 0.0, BoundDirection::above, small_run(20, 9)).violated);
    const GeneralizedCone S(WarpSpec::elementary(WarpKind::cosh, R), std::make_shared<Sphere2>(1.0));
    const auto rep = fiber_bound_from_cone(S, 1.0, 1.0, BoundDirection::below, small_run(20, 10));
    CHECK(rep.fiber_side);
    CHECK_FALSE(rep.violated);
}

TEST_CASE("two-model comparison is strict for K < K'") {
    const auto T = realize_timelike_triangle(0.0, 0.2, 0.25, 0.5);
    CHECK(two_model_margin(0.0, 0.5, T, 8) > 0.0);
    const auto U = realize_timelike_triangle(-1.0, 0.2, 0.25, 0.5);
    CHECK(two_model_margin(-1.0, 0.0, U, 8) > 0.0);
}

TEST_CASE("direction names round trip") {
    CHECK(bound_direction_from_string(to_string(BoundDirection::above)) == BoundDirection::above);
    CHECK_THROWS(bound_direction_from_string("sideways"));
}
