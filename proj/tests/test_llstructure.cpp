#include "oracles.hpp"

#include "lorcone/errors.hpp"
#include "lorcone/llstructure.hpp"

#include <doctest.h>

#include <cmath>

using namespace lorcone;
using namespace lorcone::ll;
using doctest::Approx;

TEST_CASE("derived relations") {
    const auto c = CurveCatalog::parse("curve x y 1 causal\n");
    const auto r = derived_relations(c);
    const auto x = c.index("x"), y = c.index("y");
    CHECK(r.leq(x, y));
    CHECK_FALSE(r.ll(x, y));
    CHECK_FALSE(r.leq(y, x));

    const auto t = CurveCatalog::parse("curve x y 1 timelike\ncurve y z 2 timelike\n");
    CHECK(derived_relations(t).ll(t.index("x"), t.index("z")));

    const auto e = CurveCatalog::parse("point a\npoint b\n");
    const auto er = derived_relations(e);
    CHECK(er.leq(0, 0));
    CHECK(er.leq(1, 1));
    CHECK_FALSE(er.leq(0, 1));
}

TEST_CASE("derived tau") {
    const auto c = CurveCatalog::parse("curve x y 1 timelike\ncurve y z 1 timelike\ncurve x z 3 timelike\n");
    const auto T = derived_tau(c);
    CHECK(T.at(c.index("x"), c.index("z")).value == 3.0);
    CHECK(T.at(c.index("z"), c.index("x")).value == 0.0);

    const auto cyc = CurveCatalog::parse("curve a b 1 timelike\ncurve b a 1 timelike\ncurve b c 1 causal\n");
    const auto C = derived_tau(cyc);
    CHECK(C.at(cyc.index("a"), cyc.index("c")).infinite);
    CHECK(C.at(cyc.index("c"), cyc.index("c")) == TauValue{});
}

TEST_CASE("derived tau matches path enumeration on random DAGs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto c = oracle::random_catalog(3 + seed % 10, seed);
        const auto a = derived_tau(c);
        const auto b = oracle::enumerate_tau(c);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) {
                CHECK(a.at(i, j).infinite == b.at(i, j).infinite);
                CHECK(a.at(i, j).value == Approx(b.at(i, j).value).epsilon(1e-12));
            }
    }
}

TEST_CASE("derived tau is monotone under adding curves") {
    auto c = oracle::random_catalog(9, 4);
    const auto before = derived_tau(c);
    c.add_curve(0, c.size() - 1, 0.5, CurveClass::causal);
    c.add_curve(2, 5, 4.0, CurveClass::timelike);
    const auto after = derived_tau(c);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            CHECK((after.at(i, j).infinite || after.at(i, j).value >= before.at(i, j).value));
}

TEST_CASE("bare Lorentzian length space verdicts") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto c = oracle::random_catalog(2 + seed % 11, 500 + seed, seed % 3 == 0);
        const auto v = check_bare_llspace(c);
        CHECK(v.passed());
        CHECK(v.pairs_checked == c.size() * c.size());
    }
}

TEST_CASE("catalog validation") {
    CHECK_THROWS_AS(CurveCatalog::parse("curve a b 0 timelike\n"), ConfigError);
    CHECK_THROWS_AS(CurveCatalog::parse("curve a b -1 causal\n"), ConfigError);
    CHECK_THROWS_AS(CurveCatalog::parse("curve a b 1 spacelike\n"), ConfigError);
    CHECK_THROWS_AS(CurveCatalog::parse("bogus\n"), ConfigError);
    try {
        CurveCatalog::parse("# header\n\ncurve a b x causal\n");
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(e.where() == "line 3");
    }
    const auto ok = CurveCatalog::parse("curve a b 0 causal  # zero-length causal curves are fine\n");
    CHECK(ok.curves().size() == 1);
}
