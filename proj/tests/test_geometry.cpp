#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pctlab/errors.hpp"
#include "pctlab/geometry.hpp"

#include <vector>

using namespace pctlab;

namespace {

const GeometryConstants& C() {
    return GeometryConstants::defaults();
}

std::vector<Vec2> sample_grid() {
    std::vector<Vec2> grid;
    for (int i = 1; i <= 20; ++i) {
        for (int j = 0; j <= 10; ++j) {
            grid.push_back(Vec2{Rat(1, 4) + Rat(i, 42), Rat(j, 5)});
        }
    }
    return grid;
}

} // namespace

TEST_CASE("default constants pass validation and expose the interval") {
    const auto& c = C();
    CHECK(c.q() == Rat(13, 16));
    CHECK(c.sqrt_disc() == Rat(1, 2));
    CHECK(c.kappa() == Vec2{Rat(17, 64), Rat(1, 32)});
    CHECK(c.gamma() == Rat(3, 50));
    CHECK(c.iq_lower() == Rat(1, 4));
    CHECK(c.iq_upper() == Rat(3, 4));
}

TEST_CASE("constants validation names the violated constraint") {
    const Vec2 kappa{Rat(17, 64), Rat(1, 32)};
    CHECK_THROWS_WITH_AS(GeometryConstants::make(Rat(1, 2), Rat(1, 2), kappa, Rat(3, 50)),
                         "q out of (3/4,1)", InputError);
    CHECK_THROWS_AS(GeometryConstants::make(Rat(13, 16), Rat(1, 3), kappa, Rat(3, 50)),
                    InputError);
    CHECK_THROWS_AS(GeometryConstants::make(Rat(13, 16), Rat(1, 2),
                                            Vec2{Rat(1, 5), Rat(1, 32)}, Rat(3, 50)),
                    InputError);
    CHECK_THROWS_AS(GeometryConstants::make(Rat(13, 16), Rat(1, 2),
                                            Vec2{Rat(17, 64), Rat(0)}, Rat(3, 50)),
                    InputError);
    CHECK_THROWS_AS(GeometryConstants::make(Rat(13, 16), Rat(1, 2),
                                            Vec2{Rat(17, 64), Rat(3, 64)}, Rat(3, 50)),
                    InputError);
    // gamma must lie strictly between (1-q)*kappa.x2 and 3/4 - (5/4)q + q^2/2.
    CHECK_THROWS_AS(GeometryConstants::make(Rat(13, 16), Rat(1, 2), kappa, Rat(3, 512)),
                    InputError);
    CHECK_THROWS_AS(GeometryConstants::make(Rat(13, 16), Rat(1, 2), kappa, Rat(33, 512)),
                    InputError);
    CHECK_NOTHROW(GeometryConstants::make(Rat(13, 16), Rat(1, 2), kappa, Rat(4, 512)));
    CHECK_NOTHROW(GeometryConstants::make(Rat(13, 16), Rat(1, 2), kappa, Rat(32, 512)));
}

TEST_CASE("strip membership") {
    CHECK(in_W(C(), C().kappa()));
    CHECK(in_W(C(), Vec2{Rat(1, 2), Rat(0)}));
    CHECK_FALSE(in_W(C(), Vec2{Rat(1, 4), Rat(0)}));
    CHECK_FALSE(in_W(C(), Vec2{Rat(3, 4), Rat(1)}));
    CHECK_FALSE(in_W(C(), Vec2{Rat(1, 2), Rat(-1)}));
}

TEST_CASE("tau and sigma orbit values") {
    const auto& c = C();
    CHECK(tau(c, c.kappa()) == Vec2{Rat(5, 17), Rat(2, 17)});
    CHECK(tau(c, tau(c, c.kappa())) == Vec2{Rat(29, 80), Rat(2, 5)});
    CHECK(sigma(c, c.kappa()) == Vec2{Rat(12, 47), Rat(3, 376)});
    CHECK(iterate(c, OrbitMap::Sigma, c.kappa(), 2) == Vec2{Rat(141, 560), Rat(9, 4480)});
    CHECK(iterate(c, OrbitMap::Sigma, c.kappa(), 3) == Vec2{Rat(105, 419), Rat(27, 53632)});
    CHECK_THROWS_AS(tau(c, Vec2{Rat(1, 5), Rat(0)}), InputError);
    CHECK_THROWS_AS(sigma(c, Vec2{Rat(4, 5), Rat(0)}), InputError);
}

TEST_CASE("tau and sigma are mutually inverse on the strip") {
    const auto& c = C();
    for (const Vec2& v : sample_grid()) {
        CHECK(sigma(c, tau(c, v)) == v);
        CHECK(tau(c, sigma(c, v)) == v);
    }
    CHECK(iterate(c, OrbitMap::Tau, iterate(c, OrbitMap::Sigma, c.kappa(), 5), 5) ==
          c.kappa());
}

TEST_CASE("orbit maps preserve the strip and expand to the right") {
    const auto& c = C();
    for (const Vec2& v : sample_grid()) {
        const Vec2 t = tau(c, v);
        const Vec2 s = sigma(c, v);
        CHECK(in_W(c, t));
        CHECK(in_W(c, s));
        CHECK(t.x1 > v.x1);
        CHECK(t.x2 >= v.x2);
        if (v.x2 > 0) {
            CHECK(t.x2 > v.x2);
        }
        CHECK(s.x1 < v.x1);
    }
}

TEST_CASE("one-step sum identities along tau") {
    const auto& c = C();
    for (const Vec2& v : sample_grid()) {
        const Vec2 t = tau(c, v);
        CHECK(1 - v.x1 + v.x1 * t.x1 == c.q());
        CHECK(1 - v.x1 - v.x2 + v.x1 * (t.x1 + t.x2) == c.q());
    }
}

TEST_CASE("grounded point is collinear with the next two tau steps") {
    const auto& c = C();
    const Vec2 v = c.kappa();
    const Vec2 t = tau(c, v);
    const Vec2 t2 = tau(c, t);
    CHECK(slope(Vec2{v.x1, Rat(0)}, t) == Rat(128, 31));
    CHECK(slope(t, t2) == Rat(128, 31));
    for (const Vec2& w : sample_grid()) {
        const Vec2 tw = tau(c, w);
        CHECK(slope(Vec2{w.x1, Rat(0)}, tw) == slope(tw, tau(c, tw)));
    }
}

TEST_CASE("lower starting heights give smaller segment slopes") {
    const auto& c = C();
    const Vec2 v = c.kappa();
    const Rat full = slope(v, tau(c, v));
    for (int k = 0; k <= 2; ++k) {
        const Vec2 u{v.x1, v.x2 * Rat(k, 3)};
        CHECK(slope(u, tau(c, u)) < full);
    }
    CHECK_THROWS_AS(slope(v, Vec2{v.x1, Rat(1)}), InputError);
}

TEST_CASE("segment membership is half-open toward the tau image") {
    const auto& c = C();
    const Vec2 u = sigma(c, c.kappa());
    const Vec2 t = tau(c, u);
    CHECK(t == c.kappa());
    CHECK(segment_contains(c, u, u));
    CHECK_FALSE(segment_contains(c, u, t));
    const Vec2 mid{(u.x1 + t.x1) / 2, (u.x2 + t.x2) / 2};
    CHECK(segment_contains(c, u, mid));
    CHECK_FALSE(segment_contains(c, u, Vec2{mid.x1, mid.x2 + Rat(1, 1000)}));
    CHECK_FALSE(segment_contains(c, u, Vec2{u.x1 - Rat(1, 1000), u.x2}));
    CHECK_THROWS_AS(segment_contains(c, Vec2{Rat(1, 5), Rat(0)}, mid), InputError);
}

TEST_CASE("segments map onto segments under tau") {
    const auto& c = C();
    const std::vector<Vec2> anchors = {iterate(c, OrbitMap::Sigma, c.kappa(), 2),
                                       iterate(c, OrbitMap::Sigma, c.kappa(), 1),
                                       c.kappa()};
    const std::vector<Rat> lambdas = {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
    for (const Vec2& w : anchors) {
        const Vec2 t = tau(c, w);
        for (const Rat& lam : lambdas) {
            const Vec2 u{lam * w.x1 + (1 - lam) * t.x1, lam * w.x2 + (1 - lam) * t.x2};
            CHECK(segment_contains(c, w, u));
            CHECK(segment_contains(c, t, tau(c, u)));
        }
    }
}

TEST_CASE("convex combinations commute with tau after reweighting") {
    const auto& c = C();
    const Vec2 x = c.kappa();
    const Vec2 y = iterate(c, OrbitMap::Sigma, c.kappa(), 2);
    for (const Rat& lam : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
        const Vec2 mix{lam * x.x1 + (1 - lam) * y.x1, lam * x.x2 + (1 - lam) * y.x2};
        const Rat lam2 = lam * x.x1 / (lam * x.x1 + (1 - lam) * y.x1);
        const Vec2 tx = tau(c, x);
        const Vec2 ty = tau(c, y);
        const Vec2 expect{lam2 * tx.x1 + (1 - lam2) * ty.x1,
                          lam2 * tx.x2 + (1 - lam2) * ty.x2};
        CHECK(tau(c, mix) == expect);
    }
}

TEST_CASE("half-plane membership keeps points above the anchor line") {
    const auto& c = C();
    const Vec2 k = c.kappa();
    CHECK(halfspace_contains(c, k, k));
    CHECK(halfspace_contains(c, k, tau(c, k)));
    CHECK(halfspace_contains(c, k, Vec2{k.x1, k.x2 + Rat(1)}));
    CHECK_FALSE(halfspace_contains(c, k, Vec2{k.x1, k.x2 - Rat(1, 1000)}));
}

TEST_CASE("area membership") {
    const auto& c = C();
    CHECK(area_contains(c, c.kappa()));
    CHECK(area_contains(c, tau(c, c.kappa())));
    CHECK(area_contains(c, sigma(c, c.kappa())));
    CHECK(area_contains(c, Vec2{Rat(1, 2), Rat(10)}, 40));
    CHECK_FALSE(area_contains(c, Vec2{c.kappa().x1, Rat(0)}));
    CHECK_FALSE(area_contains(c, Vec2{Rat(1, 5), Rat(1)}));
    for (unsigned k = 0; k <= 10; ++k) {
        CHECK(area_contains(c, iterate(c, OrbitMap::Tau, c.kappa(), k)));
        CHECK(area_contains(c, iterate(c, OrbitMap::Sigma, c.kappa(), k)));
    }
}

TEST_CASE("segment origin search recovers the covering anchor") {
    const auto& c = C();
    const Vec2 s2 = iterate(c, OrbitMap::Sigma, c.kappa(), 2);
    const Vec2 s1 = sigma(c, c.kappa());

    SUBCASE("point below the second backward segment") {
        const Vec2 mid{(s2.x1 + s1.x1) / 2, (s2.x2 + s1.x2) / 2};
        const Vec2 v{mid.x1, mid.x2 - Rat(1, 1000)};
        REQUIRE_FALSE(area_contains(c, v));
        const Vec2 u = find_segment_origin(c, v);
        CHECK(u.x1 == s2.x1);
        CHECK(segment_contains(c, u, v));
    }

    SUBCASE("point below the third backward anchor") {
        const Vec2 s3 = iterate(c, OrbitMap::Sigma, c.kappa(), 3);
        const Vec2 v{s3.x1, s3.x2 / 2};
        REQUIRE_FALSE(area_contains(c, v));
        const Vec2 u = find_segment_origin(c, v);
        CHECK(u.x1 == s3.x1);
        CHECK(segment_contains(c, u, v));
    }

    SUBCASE("anchor height formula matches the on-segment witness") {
        const Vec2 mid{(s1.x1 + c.kappa().x1) / 2, (s1.x2 + c.kappa().x2) / 2};
        CHECK(mid == Vec2{Rat(1567, 6016), Rat(59, 3008)});
        CHECK(segment_contains(c, s1, mid));
    }

    SUBCASE("points inside the area are rejected") {
        CHECK_THROWS_AS(find_segment_origin(c, c.kappa()), InputError);
        const Vec2 mid{(s2.x1 + s1.x1) / 2, (s2.x2 + s1.x2) / 2};
        CHECK_THROWS_AS(find_segment_origin(c, mid), InputError);
    }

    SUBCASE("points right of kappa or outside the strip are rejected") {
        CHECK_THROWS_AS(find_segment_origin(c, Vec2{Rat(1, 2), Rat(0)}), InputError);
        CHECK_THROWS_AS(find_segment_origin(c, Vec2{Rat(1, 5), Rat(0)}), InputError);
    }
}

TEST_CASE("backward orbit gap closes monotonically") {
    const auto& c = C();
    CHECK(sigma_limit_gap(c, 0) == Rat(1, 64));
    CHECK(sigma_limit_gap(c, 1) == Rat(1, 188));
    Rat prev = sigma_limit_gap(c, 0);
    for (unsigned k = 1; k <= 30; ++k) {
        const Rat gap = sigma_limit_gap(c, k);
        CHECK(gap > 0);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(sigma_limit_gap(c, 10) < Rat(1, 10000));
}
