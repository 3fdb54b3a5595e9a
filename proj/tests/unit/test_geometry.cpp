#include <doctest.h>

#include <random>

#include "polydual/invariants.hpp"
#include "support.hpp"

using namespace polydual;
using namespace testsupport;

TEST_CASE("cube and crosspolytope volumes and face counts") {
    for (int n = 2; n <= 4; ++n) {
        const auto cube = generator("cube", n);
        const auto cross = generator("cross", n);
        CHECK(cube.volume() == doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
        CHECK(cross.volume() == doctest::Approx(std::pow(2.0, n) / factorial(n)).epsilon(1e-12));
        CHECK(cube.facets().size() == static_cast<std::size_t>(2 * n));
        CHECK(cross.facets().size() == static_cast<std::size_t>(1 << n));
        CHECK(cube.centroid().norm() < 1e-12);
        for (const auto& f : cube.facets()) CHECK(f.measure == doctest::Approx(std::pow(2.0, n - 1)));
    }
    CHECK(generator("cube", 3).edges().size() == 12);
    CHECK(generator("cross", 3).edges().size() == 12);
    CHECK(generator("cube", 4).edges().size() == 32);
    CHECK(generator("cube", 2).edges().size() == 4);
}

TEST_CASE("construction drops duplicates and non-extreme points") {
    Points pts = {v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1), v2(0, 0), v2(1, 0), v2(1, 1 + 1e-13), v2(0.3, -0.2)};
    const VPolytope P(pts);
    CHECK(P.vertexCount() == 4);
    CHECK(P.volume() == doctest::Approx(4.0));
    CHECK(P.findVertex(v2(-1, 1)) >= 0);
    CHECK(P.findVertex(v2(0, 0)) == -1);
}

TEST_CASE("degenerate input is rejected") {
    CHECK_THROWS_AS(VPolytope({v2(0, 0), v2(1, 1), v2(2, 2)}), GeometryError);
    try {
        VPolytope({v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 0)});
        FAIL("expected DegenerateInput");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::DegenerateInput);
    }
}

TEST_CASE("polygon areas agree with the shoelace oracle") {
    for (std::uint64_t seed : {0u, 1u, 2u, 3u, 4u}) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Points pts;
        for (int i = 0; i < 15; ++i) pts.push_back(v2(u(rng), u(rng)));
        CHECK(VPolytope(pts).volume() == doctest::Approx(shoelaceHullArea(pts)).epsilon(1e-12));
    }
    for (double eps : {0.1, 0.25, 0.4}) {
        const auto H = generator("hexagon", 2, eps);
        CHECK(H.volume() == doctest::Approx(shoelaceHullArea(H.vertices())).epsilon(1e-13));
        CHECK(H.volume() == doctest::Approx(2 * (1 + eps) * std::sqrt(1 - eps * eps)).epsilon(1e-13));
    }
}

TEST_CASE("linear images scale volume by the determinant") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 4; ++n) {
        const auto P = randomSymmetric(n, n + 3, 11 + n);
        const Mat L = randomWellConditioned(n, rng);
        const auto LP = applyLinear(P, L);
        CHECK(LP.volume() == doctest::Approx(std::abs(L.determinant()) * P.volume()).epsilon(1e-10));
        CHECK(LP.vertexCount() == P.vertexCount());
    }
    CHECK_THROWS_AS(applyLinear(generator("cube", 2), Mat::Zero(2, 2)), GeometryError);
}

TEST_CASE("clip additivity and analytic clips") {
    const auto cube = generator("cube", 3);
    const auto half = clip(cube, Halfspace::fromNormal(v3(1, 0, 0), 0.5));
    CHECK(half.volume() == doctest::Approx(6.0));
    const auto corner = clip(cube, Halfspace::fromNormal(v3(1, 1, 1), 2.0));
    CHECK(corner.volume() == doctest::Approx(8.0 - 1.0 / 6.0));
    CHECK_THROWS_AS(clip(cube, Halfspace::fromNormal(v3(1, 0, 0), -2.0)), GeometryError);
    CHECK(clip(cube, Halfspace::fromNormal(v3(1, 0, 0), 5.0)).volume() == doctest::Approx(8.0));

    for (std::uint64_t seed : {0u, 1u, 2u}) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        for (int n = 2; n <= 3; ++n) {
            const auto P = randomSymmetric(n, n + 4, seed + 100);
            for (int k = 0; k < 5; ++k) {
                Vec u(n);
                for (int i = 0; i < n; ++i) u(i) = g(rng);
                u.normalize();
                const double t = 0.3 * support(P, u) * std::uniform_real_distribution<double>(-1, 1)(rng);
                const Halfspace H{u, t};
                const double a = clip(P, H).volume();
                const double b = clip(P, H.complement()).volume();
                CHECK(a + b == doctest::Approx(P.volume()).epsilon(1e-10));
                CHECK(capVolume(P, u, t) == doctest::Approx(b).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("cap volumes: square slab and crosspolytope corner") {
    const auto square = generator("cube", 2);
    for (double t : {0.0, 0.5, 0.9, 0.999})
        CHECK(capVolume(square, v2(1, 0), t) == doctest::Approx(2 * (1 - t)).epsilon(1e-13));
    const auto diamond = generator("cross", 2);
    for (double D : {0.5, 0.1, 1e-3}) {
        // The cut triangle, measured by the shoelace oracle.
        const Points tri = {v2(1, 0), v2(1 - D, D), v2(1 - D, -D)};
        CHECK(capVolume(diamond, v2(1, 0), 1 - D) == doctest::Approx(shoelaceHullArea(tri)).epsilon(1e-12));
        CHECK(capVolume(diamond, v2(1, 0), 1 - D) == doctest::Approx(D * D).epsilon(1e-12));
    }
}

TEST_CASE("simplex fractions agree with clipping a simplex") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
        Points verts;
        verts.push_back(Vec::Zero(n));
        for (int i = 0; i < n; ++i) verts.push_back(Vec::Unit(n, i));
        const VPolytope S(verts);
        for (int trial = 0; trial < 20; ++trial) {
            std::array<double, kMaxDim + 1> values{};
            Vec a(n);
            const double c = u(rng);
            for (int i = 0; i < n; ++i) a(i) = u(rng);
            values[0] = c;
            for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i + 1)] = c + a(i);
            double expected;
            // f(x) = c + <a, x> >= 0 is the halfspace <-a, x> <= c.
            try {
                expected = a.norm() > 0 ? clip(S, Halfspace::fromNormal(-a, c)).volume() / S.volume() : (c >= 0);
            } catch (const GeometryError&) {
                expected = 0.0;
            }
            CHECK(simplexFractionAbove(values, n + 1) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    // A tiny corner keeps full relative precision.
    std::array<double, kMaxDim + 1> corner{1e-9, -1.0, -1.0, -1.0, 0.0};
    CHECK(simplexFractionAbove(corner, 4) == doctest::Approx(std::pow(1e-9 / (1 + 1e-9), 3)).epsilon(1e-12));
}

TEST_CASE("cone hull volume against the hull of the enlarged vertex set") {
    const auto diamond = generator("cross", 2);
    for (double h : {0.1, 0.5, 2.0}) {
        const Vec x = v2(0, 1 + h);
        CHECK(coneHullExcess(diamond, x) == doctest::Approx(h).epsilon(1e-13));
    }
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        for (int n = 2; n <= 3; ++n) {
            const auto P = randomSymmetric(n, n + 4, seed + 40);
            for (int k = 0; k < 5; ++k) {
                Vec x(n);
                for (int i = 0; i < n; ++i) x(i) = g(rng);
                Points pts = P.vertices();
                pts.push_back(x);
                CHECK(coneHullVolume(P, x) == doctest::Approx(VPolytope(pts).volume()).epsilon(1e-10));
            }
            CHECK(coneHullExcess(P, Vec::Zero(n)) == 0.0);
        }
    }
}

TEST_CASE("support, radial and origin checks") {
    const auto square = generator("cube", 2);
    CHECK(radial(square, v2(1, 0)) == doctest::Approx(1.0));
    CHECK(radial(square, v2(1, 1) / std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(support(square, v2(1, 1) / std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0)));
    const VPolytope shifted({v2(1, 1), v2(3, 1), v2(1, 3)});
    CHECK_FALSE(containsOriginInInterior(shifted));
    CHECK_THROWS_AS(radial(shifted, v2(1, 0)), GeometryError);
    CHECK(isCentrallySymmetric(square));
    CHECK_FALSE(isCentrallySymmetric(shifted));
    CHECK(shifted.centroid().isApprox(v2(5.0 / 3, 5.0 / 3), 1e-12));
}

TEST_CASE("second moment and vertex enumeration") {
    const Mat M = secondMoment(generator("cube", 2));
    CHECK(M(0, 0) == doctest::Approx(4.0 / 3.0));
    CHECK(M(1, 1) == doctest::Approx(4.0 / 3.0));
    CHECK(std::abs(M(0, 1)) < 1e-13);
    for (int n = 2; n <= 3; ++n) {
        const auto P = randomSymmetric(n, n + 3, 5);
        CHECK(sameVertexSet(enumerateVertices(hullFacets(P)), P.vertices(), 1e-9));
        double facetSum = 0.0;
        for (const auto& f : P.facets()) facetSum += f.offset * f.measure / n;
        CHECK(facetSum == doctest::Approx(P.volume()).epsilon(1e-11));
        for (const auto& f : P.facets()) CHECK(facetMeasure(f, P) == doctest::Approx(f.measure).epsilon(1e-12));
    }
}

TEST_CASE("cap profile matches direct cap volumes") {
    const auto P = randomSymmetric(3, 8, 9);
    const Vec u = v3(0.3, -0.5, 0.8).normalized();
    const CapProfile prof(P, u);
    for (double t : {-0.5, 0.0, 0.2, 0.6})
        CHECK(prof.volumeAbove(t) == doctest::Approx(capVolume(P, u, t)).epsilon(1e-14));
    CHECK(prof.volumeAbove(prof.maxHeight()) == 0.0);
    CHECK(prof.volumeAbove(prof.minHeight()) == doctest::Approx(P.volume()));
}
