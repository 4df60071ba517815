#include <doctest.h>

#include <cmath>
#include <random>

#include "wedgewave/geometry.hpp"

using namespace wedgewave;

TEST_CASE("N=1 images: identity and the y=0 mirror") {
    const auto terms = build_wedge_images(1);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].sign == +1);
    CHECK(terms[0].isometry.a == 1.0);
    CHECK(terms[0].isometry.d == 1.0);
    CHECK(terms[1].sign == -1);
    CHECK(terms[1].isometry.a == 1.0);
    CHECK(terms[1].isometry.d == -1.0);
    CHECK(terms[1].isometry.b == 0.0);
    CHECK(terms[1].isometry.c == 0.0);
}

TEST_CASE("N=2 images carry the corner-reflector sign pattern") {
    const auto terms = build_wedge_images(2);
    REQUIRE(terms.size() == 4);
    // list order: identity, mirror, rotation by pi, rotated mirror
    CHECK(terms[0].sign == +1);
    CHECK(terms[1].sign == -1);
    CHECK(terms[2].sign == +1);
    CHECK(terms[3].sign == -1);
    // entries snap to exact integers
    CHECK(terms[2].isometry.a == -1.0);
    CHECK(terms[2].isometry.d == -1.0);
    CHECK(terms[2].isometry.b == 0.0);
    CHECK(terms[3].isometry.a == -1.0);
    CHECK(terms[3].isometry.d == 1.0);
    // the four signed argument maps are exactly (x,y)+, (x,-y)-, (-x,-y)+, (-x,y)-
    double u, v;
    terms[1].isometry.apply(2.0, 3.0, u, v);
    CHECK(u == 2.0);
    CHECK(v == -3.0);
    terms[2].isometry.apply(2.0, 3.0, u, v);
    CHECK(u == -2.0);
    CHECK(v == -3.0);
    terms[3].isometry.apply(2.0, 3.0, u, v);
    CHECK(u == -2.0);
    CHECK(v == 3.0);
}

TEST_CASE("N=3 images reproduce the six 60-degree argument maps exactly") {
    const auto terms = build_wedge_images(3);
    REQUIRE(terms.size() == 6);
    const double s3 = std::sqrt(3.0) / 2.0;
    // rotation by 120 degrees and its mirror partner, snapped entries bitwise
    CHECK(terms[2].sign == +1);
    CHECK(terms[2].isometry.a == -0.5);
    CHECK(terms[2].isometry.b == -s3);
    CHECK(terms[2].isometry.c == s3);
    CHECK(terms[2].isometry.d == -0.5);
    CHECK(terms[3].sign == -1);
    CHECK(terms[3].isometry.a == -0.5);
    CHECK(terms[3].isometry.b == s3);
    CHECK(terms[3].isometry.c == s3);
    CHECK(terms[3].isometry.d == 0.5);
    CHECK(terms[4].sign == +1);
    CHECK(terms[4].isometry.a == -0.5);
    CHECK(terms[4].isometry.b == s3);
    CHECK(terms[4].isometry.c == -s3);
    CHECK(terms[4].isometry.d == -0.5);
    CHECK(terms[5].sign == -1);
    CHECK(terms[5].isometry.a == -0.5);
    CHECK(terms[5].isometry.b == -s3);
    CHECK(terms[5].isometry.c == -s3);
    CHECK(terms[5].isometry.d == 0.5);
}

TEST_CASE("build_wedge_images rejects n < 1") {
    CHECK_THROWS_AS(build_wedge_images(0), std::invalid_argument);
    CHECK_THROWS_AS(build_wedge_images(-2), std::invalid_argument);
}

TEST_CASE("inside_wedge classification") {
    CHECK(inside_wedge(3, 5.0, 3.0));        // ~31 degrees < 60
    CHECK(!inside_wedge(3, 1.0, 2.0));       // ~63 degrees > 60
    CHECK(!inside_wedge(2, 4.0, 0.0));       // wall points are outside
    CHECK(!inside_wedge(2, -4.0, 0.0));
    CHECK(!inside_wedge(2, 0.0, 0.0));       // origin
    CHECK(inside_wedge(1, -3.0, 0.1));       // N=1 wedge is the upper half plane
    CHECK(!inside_wedge(1, 3.0, -0.1));
    CHECK(!inside_wedge(4, 1.0, 1.0));       // exactly the 45-degree wall for N=4
}

TEST_CASE("verify_closure accepts built image sets") {
    for (int n : {1, 2, 3, 4, 5, 6, 7, 8}) {
        const ClosureReport rep = verify_closure(build_wedge_images(n));
        CAPTURE(n);
        CHECK(rep.pass);
        CHECK(rep.max_deviation < 1e-10);
    }
    // exact trig entries keep N=3 and N=6 at machine deviation
    CHECK(verify_closure(build_wedge_images(3)).max_deviation < 1e-14);
    CHECK(verify_closure(build_wedge_images(6)).max_deviation < 1e-14);
}

TEST_CASE("verify_closure flags a corrupted sign") {
    auto terms = build_wedge_images(3);
    terms[3].sign = +1;
    const ClosureReport rep = verify_closure(terms);
    CHECK(!rep.pass);
    bool mentions_sign = false;
    for (const auto& f : rep.failures)
        if (f.find("sign") != std::string::npos) mentions_sign = true;
    CHECK(mentions_sign);
}

TEST_CASE("verify_closure flags an off-group matrix") {
    auto terms = build_wedge_images(2);
    terms[2].isometry.a += 1e-6;
    CHECK(!verify_closure(terms).pass);
}

TEST_CASE("the 2N mapped wedges tile the plane") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int n = 1; n <= 8; ++n) {
        const auto terms = build_wedge_images(n);
        for (int trial = 0; trial < 200; ++trial) {
            const double x = coord(rng), y = coord(rng);
            int hits = 0;
            for (const auto& term : terms) {
                double u, v;
                term.isometry.apply(x, y, u, v);
                if (inside_wedge(n, u, v)) ++hits;
            }
            CAPTURE(n);
            CAPTURE(x);
            CAPTURE(y);
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("wall reflections compose to the rotation by 2 pi / N") {
    for (int n = 1; n <= 8; ++n) {
        const PlaneIsometry m0 = reflection_across_x_axis();
        const PlaneIsometry m_wall = rotation(2.0 * M_PI / n).compose(m0);
        const PlaneIsometry composed = m_wall.compose(m0);
        CHECK(composed.max_abs_diff(rotation(2.0 * M_PI / n)) < 1e-12);
    }
}
