#include <cmath>

#include "doctest.h"
#include "pe/geometry.hpp"

using namespace pe;

TEST_CASE("unit_point basic directions") {
    CHECK(unit_point(0).x == doctest::Approx(1.0));
    CHECK(unit_point(kPi / 2).y == doctest::Approx(1.0));
    CHECK(unit_point(kPi).x == doctest::Approx(-1.0));
    CHECK(norm(unit_point(1.234)) == doctest::Approx(1.0));
}

TEST_CASE("Point2 rejects non-finite components") {
    CHECK_THROWS_AS(Point2(std::nan(""), 0.0), std::domain_error);
    CHECK_THROWS_AS(Point2(0.0, INFINITY), std::domain_error);
}

TEST_CASE("Angle canonicalizes into [0, 2pi)") {
    CHECK(Angle(-kPi / 2).value() == doctest::Approx(3 * kPi / 2));
    CHECK(Angle(kTwoPi).value() == doctest::Approx(0.0));
    CHECK(Angle(5 * kTwoPi + 1.0).value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(Angle(std::nan("")), std::domain_error);
}

TEST_CASE("k_point endpoints and midpoint") {
    // rho=1 gives ki(-theta), rho=0 gives ki(pi-theta)
    Point2 a = k_point(0.7, 1.0);
    CHECK(a.x == doctest::Approx(std::cos(-0.7)));
    CHECK(a.y == doctest::Approx(std::sin(-0.7)));
    Point2 b = k_point(0.7, 0.0);
    CHECK(b.x == doctest::Approx(std::cos(kPi - 0.7)));
    // rho=1/2 is the center
    Point2 m = k_point(1.1, 0.5);
    CHECK(norm(m) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(k_point(0.5, 1.5), std::domain_error);
    CHECK_THROWS_AS(k_point(0.5, -0.1), std::domain_error);
}

TEST_CASE("ak_distance at published parameter pairs") {
    CHECK(ak_distance((0.27764 + 1.29839) / 2, 0.68648) ==
          doctest::Approx(1.2904116).epsilon(1e-6));
    CHECK(ak_distance((0.26738 + 1.2949) / 2, 0.70685) ==
          doctest::Approx(1.3261575).epsilon(1e-6));
    // rho = 1 puts K diametrally opposite (-1,0) when theta = 0
    CHECK(ak_distance(0.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("chord_length") {
    CHECK(chord_length(2 * kPi / 3) == doctest::Approx(std::sqrt(3.0)));
    CHECK(chord_length(kPi) == doctest::Approx(2.0));
    CHECK(chord_length(0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(chord_length(-0.1), std::domain_error);
    CHECK_THROWS_AS(chord_length(kTwoPi + 0.1), std::domain_error);
}

TEST_CASE("dot and cross conventions") {
    Point2 ex{1, 0}, ey{0, 1};
    CHECK(dot(ex, ey) == 0.0);
    CHECK(cross(ex, ey) == 1.0);
    CHECK(cross(ey, ex) == -1.0);
    CHECK(distance({3, 0}, {0, 4}) == doctest::Approx(5.0));
}
