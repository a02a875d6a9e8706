#include <sstream>

#include "doctest.h"
#include "pe/trajectory.hpp"

using namespace pe;

namespace {

// Two robots splitting the circle: ccw and cw from ki(pi) after a radial line.
std::vector<Trajectory> split_pair(double ccw_len, double cw_len) {
    Trajectory a;
    a.add_line_to(unit_point(kPi));
    a.add_arc(kPi, +1, ccw_len);
    Trajectory b;
    b.add_line_to(unit_point(kPi));
    b.add_arc(kPi, -1, cw_len);
    return {a, b};
}

}  // namespace

TEST_CASE("phases chain continuously or are rejected") {
    Trajectory t;
    t.add_line_to(unit_point(0));
    CHECK_THROWS_AS(t.add_arc(kPi / 2, +1, 1.0), std::domain_error);  // wrong start
    t.add_arc(0, +1, kPi / 2);
    CHECK(t.total_duration() == doctest::Approx(1 + kPi / 2));
    CHECK(t.end_point().y == doctest::Approx(1.0));
}

TEST_CASE("position and velocity are unit-speed and right-continuous") {
    Trajectory t;
    t.add_line_to(unit_point(kPi));
    t.add_arc(kPi, +1, 1.0);
    t.add_wait(0.5);
    // at the line/arc boundary the right limit is the arc tangent
    Point2 v = t.velocity_at(1.0);
    CHECK(norm(v) == doctest::Approx(1.0));
    CHECK(dot(v, Point2{0, -1}) == doctest::Approx(1.0));  // ccw tangent at pi
    CHECK(norm(t.velocity_at(2.2)) == 0.0);                // waiting
    CHECK(norm(t.velocity_at(99.0)) == 0.0);               // after completion
    CHECK(verify_unit_speed(t, 1000) <= 1e-12);
    // parked at the final point forever
    Point2 e = t.position_at(1e6);
    CHECK(distance(e, t.end_point()) == 0.0);
}

TEST_CASE("degenerate phases are dropped") {
    Trajectory t;
    t.add_line_to({0, 0});  // zero-length line
    t.add_arc(0, +1, 0.0);  // zero-length arc
    CHECK(t.phases().empty());
    CHECK(t.total_duration() == 0.0);
}

TEST_CASE("coverage attributes the circle to the first visitor") {
    auto pair = split_pair(1.5 * kPi, 0.5 * kPi);
    ArcCoverage cov = coverage(pair);
    CHECK(cov.uncovered_measure == doctest::Approx(0.0));
    CHECK(cov.search_time == doctest::Approx(1 + 1.5 * kPi));
    double len0 = 0.0, len1 = 0.0;
    for (const auto& a : cov.arcs)
        (a.robot == 0 ? len0 : len1) += a.arc.length;
    CHECK(len0 == doctest::Approx(1.5 * kPi).epsilon(1e-9));
    CHECK(len1 == doctest::Approx(0.5 * kPi).epsilon(1e-9));
}

TEST_CASE("queen wins ties on simultaneously reached points") {
    // both sweep the same half at identical times; robot 0 takes everything
    auto pair = split_pair(kTwoPi, kTwoPi);
    pair[1] = pair[0];
    ArcCoverage cov = coverage(pair);
    for (const auto& a : cov.arcs) CHECK(a.robot == 0);
}

TEST_CASE("incomplete coverage throws with the gap listed") {
    auto pair = split_pair(1.0, 1.0);  // leaves 2pi-2 unsearched
    CHECK_THROWS_AS(coverage(pair), infeasible_error);
    ArcCoverage cov = coverage_report(pair);
    CHECK(cov.uncovered_measure == doctest::Approx(kTwoPi - 2.0).epsilon(1e-9));
}

TEST_CASE("exploration intervals merge adjacent windows") {
    auto pair = split_pair(kPi, kPi);
    ArcCoverage cov = coverage(pair);
    REQUIRE(cov.exploration.size() == 2);
    REQUIRE(cov.exploration[0].size() == 1);
    CHECK(cov.exploration[0][0].first == doctest::Approx(1.0));
    CHECK(cov.exploration[0][0].second == doctest::Approx(1 + kPi));
}

TEST_CASE("first_visit finds time and finder") {
    auto pair = split_pair(1.5 * kPi, 0.5 * kPi);
    auto fv = first_visit(pair, kPi + 0.3);  // ccw side
    REQUIRE(fv.has_value());
    CHECK(fv->second == 0);
    CHECK(fv->first == doctest::Approx(1.3));
    auto fv2 = first_visit(pair, kPi - 0.3);  // cw side
    REQUIRE(fv2.has_value());
    CHECK(fv2->second == 1);
    CHECK(fv2->first == doctest::Approx(1.3));
    // seam crossing: the ccw sweep passes angle 0 at t = 1 + pi
    auto fv3 = first_visit(pair, 0.0);
    REQUIRE(fv3.has_value());
    CHECK(fv3->first == doctest::Approx(1 + kPi));
}

TEST_CASE("csv export row count and format") {
    auto pair = split_pair(kPi, kPi);
    std::ostringstream os;
    export_csv(pair, 2.0, 0.3, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "robot,t,x,y");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 2 * 8);  // ceil(2.0/0.3)+1 = 8 rows per robot
}
