#include <cmath>

#include "doctest.h"
#include "pe/algorithms.hpp"
#include "pe/cost.hpp"
#include "pe/ode.hpp"

using namespace pe;

namespace {

// Servant sweeping cw like the long sweep of the three-servant algorithms.
Trajectory cw_sweep(double from, double length) {
    Trajectory s(unit_point(from));
    s.add_arc(from, -1, length);
    return s;
}

}  // namespace

TEST_CASE("cost-preserving velocity is unit and keeps the rate at zero") {
    Trajectory s = cw_sweep(1.5656, 2.5);
    Point2 q{0.0265, -0.2152};  // a point well inside the disk
    Point2 vprev{0.9788, -0.2052};
    Point2 v = cost_preserving_velocity(q, s, 0.2, vprev);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
    // cos(theta) = 1 - cos(phi) by construction
    Point2 sp = s.position_at(0.2);
    Point2 w = (sp - q) / distance(sp, q);
    double cphi = dot(s.velocity_at(0.2), Point2{-w.x, -w.y});
    CHECK(dot(v, w) == doctest::Approx(1.0 - cphi).epsilon(1e-12));
}

TEST_CASE("velocity branch follows the previous heading") {
    Trajectory s = cw_sweep(1.5656, 2.5);
    Point2 q{0.0265, -0.2152};
    Point2 va = cost_preserving_velocity(q, s, 0.2, {0.9, -0.2});
    Point2 vb = cost_preserving_velocity(q, s, 0.2, {-0.2, -0.9});
    CHECK(dot(va, vb) < 1.0 - 1e-9);  // genuinely different branches
}

TEST_CASE("receding servant is rejected") {
    Trajectory s(Point2{1, 0});
    s.add_line_to({3, 0});
    CHECK_THROWS_AS(cost_preserving_velocity({0, 0}, s, 0.5, {1, 0}), ode_error);
}

TEST_CASE("integration stops on the event line and preserves the cost") {
    AlgorithmInstance base = build_search3(0.27764, 1.29839, 0.68648);
    const Trajectory& s1 = base.servants[0];
    double tau0 = 2.3264060;
    Point2 q0 = base.queen.position_at(tau0);
    Point2 v0 = base.queen.velocity_at(tau0);
    OdeEvent ev;
    ev.line_dir = unit_point(-(0.27764 + 1.29839) / 2);
    OdeSolution sol = integrate_cost_preserving(s1, q0, tau0, v0, ev, 3.4, 1e-5);
    // without an acceptance filter the first crossing is the graze
    CHECK(sol.tau1 == doctest::Approx(2.7858156).epsilon(1e-4));
    CHECK(std::abs(cross(ev.line_dir, sol.event_point)) <= 1e-9);
    double c = sol.tau1 + distance(sol.event_point, s1.position_at(sol.tau1));
    CHECK(c == doctest::Approx(sol.preserved_cost).epsilon(1e-7));
}

TEST_CASE("acceptance filter skips crossings and finds the next one") {
    AlgorithmInstance base = build_search3(0.27764, 1.29839, 0.68648);
    const Trajectory& s1 = base.servants[0];
    double tau0 = 2.3264060;
    Point2 q0 = base.queen.position_at(tau0);
    Point2 v0 = base.queen.velocity_at(tau0);
    OdeEvent ev;
    ev.line_dir = unit_point(-(0.27764 + 1.29839) / 2);
    int rejected = 0;
    ev.accept = [&](double t, Point2) {
        if (t < 2.8) { ++rejected; return false; }
        return true;
    };
    OdeSolution sol = integrate_cost_preserving(s1, q0, tau0, v0, ev, 3.4, 1e-5);
    CHECK(rejected == 1);
    CHECK(sol.tau1 == doctest::Approx(2.8928774).epsilon(1e-4));
}

TEST_CASE("missing event reports an error") {
    AlgorithmInstance base = build_search3(0.27764, 1.29839, 0.68648);
    double tau0 = 2.3264060;
    Point2 q0 = base.queen.position_at(tau0);
    Point2 v0 = base.queen.velocity_at(tau0);
    OdeEvent ev;
    ev.line_dir = unit_point(-(0.27764 + 1.29839) / 2);
    ev.accept = [](double, Point2) { return false; };  // never accept
    CHECK_THROWS_AS(integrate_cost_preserving(base.servants[0], q0, tau0, v0, ev,
                                              2.95, 1e-5),
                    ode_error);
}

TEST_CASE("step size controls plateau accuracy") {
    NSearch3Options coarse, fine;
    coarse.ode_step = 1e-3;
    fine.ode_step = 1e-5;
    auto residual = [](const AlgorithmInstance& a) {
        const PlateauInfo& pl = *a.plateau;
        double worst = 0.0;
        for (int i = 0; i <= 500; ++i) {
            double t = pl.tau0 + (pl.tau1 - pl.tau0) * i / 500.0;
            double c =
                t + distance(a.queen.position_at(t), a.servants[0].position_at(t));
            worst = std::max(worst, std::abs(c - pl.preserved_cost));
        }
        return worst;
    };
    double rc = residual(build_nsearch3(0.27764, 1.29839, 0.68648, coarse));
    double rf = residual(build_nsearch3(0.27764, 1.29839, 0.68648, fine));
    CHECK(rf < rc);
    CHECK(rf <= 1e-6);
}

TEST_CASE("invalid step is rejected") {
    Trajectory s = cw_sweep(1.5656, 2.5);
    OdeEvent ev;
    ev.line_dir = {1, 0};
    CHECK_THROWS_AS(
        integrate_cost_preserving(s, {0, -0.2}, 0.0, {1, 0}, ev, 1.0, 0.0),
        std::domain_error);
}
