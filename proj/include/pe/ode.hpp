#pragma once

#include <functional>

#include "pe/trajectory.hpp"

namespace pe {

// Queen path holding t + |Q(t) - S(t)| constant (the plateau of the improved
// three-servant algorithm), integrated at unit speed.
struct OdeSolution {
    SampledMotion motion;
    double tau0 = 0.0;
    double tau1 = 0.0;
    Point2 event_point;
    double preserved_cost = 0.0;
};

class ode_error : public std::runtime_error {
  public:
    explicit ode_error(const std::string& what) : std::runtime_error(what) {}
};

// Unit velocity enforcing cos(theta) = 1 - cos(phi) between the queen heading
// and the separation direction; of the two branches, the one closer to v_prev.
// Requires cos(phi) >= 0 (the servant is not receding from qp).
Point2 cost_preserving_velocity(Point2 qp, const Trajectory& servant, double t,
                                Point2 v_prev);

struct OdeEvent {
    Point2 line_dir;  // unit direction of the diameter acting as event line
    // Optional acceptance test for a detected crossing; a rejected crossing is
    // skipped and integration continues.
    std::function<bool(double t, Point2 p)> accept;
};

// Fixed-step RK4 of Q' = cost_preserving_velocity from (q0, t0), stopping at
// the first accepted sign change of cross(line_dir, Q); the crossing is
// refined by bisection to 1e-12. Throws ode_error when no event occurs before
// t_max or the cos(phi) >= 0 hypothesis fails mid-integration.
OdeSolution integrate_cost_preserving(const Trajectory& servant, Point2 q0, double t0,
                                      Point2 v0, const OdeEvent& event, double t_max,
                                      double h);

}  // namespace pe
