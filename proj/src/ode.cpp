#include "pe/ode.hpp"

#include <cmath>

namespace pe {

namespace {

Point2 branch_velocity(Point2 qp, const Trajectory& servant, double t, Point2 v_prev,
                       bool* hypothesis_ok) {
    Point2 s = servant.position_at(t);
    Point2 sep = s - qp;
    double d = norm(sep);
    if (d < 1e-12) throw ode_error("cost_preserving_velocity: coincident positions");
    Point2 w = sep / d;
    double cos_phi = dot(servant.velocity_at(t), Point2{-w.x, -w.y});
    if (cos_phi < -1e-12) {
        if (hypothesis_ok) { *hypothesis_ok = false; return {0, 0}; }
        throw ode_error("cost_preserving_velocity: cos(phi) < 0 (servant receding)");
    }
    double c = 1.0 - std::min(cos_phi, 1.0);  // cos(theta)
    double ssq = 1.0 - c * c;
    double sn = ssq > 0.0 ? std::sqrt(ssq) : 0.0;
    Point2 perp{-w.y, w.x};
    Point2 va = c * w + sn * perp;
    Point2 vb = c * w - sn * perp;
    if (hypothesis_ok) *hypothesis_ok = true;
    return dot(va, v_prev) >= dot(vb, v_prev) ? va : vb;
}

struct StepResult {
    Point2 p;
    bool ok;
};

StepResult rk4_step(const Trajectory& servant, Point2 p, double t, double h,
                    Point2 v_ref) {
    bool ok = true;
    auto f = [&](Point2 q, double tt) {
        bool o = true;
        Point2 v = branch_velocity(q, servant, tt, v_ref, &o);
        ok = ok && o;
        return v;
    };
    Point2 k1 = f(p, t);
    Point2 k2 = f(p + (h / 2) * k1, t + h / 2);
    Point2 k3 = f(p + (h / 2) * k2, t + h / 2);
    Point2 k4 = f(p + h * k3, t + h);
    return {p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), ok};
}

}  // namespace

Point2 cost_preserving_velocity(Point2 qp, const Trajectory& servant, double t,
                                Point2 v_prev) {
    return branch_velocity(qp, servant, t, v_prev, nullptr);
}

OdeSolution integrate_cost_preserving(const Trajectory& servant, Point2 q0, double t0,
                                      Point2 v0, const OdeEvent& event, double t_max,
                                      double h) {
    if (h <= 0.0) throw std::domain_error("integrate_cost_preserving: h <= 0");

    OdeSolution sol;
    sol.tau0 = t0;
    sol.preserved_cost = t0 + distance(q0, servant.position_at(t0));

    auto line_side = [&](Point2 p) { return cross(event.line_dir, p); };

    double t = t0;
    Point2 p = q0;
    Point2 vprev = v0;
    double side = line_side(p);
    sol.motion.samples.push_back({t, p, branch_velocity(p, servant, t, vprev, nullptr)});

    while (t < t_max) {
        double hs = std::min(h, t_max - t);
        StepResult st = rk4_step(servant, p, t, hs, vprev);
        if (!st.ok)
            throw ode_error("integrate_cost_preserving: cos(phi) >= 0 violated at t=" +
                            std::to_string(t));
        double tn = t + hs;
        double nside = line_side(st.p);
        bool crossed = (side < 0.0) != (nside < 0.0) && tn > t0 + 2 * h;
        if (crossed) {
            // bisect within [t, tn], re-integrating the partial step each probe
            double lo = t, hi = tn;
            Point2 plo = p;
            for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                double mid = 0.5 * (lo + hi);
                Point2 pm = rk4_step(servant, plo, lo, mid - lo, vprev).p;
                if ((line_side(pm) < 0.0) != (side < 0.0)) hi = mid;
                else { lo = mid; plo = pm; }
            }
            double tc = 0.5 * (lo + hi);
            Point2 pc = rk4_step(servant, plo, lo, tc - lo, vprev).p;
            if (!event.accept || event.accept(tc, pc)) {
                sol.tau1 = tc;
                sol.event_point = pc;
                sol.motion.samples.push_back(
                    {tc, pc, branch_velocity(pc, servant, tc, vprev, nullptr)});
                return sol;
            }
            // rejected crossing: fall through and keep integrating
        }
        vprev = branch_velocity(st.p, servant, tn, vprev, nullptr);
        t = tn;
        p = st.p;
        side = nside;
        sol.motion.samples.push_back({t, p, vprev});
    }
    throw ode_error("integrate_cost_preserving: no event before t_max");
}

}  // namespace pe
