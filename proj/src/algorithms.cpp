#include "pe/algorithms.hpp"

#include <cmath>

#include "pe/cost.hpp"
#include "pe/ode.hpp"

namespace pe {

namespace {

constexpr double kCondTol = 1e-12;

void check(std::vector<ConditionResult>& out, const std::string& name,
           double margin) {
    bool holds = margin >= -kCondTol;
    out.push_back({name, holds, margin});
    if (!holds)
        throw precondition_error(
            name, name + " violated (margin " + std::to_string(margin) + ")");
}

AlgorithmInstance finalize(AlgorithmInstance inst) {
    inst.cov = coverage(inst.robots());
    inst.search_time = inst.cov.search_time;
    return inst;
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Search1: return "search1";
        case Family::Search2: return "search2";
        case Family::Search3: return "search3";
        case Family::NSearch3: return "nsearch3";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "search1") return Family::Search1;
    if (name == "search2") return Family::Search2;
    if (name == "search3") return Family::Search3;
    if (name == "nsearch3") return Family::NSearch3;
    throw std::invalid_argument("unknown algorithm family: " + name);
}

int family_servants(Family f) {
    switch (f) {
        case Family::Search1: return 1;
        case Family::Search2: return 2;
        default: return 3;
    }
}

int family_arity(Family f) {
    switch (f) {
        case Family::Search1: return 2;
        case Family::Search2: return 2;
        default: return 3;
    }
}

std::vector<double> Params::as_vector(Family f) const {
    switch (f) {
        case Family::Search1: return {alpha.value(), beta.value()};
        case Family::Search2: return {alpha.value(), rho.value()};
        default: return {alpha.value(), beta.value(), rho.value()};
    }
}

Params Params::from_vector(Family f, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != family_arity(f))
        throw std::invalid_argument("parameter count mismatch");
    Params p;
    switch (f) {
        case Family::Search1:
            p.alpha = v[0]; p.beta = v[1]; break;
        case Family::Search2:
            p.alpha = v[0]; p.rho = v[1]; break;
        default:
            p.alpha = v[0]; p.beta = v[1]; p.rho = v[2]; break;
    }
    return p;
}

std::vector<Trajectory> AlgorithmInstance::robots() const {
    std::vector<Trajectory> r;
    r.push_back(queen);
    r.insert(r.end(), servants.begin(), servants.end());
    return r;
}

AlgorithmInstance build_search1(double alpha, double beta) {
    AlgorithmInstance inst;
    inst.family = Family::Search1;
    inst.params.alpha = alpha;
    inst.params.beta = beta;

    check(inst.validity, "alpha_nonnegative", alpha);
    check(inst.validity, "beta_in_range", std::min(beta, kTwoPi - beta));
    check(inst.validity, "queen_arc_nonnegative", kPi - alpha);
    check(inst.validity, "servant_arc_nonnegative", kPi + alpha - beta);

    Trajectory q;
    q.add_line_to(unit_point(kPi));
    q.add_arc(kPi, +1, kPi - alpha);
    q.add_line_to(unit_point(-alpha + beta));
    q.add_arc(beta - alpha, -1, beta);
    inst.queen = q;

    Trajectory s1;
    s1.add_line_to(unit_point(kPi));
    s1.add_arc(kPi, -1, kPi + alpha - beta);
    inst.servants.push_back(s1);

    return finalize(std::move(inst));
}

AlgorithmInstance build_search2(double alpha, double rho) {
    AlgorithmInstance inst;
    inst.family = Family::Search2;
    inst.params.alpha = alpha;
    inst.params.rho = rho;

    check(inst.validity, "rho_in_unit_interval", std::min(rho, 1.0 - rho));
    check(inst.validity, "alpha_in_range", std::min(alpha, kPi - alpha));
    double ak = ak_distance(alpha / 2, rho);
    check(inst.validity, "queen_arrives_before_search_ends",
          (kPi - alpha / 2) - (alpha + ak + 2 - 2 * rho));

    double t_search = 1 + kPi - alpha / 2;
    Point2 exit_side = unit_point(-alpha / 2);

    Trajectory q;
    q.add_line_to(unit_point(kPi - alpha));
    q.add_arc(kPi - alpha, +1, alpha);
    q.add_line_to(k_point(alpha / 2, rho));
    q.add_line_to(exit_side);
    if (t_search > q.total_duration()) q.add_wait(t_search - q.total_duration());
    inst.queen = q;

    Trajectory s1;
    s1.add_line_to(unit_point(kPi - alpha));
    s1.add_arc(kPi - alpha, -1, kPi - alpha / 2);
    inst.servants.push_back(s1);

    Trajectory s2;
    s2.add_line_to(unit_point(kPi));
    s2.add_arc(kPi, +1, kPi - alpha / 2);
    inst.servants.push_back(s2);

    return finalize(std::move(inst));
}

namespace {

// Shared servant set and full-line queen of the three-servant family; the
// improved variant reuses the servants and truncates the queen's line phase.
struct ThreeServantParts {
    Trajectory queen_full;  // line, arc, full line to K, line to exit, wait
    std::vector<Trajectory> servants;
    double ak;
    double t_search;
    Point2 exit_point;
};

ThreeServantParts make_search3_parts(std::vector<ConditionResult>& validity,
                                     double alpha, double beta, double rho) {
    check(validity, "rho_in_unit_interval", std::min(rho, 1.0 - rho));
    check(validity, "alpha_nonnegative", alpha);
    check(validity, "alpha_le_beta", beta - alpha);
    double gamma = (alpha + beta) / 2;
    check(validity, "arcs_fit_on_circle", kPi - gamma);
    double ak = ak_distance(gamma, rho);
    check(validity, "chord_reachable_after_line", alpha + ak - beta);
    check(validity, "queen_arrives_before_search_ends",
          (kPi - gamma) - (alpha + ak + 2 - 2 * rho));

    ThreeServantParts parts;
    parts.ak = ak;
    parts.t_search = 1 + kPi - gamma;
    parts.exit_point = unit_point(-gamma);

    Trajectory q;
    q.add_line_to(unit_point(kPi - alpha));
    q.add_arc(kPi - alpha, +1, alpha);
    q.add_line_to(k_point(gamma, rho));
    q.add_line_to(parts.exit_point);
    if (parts.t_search > q.total_duration())
        q.add_wait(parts.t_search - q.total_duration());
    parts.queen_full = q;

    Trajectory s1;
    s1.add_line_to(unit_point(kPi - alpha - beta));
    s1.add_arc(kPi - alpha - beta, -1, kPi - gamma);
    parts.servants.push_back(s1);

    Trajectory s2;
    s2.add_line_to(unit_point(kPi));
    s2.add_arc(kPi, +1, kPi - gamma);
    parts.servants.push_back(s2);

    Trajectory s3;
    s3.add_line_to(unit_point(kPi - alpha - beta));
    s3.add_arc(kPi - alpha - beta, +1, beta);
    parts.servants.push_back(s3);

    return parts;
}

}  // namespace

AlgorithmInstance build_search3(double alpha, double beta, double rho) {
    AlgorithmInstance inst;
    inst.family = Family::Search3;
    inst.params.alpha = alpha;
    inst.params.beta = beta;
    inst.params.rho = rho;

    ThreeServantParts parts = make_search3_parts(inst.validity, alpha, beta, rho);
    inst.queen = parts.queen_full;
    inst.servants = parts.servants;
    return finalize(std::move(inst));
}

AlgorithmInstance build_nsearch3(double alpha, double beta, double rho,
                                 const NSearch3Options& opts) {
    AlgorithmInstance inst;
    inst.family = Family::NSearch3;
    inst.params.alpha = alpha;
    inst.params.beta = beta;
    inst.params.rho = rho;

    ThreeServantParts parts = make_search3_parts(inst.validity, alpha, beta, rho);
    const Trajectory& s1 = parts.servants[0];
    const Trajectory& qfull = parts.queen_full;
    double gamma = (alpha + beta) / 2;

    // tau0: stationary point of t + |Q(t) - S1(t)| while the queen moves
    // toward K, i.e. the earliest sign change of 1 + d/dt|Q - S1|.
    double tau0 = 0.0;
    if (opts.force_tau0) {
        tau0 = *opts.force_tau0;
    } else {
        double lo = 1 + alpha + 1e-6, hi = 1 + alpha + parts.ak - 1e-6;
        auto rate = [&](double t) { return 1.0 + distance_rate(s1, qfull, t); };
        const double scan = 1e-4;
        double a = lo, fa = rate(a);
        bool found = false;
        for (double t = lo + scan; t <= hi + scan / 2; t += scan) {
            double tt = std::min(t, hi);
            double ft = rate(tt);
            if ((fa > 0) != (ft > 0)) {
                double ba = a, bb = tt;
                while (bb - ba > 1e-10) {
                    double m = 0.5 * (ba + bb);
                    if ((rate(m) > 0) == (fa > 0)) ba = m;
                    else bb = m;
                }
                tau0 = 0.5 * (ba + bb);
                found = true;
                break;
            }
            a = tt;
            fa = ft;
        }
        if (!found)
            throw precondition_error(
                "condition_i_tau0_in_window",
                "no stationary point of t + |Q - S1| while moving toward K");
    }
    check(inst.validity, "condition_i_tau0_in_window",
          parts.ak - std::abs(tau0 - 1 - alpha));
    check(inst.validity, "s3_finishes_before_tau0", tau0 - (1 + beta));

    CriticalAngles ca = critical_angles(s1, qfull, tau0);
    check(inst.validity, "condition_ii_cos_phi_nonnegative", std::cos(ca.phi));

    Point2 p_tau0 = qfull.position_at(tau0);
    Point2 v_tau0 = qfull.velocity_at(tau0);

    Trajectory q;
    q.add_line_to(unit_point(kPi - alpha));
    q.add_arc(kPi - alpha, +1, alpha);
    q.add_line_to(p_tau0);

    PlateauInfo info;
    info.tau0 = tau0;

    if (opts.zero_length_plateau) {
        info.tau1 = tau0;
        info.event_point = p_tau0;
        info.preserved_cost = tau0 + distance(p_tau0, s1.position_at(tau0));
        inst.validity.push_back({"condition_iii_equidistance_event", true, 0.0});
    } else {
        OdeEvent event;
        event.line_dir = unit_point(-gamma);
        // A crossing is only a valid hand-off point if continuing on the
        // straight line to the exit keeps t + |Q - S1| non-increasing;
        // otherwise the plateau grazed the bisector and must continue.
        Point2 exit_pt = parts.exit_point;
        event.accept = [&s1, exit_pt](double tc, Point2 pc) {
            Point2 leg = exit_pt - pc;
            double len = norm(leg);
            if (len < 1e-12) return true;
            Point2 u = leg / len;
            Point2 sep = s1.position_at(tc) - pc;
            double d = norm(sep);
            double ctheta = dot(u, sep) / d;
            double cphi = dot(s1.velocity_at(tc), Point2{-sep.x / d, -sep.y / d});
            return 1.0 - (cphi + ctheta) <= 1e-9;
        };
        OdeSolution sol;
        try {
            sol = integrate_cost_preserving(s1, p_tau0, tau0, v_tau0, event,
                                            parts.t_search, opts.ode_step);
        } catch (const ode_error& e) {
            inst.validity.push_back({"condition_iii_equidistance_event", false, -1.0});
            throw precondition_error("condition_iii_equidistance_event", e.what());
        }
        inst.validity.push_back({"condition_iii_equidistance_event", true, 0.0});
        info.tau1 = sol.tau1;
        info.event_point = sol.event_point;
        info.preserved_cost = sol.preserved_cost;
        q.add_sampled(std::move(sol.motion));
    }

    check(inst.validity, "condition_iv_tau1_before_search_end",
          parts.t_search - info.tau1);
    info.queen_arrival = info.tau1 + distance(info.event_point, parts.exit_point);
    check(inst.validity, "queen_final_leg_before_search_end",
          parts.t_search - info.queen_arrival);

    q.add_line_to(parts.exit_point);
    if (parts.t_search > q.total_duration())
        q.add_wait(parts.t_search - q.total_duration());
    inst.queen = q;
    inst.servants = parts.servants;
    inst.plateau = info;
    return finalize(std::move(inst));
}

AlgorithmInstance build(Family f, const Params& p, const NSearch3Options& opts) {
    switch (f) {
        case Family::Search1:
            return build_search1(p.alpha.value(), p.beta.value());
        case Family::Search2:
            return build_search2(p.alpha.value(), p.rho.value());
        case Family::Search3:
            return build_search3(p.alpha.value(), p.beta.value(), p.rho.value());
        case Family::NSearch3:
            return build_nsearch3(p.alpha.value(), p.beta.value(), p.rho.value(),
                                  opts);
    }
    throw std::logic_error("unreachable");
}

}  // namespace pe
