#include "pe/verify.hpp"

#include <cmath>
#include <functional>

#include "pe/algorithms.hpp"
#include "pe/bounds.hpp"
#include "pe/cost.hpp"
#include "pe/optimizer.hpp"

namespace pe {

namespace {

struct PaperParams {
    double a0, b0;                    // one-servant optimum
    double s2a = 0.6361, s2r = 0.7944;
    double s3a = 0.26738, s3b = 1.2949, s3r = 0.70685;
    double n3a = 0.27764, n3b = 1.29839, n3r = 0.68648;
};

PaperParams paper_params() {
    BoundSolution s = solve_alpha0();
    PaperParams p;
    p.a0 = s.unknowns.at("alpha0");
    p.b0 = s.unknowns.at("beta0");
    return p;
}

double fd_separation_rate(const Trajectory& S, const Trajectory& Q, double t) {
    const double h = 1e-6;
    auto d = [&](double x) { return distance(Q.position_at(x), S.position_at(x)); };
    return (d(t + h) - d(t - h)) / (2 * h);
}

using CheckFn = std::function<CheckResult(const VerifyOptions&)>;

struct Check {
    std::string module;
    std::string name;
    CheckFn fn;
};

CheckResult make(const std::string& module, const std::string& name,
                 double observed, double bound, bool pass,
                 const std::string& detail = "") {
    return {module, name, pass, observed, bound, detail};
}

std::vector<Check> all_checks() {
    std::vector<Check> cs;
    auto add = [&](std::string module, std::string name,
                   std::function<CheckResult()> body) {
        CheckFn fn = [module, name, body](const VerifyOptions&) { return body(); };
        cs.push_back({module, name, fn});
    };

    auto builtins = [](const VerifyOptions& o) {
        PaperParams p = paper_params();
        NSearch3Options nopts;
        nopts.ode_step = o.ode_step;
        std::vector<AlgorithmInstance> v;
        v.push_back(build_search1(p.a0, p.b0));
        v.push_back(build_search2(p.s2a, p.s2r));
        v.push_back(build_search3(p.s3a, p.s3b, p.s3r));
        v.push_back(build_nsearch3(p.n3a, p.n3b, p.n3r, nopts));
        return v;
    };

    cs.push_back({"trajectory", "unit_speed_builtins", [builtins](const VerifyOptions& o) {
        double worst = 0.0;
        for (const auto& inst : builtins(o))
            for (const auto& tr : inst.robots())
                worst = std::max(worst, verify_unit_speed(tr, 20000));
        return make("trajectory", "unit_speed_builtins", worst, 1e-5, worst <= 1e-5);
    }});

    cs.push_back({"trajectory", "coverage_complete_builtins",
                  [builtins](const VerifyOptions& o) {
        double worst = 0.0;
        for (const auto& inst : builtins(o))
            worst = std::max(worst, inst.cov.uncovered_measure);
        return make("trajectory", "coverage_complete_builtins", worst, 1e-6,
                    worst <= 1e-6);
    }});

    add("cost", "head_on_rate_is_minus_two", [] {
        Trajectory q({0, 0});
        q.add_line_to({1, 0});
        Trajectory s({2, 0});
        s.add_line_to({1.2, 0});
        double err = std::abs(distance_rate(s, q, 0.3) + 2.0);
        return make("cost", "head_on_rate_is_minus_two", err, 1e-9, err <= 1e-9);
    });

    add("cost", "distance_rate_matches_finite_difference", [] {
        PaperParams p = paper_params();
        AlgorithmInstance a = build_search1(p.a0, p.b0);
        AlgorithmInstance b = build_search2(p.s2a, p.s2r);
        double worst = 0.0;
        for (double t = 1.01; t < 1 + kPi - p.a0 - 0.01; t += 0.01)
            worst = std::max(worst,
                             std::abs(distance_rate(a.servants[0], a.queen, t) -
                                      fd_separation_rate(a.servants[0], a.queen, t)));
        for (double t = 1.01; t < 1 + p.s2a - 0.01; t += 0.005)
            worst = std::max(worst,
                             std::abs(distance_rate(b.servants[0], b.queen, t) -
                                      fd_separation_rate(b.servants[0], b.queen, t)));
        return make("cost", "distance_rate_matches_finite_difference", worst, 1e-4,
                    worst <= 1e-4);
    });

    add("cost", "rate_sign_matches_monotonicity", [] {
        PaperParams p = paper_params();
        AlgorithmInstance a = build_search2(p.s2a, p.s2r);
        int mismatches = 0;
        for (double t = 1.01; t < a.search_time - 0.01; t += 0.003) {
            double g = 1.0 + distance_rate(a.servants[0], a.queen, t);
            if (std::abs(g) < 1e-3) continue;  // skip near the stationary points
            double fd = 1.0 + fd_separation_rate(a.servants[0], a.queen, t);
            if ((g > 0) != (fd > 0)) ++mismatches;
        }
        return make("cost", "rate_sign_matches_monotonicity", mismatches, 0,
                    mismatches == 0);
    });

    add("cost", "supremum_dominates_pointwise", [] {
        PaperParams p = paper_params();
        AlgorithmInstance a = build_search1(p.a0, p.b0);
        double cost = evacuation_cost(a).cost;
        double worst = 0.0;  // largest pointwise excess over the supremum
        for (int i = 0; i < 1000; ++i) {
            double th = kTwoPi * i / 1000.0;
            worst = std::max(worst, cost_if_found(a, th) - cost);
        }
        return make("cost", "supremum_dominates_pointwise", worst, 1e-9,
                    worst <= 1e-9);
    });

    add("cost", "search1_phase_monotonicity", [] {
        PaperParams p = paper_params();
        AlgorithmInstance a = build_search1(p.a0, p.b0);
        const Trajectory& q = a.queen;
        const Trajectory& s = a.servants[0];
        auto g = [&](double t) { return t + distance(q.position_at(t), s.position_at(t)); };
        // servant search window split by the queen's phase boundaries
        double q1_end = 1 + kPi - p.a0;
        double q2_end = q1_end + 2 * std::sin(p.b0 / 2);
        double worst = 0.0;
        for (double t = 1.0; t + 1e-3 <= q1_end; t += 1e-3)
            worst = std::max(worst, g(t) - g(t + 1e-3));  // must be nondecreasing
        for (double t = q1_end; t + 1e-3 <= q2_end; t += 1e-3)
            worst = std::max(worst, g(t + 1e-3) - g(t));  // must be nonincreasing
        return make("cost", "search1_phase_monotonicity", worst, 1e-9, worst <= 1e-9);
    });

    add("cost", "symmetry_line_equidistance", [] {
        PaperParams p = paper_params();
        double worst = 0.0;
        for (const AlgorithmInstance& a :
             {build_search2(p.s2a, p.s2r), build_search3(p.s3a, p.s3b, p.s3r)}) {
            // the queen's final straight leg lies on the symmetry diameter
            double lo = a.queen.phase_starts()[3], hi = a.queen.phase_starts()[4];
            for (int i = 0; i <= 100; ++i) {
                double t = lo + (hi - lo) * i / 100.0;
                Point2 q = a.queen.position_at(t);
                worst = std::max(worst,
                                 std::abs(distance(q, a.servants[0].position_at(t)) -
                                          distance(q, a.servants[1].position_at(t))));
            }
        }
        return make("cost", "symmetry_line_equidistance", worst, 1e-9, worst <= 1e-9);
    });

    cs.push_back({"algorithms", "plateau_cost_constant", [](const VerifyOptions& o) {
        PaperParams p = paper_params();
        NSearch3Options nopts;
        nopts.ode_step = o.ode_step;
        AlgorithmInstance a = build_nsearch3(p.n3a, p.n3b, p.n3r, nopts);
        const PlateauInfo& pl = *a.plateau;
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            double t = pl.tau0 + (pl.tau1 - pl.tau0) * i / 2000.0;
            double c = t + distance(a.queen.position_at(t),
                                    a.servants[0].position_at(t));
            worst = std::max(worst, std::abs(c - pl.preserved_cost));
        }
        return make("algorithms", "plateau_cost_constant", worst, 1e-4,
                    worst <= 1e-4);
    }});

    add("algorithms", "degenerate_plateau_matches_search3", [] {
        PaperParams p = paper_params();
        AlgorithmInstance ref = build_search3(p.s3a, p.s3b, p.s3r);
        NSearch3Options nopts;
        nopts.zero_length_plateau = true;
        double ak = ak_distance((p.s3a + p.s3b) / 2, p.s3r);
        nopts.force_tau0 = 1 + p.s3a + ak;
        AlgorithmInstance deg = build_nsearch3(p.s3a, p.s3b, p.s3r, nopts);
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            double t = ref.search_time * i / 2000.0;
            worst = std::max(worst, distance(ref.queen.position_at(t),
                                             deg.queen.position_at(t)));
        }
        return make("algorithms", "degenerate_plateau_matches_search3", worst, 1e-9,
                    worst <= 1e-9);
    });

    add("algorithms", "search1_servant_finishes_first", [] {
        PaperParams p = paper_params();
        double servant_finish = 1 + kPi + p.a0 - p.b0;
        double queen_finish = 1 + kPi - p.a0 + 2 * std::sin(p.b0 / 2) + p.b0;
        double margin = queen_finish - servant_finish;
        return make("algorithms", "search1_servant_finishes_first", margin, 0.0,
                    margin > 0.0);
    });

    add("bounds", "theta_rate_exceeds_two", [] {
        double worst = 1e9;
        for (double T : {solve_lb2().unknowns.at("T2"), solve_lb3().unknowns.at("T3")}) {
            for (int i = 1; i < 10000; ++i) {
                double t = T - 2 + 2.0 * i / 10000.0;
                double r = T - t;
                worst = std::min(worst, 4.0 / std::sqrt(4 - r * r) - 2.0);
            }
        }
        return make("bounds", "theta_rate_exceeds_two", worst, 0.0, worst > 0.0);
    });

    add("bounds", "theta_rate_exceeds_three_inner", [] {
        double cut = (2.0 / 3.0) * std::sqrt(5.0);
        double worst = 1e9;
        for (double T : {solve_lb2().unknowns.at("T2"), solve_lb3().unknowns.at("T3")}) {
            for (int i = 1; i < 10000; ++i) {
                double t = (T - 2) + (2 - cut) * i / 10000.0;
                double r = T - t;
                worst = std::min(worst, 4.0 / std::sqrt(4 - r * r) - 3.0);
            }
        }
        return make("bounds", "theta_rate_exceeds_three_inner", worst, 0.0,
                    worst > 0.0);
    });

    add("bounds", "theta_rate_in_T_below_minus_two", [] {
        double T = solve_lb2().unknowns.at("T2");
        const double h = 1e-6;
        double worst = -1e9;
        for (int i = 1; i < 10000; ++i) {
            double t = T - 2 + 1e-3 + (2 - 2e-3) * i / 10000.0;
            double dT = (theta_arc(t, T + h) - theta_arc(t, T - h)) / (2 * h);
            worst = std::max(worst, dT + 2.0);
        }
        return make("bounds", "theta_rate_in_T_below_minus_two", worst, 0.0,
                    worst < 0.0);
    });

    add("bounds", "implicit_derivative_at_least_half", [] {
        BoundSolution s = solve_lb2();
        double t = s.unknowns.at("t_star");
        double a = s.unknowns.at("tau") - 1;
        // T = t + 2 cos(t/2 - 1/2 + a/4)  =>  dt/dT = 1 / (1 - sin(...))
        double u = 0.5 * (t - 1) + 0.25 * a;
        double dt_dT = 1.0 / (1.0 - std::sin(u));
        double margin = dt_dT - 0.5;
        return make("bounds", "implicit_derivative_at_least_half", margin, 0.0,
                    margin >= -1e-9);
    });

    add("bounds", "lower_bound_ordering", [] {
        double T2 = solve_lb2().unknowns.at("T2");
        double T3 = solve_lb3().unknowns.at("T3");
        double margin = std::min(T2 - T3, hexagon_lower_bound() - T2);
        return make("bounds", "lower_bound_ordering", margin, 0.0, margin > 0.0);
    });

    cs.push_back({"bounds", "sandwich_lb_below_ub", [](const VerifyOptions& o) {
        PaperParams p = paper_params();
        NSearch3Options nopts;
        nopts.ode_step = o.ode_step;
        double ub1 = evacuation_cost(build_search1(p.a0, p.b0)).cost;
        double ub2 = evacuation_cost(build_search2(p.s2a, p.s2r)).cost;
        double ub3 =
            evacuation_cost(build_nsearch3(p.n3a, p.n3b, p.n3r, nopts)).cost;
        double margin = std::min({ub1 - hexagon_lower_bound(),
                                  ub2 - solve_lb2().unknowns.at("T2"),
                                  ub3 - solve_lb3().unknowns.at("T3")});
        return make("bounds", "sandwich_lb_below_ub", margin, 0.0, margin > 0.0);
    }});

    add("bounds", "solver_residuals_small", [] {
        double worst = 0.0;
        for (const BoundSolution& s : {solve_alpha0(), solve_lb2(), solve_lb3()})
            for (const auto& [name, r] : s.residuals) worst = std::max(worst, r);
        return make("bounds", "solver_residuals_small", worst, 1e-12,
                    worst <= 1e-12);
    });

    add("optimizer", "balance_residuals_vanish_at_optimum", [] {
        PaperParams p = paper_params();
        auto [r01, r12] = search1_balance_residuals(p.a0, p.b0);
        double worst = std::max(std::abs(r01), std::abs(r12));
        return make("optimizer", "balance_residuals_vanish_at_optimum", worst, 1e-6,
                    worst <= 1e-6);
    });

    return cs;
}

}  // namespace

std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    for (const Check& c : all_checks()) names.push_back(c.module + "/" + c.name);
    return names;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
    std::vector<CheckResult> results;
    for (const Check& c : all_checks()) {
        try {
            results.push_back(c.fn(opts));
        } catch (const std::exception& e) {
            results.push_back({c.module, c.name, false, 0.0, 0.0,
                               std::string("exception: ") + e.what()});
        }
    }
    return results;
}

}  // namespace pe
