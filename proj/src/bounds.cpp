#include "pe/bounds.hpp"

#include <cmath>
#include <functional>

#include "pe/geometry.hpp"

namespace pe {

namespace {

// Bracketing scan (step `scan`) for the first sign change of f on [lo, hi],
// then bisection down to `tol`. Non-monotone transcendentals make Newton
// unreliable here; this always converges once the scan finds a bracket.
double first_root(const std::function<double(double)>& f, double lo, double hi,
                  double scan, double tol, const char* what) {
    double a = lo, fa = f(a);
    if (fa == 0.0) return a;
    for (double t = lo + scan; t <= hi + scan / 2; t += scan) {
        double b = std::min(t, hi);
        double fb = f(b);
        if (fb == 0.0) return b;
        if ((fa < 0) != (fb < 0)) {
            while (b - a > tol) {
                double m = 0.5 * (a + b);
                double fm = f(m);
                if (fm == 0.0) return m;
                if ((fm < 0) == (fa < 0)) { a = m; fa = fm; }
                else b = m;
            }
            return 0.5 * (a + b);
        }
        a = b;
        fa = fb;
    }
    throw solver_error(std::string(what) + ": no sign change in [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

double hexagon_lower_bound() { return 3.0 + kPi / 6.0 + std::sqrt(3.0) / 2.0; }

BoundSolution solve_alpha0() {
    auto f = [](double x) { return x + std::sin(x); };
    auto g = [&](double a) { return f(f(a - std::sin(a))) - std::sin(a); };
    BoundSolution sol;
    sol.bracket_lo = 1.0;
    sol.bracket_hi = kPi / 2;
    double a0 = first_root(g, sol.bracket_lo, sol.bracket_hi, 1e-3, 1e-14,
                           "solve_alpha0");
    sol.unknowns["alpha0"] = a0;
    sol.unknowns["beta0"] = 2.0 * f(a0 - std::sin(a0));
    sol.unknowns["cost"] = 1.0 + kPi - a0 + 2.0 * std::sin(a0);
    sol.residuals["fixed_point"] = std::abs(g(a0));
    return sol;
}

double theta_arc(double t, double T) {
    double r = T - t;
    if (r < 0.0 || r > 2.0)
        throw std::domain_error("theta_arc: requires 0 <= T - t <= 2");
    return 4.0 * std::acos(r / 2.0);
}

BoundSolution solve_lb2() {
    // tau = T2 - 2 cos((tau-1)/2);  t* = (T2+1)/2;
    // T2 = t* + 2 cos((2 t* + tau)/4 - 3/4)
    auto inner_tau = [](double T2) {
        return first_root(
            [T2](double tau) { return tau - T2 + 2.0 * std::cos((tau - 1) / 2); },
            0.0, T2, 1e-3, 1e-14, "solve_lb2 inner");
    };
    auto outer = [&](double T2) {
        double tau = inner_tau(T2);
        double ts = (T2 + 1) / 2;
        return T2 - ts - 2.0 * std::cos((2 * ts + tau) / 4 - 0.75);
    };
    BoundSolution sol;
    sol.bracket_lo = 2.0;
    sol.bracket_hi = 1.0 + kPi;
    double T2 = first_root(outer, sol.bracket_lo, sol.bracket_hi, 1e-3, 1e-14,
                           "solve_lb2 outer");
    double tau = inner_tau(T2);
    double ts = (T2 + 1) / 2;
    sol.unknowns["tau"] = tau;
    sol.unknowns["t_star"] = ts;
    sol.unknowns["T2"] = T2;
    sol.residuals["tau_equation"] = std::abs(tau - T2 + 2 * std::cos((tau - 1) / 2));
    sol.residuals["t_star_equation"] = std::abs(ts - (T2 + 1) / 2);
    sol.residuals["T_equation"] =
        std::abs(T2 - ts - 2 * std::cos((2 * ts + tau) / 4 - 0.75));
    return sol;
}

BoundSolution solve_lb3() {
    // tau = T3 - 2 cos(3(tau-1)/4);  t* = 1 + (2/3) acos(-2/3) - (tau-1)/3;
    // T3 = t* + sin((3(t*-1) + (tau-1))/2)
    auto inner_tau = [](double T3) {
        return first_root(
            [T3](double tau) {
                return tau - T3 + 2.0 * std::cos(0.75 * (tau - 1));
            },
            0.0, T3, 1e-3, 1e-14, "solve_lb3 inner");
    };
    double c = std::acos(-2.0 / 3.0);
    auto outer = [&](double T3) {
        double tau = inner_tau(T3);
        double ts = 1 + (2.0 / 3.0) * c - (tau - 1) / 3;
        return T3 - ts - std::sin((3 * (ts - 1) + (tau - 1)) / 2);
    };
    BoundSolution sol;
    sol.bracket_lo = 2.0;
    sol.bracket_hi = 1.0 + kPi;
    double T3 = first_root(outer, sol.bracket_lo, sol.bracket_hi, 1e-3, 1e-14,
                           "solve_lb3 outer");
    double tau = inner_tau(T3);
    double ts = 1 + (2.0 / 3.0) * c - (tau - 1) / 3;
    sol.unknowns["tau"] = tau;
    sol.unknowns["t_star"] = ts;
    sol.unknowns["T3"] = T3;
    sol.residuals["tau_equation"] =
        std::abs(tau - T3 + 2 * std::cos(0.75 * (tau - 1)));
    sol.residuals["t_star_equation"] =
        std::abs(ts - 1 - (2.0 / 3.0) * c + (tau - 1) / 3);
    sol.residuals["T_equation"] =
        std::abs(T3 - ts - std::sin((3 * (ts - 1) + (tau - 1)) / 2));
    return sol;
}

double evac_time_bound(int n, double t, double y) {
    double lo = 1 + (kPi - y) / n, hi = 1 + (kTwoPi - y) / n;
    if (t < lo - 1e-12 || t > hi + 1e-12)
        throw std::domain_error("evac_time_bound: t must lie in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");
    return t + std::sin((n * (t - 1) + y) / 2);
}

double min_queen_perimeter(int n, double T) {
    if (n != 2)
        throw std::domain_error("min_queen_perimeter: only n = 2 is supported");
    if (T > 1 + kPi)
        throw std::domain_error("min_queen_perimeter: requires T <= 1 + pi");
    return 2.0 * (1 + kPi - T);
}

double ordinary_evacuation_lb(int k) {
    if (k < 1) throw std::domain_error("ordinary_evacuation_lb: k >= 1 required");
    return 1.0 + 4.0 * kPi / (3.0 * k) + std::sqrt(3.0);
}

}  // namespace pe
