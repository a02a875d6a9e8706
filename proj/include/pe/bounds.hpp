#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace pe {

struct BoundSolution {
    std::map<std::string, double> unknowns;
    std::map<std::string, double> residuals;  // absolute, per equation
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

class solver_error : public std::runtime_error {
  public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

// 3 + pi/6 + sqrt(3)/2: no evacuation with one servant beats this.
double hexagon_lower_bound();

// Root of f(f(a - sin a)) = sin a on (1, pi/2) with f(x) = x + sin x.
// unknowns: alpha0, beta0 = 2 f(alpha0 - sin alpha0), cost = 1+pi-alpha0+2 sin alpha0.
BoundSolution solve_alpha0();

// Arc length of the circle boundary not reachable by time T from a point
// discovered at time t: 4 acos((T-t)/2). Domain 0 <= T-t <= 2.
double theta_arc(double t, double T);

// Two-servant lower bound: unknowns tau, t_star, T2.
BoundSolution solve_lb2();
// Three-servant lower bound: unknowns tau, t_star, T3.
BoundSolution solve_lb3();

// t + sin((n(t-1)+y)/2); valid for 1+(pi-y)/n <= t <= 1+(2pi-y)/n.
double evac_time_bound(int n, double t, double y);

// Perimeter the queen must explore herself when evacuation finishes by T
// with two servants: 2(1 + pi - T). Only n = 2 is supported.
double min_queen_perimeter(int n, double T);

// Ordinary (no-priority) evacuation with k robots: 1 + 4pi/(3k) + sqrt(3).
double ordinary_evacuation_lb(int k);

}  // namespace pe
