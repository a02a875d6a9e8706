#pragma once

#include <utility>
#include <vector>

#include "pe/algorithms.hpp"
#include "pe/cost.hpp"

namespace pe {

struct OptimizationResult {
    Params params;
    double cost = 0.0;
    int iterations = 0;
    std::vector<std::pair<std::vector<double>, double>> trace;
    bool converged = false;
};

class no_feasible_start_error : public std::runtime_error {
  public:
    explicit no_feasible_start_error(const std::string& what)
        : std::runtime_error(what) {}
};

struct OptimizeOptions {
    double tol = 1e-5;
    int max_iterations = 400;
    double refine_tol = 1e-10;
    // evaluation cost: coarse ODE step while searching, fine for the result
    double search_ode_step = 1e-4;
    double final_ode_step = 1e-5;
};

// Nelder-Mead on worst-case cost, restarted from the best point of a
// 5-per-axis grid inside the box; infeasible parameter vectors score +inf.
// box_radius = 0 just evaluates the seed.
OptimizationResult optimize(Family family, const Params& seed, double box_radius,
                            const OptimizeOptions& opts = {});

// (E0 - E1, E1 - E2) for the one-servant family; all three are equal at the
// optimal parameters.
std::pair<double, double> search1_balance_residuals(double alpha, double beta);

}  // namespace pe
