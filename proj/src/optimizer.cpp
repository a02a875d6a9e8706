#include "pe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pe/ode.hpp"

namespace pe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double evaluate(Family family, const std::vector<double>& x, double ode_step,
                double refine_tol, OptimizationResult& res) {
    double value = kInf;
    try {
        NSearch3Options nopts;
        nopts.ode_step = ode_step;
        AlgorithmInstance inst = build(family, Params::from_vector(family, x), nopts);
        CostOptions copts;
        copts.refine_tol = refine_tol;
        value = evacuation_cost(inst, copts).cost;
    } catch (const precondition_error&) {
    } catch (const infeasible_error&) {
    } catch (const ode_error&) {
    } catch (const std::domain_error&) {
    }
    res.trace.emplace_back(x, value);
    return value;
}

struct Vertex {
    std::vector<double> x;
    double f;
};

// Standard coefficients: reflection 1, expansion 2, contraction and shrink 1/2.
void nelder_mead(Family family, Vertex& best, double step, const OptimizeOptions& o,
                 OptimizationResult& res) {
    size_t k = best.x.size();
    auto eval = [&](const std::vector<double>& x) {
        return evaluate(family, x, o.search_ode_step, o.refine_tol, res);
    };

    std::vector<Vertex> s;
    s.push_back(best);
    for (size_t i = 0; i < k; ++i) {
        std::vector<double> x = best.x;
        x[i] += step;
        s.push_back({x, eval(x)});
    }

    for (int it = 0; it < o.max_iterations; ++it) {
        std::stable_sort(s.begin(), s.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        double diam = 0.0;
        for (size_t i = 1; i <= k; ++i)
            for (size_t j = 0; j < k; ++j)
                diam = std::max(diam, std::abs(s[i].x[j] - s[0].x[j]));
        ++res.iterations;
        if (diam < o.tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(k, 0.0);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) centroid[j] += s[i].x[j] / k;

        auto blend = [&](double coef) {
            std::vector<double> x(k);
            for (size_t j = 0; j < k; ++j)
                x[j] = centroid[j] + coef * (centroid[j] - s[k].x[j]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        double fr = eval(xr);
        if (fr < s[0].f) {
            std::vector<double> xe = blend(2.0);
            double fe = eval(xe);
            if (fe < fr) s[k] = {xe, fe};
            else s[k] = {xr, fr};
            continue;
        }
        if (fr < s[k - 1].f) {
            s[k] = {xr, fr};
            continue;
        }
        std::vector<double> xc = blend(fr < s[k].f ? 0.5 : -0.5);
        double fc = eval(xc);
        if (fc < std::min(fr, s[k].f)) {
            s[k] = {xc, fc};
            continue;
        }
        for (size_t i = 1; i <= k; ++i) {
            for (size_t j = 0; j < k; ++j)
                s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
            s[i].f = eval(s[i].x);
        }
    }
    std::stable_sort(s.begin(), s.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    best = s[0];
}

}  // namespace

OptimizationResult optimize(Family family, const Params& seed, double box_radius,
                            const OptimizeOptions& opts) {
    if (box_radius < 0.0) throw std::domain_error("optimize: box_radius < 0");
    OptimizationResult res;
    std::vector<double> x0 = seed.as_vector(family);
    size_t k = x0.size();

    if (box_radius == 0.0) {
        double f = evaluate(family, x0, opts.final_ode_step, opts.refine_tol, res);
        if (!std::isfinite(f))
            throw no_feasible_start_error("optimize: seed is infeasible");
        res.params = Params::from_vector(family, x0);
        res.cost = f;
        res.converged = true;
        return res;
    }

    // 5-per-axis grid across the box; best grid point seeds the descent.
    Vertex best{{}, kInf};
    std::vector<int> idx(k, 0);
    for (;;) {
        std::vector<double> x(k);
        for (size_t j = 0; j < k; ++j)
            x[j] = x0[j] - box_radius + idx[j] * (box_radius / 2);
        double f = evaluate(family, x, opts.search_ode_step, opts.refine_tol, res);
        if (f < best.f) best = {x, f};
        size_t j = 0;
        while (j < k && ++idx[j] == 5) idx[j++] = 0;
        if (j == k) break;
    }
    if (!std::isfinite(best.f))
        throw no_feasible_start_error("optimize: every grid point is infeasible");

    // descend, then restart from the incumbent until it stops improving
    for (;;) {
        double before = best.f;
        nelder_mead(family, best, box_radius / 10, opts, res);
        if (before - best.f <= opts.tol) break;
    }

    res.params = Params::from_vector(family, best.x);
    res.cost = evaluate(family, best.x, opts.final_ode_step, opts.refine_tol, res);
    return res;
}

std::pair<double, double> search1_balance_residuals(double alpha, double beta) {
    auto require = [](bool ok, const char* name) {
        if (!ok) throw precondition_error(name, name);
    };
    require(alpha > kPi / 3, "alpha_gt_pi_over_3");
    require(std::cos(alpha) + std::cos(alpha - beta / 2) > 1,
            "cos_alpha_plus_cos_alpha_minus_half_beta_gt_1");
    require(alpha - std::sin(beta / 2) <= beta, "alpha_minus_sin_half_beta_le_beta");

    double e0 = 1 + kPi - alpha + 2 * std::sin(beta / 2) + beta;
    double e1 = 1 + kPi - alpha + 2 * std::sin(alpha);
    double e2 = 1 + kPi + alpha - beta +
                2 * std::sin(alpha - beta / 2 - std::sin(beta / 2));
    return {e0 - e1, e1 - e2};
}

}  // namespace pe
