#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "pe/algorithms.hpp"
#include "pe/bounds.hpp"
#include "pe/cost.hpp"

// Times the worst-case cost kernel: parallel sampling vs the serial
// reference, on the four built-in instances at their published parameters.

namespace {

double time_ms(const pe::AlgorithmInstance& inst, bool parallel, int reps,
               double* cost_out) {
    pe::CostOptions opts;
    opts.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    double cost = 0.0;
    for (int i = 0; i < reps; ++i) cost = pe::evacuation_cost(inst, opts).cost;
    auto t1 = std::chrono::steady_clock::now();
    *cost_out = cost;
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    pe::BoundSolution a0 = pe::solve_alpha0();
    struct Row {
        const char* name;
        pe::AlgorithmInstance inst;
    };
    std::vector<Row> rows;
    rows.push_back({"search1", pe::build_search1(a0.unknowns.at("alpha0"),
                                                 a0.unknowns.at("beta0"))});
    rows.push_back({"search2", pe::build_search2(0.6361, 0.7944)});
    rows.push_back({"search3", pe::build_search3(0.26738, 1.2949, 0.70685)});
    rows.push_back({"nsearch3", pe::build_nsearch3(0.27764, 1.29839, 0.68648)});

    const int reps = 5;
    std::printf("%-10s %12s %12s %8s %14s\n", "instance", "serial(ms)",
                "parallel(ms)", "speedup", "|cost diff|");
    for (const Row& r : rows) {
        double cs = 0.0, cp = 0.0;
        double ms_s = time_ms(r.inst, false, reps, &cs);
        double ms_p = time_ms(r.inst, true, reps, &cp);
        std::printf("%-10s %12.2f %12.2f %8.2f %14.3g\n", r.name, ms_s, ms_p,
                    ms_s / ms_p, std::abs(cs - cp));
    }
    return 0;
}
