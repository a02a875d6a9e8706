#pragma once

#include "pe/algorithms.hpp"
#include "pe/trajectory.hpp"

namespace pe {

// phi is measured at the servant (between S' and Q-S), theta at the queen
// (between Q' and S-Q); both in [0, pi]. A robot standing still gets its
// angle pinned to pi/2 (so its cosine contributes 0) and is flagged.
struct CriticalAngles {
    double phi;
    double theta;
    double t;
    bool servant_stalled = false;
    bool queen_stalled = false;
};

CriticalAngles critical_angles(const Trajectory& S, const Trajectory& Q, double t);

// d/dt |Q(t) - S(t)| = -(cos phi + cos theta). Two robots heading straight at
// each other give -2; straight apart give +2.
double distance_rate(const Trajectory& S, const Trajectory& Q, double t);

struct Maximizer {
    double exit_angle;      // canonical [0, 2pi)
    double discovery_time;  // first-visit time of that exit
    int finder;             // robot index, 0 = queen
    double value;           // discovery_time + |Q - exit|
};

struct EvacuationReport {
    double cost = 0.0;
    // Candidates within 10*refine_tol of the cost, clustered at 1e-4 in angle.
    std::vector<Maximizer> maximizers;
    // Supremum of every smooth piece, in piece order; useful to inspect
    // near-tied worst exits that the tight maximizer filter would drop.
    std::vector<Maximizer> local_maxima;
    std::vector<Point2> queen_pickup_points;  // queen position per maximizer
};

struct CostOptions {
    double refine_tol = 1e-10;
    int samples_per_piece = 4096;
    bool parallel = true;  // false selects the serial reference kernel
};

EvacuationReport evacuation_cost(const AlgorithmInstance& inst,
                                 double refine_tol = 1e-10);
EvacuationReport evacuation_cost(const AlgorithmInstance& inst,
                                 const CostOptions& opts);

// Evacuation time when the exit sits at `exit_angle`: the first-visit time x,
// plus the queen's travel |Q(x) - exit| when a servant is the finder.
double cost_if_found(const AlgorithmInstance& inst, double exit_angle);

}  // namespace pe
