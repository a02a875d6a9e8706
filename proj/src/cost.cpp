#include "pe/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pe {

namespace {

constexpr double kStallTol = 1e-9;

double angle_between(Point2 u, Point2 v) {
    double nu = norm(u), nv = norm(v);
    double c = dot(u, v) / (nu * nv);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

struct Piece {
    int robot;
    double lo, hi;
};

// Sampled supremum of x + |Q(x) - F(x)| on one smooth piece, refined by
// golden-section search around every interior local-max bracket.
struct PieceResult {
    double x;
    double value;
};

double objective(const std::vector<Trajectory>& robots, int r, double x) {
    if (r == 0) return x;
    return x + distance(robots[0].position_at(x), robots[r].position_at(x));
}

double golden_max(const std::vector<Trajectory>& robots, int r, double a, double b,
                  double tol) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(robots, r, c);
    double fd = objective(robots, r, d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = objective(robots, r, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = objective(robots, r, d);
        }
    }
    return 0.5 * (a + b);
}

PieceResult solve_piece(const std::vector<Trajectory>& robots, const Piece& pc,
                        int n_samples, double tol) {
    int r = pc.robot;
    double lo = pc.lo, hi = pc.hi;
    if (n_samples < 3) n_samples = 3;
    std::vector<double> f(static_cast<size_t>(n_samples));
    double step = (hi - lo) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i)
        f[static_cast<size_t>(i)] = objective(robots, r, lo + i * step);

    double best_x = lo, best_v = f[0];
    if (f[static_cast<size_t>(n_samples - 1)] > best_v) {
        best_x = hi;
        best_v = f[static_cast<size_t>(n_samples - 1)];
    }
    for (int i = 1; i + 1 < n_samples; ++i) {
        if (f[static_cast<size_t>(i)] >= f[static_cast<size_t>(i - 1)] &&
            f[static_cast<size_t>(i)] >= f[static_cast<size_t>(i + 1)]) {
            double x = golden_max(robots, r, lo + (i - 1) * step, lo + (i + 1) * step,
                                  tol);
            double v = objective(robots, r, x);
            if (v > best_v) { best_v = v; best_x = x; }
        }
    }
    return {best_x, best_v};
}

}  // namespace

CriticalAngles critical_angles(const Trajectory& S, const Trajectory& Q, double t) {
    Point2 s = S.position_at(t), q = Q.position_at(t);
    Point2 sep = q - s;
    double d = norm(sep);
    if (d < 1e-12)
        throw std::domain_error("critical_angles: coincident positions");
    CriticalAngles ca;
    ca.t = t;
    Point2 vs = S.velocity_at(t), vq = Q.velocity_at(t);
    if (norm(vs) < kStallTol) {
        ca.phi = kPi / 2;
        ca.servant_stalled = true;
    } else {
        ca.phi = angle_between(vs, sep);
    }
    if (norm(vq) < kStallTol) {
        ca.theta = kPi / 2;
        ca.queen_stalled = true;
    } else {
        ca.theta = angle_between(vq, Point2{-sep.x, -sep.y});
    }
    return ca;
}

double distance_rate(const Trajectory& S, const Trajectory& Q, double t) {
    CriticalAngles ca = critical_angles(S, Q, t);
    double cphi = ca.servant_stalled ? 0.0 : std::cos(ca.phi);
    double ctheta = ca.queen_stalled ? 0.0 : std::cos(ca.theta);
    return -(cphi + ctheta);
}

EvacuationReport evacuation_cost(const AlgorithmInstance& inst, double refine_tol) {
    CostOptions opts;
    opts.refine_tol = refine_tol;
    return evacuation_cost(inst, opts);
}

EvacuationReport evacuation_cost(const AlgorithmInstance& inst,
                                 const CostOptions& opts) {
    std::vector<Trajectory> robots = inst.robots();

    // Smooth pieces: each robot's exploration windows cut at every robot
    // phase boundary (the queen's matter most; the finder's cost no harm).
    std::vector<double> cuts;
    for (const Trajectory& tr : robots)
        for (double s : tr.phase_starts()) cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());

    std::vector<Piece> pieces;
    for (size_t r = 0; r < inst.cov.exploration.size(); ++r) {
        for (auto [lo, hi] : inst.cov.exploration[r]) {
            double a = lo;
            for (double c : cuts) {
                if (c <= a + 1e-12 || c >= hi - 1e-12) continue;
                pieces.push_back({static_cast<int>(r), a, c});
                a = c;
            }
            if (hi > a + 1e-12) pieces.push_back({static_cast<int>(r), a, hi});
        }
    }

    std::vector<PieceResult> results(pieces.size());
    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(pieces.size()); ++i)
            results[static_cast<size_t>(i)] =
                solve_piece(robots, pieces[static_cast<size_t>(i)],
                            opts.samples_per_piece, opts.refine_tol);
    } else {
        for (size_t i = 0; i < pieces.size(); ++i)
            results[i] = solve_piece(robots, pieces[i], opts.samples_per_piece,
                                     opts.refine_tol);
    }

    EvacuationReport rep;
    for (size_t i = 0; i < pieces.size(); ++i) {
        // merge in piece order so ties resolve deterministically
        if (results[i].value > rep.cost) rep.cost = results[i].value;
    }

    auto make_maximizer = [&](size_t i) {
        const Piece& pc = pieces[i];
        const PieceResult& pr = results[i];
        Point2 exit = robots[static_cast<size_t>(pc.robot)].position_at(pr.x);
        Maximizer m;
        m.exit_angle = Angle(std::atan2(exit.y, exit.x)).value();
        m.discovery_time = pr.x;
        m.finder = pc.robot;
        m.value = pr.value;
        return m;
    };

    for (size_t i = 0; i < pieces.size(); ++i)
        rep.local_maxima.push_back(make_maximizer(i));

    for (size_t i = 0; i < pieces.size(); ++i) {
        if (results[i].value < rep.cost - 10 * opts.refine_tol) continue;
        Maximizer m = make_maximizer(i);
        bool merged = false;
        for (Maximizer& ex : rep.maximizers) {
            double da = std::abs(ex.exit_angle - m.exit_angle);
            da = std::min(da, kTwoPi - da);
            if (da < 1e-4) {
                if (m.value > ex.value) ex = m;
                merged = true;
                break;
            }
        }
        if (!merged) rep.maximizers.push_back(m);
    }
    for (const Maximizer& m : rep.maximizers)
        rep.queen_pickup_points.push_back(robots[0].position_at(m.discovery_time));
    return rep;
}

double cost_if_found(const AlgorithmInstance& inst, double exit_angle) {
    std::vector<Trajectory> robots = inst.robots();
    auto fv = first_visit(robots, exit_angle);
    if (!fv)
        throw infeasible_error("cost_if_found: exit never discovered");
    auto [x, finder] = *fv;
    if (finder == 0) return x;
    Point2 exit = unit_point(exit_angle);
    return x + distance(robots[0].position_at(x), exit);
}

}  // namespace pe
