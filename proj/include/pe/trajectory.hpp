#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pe/geometry.hpp"

namespace pe {

// Unit-speed motion on the circle starting at ki(b); sigma=+1 is ccw.
struct ArcMotion {
    double b;
    int sigma;  // -1 or +1
    double duration;
};

// Unit-speed motion along the segment from a to b; duration is |a-b|.
struct LineMotion {
    Point2 a;
    Point2 b;
};

struct Wait {
    Point2 p;
    double duration;
};

struct OdeSample {
    double t;  // absolute time
    Point2 p;
    Point2 v;
};

// Output of the plateau integrator; samples are strictly increasing in t.
struct SampledMotion {
    std::vector<OdeSample> samples;
};

using Phase = std::variant<ArcMotion, LineMotion, Wait, SampledMotion>;

double phase_duration(const Phase& ph);
Point2 phase_start_point(const Phase& ph);
Point2 phase_end_point(const Phase& ph);

// Piecewise unit-speed trajectory. Phases chain continuously (checked to
// 1e-9 on append); after the last phase the robot stays at the final point.
class Trajectory {
  public:
    explicit Trajectory(Point2 start = {0.0, 0.0});

    void add_arc(double b, int sigma, double duration);
    void add_line_to(Point2 target);
    void add_wait(double duration);
    void add_sampled(SampledMotion motion);

    Point2 position_at(double t) const;
    // Right-limit at phase boundaries; zero on waits and after completion.
    Point2 velocity_at(double t) const;

    Point2 start() const { return start_; }
    Point2 end_point() const;
    double total_duration() const { return starts_.back(); }

    const std::vector<Phase>& phases() const { return phases_; }
    // Absolute phase start times; size = phases().size() + 1, last = total.
    const std::vector<double>& phase_starts() const { return starts_; }

  private:
    void append(Phase ph);

    Point2 start_;
    std::vector<Phase> phases_;
    std::vector<double> starts_{0.0};
};

// Max over samples of | |velocity| - 1 | restricted to motion phases.
double verify_unit_speed(const Trajectory& traj, int n_samples);

// First-visitor attribution of the circle. Robot 0 is the queen and wins ties.
struct CoveredArc {
    int robot;
    ArcInterval arc;
    double t_enter;  // first-visit times at the arc ends (t_enter <= t_exit)
    double t_exit;
};

struct ArcCoverage {
    std::vector<CoveredArc> arcs;
    double search_time = 0.0;  // t0
    // Exploration intervals I(F): merged [lo, hi] time windows per robot.
    std::vector<std::vector<std::pair<double, double>>> exploration;
    std::vector<ArcInterval> uncovered;
    double uncovered_measure = 0.0;
};

class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Attribution including incomplete coverage (no throw).
ArcCoverage coverage_report(const std::vector<Trajectory>& trajs);
// Throws infeasible_error listing unsearched arcs when the union of searched
// arcs misses more than 1e-6 of the circle.
ArcCoverage coverage(const std::vector<Trajectory>& trajs);

// First discovery of the circle point at `exit_angle`: time and robot.
std::optional<std::pair<double, int>> first_visit(const std::vector<Trajectory>& trajs,
                                                  double exit_angle);

// CSV rows `robot,t,x,y` with 9 significant digits, fixed step.
void export_csv(const std::vector<Trajectory>& trajs, double t_end, double step,
                std::ostream& out);

}  // namespace pe
