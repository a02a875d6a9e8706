#include "pe/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace pe {

namespace {
constexpr double kChainTol = 1e-9;
constexpr double kSliverArc = 1e-12;   // attribution sub-arcs narrower than this are ignored
constexpr double kUncoveredMin = 1e-9; // gaps narrower than this are fp noise
}  // namespace

double phase_duration(const Phase& ph) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ArcMotion>) return p.duration;
            else if constexpr (std::is_same_v<T, LineMotion>) return distance(p.a, p.b);
            else if constexpr (std::is_same_v<T, Wait>) return p.duration;
            else return p.samples.back().t - p.samples.front().t;
        },
        ph);
}

Point2 phase_start_point(const Phase& ph) {
    return std::visit(
        [](const auto& p) -> Point2 {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ArcMotion>) return unit_point(p.b);
            else if constexpr (std::is_same_v<T, LineMotion>) return p.a;
            else if constexpr (std::is_same_v<T, Wait>) return p.p;
            else return p.samples.front().p;
        },
        ph);
}

Point2 phase_end_point(const Phase& ph) {
    return std::visit(
        [](const auto& p) -> Point2 {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ArcMotion>)
                return unit_point(p.b + p.sigma * p.duration);
            else if constexpr (std::is_same_v<T, LineMotion>) return p.b;
            else if constexpr (std::is_same_v<T, Wait>) return p.p;
            else return p.samples.back().p;
        },
        ph);
}

Trajectory::Trajectory(Point2 start) : start_(start) {}

void Trajectory::append(Phase ph) {
    double dur = phase_duration(ph);
    if (dur < 0.0) throw std::domain_error("Trajectory: negative phase duration");
    if (dur < 1e-15) return;  // empty phase (degenerate parameters)
    Point2 prev = phases_.empty() ? start_ : phase_end_point(phases_.back());
    if (distance(prev, phase_start_point(ph)) > kChainTol)
        throw std::domain_error("Trajectory: phase does not chain continuously");
    phases_.push_back(std::move(ph));
    starts_.push_back(starts_.back() + dur);
}

void Trajectory::add_arc(double b, int sigma, double duration) {
    if (sigma != 1 && sigma != -1) throw std::domain_error("add_arc: sigma must be +-1");
    append(ArcMotion{Angle::canonicalize(b), sigma, duration});
}

void Trajectory::add_line_to(Point2 target) {
    Point2 from = end_point();
    if (distance(from, target) < 1e-15) return;
    append(LineMotion{from, target});
}

void Trajectory::add_wait(double duration) {
    append(Wait{end_point(), duration});
}

void Trajectory::add_sampled(SampledMotion motion) {
    if (motion.samples.size() < 2)
        throw std::domain_error("add_sampled: need at least two samples");
    append(std::move(motion));
}

Point2 Trajectory::end_point() const {
    return phases_.empty() ? start_ : phase_end_point(phases_.back());
}

namespace {

Point2 sampled_position(const SampledMotion& m, double local_t) {
    double t = m.samples.front().t + local_t;
    auto it = std::lower_bound(m.samples.begin(), m.samples.end(), t,
                               [](const OdeSample& s, double tt) { return s.t < tt; });
    if (it == m.samples.begin()) return it->p;
    if (it == m.samples.end()) return m.samples.back().p;
    const OdeSample& hi = *it;
    const OdeSample& lo = *(it - 1);
    double w = (t - lo.t) / (hi.t - lo.t);
    return lo.p + w * (hi.p - lo.p);
}

Point2 sampled_velocity(const SampledMotion& m, double local_t) {
    double t = m.samples.front().t + local_t;
    auto it = std::upper_bound(m.samples.begin(), m.samples.end(), t,
                               [](double tt, const OdeSample& s) { return tt < s.t; });
    if (it == m.samples.begin()) return it->v;
    return (it - 1)->v;
}

}  // namespace

Point2 Trajectory::position_at(double t) const {
    if (t < 0.0) throw std::domain_error("position_at: negative time");
    if (phases_.empty()) return start_;
    if (t >= starts_.back()) return end_point();
    // right-continuous: phase i active on [starts_[i], starts_[i+1])
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    size_t i = static_cast<size_t>(it - starts_.begin()) - 1;
    double lt = t - starts_[i];
    return std::visit(
        [lt](const auto& p) -> Point2 {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ArcMotion>)
                return unit_point(p.b + p.sigma * lt);
            else if constexpr (std::is_same_v<T, LineMotion>) {
                double d = distance(p.a, p.b);
                return p.a + (lt / d) * (p.b - p.a);
            } else if constexpr (std::is_same_v<T, Wait>)
                return p.p;
            else
                return sampled_position(p, lt);
        },
        phases_[i]);
}

Point2 Trajectory::velocity_at(double t) const {
    if (t < 0.0) throw std::domain_error("velocity_at: negative time");
    if (phases_.empty() || t >= starts_.back()) return {0.0, 0.0};
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    size_t i = static_cast<size_t>(it - starts_.begin()) - 1;
    double lt = t - starts_[i];
    return std::visit(
        [lt](const auto& p) -> Point2 {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ArcMotion>) {
                double a = p.b + p.sigma * lt;
                return {-p.sigma * std::sin(a), p.sigma * std::cos(a)};
            } else if constexpr (std::is_same_v<T, LineMotion>) {
                return (p.b - p.a) / distance(p.a, p.b);
            } else if constexpr (std::is_same_v<T, Wait>)
                return {0.0, 0.0};
            else
                return sampled_velocity(p, lt);
        },
        phases_[i]);
}

double verify_unit_speed(const Trajectory& traj, int n_samples) {
    if (n_samples < 2) throw std::domain_error("verify_unit_speed: n_samples < 2");
    double worst = 0.0;
    const auto& starts = traj.phase_starts();
    for (size_t i = 0; i < traj.phases().size(); ++i) {
        const Phase& ph = traj.phases()[i];
        if (std::holds_alternative<Wait>(ph)) continue;
        if (const auto* sm = std::get_if<SampledMotion>(&ph)) {
            // finite differences of the stored samples
            for (size_t k = 1; k < sm->samples.size(); ++k) {
                double dt = sm->samples[k].t - sm->samples[k - 1].t;
                if (dt <= 0.0) continue;
                double sp = distance(sm->samples[k].p, sm->samples[k - 1].p) / dt;
                worst = std::max(worst, std::abs(sp - 1.0));
            }
            continue;
        }
        double lo = starts[i], hi = starts[i + 1];
        for (int k = 0; k < n_samples; ++k) {
            double t = lo + (hi - lo) * (k + 0.5) / n_samples;
            worst = std::max(worst, std::abs(norm(traj.velocity_at(t)) - 1.0));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Coverage: exact first-visitor envelope over circle sweeps.
// Each arc phase is a sweep with a linear angle->time map of slope +-1; the
// first-visit function on [0,2pi) is the lower envelope of those maps, so
// attribution is constant between sweep endpoints and pairwise crossings.
// ---------------------------------------------------------------------------

namespace {

struct Seg {
    int robot;
    double lo, hi;  // angular span in [0, 2pi]
    double c;       // visit time at angle th is c + slope*th
    int slope;
    double time_at(double th) const { return c + slope * th; }
};

std::vector<Seg> circle_segments(const std::vector<Trajectory>& trajs) {
    std::vector<Seg> segs;
    for (size_t r = 0; r < trajs.size(); ++r) {
        const auto& starts = trajs[r].phase_starts();
        for (size_t i = 0; i < trajs[r].phases().size(); ++i) {
            const auto* arc = std::get_if<ArcMotion>(&trajs[r].phases()[i]);
            if (!arc) continue;
            double t_start = starts[i];
            double d = std::min(arc->duration, kTwoPi);  // later passes are never first
            // unwrapped span [u0, u1], time = t_start + |theta_u - anchor|
            double u0, u1;
            if (arc->sigma > 0) { u0 = arc->b; u1 = arc->b + d; }
            else { u0 = arc->b - d; u1 = arc->b; }
            int kmin = static_cast<int>(std::floor(u0 / kTwoPi));
            int kmax = static_cast<int>(std::floor((u1 - 1e-15) / kTwoPi));
            for (int k = kmin; k <= kmax; ++k) {
                double wlo = std::max(u0, k * kTwoPi);
                double whi = std::min(u1, (k + 1) * kTwoPi);
                if (whi - wlo < kSliverArc) continue;
                Seg s;
                s.robot = static_cast<int>(r);
                s.lo = wlo - k * kTwoPi;
                s.hi = whi - k * kTwoPi;
                s.slope = arc->sigma;
                if (arc->sigma > 0)
                    s.c = t_start - arc->b + k * kTwoPi;  // t = t_start + (theta_u - b)
                else
                    s.c = t_start + arc->b - k * kTwoPi;  // t = t_start + (b - theta_u)
                segs.push_back(s);
            }
        }
    }
    return segs;
}

}  // namespace

ArcCoverage coverage_report(const std::vector<Trajectory>& trajs) {
    std::vector<Seg> segs = circle_segments(trajs);

    std::vector<double> cuts{0.0, kTwoPi};
    for (const auto& s : segs) {
        cuts.push_back(s.lo);
        cuts.push_back(s.hi);
    }
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (segs[i].slope == segs[j].slope) continue;
            double lo = std::max(segs[i].lo, segs[j].lo);
            double hi = std::min(segs[i].hi, segs[j].hi);
            if (hi <= lo) continue;
            double th = (segs[j].c - segs[i].c) / double(segs[i].slope - segs[j].slope);
            if (th > lo && th < hi) cuts.push_back(th);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return b - a < kSliverArc; }),
               cuts.end());

    ArcCoverage cov;
    cov.exploration.assign(trajs.size(), {});
    std::vector<std::vector<std::pair<double, double>>> windows(trajs.size());

    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double u = cuts[i], v = cuts[i + 1];
        if (v - u < kSliverArc) continue;
        double mid = 0.5 * (u + v);
        const Seg* best = nullptr;
        for (const auto& s : segs) {
            if (mid < s.lo || mid > s.hi) continue;
            if (!best) { best = &s; continue; }
            double ts = s.time_at(mid), tb = best->time_at(mid);
            if (ts < tb - 1e-12 || (std::abs(ts - tb) <= 1e-12 && s.robot < best->robot))
                best = &s;
        }
        if (!best) {
            cov.uncovered.emplace_back(Angle(u), v - u);
            cov.uncovered_measure += v - u;
            continue;
        }
        double tu = best->time_at(u), tv = best->time_at(v);
        CoveredArc ca;
        ca.robot = best->robot;
        ca.arc = ArcInterval(Angle(u), v - u);
        ca.t_enter = std::min(tu, tv);
        ca.t_exit = std::max(tu, tv);
        cov.arcs.push_back(ca);
        cov.search_time = std::max(cov.search_time, ca.t_exit);
        windows[static_cast<size_t>(best->robot)].emplace_back(ca.t_enter, ca.t_exit);
    }

    for (size_t r = 0; r < trajs.size(); ++r) {
        auto& w = windows[r];
        std::sort(w.begin(), w.end());
        for (const auto& iv : w) {
            auto& merged = cov.exploration[r];
            if (!merged.empty() && iv.first <= merged.back().second + 1e-12)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
    }
    return cov;
}

ArcCoverage coverage(const std::vector<Trajectory>& trajs) {
    ArcCoverage cov = coverage_report(trajs);
    if (cov.uncovered_measure > 1e-6) {
        std::ostringstream os;
        os << "incomplete coverage, unsearched measure " << cov.uncovered_measure
           << " rad; gaps:";
        for (const auto& a : cov.uncovered)
            os << " [" << a.start.value() << ", " << a.start.value() + a.length << ")";
        throw infeasible_error(os.str());
    }
    return cov;
}

std::optional<std::pair<double, int>> first_visit(const std::vector<Trajectory>& trajs,
                                                  double exit_angle) {
    double th = Angle::canonicalize(exit_angle);
    std::optional<std::pair<double, int>> best;
    for (const auto& s : circle_segments(trajs)) {
        for (double cand : {th, th + kTwoPi, th - kTwoPi}) {
            if (cand < s.lo - 1e-12 || cand > s.hi + 1e-12) continue;
            double t = s.time_at(std::clamp(cand, s.lo, s.hi));
            if (!best || t < best->first - 1e-12 ||
                (std::abs(t - best->first) <= 1e-12 && s.robot < best->second))
                best = {t, s.robot};
        }
    }
    return best;
}

void export_csv(const std::vector<Trajectory>& trajs, double t_end, double step,
                std::ostream& out) {
    if (step <= 0.0) throw std::domain_error("export_csv: non-positive step");
    out << "robot,t,x,y\n";
    long n = static_cast<long>(std::ceil(t_end / step));
    char buf[128];
    for (size_t r = 0; r < trajs.size(); ++r) {
        for (long i = 0; i <= n; ++i) {
            double t = i * step;
            Point2 p = trajs[r].position_at(t);
            std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.9g\n", r, t, p.x, p.y);
            out << buf;
        }
    }
}

}  // namespace pe
