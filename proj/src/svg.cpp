#include "pe/svg.hpp"

#include <cstdio>

namespace pe {

namespace {

const char* kRobotColors[] = {"#c62828", "#1565c0", "#2e7d32", "#6a1b9a"};

void fmt(std::string& out, const char* f, double a, double b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a, b);
    out += buf;
}

double px(double x) { return 400.0 + 350.0 * x; }
double py(double y) { return 400.0 - 350.0 * y; }  // svg y axis points down

}  // namespace

std::string render_svg(const AlgorithmInstance& inst, const EvacuationReport& rep) {
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
    s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    s += "<circle cx=\"400\" cy=\"400\" r=\"350\" fill=\"none\" stroke=\"#444\" "
         "stroke-width=\"1.5\"/>\n";
    s += "<circle cx=\"400\" cy=\"400\" r=\"2.5\" fill=\"#444\"/>\n";

    std::vector<Trajectory> robots = inst.robots();
    for (size_t r = 0; r < robots.size(); ++r) {
        const Trajectory& tr = robots[r];
        double dur = tr.total_duration();
        int n = static_cast<int>(dur / 0.005) + 1;
        s += "<polyline fill=\"none\" stroke=\"";
        s += kRobotColors[r % 4];
        s += "\" stroke-width=\"";
        s += r == 0 ? "2.5" : "1.5";
        s += "\" points=\"";
        for (int i = 0; i <= n; ++i) {
            double t = dur * i / n;
            Point2 p = tr.position_at(t);
            if (i) s += ' ';
            fmt(s, "%.2f,%.2f", px(p.x), py(p.y));
        }
        s += "\"/>\n";
    }

    for (size_t i = 0; i < rep.maximizers.size(); ++i) {
        Point2 exit = unit_point(rep.maximizers[i].exit_angle);
        Point2 q = rep.queen_pickup_points[i];
        s += "<line stroke=\"#2e7d32\" stroke-width=\"1.5\" "
             "stroke-dasharray=\"6 4\" ";
        fmt(s, "x1=\"%.2f\" y1=\"%.2f\" ", px(q.x), py(q.y));
        fmt(s, "x2=\"%.2f\" y2=\"%.2f\"/>\n", px(exit.x), py(exit.y));
        s += "<circle fill=\"#ef6c00\" r=\"6\" ";
        fmt(s, "cx=\"%.2f\" cy=\"%.2f\"/>\n", px(exit.x), py(exit.y));
    }
    s += "</svg>\n";
    return s;
}

}  // namespace pe
