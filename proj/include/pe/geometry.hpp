#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pe {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {
        if (!std::isfinite(px) || !std::isfinite(py))
            throw std::domain_error("Point2: non-finite component");
    }

    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2 operator/(double s) const { return {x / s, y / s}; }
};

inline Point2 operator*(double s, Point2 p) { return p * s; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Angle with canonical representative in [0, 2pi).
class Angle {
  public:
    Angle() = default;
    Angle(double radians) : value_(canonicalize(radians)) {}  // NOLINT: implicit by design

    double value() const { return value_; }
    operator double() const { return value_; }

    static double canonicalize(double r) {
        if (!std::isfinite(r)) throw std::domain_error("Angle: non-finite value");
        double v = std::fmod(r, kTwoPi);
        if (v < 0.0) v += kTwoPi;
        if (v >= kTwoPi) v = 0.0;  // fmod rounding at the seam
        return v;
    }

  private:
    double value_ = 0.0;
};

struct ArcInterval {
    Angle start;
    double length = 0.0;  // radians, in [0, 2pi]

    ArcInterval() = default;
    ArcInterval(Angle s, double len) : start(s), length(len) {
        if (len < 0.0 || len > kTwoPi)
            throw std::domain_error("ArcInterval: length outside [0, 2pi]");
    }
};

// Point on the unit circle at angle theta.
inline Point2 unit_point(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

// Convex combination of the antipodal points ki(pi - theta) and ki(-theta).
inline Point2 k_point(double theta, double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::domain_error("k_point: rho outside [0, 1]");
    return (1.0 - rho) * unit_point(kPi - theta) + rho * unit_point(-theta);
}

// Distance from (-1, 0) to k_point(theta, rho).
inline double ak_distance(double theta, double rho) {
    return distance(unit_point(kPi), k_point(theta, rho));
}

// Chord subtended by an arc of delta radians: 2 sin(delta/2).
inline double chord_length(double delta) {
    if (delta < 0.0 || delta > kTwoPi)
        throw std::domain_error("chord_length: arc outside [0, 2pi]");
    return 2.0 * std::sin(delta / 2.0);
}

}  // namespace pe
