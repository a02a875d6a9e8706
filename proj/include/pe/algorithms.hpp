#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pe/trajectory.hpp"

namespace pe {

enum class Family { Search1, Search2, Search3, NSearch3 };

const char* family_name(Family f);
Family family_from_name(const std::string& name);
int family_servants(Family f);
int family_arity(Family f);  // number of parameters

struct Params {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> rho;

    std::vector<double> as_vector(Family f) const;
    static Params from_vector(Family f, const std::vector<double>& v);
};

struct ConditionResult {
    std::string name;
    bool holds;
    double margin;  // >= 0 when the condition holds
};

class precondition_error : public std::runtime_error {
  public:
    precondition_error(std::string condition, const std::string& what)
        : std::runtime_error(what), condition_(std::move(condition)) {}
    const std::string& condition() const { return condition_; }

  private:
    std::string condition_;
};

// Extra data recorded when building the improved three-servant algorithm.
struct PlateauInfo {
    double tau0;
    double tau1;
    Point2 event_point;     // K1
    double preserved_cost;  // value of t + |Q - S1| on [tau0, tau1]
    double queen_arrival;   // tau1 + |K1 - final point|
};

struct AlgorithmInstance {
    Family family;
    Params params;
    Trajectory queen;
    std::vector<Trajectory> servants;
    std::vector<ConditionResult> validity;
    ArcCoverage cov;
    double search_time;
    std::optional<PlateauInfo> plateau;

    // robots()[0] is the queen, matching coverage attribution order.
    std::vector<Trajectory> robots() const;
};

AlgorithmInstance build_search1(double alpha, double beta);
AlgorithmInstance build_search2(double alpha, double rho);
AlgorithmInstance build_search3(double alpha, double beta, double rho);

struct NSearch3Options {
    double ode_step = 1e-5;
    // Testing hooks: pin tau0 to the end of the line phase and/or collapse the
    // plateau to zero length (the construction then degenerates to Search3).
    std::optional<double> force_tau0;
    bool zero_length_plateau = false;
};

AlgorithmInstance build_nsearch3(double alpha, double beta, double rho,
                                 const NSearch3Options& opts = {});

AlgorithmInstance build(Family f, const Params& p,
                        const NSearch3Options& opts = {});

}  // namespace pe
