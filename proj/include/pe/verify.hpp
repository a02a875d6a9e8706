#pragma once

#include <string>
#include <vector>

namespace pe {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass;
    double observed;  // measured quantity
    double bound;     // limit it was compared against
    std::string detail;
};

struct VerifyOptions {
    double ode_step = 1e-5;
};

std::vector<std::string> verify_check_names();
std::vector<CheckResult> run_verify(const VerifyOptions& opts = {});

}  // namespace pe
