#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pe/algorithms.hpp"
#include "pe/bounds.hpp"
#include "pe/ode.hpp"
#include "pe/cost.hpp"
#include "pe/optimizer.hpp"
#include "pe/svg.hpp"
#include "pe/verify.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct GlobalFlags {
    bool as_json = false;
    double refine_tol = 1e-10;
    double ode_step = 1e-5;
    std::string out;
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int emit(const GlobalFlags& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << g.out << " for writing\n";
        return kExitIo;
    }
    f << text;
    if (!f) {
        std::cerr << "error: write failed for " << g.out << "\n";
        return kExitIo;
    }
    return 0;
}

// Require exactly the parameters the family takes; anything else is usage.
pe::Params collect_params(pe::Family fam, const CLI::Option* oa,
                          const CLI::Option* ob, const CLI::Option* orho,
                          double alpha, double beta, double rho) {
    bool wants_beta = fam == pe::Family::Search1 || fam == pe::Family::Search3 ||
                      fam == pe::Family::NSearch3;
    bool wants_rho = fam != pe::Family::Search1;
    auto need = [](bool wanted, const CLI::Option* o, const char* name) {
        if (wanted && o->count() == 0)
            throw CLI::ValidationError(std::string("--") + name + " is required");
        if (!wanted && o->count() > 0)
            throw CLI::ValidationError(std::string("--") + name +
                                       " does not apply to this family");
    };
    need(true, oa, "alpha");
    need(wants_beta, ob, "beta");
    need(wants_rho, orho, "rho");
    pe::Params p;
    p.alpha = alpha;
    if (wants_beta) p.beta = beta;
    if (wants_rho) p.rho = rho;
    return p;
}

json params_json(const pe::Params& p) {
    json j = json::object();
    if (p.alpha) j["alpha"] = *p.alpha;
    if (p.beta) j["beta"] = *p.beta;
    if (p.rho) j["rho"] = *p.rho;
    return j;
}

json report_json(const pe::AlgorithmInstance& inst, const pe::EvacuationReport& rep,
                 const GlobalFlags& g) {
    json j;
    j["algorithm"] = pe::family_name(inst.family);
    j["params"] = params_json(inst.params);
    j["cost"] = rep.cost;
    j["search_time"] = inst.search_time;
    j["maximizers"] = json::array();
    for (const pe::Maximizer& m : rep.maximizers)
        j["maximizers"].push_back({{"exit_angle", m.exit_angle},
                                   {"discovery_time", m.discovery_time},
                                   {"finder", m.finder},
                                   {"value", m.value}});
    j["tolerances"] = {{"refine_tol", g.refine_tol}, {"ode_step", g.ode_step}};
    j["version"] = kVersion;
    return j;
}

std::string report_text(const pe::AlgorithmInstance& inst,
                        const pe::EvacuationReport& rep) {
    std::ostringstream os;
    os << "algorithm:   " << pe::family_name(inst.family) << "\n";
    os << "params:     ";
    if (inst.params.alpha) os << " alpha=" << fmt6(*inst.params.alpha);
    if (inst.params.beta) os << " beta=" << fmt6(*inst.params.beta);
    if (inst.params.rho) os << " rho=" << fmt6(*inst.params.rho);
    os << "\n";
    os << "cost:        " << fmt6(rep.cost) << "\n";
    os << "search_time: " << fmt6(inst.search_time) << "\n";
    os << "maximizers:\n";
    for (const pe::Maximizer& m : rep.maximizers)
        os << "  exit_angle=" << fmt6(m.exit_angle)
           << " discovery_time=" << fmt6(m.discovery_time) << " finder=" << m.finder
           << " value=" << fmt6(m.value) << "\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Priority evacuation on the unit disk: queen and n servants"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_flag("--json", g.as_json, "emit JSON instead of text");
    app.add_option("--tol", g.refine_tol, "cost supremum refinement tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--ode-step", g.ode_step, "plateau integrator step")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "write output to this path");

    std::string family_name;
    double alpha = 0, beta = 0, rho = 0;
    auto add_family_opts = [&](CLI::App* cmd, const CLI::Option*& oa,
                               const CLI::Option*& ob, const CLI::Option*& orho) {
        cmd->add_option("family", family_name, "search1|search2|search3|nsearch3")
            ->required();
        oa = cmd->add_option("--alpha", alpha, "alpha parameter");
        ob = cmd->add_option("--beta", beta, "beta parameter");
        orho = cmd->add_option("--rho", rho, "rho parameter");
    };

    const CLI::Option *ea, *eb, *er;
    CLI::App* evaluate = app.add_subcommand("evaluate", "worst-case cost of one instance");
    evaluate->fallthrough();
    add_family_opts(evaluate, ea, eb, er);

    const CLI::Option *oa, *ob, *orho;
    CLI::App* optimize = app.add_subcommand("optimize", "minimize cost around a seed");
    optimize->fallthrough();
    add_family_opts(optimize, oa, ob, orho);
    double radius = 0.05, opt_tol = 1e-5;
    optimize->add_option("--radius", radius, "search box half-width per axis");
    optimize->add_option("--opt-tol", opt_tol, "simplex convergence tolerance");
    std::string trace_path;
    optimize->add_option("--trace", trace_path, "dump evaluation trace CSV here");

    CLI::App* bounds = app.add_subcommand("bounds", "upper/lower bound table");
    bounds->fallthrough();

    const CLI::Option *xa, *xb, *xr;
    CLI::App* exportc = app.add_subcommand("export", "write trajectory CSV and SVG");
    exportc->fallthrough();
    add_family_opts(exportc, xa, xb, xr);
    double csv_step = 0.01;
    exportc->add_option("--step", csv_step, "CSV sampling step")
        ->check(CLI::PositiveNumber);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant checks");
    verify->fallthrough();
    bool list_only = false;
    verify->add_flag("--list", list_only, "list check names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    auto build_instance = [&](const CLI::Option* a, const CLI::Option* b,
                              const CLI::Option* r) {
        pe::Family fam = pe::family_from_name(family_name);
        pe::Params p = collect_params(fam, a, b, r, alpha, beta, rho);
        pe::NSearch3Options nopts;
        nopts.ode_step = g.ode_step;
        return pe::build(fam, p, nopts);
    };

    try {
        if (evaluate->parsed()) {
            pe::AlgorithmInstance inst = build_instance(ea, eb, er);
            pe::EvacuationReport rep = pe::evacuation_cost(inst, g.refine_tol);
            if (g.as_json)
                return emit(g, report_json(inst, rep, g).dump(2) + "\n");
            return emit(g, report_text(inst, rep));
        }

        if (optimize->parsed()) {
            pe::Family fam = pe::family_from_name(family_name);
            pe::Params seed = collect_params(fam, oa, ob, orho, alpha, beta, rho);
            pe::OptimizeOptions opts;
            opts.tol = opt_tol;
            opts.refine_tol = g.refine_tol;
            opts.final_ode_step = g.ode_step;
            pe::OptimizationResult res = pe::optimize(fam, seed, radius, opts);
            if (!trace_path.empty()) {
                std::ofstream tf(trace_path, std::ios::binary);
                if (!tf) {
                    std::cerr << "error: cannot open " << trace_path << "\n";
                    return kExitIo;
                }
                tf << "iter,alpha,beta,rho,cost\n";
                for (size_t i = 0; i < res.trace.size(); ++i) {
                    pe::Params p = pe::Params::from_vector(fam, res.trace[i].first);
                    char row[160];
                    std::snprintf(row, sizeof row, "%zu,%.9g,%.9g,%.9g,%.9g\n", i,
                                  p.alpha.value_or(0), p.beta.value_or(0),
                                  p.rho.value_or(0), res.trace[i].second);
                    tf << row;
                }
            }
            if (g.as_json) {
                json j;
                j["algorithm"] = pe::family_name(fam);
                j["params"] = params_json(res.params);
                j["cost"] = res.cost;
                j["iterations"] = res.iterations;
                j["converged"] = res.converged;
                j["evaluations"] = res.trace.size();
                j["version"] = kVersion;
                return emit(g, j.dump(2) + "\n");
            }
            std::ostringstream os;
            os << "algorithm:  " << pe::family_name(fam) << "\n";
            os << "params:    ";
            if (res.params.alpha) os << " alpha=" << fmt6(*res.params.alpha);
            if (res.params.beta) os << " beta=" << fmt6(*res.params.beta);
            if (res.params.rho) os << " rho=" << fmt6(*res.params.rho);
            os << "\ncost:       " << fmt6(res.cost) << "\n";
            os << "iterations: " << res.iterations
               << (res.converged ? " (converged)" : " (max iterations)") << "\n";
            return emit(g, os.str());
        }

        if (bounds->parsed()) {
            pe::BoundSolution a0 = pe::solve_alpha0();
            pe::BoundSolution l2 = pe::solve_lb2();
            pe::BoundSolution l3 = pe::solve_lb3();
            pe::NSearch3Options nopts;
            nopts.ode_step = g.ode_step;
            double ub1 = pe::evacuation_cost(
                             pe::build_search1(a0.unknowns.at("alpha0"),
                                               a0.unknowns.at("beta0")),
                             g.refine_tol)
                             .cost;
            double ub2 =
                pe::evacuation_cost(pe::build_search2(0.6361, 0.7944), g.refine_tol)
                    .cost;
            double ub3 = pe::evacuation_cost(
                             pe::build_nsearch3(0.27764, 1.29839, 0.68648, nopts),
                             g.refine_tol)
                             .cost;
            double lb[3] = {pe::hexagon_lower_bound(), l2.unknowns.at("T2"),
                            l3.unknowns.at("T3")};
            double ub[3] = {ub1, ub2, ub3};
            if (g.as_json) {
                json j;
                j["rows"] = json::array();
                for (int n = 1; n <= 3; ++n)
                    j["rows"].push_back(
                        {{"servants", n},
                         {"upper_bound", ub[n - 1]},
                         {"lower_bound", lb[n - 1]},
                         {"ordinary_lower_bound", pe::ordinary_evacuation_lb(n + 1)}});
                j["version"] = kVersion;
                return emit(g, j.dump(2) + "\n");
            }
            std::ostringstream os;
            os << "servants  upper     lower     ordinary-lb\n";
            for (int n = 1; n <= 3; ++n) {
                char row[128];
                std::snprintf(row, sizeof row, "%-9d %-9.6g %-9.6g %-9.6g\n", n,
                              ub[n - 1], lb[n - 1],
                              pe::ordinary_evacuation_lb(n + 1));
                os << row;
            }
            return emit(g, os.str());
        }

        if (exportc->parsed()) {
            pe::AlgorithmInstance inst = build_instance(xa, xb, xr);
            pe::EvacuationReport rep = pe::evacuation_cost(inst, g.refine_tol);
            std::string prefix = g.out.empty() ? "export" : g.out;
            {
                std::ofstream csv(prefix + ".csv", std::ios::binary);
                if (!csv) {
                    std::cerr << "error: cannot open " << prefix << ".csv\n";
                    return kExitIo;
                }
                pe::export_csv(inst.robots(), inst.search_time, csv_step, csv);
                if (!csv) return kExitIo;
            }
            {
                std::ofstream svg(prefix + ".svg", std::ios::binary);
                if (!svg) {
                    std::cerr << "error: cannot open " << prefix << ".svg\n";
                    return kExitIo;
                }
                svg << pe::render_svg(inst, rep);
                if (!svg) return kExitIo;
            }
            std::cout << "wrote " << prefix << ".csv and " << prefix << ".svg\n";
            return 0;
        }

        if (verify->parsed()) {
            if (list_only) {
                std::ostringstream os;
                for (const std::string& n : pe::verify_check_names()) os << n << "\n";
                return emit(g, os.str());
            }
            pe::VerifyOptions vopts;
            vopts.ode_step = g.ode_step;
            std::vector<pe::CheckResult> results = pe::run_verify(vopts);
            bool all_pass = true;
            std::ostringstream os;
            json jr = json::array();
            for (const pe::CheckResult& c : results) {
                all_pass = all_pass && c.pass;
                if (g.as_json) {
                    jr.push_back({{"module", c.module},
                                  {"name", c.name},
                                  {"pass", c.pass},
                                  {"observed", c.observed},
                                  {"bound", c.bound},
                                  {"detail", c.detail}});
                } else {
                    os << (c.pass ? "PASS " : "FAIL ") << c.module << "/" << c.name
                       << "  observed=" << fmt6(c.observed)
                       << " bound=" << fmt6(c.bound);
                    if (!c.detail.empty()) os << "  " << c.detail;
                    os << "\n";
                }
            }
            int rc = emit(g, g.as_json ? json{{"checks", jr}}.dump(2) + "\n"
                                       : os.str());
            if (rc != 0) return rc;
            return all_pass ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pe::precondition_error& e) {
        std::cerr << "infeasible: " << e.condition() << ": " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pe::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pe::ode_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pe::no_feasible_start_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pe::solver_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
