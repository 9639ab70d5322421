#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "porous/attractor.hpp"
#include "porous/errors.hpp"
#include "porous/first_order.hpp"
#include "porous/io.hpp"
#include "porous/jets.hpp"
#include "porous/pde_fd.hpp"
#include "porous/second_order.hpp"
#include "porous/thermo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace porous;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void write_manifest(const std::string& out_dir, const std::string& subcommand,
                    const json& options, const std::vector<std::string>& outputs) {
    json m;
    m["schema"] = "porous-dynamics/1";
    m["subcommand"] = subcommand;
    m["options"] = options;
    m["outputs"] = outputs;
    io::write_text((fs::path(out_dir) / "manifest.json").string(),
                   m.dump(2) + "\n");
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw DomainError("expected a comma-separated list");
    return out;
}

struct CoexistenceArgs {
    double tmin = 0.85, tmax = 0.99;
    int steps = 50;
    double n = 3.0;
    std::string out = "runs/coexistence";
};

int run_coexistence(const CoexistenceArgs& a) {
    thermo::GasSpec gas;
    gas.n = a.n;
    auto rows = thermo::coexistence_table(a.tmin, a.tmax, a.steps, gas);
    fs::create_directories(a.out);
    io::write_coexistence_csv((fs::path(a.out) / "coexistence.csv").string(),
                              rows);
    json opts{{"tmin", a.tmin}, {"tmax", a.tmax}, {"steps", a.steps},
              {"n", a.n}};
    write_manifest(a.out, "coexistence", opts, {"coexistence.csv"});
    std::cout << "wrote " << a.steps << " coexistence rows to " << a.out
              << "\n";
    return kExitOk;
}

struct PhaseMapArgs {
    std::string process = "isentropic";
    double sigma0 = 2.8, eta0 = 3.0, n = 3.0;
    double C1 = 1.0, C2 = 1.0, alpha0 = 0.0, rho_ref = 1.0;
    double rho_lo = 0.05, rho_hi = 2.95;
    double tmin = 0.0, tmax = 1.0;
    int nt = 11;
    double xmin = 0.0, xmax = 1.0;
    int nx = 101;
    std::string out = "runs/phase-map";
};

int run_phase_map(const PhaseMapArgs& a) {
    ProcessSpec sp;
    sp.gas.n = a.n;
    if (a.process == "isentropic") {
        sp.kind = ProcessKind::Isentropic;
        sp.sigma0 = a.sigma0;
    } else if (a.process == "isenthalpic") {
        sp.kind = ProcessKind::Isenthalpic;
        sp.eta0 = a.eta0;
    } else {
        throw DomainError("phase-map: --process must be isentropic or "
                          "isenthalpic");
    }
    dyn1::Dyn1Constants consts{a.C1, a.C2, a.alpha0, a.rho_ref};
    dyn1::GridSpec grid{a.tmin, a.tmax, a.nt, a.xmin, a.xmax, a.nx};
    auto rows = dyn1::phase_map(sp, consts, a.rho_lo, a.rho_hi, grid);
    fs::create_directories(a.out);
    io::write_phase_map_csv((fs::path(a.out) / "phase_map.csv").string(),
                            rows);
    json opts{{"process", a.process}, {"n", a.n},
              {"C1", a.C1},           {"C2", a.C2},
              {"alpha0", a.alpha0},   {"rho_ref", a.rho_ref},
              {"rho_lo", a.rho_lo},   {"rho_hi", a.rho_hi},
              {"tmin", a.tmin},       {"tmax", a.tmax},
              {"nt", a.nt},           {"xmin", a.xmin},
              {"xmax", a.xmax},       {"nx", a.nx}};
    if (sp.kind == ProcessKind::Isentropic) opts["sigma0"] = a.sigma0;
    if (sp.kind == ProcessKind::Isenthalpic) opts["eta0"] = a.eta0;
    write_manifest(a.out, "phase-map", opts, {"phase_map.csv"});
    std::cout << "wrote " << rows.size() << " grid points to " << a.out
              << "\n";
    return kExitOk;
}

struct SecondOrderArgs {
    std::string branch = "blowup";
    double q = 1.0, alpha = 1.0, C1 = 1.0, C2 = 1.0;
    std::string times = "0.5,0.85,0.999";
    double xmin = -1.0, xmax = 1.0;
    int nx = 201;
    std::string out = "runs/second-order";
};

int run_second_order(const SecondOrderArgs& a) {
    dyn2::Dyn2Spec spec;
    spec.q = a.q;
    spec.alpha = a.alpha;
    spec.C1 = a.C1;
    spec.C2 = a.C2;
    if (a.branch == "blowup")
        spec.branch = dyn2::Branch::Blowup;
    else if (a.branch == "wave")
        spec.branch = dyn2::Branch::Wave;
    else
        throw DomainError("second-order: --branch must be blowup or wave");
    SolutionField field = (spec.branch == dyn2::Branch::Blowup)
                              ? dyn2::blowup_solution(spec)
                              : dyn2::travelling_wave_solution(spec);
    std::vector<double> times = parse_list(a.times);
    fs::create_directories(a.out);
    std::vector<std::string> outputs;
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> xs(a.nx), rhos(a.nx);
        int valid = 0;
        for (int i = 0; i < a.nx; ++i) {
            xs[i] = a.xmin + (a.xmax - a.xmin) * i / double(a.nx - 1);
            auto r = field.rho(times[k], xs[i]);
            rhos[i] = r ? *r : nan;
            valid += r ? 1 : 0;
        }
        if (valid == 0)
            throw OutOfRange("second-order: no valid points at t = " +
                             std::to_string(times[k]));
        char name[40];
        std::snprintf(name, sizeof(name), "profile_%03zu.csv", k);
        io::write_profile_csv((fs::path(a.out) / name).string(), xs, rhos);
        outputs.emplace_back(name);
    }
    json opts{{"branch", a.branch}, {"q", a.q},       {"alpha", a.alpha},
              {"C1", a.C1},         {"C2", a.C2},     {"times", times},
              {"xmin", a.xmin},     {"xmax", a.xmax}, {"nx", a.nx}};
    write_manifest(a.out, "second-order", opts, outputs);
    std::cout << "wrote " << outputs.size() << " profiles to " << a.out
              << "\n";
    return kExitOk;
}

struct AttractorArgs {
    double q = 1.0, n = 3.0, c1 = -1.0, c2 = 1.0;
    double alpha = 0.0;  // 0 means derive 2/n + 1
    std::string y2 = "0.5,1,2";
    double y0min = 0.05, y0max = 4.0;
    int ny0 = 200;
    double y1min = -3.0, y1max = 3.0;
    int ny1 = 200;
    std::string out = "runs/attractor";
};

int run_attractor(const AttractorArgs& a) {
    attractor::AttractorParams params;
    params.q = a.q;
    params.alpha = (a.alpha != 0.0) ? a.alpha : 2.0 / a.n + 1.0;
    params.b1 = -params.alpha + 1.0;
    params.c1 = a.c1;
    params.c2 = a.c2;
    std::vector<double> slices = parse_list(a.y2);
    fs::create_directories(a.out);
    std::vector<std::string> outputs;
    for (std::size_t k = 0; k < slices.size(); ++k) {
        auto mask = attractor::attractor_domain(params, slices[k], a.y0min,
                                                a.y0max, a.ny0, a.y1min,
                                                a.y1max, a.ny1);
        char name[40];
        std::snprintf(name, sizeof(name), "mask_%03zu.csv", k);
        io::write_mask_csv((fs::path(a.out) / name).string(), mask);
        outputs.emplace_back(name);
    }
    json opts{{"q", a.q},         {"n", a.n},
              {"alpha", params.alpha}, {"b1", params.b1},
              {"c1", a.c1},       {"c2", a.c2},
              {"y2", slices},     {"y0min", a.y0min},
              {"y0max", a.y0max}, {"ny0", a.ny0},
              {"y1min", a.y1min}, {"y1max", a.y1max},
              {"ny1", a.ny1}};
    write_manifest(a.out, "attractor", opts, outputs);
    std::cout << "wrote " << outputs.size() << " domain masks to " << a.out
              << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string suite = "brackets";
    std::string field = "trwave";
    double alpha = 1.0, q = 1.0, C1 = 0.5, C2 = 1.0;
    int cells = 128;
    unsigned long long seed = 12345;
    std::string out;
};

json bracket_case(const std::string& name, const jets::JetFunction& phi,
                  const jets::JetFunction& F, const jets::JetFunction* a,
                  const std::vector<jets::JetPoint>& samples) {
    auto rep = jets::verify_dynamics(phi, F, a, nullptr, samples);
    return json{{"name", name},
                {"samples", rep.samples},
                {"max_residual", rep.max_residual},
                {"threshold", rep.threshold},
                {"pass", rep.pass}};
}

int run_verify(const VerifyArgs& a) {
    json report;
    bool pass = true;
    if (a.suite == "brackets") {
        report["suite"] = "brackets";
        json cases = json::array();
        // Van der Waals processes, levels safely above their thresholds.
        {
            ProcessSpec sp;
            sp.kind = ProcessKind::Isentropic;
            sp.sigma0 = 2.8;
            dyn1::Dyn1Constants consts{1.0, 1.0, 0.0, 1.0};
            auto c = dyn1::coefficients(sp);
            auto samples = jets::sample_surface_first_order(
                c.A, c.A1, c.A2, consts.C1, consts.C2, 0.1, 2.8, 100, a.seed);
            cases.push_back(bracket_case(
                "first-order isentropic n=3", dyn1::make_evolution(sp),
                dyn1::make_constraint(sp, consts), nullptr, samples));
        }
        {
            ProcessSpec sp;
            sp.kind = ProcessKind::Isenthalpic;
            sp.eta0 = 3.0;
            dyn1::Dyn1Constants consts{1.0, 1.0, 0.0, 1.0};
            auto c = dyn1::coefficients(sp);
            auto samples = jets::sample_surface_first_order(
                c.A, c.A1, c.A2, consts.C1, consts.C2, 0.1, 2.8, 100,
                a.seed + 1);
            cases.push_back(bracket_case(
                "first-order isenthalpic n=3", dyn1::make_evolution(sp),
                dyn1::make_constraint(sp, consts), nullptr, samples));
        }
        int idx = 2;
        for (double alpha : {1.0, 5.0 / 3.0}) {
            for (auto branch : {dyn2::Branch::Wave, dyn2::Branch::Blowup}) {
                dyn2::Dyn2Spec spec;
                spec.q = 1.0;
                spec.alpha = alpha;
                spec.branch = branch;
                attractor::AttractorParams ap;
                ap.q = spec.q;
                ap.alpha = alpha;
                ap.b1 = spec.b1();
                auto acoef = attractor::make_coeff_a(ap);
                auto samples = jets::sample_surface_second_order(
                    spec.b1(), 100, a.seed + idx);
                char name[64];
                std::snprintf(name, sizeof(name),
                              "second-order %s alpha=%g",
                              branch == dyn2::Branch::Wave ? "wave" : "blowup",
                              alpha);
                cases.push_back(bracket_case(
                    name, dyn2::make_evolution(spec.q, alpha),
                    dyn2::make_constraint(spec), &acoef, samples));
                ++idx;
            }
        }
        for (const auto& c : cases) pass = pass && c["pass"].get<bool>();
        report["cases"] = cases;
        report["pass"] = pass;
    } else if (a.suite == "pde") {
        report["suite"] = "pde";
        dyn2::Dyn2Spec spec;
        spec.q = a.q;
        spec.alpha = a.alpha;
        spec.C1 = a.C1;
        spec.C2 = a.C2;
        SolutionField field;
        double t0 = 0.0, t_end = 0.5, x_lo = 0.0, x_hi = 2.0;
        if (a.field == "trwave") {
            spec.branch = dyn2::Branch::Wave;
            field = dyn2::travelling_wave_solution(spec);
        } else if (a.field == "blowup") {
            spec.branch = dyn2::Branch::Blowup;
            field = dyn2::blowup_solution(spec);
            x_lo = 0.5;  // stay clear of the zero of the profile at x = -C1
            x_hi = 2.0;
        } else {
            throw DomainError("verify: --field must be trwave or blowup");
        }
        auto rep = pde::verify_field(field, x_lo, x_hi, t0, t_end, a.cells);
        report["field"] = a.field;
        report["alpha"] = a.alpha;
        report["cells"] = rep.cells;
        report["sup_errors"] = rep.sup_errors;
        report["order"] = rep.order;
        report["exact_to_roundoff"] = rep.exact_to_roundoff;
        report["verdict"] = rep.exact_to_roundoff
                                ? "exact to round-off"
                                : "converges at the expected order";
        pass = rep.exact_to_roundoff ||
               (rep.order > 1.5 && rep.sup_errors[2] < rep.sup_errors[0]);
        report["pass"] = pass;
    } else {
        throw DomainError("verify: --suite must be brackets or pde");
    }
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!a.out.empty()) {
        fs::create_directories(a.out);
        io::write_text((fs::path(a.out) / "verify.json").string(), text);
        json opts{{"suite", a.suite}};
        if (a.suite == "pde") {
            opts["field"] = a.field;
            opts["alpha"] = a.alpha;
            opts["q"] = a.q;
            opts["C1"] = a.C1;
            opts["C2"] = a.C2;
            opts["cells"] = a.cells;
        } else {
            opts["seed"] = a.seed;
        }
        write_manifest(a.out, "verify", opts, {"verify.json"});
    }
    return pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solutions and phase structure of the nonlinear "
                 "filtration equation"};
    app.require_subcommand(1);

    CoexistenceArgs co;
    auto* sc_co = app.add_subcommand(
        "coexistence", "tabulate the binodal (coexistence) curve");
    sc_co->add_option("--tmin", co.tmin, "lowest temperature");
    sc_co->add_option("--tmax", co.tmax, "highest temperature (< 1)");
    sc_co->add_option("--steps", co.steps, "number of rows");
    sc_co->add_option("--n", co.n, "degrees of freedom");
    sc_co->add_option("--out", co.out, "output directory");

    PhaseMapArgs pm;
    auto* sc_pm = app.add_subcommand(
        "phase-map", "phase regions along a first-order exact solution");
    sc_pm->add_option("--process", pm.process, "isentropic or isenthalpic");
    sc_pm->add_option("--sigma0", pm.sigma0, "entropy level");
    sc_pm->add_option("--eta0", pm.eta0, "enthalpy level");
    sc_pm->add_option("--n", pm.n, "degrees of freedom");
    sc_pm->add_option("--C1", pm.C1, "dynamics constant C1");
    sc_pm->add_option("--C2", pm.C2, "dynamics constant C2");
    sc_pm->add_option("--alpha0", pm.alpha0, "x phase shift");
    sc_pm->add_option("--rho-ref", pm.rho_ref, "reference density, G = 0");
    sc_pm->add_option("--rho-lo", pm.rho_lo, "working density lower bound");
    sc_pm->add_option("--rho-hi", pm.rho_hi, "working density upper bound");
    sc_pm->add_option("--tmin", pm.tmin, "grid start time");
    sc_pm->add_option("--tmax", pm.tmax, "grid end time");
    sc_pm->add_option("--nt", pm.nt, "time samples");
    sc_pm->add_option("--xmin", pm.xmin, "grid left edge");
    sc_pm->add_option("--xmax", pm.xmax, "grid right edge");
    sc_pm->add_option("--nx", pm.nx, "space samples");
    sc_pm->add_option("--out", pm.out, "output directory");

    SecondOrderArgs so;
    auto* sc_so = app.add_subcommand(
        "second-order", "closed-form families of the power-law equation");
    sc_so->add_option("--branch", so.branch, "blowup or wave");
    sc_so->add_option("--q", so.q, "power-law coefficient");
    sc_so->add_option("--alpha", so.alpha, "power-law exponent");
    sc_so->add_option("--C1", so.C1, "integration constant C1");
    sc_so->add_option("--C2", so.C2, "integration constant C2");
    sc_so->add_option("--times", so.times, "comma-separated output times");
    sc_so->add_option("--xmin", so.xmin, "profile left edge");
    sc_so->add_option("--xmax", so.xmax, "profile right edge");
    sc_so->add_option("--nx", so.nx, "profile samples");
    sc_so->add_option("--out", so.out, "output directory");

    AttractorArgs at;
    auto* sc_at = app.add_subcommand(
        "attractor", "decay-region masks in the (y0, y1) plane");
    sc_at->add_option("--q", at.q, "power-law coefficient");
    sc_at->add_option("--n", at.n, "degrees of freedom (alpha = 2/n + 1)");
    sc_at->add_option("--alpha", at.alpha, "override the exponent");
    sc_at->add_option("--c1", at.c1, "psi1 bound (negative)");
    sc_at->add_option("--c2", at.c2, "psi3 bound (positive)");
    sc_at->add_option("--y2", at.y2, "comma-separated y2 slices");
    sc_at->add_option("--y0min", at.y0min, "y0 axis start (> 0)");
    sc_at->add_option("--y0max", at.y0max, "y0 axis end");
    sc_at->add_option("--ny0", at.ny0, "y0 samples");
    sc_at->add_option("--y1min", at.y1min, "y1 axis start");
    sc_at->add_option("--y1max", at.y1max, "y1 axis end");
    sc_at->add_option("--ny1", at.ny1, "y1 samples");
    sc_at->add_option("--out", at.out, "output directory");

    VerifyArgs ve;
    auto* sc_ve = app.add_subcommand(
        "verify", "self-checks: bracket identities and PDE convergence");
    sc_ve->add_option("--suite", ve.suite, "brackets or pde");
    sc_ve->add_option("--field", ve.field, "trwave or blowup (pde suite)");
    sc_ve->add_option("--alpha", ve.alpha, "power-law exponent (pde suite)");
    sc_ve->add_option("--q", ve.q, "power-law coefficient (pde suite)");
    sc_ve->add_option("--C1", ve.C1, "integration constant C1 (pde suite)");
    sc_ve->add_option("--C2", ve.C2, "integration constant C2 (pde suite)");
    sc_ve->add_option("--cells", ve.cells, "base cell count (pde suite)");
    sc_ve->add_option("--seed", ve.seed, "sample seed (brackets suite)");
    sc_ve->add_option("--out", ve.out, "optional output directory");

    try {
        app.parse(argc, argv);
        if (sc_co->parsed()) return run_coexistence(co);
        if (sc_pm->parsed()) return run_phase_map(pm);
        if (sc_so->parsed()) return run_second_order(so);
        if (sc_at->parsed()) return run_attractor(at);
        if (sc_ve->parsed()) return run_verify(ve);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArityMismatch& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
