// phd: batch front-end for the polyharmonic Dirichlet solver on the upper half-plane.
//
//   phd solve  --config <path> --grid x0,x1,y0,y1,nx,ny --out <path>
//   phd kernel --family {poisson|bh|modified} --order <n[,m]> [--t <real> | --zeta <re,im>] --grid ... --out <path>
//   phd green  --order n --zeta re,im --grid ... --out <path>
//   phd verify --suite {gegenbauer|poisson|pompeiu|solver|maximal|all} --out <path>
//
// Exit status: 0 success, 1 failed points or checks, 2 usage or input errors, 3 I/O errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phd/problem_io.hpp"
#include "phd/suites.hpp"

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, io = 3 };

struct Overrides {
    double tolerance = 0.0;
    double relative_tolerance = -1.0;
    int max_intervals = 0;

    phd::QuadratureSpec apply(phd::QuadratureSpec q) const {
        if (tolerance > 0.0) q.tolerance = tolerance;
        if (relative_tolerance >= 0.0) q.relative_tolerance = relative_tolerance;
        if (max_intervals > 0) q.max_intervals = max_intervals;
        q.validate();
        return q;
    }
};

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(s);
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw phd::ValidationError(std::string(what) + " must be re,im");
    }
}

int finish(const std::string& out, const std::vector<phd::GridRow>& rows, const std::string& header) {
    const std::size_t bad = phd::write_csv(out, header, rows);
    if (bad == 0) return ok;
    std::size_t shown = 0;
    for (const auto& r : rows)
        if (!r.error.empty() && shown++ < 5)
            std::cerr << "point (" << phd::format17(r.z.real()) << ", " << phd::format17(r.z.imag()) << "): " << r.error << '\n';
    std::cerr << bad << " of " << rows.size() << " points failed; their rows were omitted\n";
    return failed;
}

int run_solve(const std::string& config, const phd::GridSpec& grid, const std::string& out, const Overrides& o) {
    phd::ProblemSpec spec = phd::parse_problem(config);
    spec.quad = o.apply(spec.quad);
    const phd::Solver solver(spec);
    const auto rows = phd::evaluate_points(grid, [&](phd::cplx z) {
        const auto s = solver(z);
        return std::pair{s.value, s.error_estimate};
    });
    return finish(out, rows, "x,y,value,error_estimate");
}

int run_kernel(const std::string& family, const std::string& order, const std::string& t_arg, const std::string& zeta_arg,
               const phd::GridSpec& grid, const std::string& out) {
    int n = 0, m = 0;
    {
        const auto comma = order.find(',');
        try {
            n = std::stoi(order.substr(0, comma));
            m = comma == std::string::npos ? n : std::stoi(order.substr(comma + 1));
        } catch (const std::exception&) {
            throw phd::ValidationError("--order must be n or n,m");
        }
    }
    if (!t_arg.empty() && !zeta_arg.empty()) throw phd::ValidationError("give either --t or --zeta");
    std::function<phd::cplx(phd::cplx)> k;
    if (family == "poisson") {
        if (!zeta_arg.empty() || m != n) throw phd::ValidationError("poisson kernel takes --order n and --t");
        const double t = t_arg.empty() ? 0.0 : std::stod(t_arg);
        k = [n, t](phd::cplx z) { return phd::cplx(phd::poisson_kernel(n, z, t)); };
    } else {
        if (!t_arg.empty()) throw phd::ValidationError(family + " kernel takes --zeta, not --t");
        const auto [zr, zi] = zeta_arg.empty() ? std::pair{0.0, 0.0} : parse_pair(zeta_arg, "--zeta");
        const phd::cplx zeta(zr, zi);
        if (family == "bh") {
            const phd::BHKernelIndex idx(m, n);
            k = [idx, zeta](phd::cplx z) { return phd::bh_kernel(idx, z - zeta); };
        } else {
            if (zeta_arg.empty()) throw phd::ValidationError("modified kernel needs --zeta");
            if (m == n) k = [n, zeta](phd::cplx z) { return phd::modified_kernel(n, z, zeta); };
            else k = [m, n, zeta](phd::cplx z) { return phd::modified_kernel_offdiag(m, n, z, zeta); };
        }
    }
    const auto rows = phd::evaluate_points(grid, [&](phd::cplx z) {
        const phd::cplx v = k(z);
        return std::pair{v.real(), v.imag()};
    });
    return finish(out, rows, "x,y,re,im");
}

int run_green(int n, const std::string& zeta_arg, const phd::GridSpec& grid, const std::string& out, const Overrides& o) {
    const auto [zr, zi] = parse_pair(zeta_arg, "--zeta");
    const phd::cplx zeta(zr, zi);
    const phd::QuadratureSpec q = o.apply({});
    const auto rows = phd::evaluate_points(grid, [&](phd::cplx z) {
        const auto r = phd::green_function(n, z, zeta, q);
        return std::pair{r.value, r.error};
    });
    return finish(out, rows, "x,y,value,error_estimate");
}

int run_verify(const std::string& suite, const std::string& out, const std::vector<std::string>& faults) {
    phd::VerifyOptions opts;
    opts.faults.insert(faults.begin(), faults.end());
    const auto results = phd::run_suite(suite, opts);
    nlohmann::json report;
    report["suite"] = suite;
    report["faults"] = faults;
    bool all = true;
    for (const auto& r : results) {
        all = all && r.outcome.pass;
        report["checks"].push_back({{"suite", r.suite},
                                    {"name", r.name},
                                    {"reference", r.reference},
                                    {"measured", r.outcome.measured},
                                    {"tolerance", r.outcome.tolerance},
                                    {"pass", r.outcome.pass},
                                    {"detail", r.outcome.detail},
                                    {"seconds", r.seconds}});
        std::cout << (r.outcome.pass ? "PASS " : "FAIL ") << r.suite << '.' << r.name << "  measured " << r.outcome.measured
                  << "  tolerance " << r.outcome.tolerance << '\n';
    }
    report["passed"] = all;
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw phd::Error("cannot write '" + out + "'");
    f << report.dump(2) << '\n';
    if (!f) throw phd::Error("write to '" + out + "' failed");
    return all ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polyharmonic Dirichlet problems on the upper half-plane"};
    app.require_subcommand(1);

    std::string grid_arg, out, config, family, order = "1", t_arg, zeta_arg, suite;
    int green_order = 1;
    Overrides o;
    std::vector<std::string> faults;

    auto add_quad = [&](CLI::App* c) {
        c->add_option("--tolerance", o.tolerance, "absolute quadrature tolerance");
        c->add_option("--relative-tolerance", o.relative_tolerance, "relative quadrature tolerance");
        c->add_option("--max-intervals", o.max_intervals, "subinterval budget per one-dimensional integral");
    };

    auto* solve = app.add_subcommand("solve", "evaluate the solution of a problem file on a grid");
    solve->add_option("--config", config, "problem file")->required();
    solve->add_option("--grid", grid_arg, "x0,x1,y0,y1,nx,ny")->required();
    solve->add_option("--out", out, "CSV output path")->required();
    add_quad(solve);

    auto* kernel = app.add_subcommand("kernel", "tabulate a kernel on a grid");
    kernel->add_option("--family", family, "poisson, bh or modified")->required()->check(CLI::IsMember({"poisson", "bh", "modified"}));
    kernel->add_option("--order", order, "n, or m,n for off-diagonal kernels")->required();
    kernel->add_option("--t", t_arg, "boundary point of the Poisson kernel");
    kernel->add_option("--zeta", zeta_arg, "second point re,im");
    kernel->add_option("--grid", grid_arg, "x0,x1,y0,y1,nx,ny")->required();
    kernel->add_option("--out", out, "CSV output path")->required();

    auto* green = app.add_subcommand("green", "tabulate the Green function z -> G_n(z, zeta)");
    green->add_option("--order", green_order, "n")->required()->check(CLI::PositiveNumber);
    green->add_option("--zeta", zeta_arg, "pole re,im")->required();
    green->add_option("--grid", grid_arg, "x0,x1,y0,y1,nx,ny")->required();
    green->add_option("--out", out, "CSV output path")->required();
    add_quad(green);

    auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
    std::vector<std::string> suites = phd::suite_names();
    suites.push_back("all");
    verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suites));
    verify->add_option("--out", out, "JSON report path")->required();
    verify->add_option("--inject-fault", faults, "mutation fixture")->group("")->check(CLI::IsMember({"gn-sign"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*solve) return run_solve(config, phd::GridSpec::parse(grid_arg), out, o);
        if (*kernel) return run_kernel(family, order, t_arg, zeta_arg, phd::GridSpec::parse(grid_arg), out);
        if (*green) return run_green(green_order, zeta_arg, phd::GridSpec::parse(grid_arg), out, o);
        if (*verify) return run_verify(suite, out, faults);
    } catch (const phd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const phd::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return usage;
    } catch (const phd::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return usage;
    } catch (const phd::ToleranceNotMet& e) {
        std::cerr << "tolerance not met: " << e.what() << '\n';
        return failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    }
    return usage;
}
