#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ratext/cli.hpp"

namespace {

using ratext::cli::RunConfig;

/// Model flags shared by spectrum and sweep; numbers accept "p/q".
struct ModelFlags {
    std::string family = "radial";
    std::string omega = "1", l = "0", A = "0", B = "0";
    std::optional<std::string> qcase, branch;

    void attach(CLI::App* app) {
        app->add_option("--family", family, "radial, scarf, radial-ext-linear, radial-ext-quad, scarf-ext-linear, "
                                            "scarf-ext-quad");
        app->add_option("--omega", omega, "radial frequency");
        app->add_option("--l", l, "angular momentum");
        app->add_option("--A", A, "Scarf A");
        app->add_option("--B", B, "Scarf B");
        app->add_option("--case", qcase, "quadratic case: I, II or III");
        app->add_option("--branch", branch, "linear branch: upper or lower");
    }
    ratext::ModelSpec spec() const {
        using ratext::parse_rational;
        using ratext::to_double;
        ratext::ModelSpec s;
        s.family = ratext::parse_family(family);
        s.omega = to_double(parse_rational(omega));
        s.l = to_double(parse_rational(l));
        s.A = to_double(parse_rational(A));
        s.B = to_double(parse_rational(B));
        if (qcase) s.qcase = ratext::parse_case(*qcase);
        if (branch) s.branch = ratext::parse_branch(*branch);
        return s;
    }
};

struct CommonFlags {
    std::optional<std::string> output;
    std::string format = "text";
    std::optional<double> tol;

    void attach(CLI::App* app) {
        app->add_option("--output", output, "output file (relative paths resolve against $RATEXT_OUTPUT_DIR)");
        app->add_option("--format", format, "text, csv or json");
        app->add_option("--tol", tol, "tolerance override");
    }
    void apply(RunConfig& c) const {
        c.output = output;
        c.format = ratext::cli::parse_format(format);
        c.tol = tol;
    }
};

struct GridFlags {
    std::optional<int> n;
    std::optional<double> x_min, x_max;
    std::string origin = "bare";
    int levels = 3;

    void attach(CLI::App* app) {
        app->add_option("--grid-n", n, "interior grid points");
        app->add_option("--x-min", x_min, "first grid point");
        app->add_option("--x-max", x_max, "last grid point");
        app->add_option("--origin", origin, "energy origin: bare or partner");
        app->add_option("--levels", levels, "number of levels");
    }
    void apply(RunConfig& c) const {
        c.grid_n = n;
        c.x_min = x_min;
        c.x_max = x_max;
        c.origin = ratext::parse_origin(origin);
        c.levels = levels;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rationally extended radial oscillator and Scarf I potentials"};
    app.require_subcommand(1);

    ModelFlags model, sweep_model;
    CommonFlags common_spec, common_poly, common_verify, common_sweep, common_limits;
    GridFlags grid_spec, grid_sweep;
    RunConfig cfg;

    auto* spectrum = app.add_subcommand("spectrum", "analytic and finite-difference spectrum of a model");
    model.attach(spectrum);
    grid_spec.attach(spectrum);
    common_spec.attach(spectrum);
    std::optional<std::string> tabulate;
    spectrum->add_option("--tabulate", tabulate, "also write x, V, psi_k columns as CSV to this file");

    auto* poly = app.add_subcommand("poly", "exact coefficients of an exceptional polynomial");
    poly->add_option("--family", cfg.poly_family, "x1-laguerre, l1, l2, l3, x1-jacobi, p1, p3")->required();
    poly->add_option("--nu", cfg.nu, "index");
    poly->add_option("--alpha", cfg.alpha, "alpha (p/q accepted)");
    poly->add_option("--beta", cfg.beta, "beta (p/q accepted)");
    common_poly.attach(poly);

    auto* verify = app.add_subcommand("verify", "run a verification suite and print a JSON report");
    verify->add_option("--suite", cfg.suite,
                       "all, polynomials, residuals, isospectrality, extra-level, orthogonality, shape-invariance, "
                       "intertwining, limits, gates");
    common_verify.attach(verify);

    auto* sweep = app.add_subcommand("sweep", "spectrum over a range of one parameter");
    sweep_model.attach(sweep);
    grid_sweep.attach(sweep);
    common_sweep.attach(sweep);
    sweep->add_option("--param", cfg.sweep_param, "omega, l, A or B")->required();
    sweep->add_option("--from", cfg.sweep_from, "first value")->required();
    sweep->add_option("--to", cfg.sweep_to, "last value")->required();
    sweep->add_option("--steps", cfg.sweep_steps, "number of points");

    auto* limits = app.add_subcommand("limits", "parameter limits of the X1-Jacobi family");
    limits->add_option("--which", cfg.limit, "beta-to-alpha or alpha-to-zero")->required();
    limits->add_option("--nu", cfg.nu, "index");
    limits->add_option("--alpha", cfg.alpha, "alpha for beta-to-alpha");
    limits->add_option("--beta", cfg.beta, "beta for alpha-to-zero");
    common_limits.attach(limits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ratext::cli::kExitUsage;
    }

    try {
        if (*spectrum) {
            cfg.command = ratext::cli::Command::Spectrum;
            cfg.model = model.spec();
            grid_spec.apply(cfg);
            common_spec.apply(cfg);
            cfg.tabulate = tabulate;
        } else if (*poly) {
            cfg.command = ratext::cli::Command::Poly;
            common_poly.apply(cfg);
        } else if (*verify) {
            cfg.command = ratext::cli::Command::Verify;
            common_verify.apply(cfg);
            if (!verify->count("--format")) cfg.format = ratext::cli::Format::Json;
        } else if (*sweep) {
            cfg.command = ratext::cli::Command::Sweep;
            cfg.model = sweep_model.spec();
            grid_sweep.apply(cfg);
            common_sweep.apply(cfg);
        } else {
            cfg.command = ratext::cli::Command::Limits;
            common_limits.apply(cfg);
        }
    } catch (const ratext::UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return ratext::cli::kExitUsage;
    }
    return ratext::cli::run(cfg, std::cout, std::cerr);
}
