#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "io.hpp"
#include "potentials.hpp"
#include "spectral.hpp"
#include "verify.hpp"
#include "xpoly.hpp"

namespace ratext::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kDefaultGrid = 4000;
inline constexpr double kSpectrumTol = 2e-3;
inline constexpr int kTabulatePoints = 400;
inline constexpr const char* kOutputDirEnv = "RATEXT_OUTPUT_DIR";

enum class Command { Spectrum, Poly, Verify, Sweep, Limits };
enum class Format { Text, Csv, Json };

inline Format parse_format(std::string_view s) {
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw UsageError("unknown format '" + std::string(s) + "' (expected text, csv or json)");
}

struct RunConfig {
    Command command = Command::Spectrum;
    ModelSpec model;
    EnergyOrigin origin = EnergyOrigin::Bare;
    int levels = 3;

    // grid overrides
    std::optional<int> grid_n;
    std::optional<double> x_min, x_max;
    std::optional<double> tol;

    // poly / limits
    std::string poly_family;
    int nu = 0;
    std::string alpha = "0", beta = "0";
    std::string limit;  // beta-to-alpha | alpha-to-zero

    // verify
    std::string suite = "all";

    // sweep
    std::string sweep_param;
    std::string sweep_from, sweep_to;
    int sweep_steps = 5;

    std::optional<std::string> output;
    std::optional<std::string> tabulate;
    Format format = Format::Text;
};

/// Relative paths resolve against $RATEXT_OUTPUT_DIR when it is set.
inline std::filesystem::path resolve_output(const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative())
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
    return path;
}

namespace detail {

/// Writes to the configured file, or to `fallback` when no output path is set.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : os_(&fallback) {
        if (!path) return;
        auto p = resolve_output(*path);
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        file_.open(p);
        if (!file_) throw UsageError("cannot open output file '" + p.string() + "'");
        os_ = &file_;
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

inline void write_table(std::ostream& os, Format fmt, const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows) {
    if (fmt == Format::Csv) {
        io::CsvWriter w(os, header);
        for (const auto& r : rows) w.row(r);
        return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? " " : "") << std::setw(i ? 20 : 4) << header[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << std::setw(i ? 20 : 4) << io::format_real(r[i]);
        os << '\n';
    }
}

inline io::Json table_json(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    io::Json arr = io::Json::array();
    for (const auto& r : rows) {
        io::Json o;
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = io::json_real(r[i]);
        arr.push_back(o);
    }
    return arr;
}

inline GridSpec grid_for(const RunConfig& c, const PotentialModel& m) {
    GridSpec g = default_grid(m, c.grid_n.value_or(kDefaultGrid), c.levels);
    if (c.x_min) g.x_min = *c.x_min;
    if (c.x_max) g.x_max = *c.x_max;
    return g;
}

/// Rows (nu, E_analytic, E_fd, abs_error) and the largest error.
inline std::pair<std::vector<std::vector<double>>, double> spectrum_rows(const RunConfig& c, const PotentialModel& m,
                                                                         std::ostream* warn) {
    auto rep = fd_eigensolve(m, grid_for(c, m), c.levels, c.origin);
    if (rep.warning && warn) *warn << "warning: " << *rep.warning << '\n';
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < c.levels; ++k) {
        double ea = (*rep.analytic_reference)[k], ef = rep.eigenvalues[k];
        rows.push_back({static_cast<double>(k), ea, ef, std::abs(ea - ef)});
    }
    return {rows, *rep.max_abs_error};
}

inline int spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.levels < 1) throw UsageError("--levels must be >= 1");
    PotentialModel m = make_model(c.model);
    const double tol = c.tol.value_or(kSpectrumTol);
    auto [rows, worst] = spectrum_rows(c, m, &err);
    const std::vector<std::string> header{"nu", "E_analytic", "E_fd", "abs_error"};
    Sink sink(c.output, out);
    if (c.format == Format::Json) {
        io::Json j{{"schema", io::kSchemaVersion},
                   {"model", io::model_json(m)},
                   {"origin", std::string(to_string(c.origin))},
                   {"tolerance", io::json_real(tol)},
                   {"pass", worst < tol},
                   {"rows", table_json(header, rows)}};
        *sink << j.dump(2) << '\n';
    } else {
        if (c.format == Format::Text) *sink << "# " << m.describe() << ", origin " << to_string(c.origin) << '\n';
        write_table(*sink, c.format, header, rows);
    }
    if (c.tabulate) {
        Sink tab(c.tabulate, out);
        io::tabulate(*tab, m, c.levels, kTabulatePoints);
    }
    return worst < tol ? kExitPass : kExitFail;
}

inline io::Json rational_list(const RPoly& p) {
    io::Json a = io::Json::array();
    for (int k = 0; k <= p.degree(); ++k) a.push_back(to_string(p[k]));
    return a;
}

inline int poly(const RunConfig& c, std::ostream& out) {
    ExceptionalFamily<Rational> f{parse_exceptional_kind(c.poly_family), parse_rational(c.alpha),
                                  parse_rational(c.beta)};
    RPoly p = exceptional_polynomial(f, c.nu);
    ExpansionCoefficients<Rational> ex;
    std::string source = "published";
    try {
        ex = expansion_coefficients(f, c.nu);
    } catch (const UnsupportedError&) {
        ex = classical_decomposition(p, f.classical());
        source = "decomposition";
    }
    const std::string basis = f.is_laguerre_type() ? "laguerre" : "jacobi";
    Sink sink(c.output, out);
    if (c.format == Format::Json) {
        io::Json terms = io::Json::array();
        for (auto it = ex.rbegin(); it != ex.rend(); ++it) terms.push_back({{"k", it->first}, {"c", to_string(it->second)}});
        io::Json j{{"schema", io::kSchemaVersion}, {"family", c.poly_family}, {"nu", c.nu}, {"alpha", to_string(f.alpha)}};
        if (!f.is_laguerre_type()) j["beta"] = to_string(f.beta);
        j["degree"] = p.degree();
        j["coefficients"] = rational_list(p);
        j["expansion"] = {{"basis", basis}, {"source", source}, {"terms", terms}};
        *sink << j.dump(2) << '\n';
    } else if (c.format == Format::Csv) {
        io::CsvWriter w(*sink, {"power", "coefficient"});
        for (int k = 0; k <= p.degree(); ++k) w.row_strings({std::to_string(k), to_string(p[k])});
    } else {
        *sink << "coefficients " << to_string(p) << '\n';
        *sink << "expansion (" << basis << ", " << source << ")";
        for (auto it = ex.rbegin(); it != ex.rend(); ++it) *sink << ' ' << it->first << ':' << to_string(it->second);
        *sink << '\n';
    }
    return kExitPass;
}

inline int verify(const RunConfig& c, std::ostream& out) {
    if (c.format == Format::Csv) throw UsageError("verify reports are JSON only");
    auto rs = verify::run(c.suite, verify::Options{c.tol});
    Sink sink(c.output, out);
    *sink << io::report_json(c.suite, rs).dump(2) << '\n';
    return io::all_pass(rs) ? kExitPass : kExitFail;
}

inline double& sweep_slot(ModelSpec& s, const std::string& name) {
    if (name == "omega") return s.omega;
    if (name == "l") return s.l;
    if (name == "A") return s.A;
    if (name == "B") return s.B;
    throw UsageError("unknown sweep parameter '" + name + "' (expected omega, l, A or B)");
}

inline int sweep(const RunConfig& c, std::ostream& out) {
    if (c.sweep_steps < 2) throw UsageError("--steps must be >= 2");
    if (c.levels < 1) throw UsageError("--levels must be >= 1");
    const Rational lo = parse_rational(c.sweep_from), hi = parse_rational(c.sweep_to);
    std::vector<PotentialModel> models;
    std::vector<double> values;
    for (int i = 0; i < c.sweep_steps; ++i) {
        ModelSpec s = c.model;
        double v = to_double(lo + (hi - lo) * Rational(i, c.sweep_steps - 1));
        sweep_slot(s, c.sweep_param) = v;
        try {
            models.push_back(make_model(s));
        } catch (const ParameterError& e) {
            throw ParameterError(c.sweep_param + " = " + io::format_real(v) + ": " + e.what());
        }
        values.push_back(v);
    }
    std::vector<std::future<std::pair<std::vector<std::vector<double>>, double>>> jobs;
    for (const auto& m : models) jobs.push_back(std::async(std::launch::async, [&c, m] {
        return spectrum_rows(c, m, nullptr);
    }));
    const double tol = c.tol.value_or(kSpectrumTol);
    std::vector<std::vector<double>> rows;
    double worst = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto [r, w] = jobs[i].get();
        worst = std::max(worst, w);
        for (auto& row : r) {
            row.insert(row.begin(), values[i]);
            rows.push_back(std::move(row));
        }
    }
    const std::vector<std::string> header{c.sweep_param, "nu", "E_analytic", "E_fd", "abs_error"};
    Sink sink(c.output, out);
    if (c.format == Format::Json) {
        io::Json j{{"schema", io::kSchemaVersion}, {"model", io::spec_json(c.model)},
                   {"parameter", c.sweep_param},   {"origin", std::string(to_string(c.origin))},
                   {"tolerance", io::json_real(tol)}, {"pass", worst < tol},
                   {"rows", table_json(header, rows)}};
        *sink << j.dump(2) << '\n';
    } else {
        write_table(*sink, c.format, header, rows);
    }
    return worst < tol ? kExitPass : kExitFail;
}

inline int limits(const RunConfig& c, std::ostream& out) {
    const bool b2a = c.limit == "beta-to-alpha";
    if (!b2a && c.limit != "alpha-to-zero")
        throw UsageError("unknown limit '" + c.limit + "' (expected beta-to-alpha or alpha-to-zero)");
    const Rational a = parse_rational(c.alpha), b = parse_rational(c.beta);
    RPoly lim = b2a ? limit_beta_to_alpha(c.nu, a) : limit_alpha_to_zero(c.nu, b);
    std::vector<std::vector<double>> rows;
    double prev = 0.0;
    bool ok = true;
    const double tol = c.tol.value_or(verify::kLimitRateTol);
    for (long d = 100; d <= 1000000; d *= 10) {
        Rational eps(1, d);
        RPoly diff = b2a ? exceptional_polynomial(ExceptionalFamily<Rational>{ExceptionalKind::X1Jacobi, a, a + eps}, c.nu) * eps - lim
                         : exceptional_polynomial(ExceptionalFamily<Rational>{ExceptionalKind::X1Jacobi, eps, b}, c.nu) - lim;
        double e = verify::detail::sup_on_grid(diff);
        double order = rows.empty() ? std::nan("") : std::log10(prev / e);
        if (!rows.empty() && !(std::abs(order - 1.0) <= tol)) ok = false;
        rows.push_back({to_double(eps), e, order});
        prev = e;
    }
    const std::vector<std::string> header{"eps", "sup_error", "order"};
    Sink sink(c.output, out);
    if (c.format == Format::Json) {
        io::Json j{{"schema", io::kSchemaVersion}, {"limit", c.limit}, {"nu", c.nu},
                   {"coefficients", rational_list(lim)}, {"pass", ok}, {"rows", table_json(header, rows)}};
        *sink << j.dump(2) << '\n';
    } else {
        if (c.format == Format::Text) *sink << "limit " << to_string(lim) << '\n';
        write_table(*sink, c.format, header, rows);
    }
    return ok ? kExitPass : kExitFail;
}

}  // namespace detail

/// Runs one command. Parameter and usage errors are reported on `err` with exit code 2.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        switch (c.command) {
            case Command::Spectrum: return detail::spectrum(c, out, err);
            case Command::Poly: return detail::poly(c, out);
            case Command::Verify: return detail::verify(c, out);
            case Command::Sweep: return detail::sweep(c, out);
            case Command::Limits: return detail::limits(c, out);
        }
    } catch (const ParameterError& e) {
        err << "invalid parameters: " << e.what() << '\n';
    } catch (const SingularParameterError& e) {
        err << "invalid parameters: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << '\n';
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
    } catch (const NumericError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace ratext::cli
