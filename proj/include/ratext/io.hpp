#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "potentials.hpp"
#include "wavefunctions.hpp"

namespace ratext::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

/// Locale-independent general format with 12 significant digits.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
    return std::string(buf, r.ptr);
}

/// JSON number rounded to 12 significant digits; null when not finite.
inline Json json_real(double v) {
    if (!std::isfinite(v)) return nullptr;
    double r = 0.0;
    std::string s = format_real(v);
    std::from_chars(s.data(), s.data() + s.size(), r);
    return r;
}

/// Model descriptor {family, parameters, case, branch}; usable before validation.
inline Json spec_json(const ModelSpec& s) {
    Json j;
    j["family"] = std::string(to_string(s.family));
    const bool radial =
        s.family == Family::RadialOsc || s.family == Family::ExtRadialLinear || s.family == Family::ExtRadialQuad;
    Json p;
    if (radial) {
        p["omega"] = json_real(s.omega);
        p["l"] = json_real(s.l);
    } else {
        p["A"] = json_real(s.A);
        p["B"] = json_real(s.B);
    }
    j["parameters"] = p;
    j["case"] = s.qcase ? Json(std::string(to_string(*s.qcase))) : Json(nullptr);
    j["branch"] = s.branch ? Json(std::string(to_string(*s.branch))) : Json(nullptr);
    return j;
}

inline Json model_json(const PotentialModel& m) { return spec_json(m.spec()); }

/// Inverse of model_json; parameters absent from the object keep their ModelSpec defaults.
inline ModelSpec model_spec_from_json(const Json& j) {
    ModelSpec s;
    try {
        s.family = parse_family(j.at("family").get<std::string>());
        const Json& p = j.at("parameters");
        if (p.contains("omega")) s.omega = p["omega"].get<double>();
        if (p.contains("l")) s.l = p["l"].get<double>();
        if (p.contains("A")) s.A = p["A"].get<double>();
        if (p.contains("B")) s.B = p["B"].get<double>();
        if (j.contains("case") && !j["case"].is_null()) s.qcase = parse_case(j["case"].get<std::string>());
        if (j.contains("branch") && !j["branch"].is_null()) s.branch = parse_branch(j["branch"].get<std::string>());
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed model descriptor: ") + e.what());
    }
    return s;
}

/// One entry of a verification report.
struct CheckResult {
    std::string check;
    Json params = Json::object();
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline Json check_json(const CheckResult& c) {
    return Json{{"check", c.check},
                {"params", c.params},
                {"value", json_real(c.value)},
                {"tolerance", json_real(c.tolerance)},
                {"pass", c.pass}};
}

inline bool all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

inline Json report_json(const std::string& suite, const std::vector<CheckResult>& rs) {
    Json arr = Json::array();
    for (const auto& r : rs) arr.push_back(check_json(r));
    return Json{{"schema", kSchemaVersion}, {"suite", suite}, {"pass", all_pass(rs)}, {"results", arr}};
}

/// Header row plus comma-separated rows; reals through format_real.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) { row_strings(header); }

    void row(const std::vector<double>& values) {
        std::vector<std::string> s;
        s.reserve(values.size());
        for (double v : values) s.push_back(format_real(v));
        row_strings(s);
    }
    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

/// x, V(x) and x, psi_k(x) columns on an interior grid, for external plotting.
inline void tabulate(std::ostream& os, const PotentialModel& m, int levels, int n) {
    std::vector<std::string> header{"x", "V"};
    std::vector<WavefunctionSpec> wfs;
    for (int k = 0; k < levels; ++k) {
        wfs.push_back(eigenfunction(m, k));
        header.push_back("psi" + std::to_string(k));
    }
    CsvWriter w(os, header);
    for (double x : interior_grid(m, n, std::max(levels - 1, 0))) {
        std::vector<double> r{x, evaluate(m, x) + m.additive_constant};
        for (const auto& wf : wfs) r.push_back(eval_wavefunction(wf, x));
        w.row(r);
    }
}

}  // namespace ratext::io
