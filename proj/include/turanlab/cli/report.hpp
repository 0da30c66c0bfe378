#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "turanlab/bound_report.hpp"
#include "turanlab/cli/json_io.hpp"

namespace turanlab::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr double kTightness = 1e-6;

/// Floating point numbers become 12-digit decimal strings, recursively.
inline json stringify_floats(const json& j) {
    if (j.is_number_float()) return format_number(j.get<double>());
    if (j.is_array()) {
        auto out = json::array();
        for (const auto& x : j) out.push_back(stringify_floats(x));
        return out;
    }
    if (j.is_object()) {
        auto out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = stringify_floats(it.value());
        return out;
    }
    return j;
}

inline json bound_json(const BoundReport& r) {
    json j{{"method", to_string(r.method)}, {"direction", to_string(r.direction)}, {"value", format_number(r.value)}};
    if (r.exact) j["exact"] = to_fraction_string(*r.exact);
    j["best"] = r.best;
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.certificate.empty()) j["certificate"] = stringify_floats(r.certificate);
    return j;
}

struct RunReport {
    json problem;
    std::vector<BoundReport> bounds;
    std::vector<std::string> notes;
    std::vector<std::string> rejected; // failed certificates; the command exits with code 2
    json extra = json::object();
    std::vector<std::pair<std::string, double>> timings;

    std::optional<double> upper() const { return best_upper(bounds); }
    std::optional<double> lower() const { return best_lower(bounds); }
    bool tight() const {
        const auto u = upper(), l = lower();
        return u && l && std::abs(*u - *l) <= kTightness;
    }
    /// Best lower above best upper beyond the reporting slack.
    bool inconsistent() const {
        const auto u = upper(), l = lower();
        return u && l && *l > *u + kTightness;
    }
};

inline json best_json(const std::vector<BoundReport>& reps, BoundDirection dir) {
    for (const auto& r : reps)
        if (r.best && r.direction == dir) {
            json j{{"method", to_string(r.method)}, {"value", format_number(r.value)}};
            if (r.exact) j["exact"] = to_fraction_string(*r.exact);
            return j;
        }
    return nullptr;
}

inline json report_json(const RunReport& r, bool with_timings) {
    json j;
    j["tool"] = "turanlab";
    j["version"] = kVersion;
    j["problem"] = r.problem;
    auto arr = json::array();
    for (const auto& b : r.bounds) arr.push_back(bound_json(b));
    j["bounds"] = arr;
    j["best_upper"] = best_json(r.bounds, BoundDirection::upper);
    j["best_lower"] = best_json(r.bounds, BoundDirection::lower);
    j["tight"] = r.tight();
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.rejected.empty()) j["rejected"] = r.rejected;
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = stringify_floats(it.value());
    if (with_timings) {
        auto t = json::object();
        for (const auto& [k, v] : r.timings) t[k] = format_number(v);
        j["timings"] = t;
    }
    return j;
}

inline std::string report_table(const RunReport& r, bool with_timings) {
    std::ostringstream os;
    os << std::left << std::setw(10) << "method" << std::setw(7) << "dir" << std::setw(16) << "value" << std::setw(14)
       << "exact" << "note\n";
    for (const auto& b : r.bounds) {
        std::string note = b.note;
        if (b.best) note = "[best] " + note;
        os << std::setw(10) << to_string(b.method) << std::setw(7) << to_string(b.direction) << std::setw(16)
           << format_number(b.value) << std::setw(14) << (b.exact ? to_fraction_string(*b.exact) : "-") << note << "\n";
    }
    const auto u = r.upper(), l = r.lower();
    os << "best upper: " << (u ? format_number(*u) : "-") << "  best lower: " << (l ? format_number(*l) : "-")
       << "  tight: " << (r.tight() ? "yes" : "no") << "\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    for (const auto& n : r.rejected) os << "rejected: " << n << "\n";
    if (with_timings)
        for (const auto& [k, v] : r.timings) os << "time " << k << ": " << format_number(v) << " s\n";
    return os.str();
}

} // namespace turanlab::cli
