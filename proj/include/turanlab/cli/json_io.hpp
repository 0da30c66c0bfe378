#pragma once

// JSON helpers shared by the command-line tool: strict field access with
// path diagnostics, exact rationals, and the number format of reports.

#include <cstdio>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "turanlab/config.hpp"
#include "turanlab/error.hpp"
#include "turanlab/group.hpp"

namespace turanlab::cli {

using nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::parse_error, path + ": " + what);
}

/// Rejects members of `obj` not listed in `allowed`.
inline void require_fields(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) parse_fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!ok.count(it.key())) parse_fail(path + "." + it.key(), "unknown field");
}

inline const json& member(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) parse_fail(path + "." + key, "missing required field");
    return obj.at(key);
}

inline std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) parse_fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

inline double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) parse_fail(path, "expected a number");
    return v.get<double>();
}

inline bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) parse_fail(path, "expected true or false");
    return v.get<bool>();
}

inline const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) parse_fail(path, "expected an array");
    return v;
}

/// Integers, "p/q" strings and finite decimal strings such as "-1.25".
inline Rational parse_rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) parse_fail(path, "expected an integer or a string \"p/q\"");
    const auto s = v.get<std::string>();
    try {
        if (const auto slash = s.find('/'); slash != std::string::npos) {
            const Rational den(boost::multiprecision::cpp_int(s.substr(slash + 1)));
            if (den == 0) parse_fail(path, "zero denominator");
            return Rational(boost::multiprecision::cpp_int(s.substr(0, slash))) / den;
        }
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            const auto frac = s.substr(dot + 1);
            boost::multiprecision::cpp_int scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            const std::string head = s.substr(0, dot);
            const bool neg = !head.empty() && head[0] == '-';
            const boost::multiprecision::cpp_int ip(head.empty() || head == "-" ? "0" : head);
            const boost::multiprecision::cpp_int fp(frac.empty() ? "0" : frac);
            Rational q = Rational(ip) + Rational(fp, scale) * (neg ? -1 : 1);
            return q;
        }
        return Rational(boost::multiprecision::cpp_int(s));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(path, "not a rational number: \"" + s + "\"");
    }
}

/// An element of a group with `rank` coordinates; a bare integer is accepted
/// when rank is 1.
inline Element parse_element(const json& v, std::size_t rank, const std::string& path) {
    if (v.is_number_integer()) {
        if (rank != 1) parse_fail(path, "expected an array of " + std::to_string(rank) + " integers");
        return {v.get<std::int64_t>()};
    }
    if (!v.is_array() || v.size() != rank)
        parse_fail(path, rank == 1 ? "expected an integer" : "expected an array of " + std::to_string(rank) + " integers");
    Element e;
    for (std::size_t i = 0; i < v.size(); ++i) e.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
    return e;
}

inline std::vector<Element> parse_elements(const json& v, std::size_t rank, const std::string& path) {
    std::vector<Element> out;
    as_array(v, path);
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_element(v[i], rank, path + "[" + std::to_string(i) + "]"));
    return out;
}

/// 12 significant digits.
inline std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Element as a bare integer in rank 1, else as an array.
inline json element_json(const Element& e) { return e.size() == 1 ? json(e[0]) : json(e); }

inline json elements_out(const FiniteAbelianGroup& g, const std::vector<std::size_t>& idx) {
    auto arr = json::array();
    for (auto i : idx) arr.push_back(element_json(g.element(i)));
    return arr;
}

/// "line L, column C" for a byte offset into `text`.
inline std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_document(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error, source + ": " + locate(text, e.byte) + ": malformed JSON");
    }
}

} // namespace turanlab::cli
