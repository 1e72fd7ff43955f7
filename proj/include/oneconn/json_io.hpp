#pragma once

// Configuration documents, inline/JSON divisors, and JSON forms of every report type.
//
// Configuration document:
//   {"name": str, "snc_faithful": bool,
//    "components": [{"name": str, "self": int, "k": int}, ...],
//    "intersections": [[i, j, v], ...]}
// Unlisted pairs are 0; [i, j, v] sets both (i, j) and (j, i) unless (j, i) is listed as well.
// An optional "divisor": {"mult": [...]} and "manifest" object are accepted alongside.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oneconn/check.hpp"
#include "oneconn/config.hpp"
#include "oneconn/connectivity.hpp"
#include "oneconn/errors.hpp"
#include "oneconn/intersection.hpp"
#include "oneconn/structure.hpp"

namespace oneconn {

using json = nlohmann::json;

inline constexpr std::string_view tool_version = "0.1.0";

namespace detail {

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw InputError("unknown key '" + key + "' in " + where);
    }
}

template <class T>
T get_as(const json& j, const std::string& what) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw InputError(what + ": " + e.what());
    }
}

} // namespace detail

inline Multiplicity parse_divisor_json(const json& j) {
    if (!j.is_object() || !j.contains("mult"))
        throw InputError("divisor JSON must be an object with a \"mult\" array");
    detail::reject_unknown_keys(j, {"mult"}, "divisor");
    return detail::get_as<Multiplicity>(j.at("mult"), "divisor mult");
}

struct LoadedConfiguration {
    ConfigPtr config;
    std::optional<Multiplicity> divisor; // embedded "divisor", if present
};

inline RawConfiguration parse_configuration_json(const json& doc) {
    if (!doc.is_object())
        throw InputError("configuration document must be a JSON object");
    detail::reject_unknown_keys(doc, {"name", "snc_faithful", "components", "intersections", "divisor", "manifest"},
                                "configuration");
    if (!doc.contains("components"))
        throw InputError("configuration document lacks \"components\"");
    RawConfiguration raw;
    raw.name = doc.contains("name") ? detail::get_as<std::string>(doc["name"], "name") : std::string();
    raw.snc_faithful = doc.contains("snc_faithful") && detail::get_as<bool>(doc["snc_faithful"], "snc_faithful");

    const json& comps = doc["components"];
    if (!comps.is_array() || comps.empty())
        throw InputError("\"components\" must be a non-empty array");
    const std::size_t n = comps.size();
    raw.matrix.assign(n, std::vector<Int>(n, 0));
    raw.k.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const json& c = comps[i];
        const std::string where = "component " + std::to_string(i);
        if (!c.is_object() || !c.contains("self") || !c.contains("k"))
            throw InputError(where + " must be an object with \"self\" and \"k\"");
        detail::reject_unknown_keys(c, {"name", "self", "k"}, where);
        raw.names.push_back(c.contains("name") ? detail::get_as<std::string>(c["name"], where + " name")
                                               : "G" + std::to_string(i));
        raw.matrix[i][i] = detail::get_as<Int>(c["self"], where + " self");
        raw.k[i] = detail::get_as<Int>(c["k"], where + " k");
    }

    if (doc.contains("intersections")) {
        const json& xs = doc["intersections"];
        if (!xs.is_array())
            throw InputError("\"intersections\" must be an array of [i, j, v] triples");
        std::map<std::pair<std::size_t, std::size_t>, Int> listed;
        for (std::size_t t = 0; t < xs.size(); ++t) {
            const auto triple = detail::get_as<std::vector<Int>>(xs[t], "intersection " + std::to_string(t));
            if (triple.size() != 3)
                throw InputError("intersection " + std::to_string(t) + " must be [i, j, v]");
            if (triple[0] < 0 || triple[1] < 0 || static_cast<std::size_t>(triple[0]) >= n ||
                static_cast<std::size_t>(triple[1]) >= n)
                throw InputError("intersection " + std::to_string(t) + " has an index out of range");
            const auto i = static_cast<std::size_t>(triple[0]);
            const auto j = static_cast<std::size_t>(triple[1]);
            if (i == j)
                throw InputError("intersection " + std::to_string(t) +
                                 " is diagonal; self-intersections belong in \"components\"");
            if (!listed.emplace(std::pair{i, j}, triple[2]).second)
                throw InputError("intersection (" + std::to_string(i) + "," + std::to_string(j) + ") listed twice");
        }
        for (const auto& [ij, v] : listed) {
            raw.matrix[ij.first][ij.second] = v;
            if (!listed.count({ij.second, ij.first}))
                raw.matrix[ij.second][ij.first] = v;
        }
    }
    return raw;
}

inline json configuration_to_json(const SurfaceConfiguration& cfg) {
    json doc;
    doc["name"] = cfg.name();
    doc["snc_faithful"] = cfg.snc_faithful();
    doc["components"] = json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i)
        doc["components"].push_back({{"name", cfg.component_name(i)}, {"self", cfg(i, i)}, {"k", cfg.k(i)}});
    doc["intersections"] = json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.size(); ++j)
            if (cfg(i, j) != 0)
                doc["intersections"].push_back({i, j, cfg(i, j)});
    return doc;
}

// nlohmann's parse errors carry line and column.
inline json parse_json_text(std::string_view text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
}

inline LoadedConfiguration load_configuration_text(std::string_view text, const std::string& source = "<input>") {
    const json doc = parse_json_text(text, source);
    LoadedConfiguration out;
    out.config = make_configuration(parse_configuration_json(doc));
    if (doc.contains("divisor"))
        out.divisor = parse_divisor_json(doc["divisor"]);
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LoadedConfiguration load_configuration_file(const std::string& path) {
    return load_configuration_text(read_text_file(path), path);
}

// "1,0,2" (whitespace around entries allowed).
inline Multiplicity parse_divisor_csv(std::string_view text, std::size_t n) {
    Multiplicity out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        std::string field(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        const auto b = field.find_first_not_of(" \t");
        const auto e = field.find_last_not_of(" \t");
        field = b == std::string::npos ? std::string() : field.substr(b, e - b + 1);
        if (field.empty())
            throw InputError("empty multiplicity in divisor '" + std::string(text) + "'");
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(field, &used);
        } catch (const std::exception&) {
            throw InputError("bad multiplicity '" + field + "' in divisor '" + std::string(text) + "'");
        }
        if (used != field.size())
            throw InputError("bad multiplicity '" + field + "' in divisor '" + std::string(text) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    if (out.size() != n)
        throw InputError("divisor '" + std::string(text) + "' has " + std::to_string(out.size()) +
                         " entries, configuration has " + std::to_string(n) + " components");
    return out;
}

namespace detail {

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

} // namespace detail

inline void to_json(json& j, const Connectedness& c) {
    j = c.is_infinite() ? json("infinity") : json(c.value());
}
inline void from_json(const json& j, Connectedness& c) {
    if (j.is_string() && j.get<std::string>() == "infinity")
        c = Connectedness::infinite();
    else
        c = Connectedness::finite(j.get<Int>());
}

inline void to_json(json& j, const Decomposition& d) { j = json{{"a", d.a}, {"b", d.b}}; }
inline void from_json(const json& j, Decomposition& d) {
    j.at("a").get_to(d.a);
    j.at("b").get_to(d.b);
}

inline void to_json(json& j, const GenusReport& r) {
    j = json{{"divisor", r.divisor}, {"self_intersection", r.self_int}, {"k_degree", r.k_degree}, {"pa", r.pa}};
}
inline void from_json(const json& j, GenusReport& r) {
    j.at("divisor").get_to(r.divisor);
    j.at("self_intersection").get_to(r.self_int);
    j.at("k_degree").get_to(r.k_degree);
    j.at("pa").get_to(r.pa);
}

inline void to_json(json& j, const AdditivityCheck& c) {
    j = json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"equal", c.equal}};
}
inline void from_json(const json& j, AdditivityCheck& c) {
    j.at("lhs").get_to(c.lhs);
    j.at("rhs").get_to(c.rhs);
    j.at("equal").get_to(c.equal);
}

inline void to_json(json& j, const ConnectivityResult& r) {
    j = json{{"divisor", r.divisor},
             {"conn", r.conn},
             {"argmin", detail::optional_json(r.argmin)},
             {"candidates_examined", r.candidates_examined}};
}
inline void from_json(const json& j, ConnectivityResult& r) {
    j.at("divisor").get_to(r.divisor);
    j.at("conn").get_to(r.conn);
    r.argmin = detail::optional_from<Decomposition>(j, "argmin");
    j.at("candidates_examined").get_to(r.candidates_examined);
}

inline void to_json(json& j, const CheckResult& c) {
    j = json{{"name", c.name},
             {"status", std::string(to_string(c.status))},
             {"detail", c.detail},
             {"witness", detail::optional_json(c.witness)}};
}
inline void from_json(const json& j, CheckResult& c) {
    j.at("name").get_to(c.name);
    c.status = parse_check_status(j.at("status").get<std::string>());
    j.at("detail").get_to(c.detail);
    c.witness = detail::optional_from<Multiplicity>(j, "witness");
}

inline void to_json(json& j, const GenusSpectrum& s) {
    j = json{{"max_pa", s.max_pa}, {"witness", s.witness}, {"all_nonpositive", s.all_nonpositive}};
}
inline void from_json(const json& j, GenusSpectrum& s) {
    j.at("max_pa").get_to(s.max_pa);
    j.at("witness").get_to(s.witness);
    j.at("all_nonpositive").get_to(s.all_nonpositive);
}

inline void to_json(json& j, const ChainDecomposition& c) {
    j = json{{"d", c.d}, {"a", c.a}, {"pieces", c.pieces}};
}
inline void from_json(const json& j, ChainDecomposition& c) {
    j.at("d").get_to(c.d);
    j.at("a").get_to(c.a);
    j.at("pieces").get_to(c.pieces);
}

inline void to_json(json& j, const ConsistencyReport& r) {
    j = json{{"d", r.d},
             {"z", r.z},
             {"consistent", r.consistent()},
             {"checks", r.checks},
             {"predicted_h0", r.predicted_h0},
             {"observed_h0", detail::optional_json(r.observed_h0)},
             {"chain", detail::optional_json(r.chain)},
             {"note", r.note}};
}
inline void from_json(const json& j, ConsistencyReport& r) {
    j.at("d").get_to(r.d);
    j.at("z").get_to(r.z);
    j.at("checks").get_to(r.checks);
    j.at("predicted_h0").get_to(r.predicted_h0);
    r.observed_h0 = detail::optional_from<Int>(j, "observed_h0");
    r.chain = detail::optional_from<ChainDecomposition>(j, "chain");
    j.at("note").get_to(r.note);
}

// Embedded in every JSON report. wall_time_ms is only recorded on request, since it would make
// otherwise identical runs differ byte-wise.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> flags;
    std::optional<std::uint64_t> seed;
    std::uint64_t max_candidates = EnumerationBudget{}.max_candidates;
    std::string version{tool_version};
    std::optional<double> wall_time_ms;
    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline void to_json(json& j, const RunManifest& m) {
    j = json{{"command", m.command},
             {"inputs", m.inputs},
             {"flags", m.flags},
             {"seed", detail::optional_json(m.seed)},
             {"max_candidates", m.max_candidates},
             {"version", m.version}};
    if (m.wall_time_ms)
        j["wall_time_ms"] = *m.wall_time_ms;
}
inline void from_json(const json& j, RunManifest& m) {
    j.at("command").get_to(m.command);
    j.at("inputs").get_to(m.inputs);
    j.at("flags").get_to(m.flags);
    m.seed = detail::optional_from<std::uint64_t>(j, "seed");
    j.at("max_candidates").get_to(m.max_candidates);
    j.at("version").get_to(m.version);
    m.wall_time_ms = detail::optional_from<double>(j, "wall_time_ms");
}

} // namespace oneconn
