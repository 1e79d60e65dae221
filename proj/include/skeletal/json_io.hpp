#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skeletal/hypergraph.hpp"

namespace skeletal {

using nlohmann::json;

inline constexpr const char* kLibraryVersion = "0.1.0";

struct Diagnostic {
    std::string path;
    std::string message;
};

inline json to_json(const Hypergraph& g)
{
    json j;
    j["k"] = g.uniformity();
    j["n"] = g.vertex_count();
    if (g.layout()) {
        json parts = json::array();
        for (const auto& p : g.layout()->parts())
            parts.push_back(p);
        j["parts"] = parts;
    } else {
        j["parts"] = nullptr;
    }
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back(e);
    j["edges"] = edges;
    return j;
}

// Full invariant validation of the hypergraph file schema. Returns every
// violation found, each with the offending field path.
inline std::vector<Diagnostic> validate_hypergraph_json(const json& j)
{
    std::vector<Diagnostic> out;
    auto fail = [&](std::string path, std::string msg) {
        out.push_back(Diagnostic{std::move(path), std::move(msg)});
    };
    if (!j.is_object()) {
        fail("$", "expected a JSON object");
        return out;
    }
    for (const char* field : {"k", "n", "edges"})
        if (!j.contains(field))
            fail(std::string(field), "missing required field");
    if (!out.empty())
        return out;
    if (!j["k"].is_number_integer() || j["k"].get<long long>() < 1)
        fail("k", "uniformity must be an integer >= 1");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0)
        fail("n", "vertex count must be a non-negative integer");
    if (!out.empty())
        return out;
    const int k = j["k"].get<int>();
    const int n = j["n"].get<int>();

    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    bool has_parts = j.contains("parts") && !j["parts"].is_null();
    if (has_parts) {
        if (!j["parts"].is_array()) {
            fail("parts", "must be an array of vertex arrays or null");
            return out;
        }
        int covered = 0;
        for (std::size_t p = 0; p < j["parts"].size(); ++p) {
            const auto& part = j["parts"][p];
            std::string base = "parts[" + std::to_string(p) + "]";
            if (!part.is_array()) {
                fail(base, "part must be an array");
                continue;
            }
            for (std::size_t t = 0; t < part.size(); ++t) {
                if (!part[t].is_number_integer()) {
                    fail(base + "[" + std::to_string(t) + "]", "vertex must be an integer");
                    continue;
                }
                int v = part[t].get<int>();
                if (v < 0 || v >= n) {
                    fail(base + "[" + std::to_string(t) + "]", "vertex out of range");
                    continue;
                }
                if (part_of[static_cast<std::size_t>(v)] != -1) {
                    fail(base + "[" + std::to_string(t) + "]", "vertex appears in two parts");
                    continue;
                }
                part_of[static_cast<std::size_t>(v)] = static_cast<int>(p);
                ++covered;
            }
        }
        if (out.empty() && covered != n)
            fail("parts", "parts do not cover the vertex set");
    }

    if (!j["edges"].is_array()) {
        fail("edges", "must be an array");
        return out;
    }
    std::unordered_set<std::vector<int>, VecHash> seen;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const auto& e = j["edges"][i];
        std::string base = "edges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != static_cast<std::size_t>(k)) {
            fail(base, "edge must be an array of exactly k vertices");
            continue;
        }
        std::vector<int> edge;
        bool bad = false;
        for (std::size_t t = 0; t < e.size(); ++t) {
            if (!e[t].is_number_integer()) {
                fail(base + "[" + std::to_string(t) + "]", "vertex must be an integer");
                bad = true;
                break;
            }
            int v = e[t].get<int>();
            if (v < 0 || v >= n) {
                fail(base + "[" + std::to_string(t) + "]", "vertex out of range");
                bad = true;
                break;
            }
            edge.push_back(v);
        }
        if (bad)
            continue;
        for (std::size_t t = 1; t < edge.size(); ++t) {
            if (edge[t] <= edge[t - 1]) {
                fail(base, edge[t] == edge[t - 1] ? "repeated vertex inside edge"
                                                  : "edge vertices must be sorted ascending");
                bad = true;
                break;
            }
        }
        if (bad)
            continue;
        if (!seen.insert(edge).second) {
            fail(base, "duplicate edge");
            continue;
        }
        if (has_parts && out.empty()) {
            std::vector<int> used;
            for (int v : edge) {
                int p = part_of[static_cast<std::size_t>(v)];
                if (std::find(used.begin(), used.end(), p) != used.end()) {
                    fail(base, "edge meets part " + std::to_string(p) + " twice");
                    break;
                }
                used.push_back(p);
            }
        }
    }
    return out;
}

inline Hypergraph hypergraph_from_json(const json& j)
{
    auto diags = validate_hypergraph_json(j);
    if (!diags.empty())
        throw FileFormatError(diags.front().path + ": " + diags.front().message);
    const int k = j["k"].get<int>();
    const int n = j["n"].get<int>();
    std::vector<std::vector<int>> edges;
    for (const auto& e : j["edges"])
        edges.push_back(e.get<std::vector<int>>());
    std::optional<PartiteLayout> layout;
    if (j.contains("parts") && !j["parts"].is_null()) {
        std::vector<std::vector<int>> parts;
        for (const auto& p : j["parts"])
            parts.push_back(p.get<std::vector<int>>());
        layout.emplace(n, std::move(parts));
    }
    return Hypergraph(k, n, std::move(edges), std::move(layout));
}

inline Hypergraph load_hypergraph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FileFormatError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FileFormatError(path + ": " + e.what());
    }
    return hypergraph_from_json(j);
}

inline void save_json(const json& j, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw FileFormatError("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

inline void save_hypergraph(const Hypergraph& g, const std::string& path)
{
    save_json(to_json(g), path);
}

} // namespace skeletal
