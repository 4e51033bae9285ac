#pragma once

// File formats.
//
// Text format for a single table: line 1 is `order n`, then n lines of n
// space-separated integers.
//
// Structured format: JSON with format_version 1 and a kind discriminator:
//   "magma"           order, table, optional labels and metadata
//   "smash"           order_a/b, phi1..phi3 (rows per A element), xi1/xi2
//                     indexed [a1][b1][a2]
//   "skew"            n_table, embed_a/b, order_a/b, phi, eta [v][u][b],
//                     kappa [u][c][b], xi [u][c][v][b]
//   "search-witness"  the task echo plus the factor tables and instance
//                     facts needed to replay the witness with no search
//                     state
//
// Writers emit a canonical form (fixed key order, two-space indent, trailing
// newline) so canonical files round-trip byte for byte.

#include <fstream>
#include <functional>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qgforge/errors.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/products.hpp"
#include "qgforge/search.hpp"

namespace qgforge {

using ojson = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct MagmaDocument {
    FiniteMagma magma;
    std::vector<std::string> labels; // optional, empty = unlabeled
    ojson metadata;                  // optional, null = none
};

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

inline std::string write_magma_text(const FiniteMagma& m) {
    std::ostringstream out;
    out << "order " << m.order() << '\n';
    for (int a = 0; a < m.order(); ++a) {
        for (int b = 0; b < m.order(); ++b) {
            if (b) out << ' ';
            out << m.mul(a, b);
        }
        out << '\n';
    }
    return out.str();
}

inline FiniteMagma parse_magma_text(const std::string& text) {
    std::istringstream in(text);
    std::string head;
    if (!(in >> head) || head != "order")
        throw invalid_input("magma text: expected leading `order n` line");
    int n = 0;
    if (!(in >> n) || n < 1) throw invalid_input("magma text: bad order");
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    int v = 0;
    while (static_cast<int>(flat.size()) < n * n && in >> v) flat.push_back(v);
    if (static_cast<int>(flat.size()) < n * n)
        throw invalid_input("magma text: expected " + std::to_string(n * n) +
                            " entries, found " + std::to_string(flat.size()));
    std::string trailing;
    if (in >> trailing) throw invalid_input("magma text: trailing content after the table");
    return FiniteMagma::from_flat(n, std::move(flat));
}

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

namespace detail {

inline void require_version_kind(const ojson& j, const std::string& kind,
                                 const std::string& what) {
    if (!j.is_object()) throw invalid_input(what + ": not a JSON object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != kFormatVersion)
        throw invalid_input(what + ": missing or unsupported format_version");
    if (!j.contains("kind") || !j["kind"].is_string() || j["kind"].get<std::string>() != kind)
        throw invalid_input(what + ": expected kind \"" + kind + "\"");
}

inline int require_int(const ojson& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw invalid_input(what + ": missing integer field \"" + key + "\"");
    return j[key].get<int>();
}

inline std::vector<int> int_array(const ojson& arr, const std::string& what) {
    if (!arr.is_array()) throw invalid_input(what + ": expected an array of integers");
    std::vector<int> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw invalid_input(what + ": non-integer entry");
        out.push_back(v.get<int>());
    }
    return out;
}

// Flattens an arbitrarily nested integer array and checks the declared
// dimensions, outermost first.
inline std::vector<int> nested_int_array(const ojson& arr, const std::vector<int>& dims,
                                         const std::string& what) {
    std::vector<int> out;
    std::size_t expect = 1;
    for (int d : dims) expect *= static_cast<std::size_t>(d);
    out.reserve(expect);
    std::function<void(const ojson&, std::size_t)> walk = [&](const ojson& node,
                                                              std::size_t depth) {
        if (depth == dims.size()) {
            if (!node.is_number_integer()) throw invalid_input(what + ": non-integer leaf");
            out.push_back(node.get<int>());
            return;
        }
        if (!node.is_array() ||
            node.size() != static_cast<std::size_t>(dims[depth]))
            throw invalid_input(what + ": expected an array of length " +
                                std::to_string(dims[depth]) + " at depth " +
                                std::to_string(depth));
        for (const auto& child : node) walk(child, depth + 1);
    };
    walk(arr, 0);
    return out;
}

// Rebuilds the nested array shape from a flat table, outermost first.
inline ojson nest_int_array(const std::vector<int>& flat, const std::vector<int>& dims) {
    std::size_t pos = 0;
    std::function<ojson(std::size_t)> build = [&](std::size_t depth) {
        ojson arr = ojson::array();
        if (depth + 1 == dims.size()) {
            for (int i = 0; i < dims[depth]; ++i) arr.push_back(flat[pos++]);
            return arr;
        }
        for (int i = 0; i < dims[depth]; ++i) arr.push_back(build(depth + 1));
        return arr;
    };
    return dims.empty() ? ojson::array() : build(0);
}

inline void reject_unknown_keys(const ojson& j, std::initializer_list<const char*> known,
                                const std::string& what) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) { ok = true; break; }
        if (!ok) throw invalid_input(what + ": unknown field \"" + item.key() + "\"");
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// magma documents
// ---------------------------------------------------------------------------

inline ojson magma_document_to_json(const MagmaDocument& doc) {
    const FiniteMagma& m = doc.magma;
    ojson j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "magma";
    j["order"] = m.order();
    j["table"] = detail::nest_int_array(m.flat(), {m.order(), m.order()});
    if (!doc.labels.empty()) j["labels"] = doc.labels;
    if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
    return j;
}

inline MagmaDocument magma_document_from_json(const ojson& j) {
    detail::require_version_kind(j, "magma", "magma document");
    detail::reject_unknown_keys(j, {"format_version", "kind", "order", "table", "labels",
                                    "metadata"},
                                "magma document");
    const int n = detail::require_int(j, "order", "magma document");
    if (n < 1) throw invalid_input("magma document: bad order");
    if (!j.contains("table")) throw invalid_input("magma document: missing table");
    auto flat = detail::nested_int_array(j["table"], {n, n}, "magma document table");
    MagmaDocument doc{FiniteMagma::from_flat(n, std::move(flat)), {}, ojson()};
    if (j.contains("labels")) {
        if (!j["labels"].is_array() || static_cast<int>(j["labels"].size()) != n)
            throw invalid_input("magma document: labels must list one string per element");
        for (const auto& v : j["labels"]) {
            if (!v.is_string()) throw invalid_input("magma document: non-string label");
            doc.labels.push_back(v.get<std::string>());
        }
    }
    if (j.contains("metadata")) doc.metadata = j["metadata"];
    return doc;
}

// ---------------------------------------------------------------------------
// factor documents
// ---------------------------------------------------------------------------

inline ojson smash_factors_to_json(const SmashFactors& f, const ojson& metadata = ojson()) {
    ojson j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "smash";
    j["order_a"] = f.order_a;
    j["order_b"] = f.order_b;
    j["phi1"] = detail::nest_int_array(f.phi1, {f.order_a, f.order_b});
    j["phi2"] = detail::nest_int_array(f.phi2, {f.order_a, f.order_b});
    j["phi3"] = detail::nest_int_array(f.phi3, {f.order_a, f.order_b});
    j["xi1"] = detail::nest_int_array(f.xi1, {f.order_a, f.order_b, f.order_a});
    j["xi2"] = detail::nest_int_array(f.xi2, {f.order_a, f.order_b, f.order_a});
    if (!metadata.is_null()) j["metadata"] = metadata;
    return j;
}

inline SmashFactors smash_factors_from_json(const ojson& j) {
    detail::require_version_kind(j, "smash", "smash factors");
    detail::reject_unknown_keys(j, {"format_version", "kind", "order_a", "order_b", "phi1",
                                    "phi2", "phi3", "xi1", "xi2", "metadata"},
                                "smash factors");
    SmashFactors f;
    f.order_a = detail::require_int(j, "order_a", "smash factors");
    f.order_b = detail::require_int(j, "order_b", "smash factors");
    if (f.order_a < 1 || f.order_b < 1) throw invalid_input("smash factors: bad orders");
    for (const char* key : {"phi1", "phi2", "phi3", "xi1", "xi2"})
        if (!j.contains(key))
            throw invalid_input(std::string("smash factors: missing field \"") + key + "\"");
    f.phi1 = detail::nested_int_array(j["phi1"], {f.order_a, f.order_b}, "smash factors phi1");
    f.phi2 = detail::nested_int_array(j["phi2"], {f.order_a, f.order_b}, "smash factors phi2");
    f.phi3 = detail::nested_int_array(j["phi3"], {f.order_a, f.order_b}, "smash factors phi3");
    f.xi1 = detail::nested_int_array(j["xi1"], {f.order_a, f.order_b, f.order_a},
                                     "smash factors xi1");
    f.xi2 = detail::nested_int_array(j["xi2"], {f.order_a, f.order_b, f.order_a},
                                     "smash factors xi2");
    return f;
}

inline ojson skew_factors_to_json(const SkewFactors& f, const ojson& metadata = ojson()) {
    const int nn = f.n_group.order();
    ojson j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "skew";
    j["order_a"] = f.order_a;
    j["order_b"] = f.order_b;
    j["n_table"] = detail::nest_int_array(f.n_group.flat(), {nn, nn});
    j["embed_a"] = f.embed_a;
    j["embed_b"] = f.embed_b;
    j["phi"] = detail::nest_int_array(f.phi, {f.order_a, f.order_b});
    j["eta"] = detail::nest_int_array(f.eta, {f.order_a, f.order_a, f.order_b});
    j["kappa"] = detail::nest_int_array(f.kappa, {f.order_a, f.order_b, f.order_b});
    j["xi"] = detail::nest_int_array(f.xi, {f.order_a, f.order_b, f.order_a, f.order_b});
    if (!metadata.is_null()) j["metadata"] = metadata;
    return j;
}

inline SkewFactors skew_factors_from_json(const ojson& j) {
    detail::require_version_kind(j, "skew", "skew factors");
    detail::reject_unknown_keys(j, {"format_version", "kind", "order_a", "order_b", "n_table",
                                    "embed_a", "embed_b", "phi", "eta", "kappa", "xi",
                                    "metadata"},
                                "skew factors");
    SkewFactors f;
    f.order_a = detail::require_int(j, "order_a", "skew factors");
    f.order_b = detail::require_int(j, "order_b", "skew factors");
    if (f.order_a < 1 || f.order_b < 1) throw invalid_input("skew factors: bad orders");
    for (const char* key : {"n_table", "embed_a", "embed_b", "phi", "eta", "kappa", "xi"})
        if (!j.contains(key))
            throw invalid_input(std::string("skew factors: missing field \"") + key + "\"");
    if (!j["n_table"].is_array() || j["n_table"].empty())
        throw invalid_input("skew factors: bad n_table");
    const int nn = static_cast<int>(j["n_table"].size());
    f.n_group =
        FiniteMagma::from_flat(nn, detail::nested_int_array(j["n_table"], {nn, nn},
                                                            "skew factors n_table"));
    f.embed_a = detail::int_array(j["embed_a"], "skew factors embed_a");
    f.embed_b = detail::int_array(j["embed_b"], "skew factors embed_b");
    f.phi = detail::nested_int_array(j["phi"], {f.order_a, f.order_b}, "skew factors phi");
    f.eta = detail::nested_int_array(j["eta"], {f.order_a, f.order_a, f.order_b},
                                     "skew factors eta");
    f.kappa = detail::nested_int_array(j["kappa"], {f.order_a, f.order_b, f.order_b},
                                       "skew factors kappa");
    f.xi = detail::nested_int_array(j["xi"], {f.order_a, f.order_b, f.order_a, f.order_b},
                                    "skew factors xi");
    return f;
}

// Either kind of factor file.
struct FactorsDocument {
    std::string kind; // "smash" or "skew"
    std::optional<SmashFactors> smash;
    std::optional<SkewFactors> skew;
};

inline FactorsDocument factors_document_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw invalid_input("factors document: missing kind");
    FactorsDocument doc;
    doc.kind = j["kind"].get<std::string>();
    if (doc.kind == "smash") doc.smash = smash_factors_from_json(j);
    else if (doc.kind == "skew") doc.skew = skew_factors_from_json(j);
    else throw invalid_input("factors document: unknown kind \"" + doc.kind + "\"");
    return doc;
}

// ---------------------------------------------------------------------------
// search witnesses
// ---------------------------------------------------------------------------

inline ojson search_result_to_json(const SearchResult& res) {
    ojson j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "search-witness";
    j["target"] = to_string(res.task.target);
    j["seed"] = res.task.seed;
    j["budget"] = res.task.budget;
    j["order_a"] = res.task.order_a;
    j["order_b"] = res.task.order_b;
    j["order_n"] = res.task.order_n;
    j["found"] = res.found;
    j["candidates_tried"] = res.stats.candidates;
    j["rejections"] = ojson::object();
    for (const auto& [reason, count] : res.stats.rejections) j["rejections"][reason] = count;
    if (res.census) {
        j["census"] = {{"order", res.census->order},
                       {"reduced_count", res.census->reduced_count},
                       {"total_count", res.census->total_count}};
    }
    if (res.smash) {
        j["candidate_index"] = res.smash->candidate_index;
        j["a"] = magma_document_to_json({res.smash->a, {}, ojson()});
        j["b"] = magma_document_to_json({res.smash->b, {}, ojson()});
        j["factors"] = smash_factors_to_json(res.smash->factors);
        ojson probe;
        probe["right_quasigroup"] = res.smash->probe.right_quasigroup;
        probe["divisor"] = {res.smash->probe.divisor.first, res.smash->probe.divisor.second};
        probe["target"] = {res.smash->probe.target.first, res.smash->probe.target.second};
        ojson sols = ojson::array();
        for (const auto& s : res.smash->probe.solutions) sols.push_back({s.first, s.second});
        probe["solutions"] = std::move(sols);
        j["probe"] = std::move(probe);
    }
    if (res.skew) {
        j["candidate_index"] = res.skew->candidate_index;
        j["a"] = magma_document_to_json({res.skew->a, {}, ojson()});
        j["b"] = magma_document_to_json({res.skew->b, {}, ojson()});
        j["factors"] = skew_factors_to_json(res.skew->factors);
        j["fan"] = res.skew->fan;
        j["gap"] = res.skew->gap;
    }
    return j;
}

// The replayable core of a witness file: the factor tables plus both
// operands; nothing from the search loop.
struct WitnessDocument {
    SearchTarget target = SearchTarget::left_not_right;
    FiniteMagma a, b;
    std::optional<SmashFactors> smash;
    std::optional<SkewFactors> skew;
};

inline WitnessDocument witness_from_json(const ojson& j) {
    detail::require_version_kind(j, "search-witness", "search witness");
    if (!j.contains("target") || !j["target"].is_string())
        throw invalid_input("search witness: missing target");
    if (!j.contains("a") || !j.contains("b") || !j.contains("factors"))
        throw invalid_input("search witness: missing instance fields (a, b, factors)");
    WitnessDocument doc{search_target_from_string(j["target"].get<std::string>()),
                        magma_document_from_json(j["a"]).magma,
                        magma_document_from_json(j["b"]).magma,
                        std::nullopt,
                        std::nullopt};
    const FactorsDocument factors = factors_document_from_json(j["factors"]);
    doc.smash = factors.smash;
    doc.skew = factors.skew;
    return doc;
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

inline std::string canonical_json_text(const ojson& j) { return j.dump(2) + "\n"; }

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot open file for writing: " + path);
    out << content;
    if (!out) throw invalid_input("failed writing file: " + path);
}

inline ojson parse_json_text(const std::string& text, const std::string& what) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(what + ": JSON parse error: " + e.what());
    }
}

// Loads a magma from a file holding either format; JSON when the first
// non-whitespace byte is '{'.
inline MagmaDocument load_magma_document(const std::string& path) {
    const std::string text = read_text_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return magma_document_from_json(parse_json_text(text, path));
    return MagmaDocument{parse_magma_text(text), {}, ojson()};
}

inline FactorsDocument load_factors_document(const std::string& path) {
    return factors_document_from_json(parse_json_text(read_text_file(path), path));
}

} // namespace qgforge
