// Command line front end. One construction or report per invocation;
// pipelines are composed through files. Construction subcommands print the
// canonical text table on stdout (or the canonical JSON document under
// --json) so their output feeds straight back in as an input file.
//
// Exit codes: 0 success, 1 verification failures found, 2 input or
// validation errors, 3 capacity or budget exhaustion.

#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qgforge/builders.hpp"
#include "qgforge/errors.hpp"
#include "qgforge/identities.hpp"
#include "qgforge/io.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/products.hpp"
#include "qgforge/search.hpp"
#include "qgforge/structure.hpp"

namespace {

using qgforge::ojson;

std::string join_ints(const std::vector<int>& v) {
    if (v.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

// Writes a constructed table to stdout or to a file chosen by extension.
void emit_magma(const qgforge::FiniteMagma& m, const ojson& metadata, bool json,
                const std::string& out_path) {
    const qgforge::MagmaDocument doc{m, {}, metadata};
    const std::string text =
        json ? qgforge::canonical_json_text(qgforge::magma_document_to_json(doc))
             : qgforge::write_magma_text(m);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    const bool json_file = out_path.size() >= 5 &&
                           out_path.compare(out_path.size() - 5, 5, ".json") == 0;
    qgforge::write_text_file(
        out_path, json_file
                      ? qgforge::canonical_json_text(qgforge::magma_document_to_json(doc))
                      : qgforge::write_magma_text(m));
}

ojson subset_json(const qgforge::ElementSubset& s) { return ojson(s.elements()); }

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& path, bool json) {
    const qgforge::FiniteMagma m = qgforge::load_magma_document(path).magma;
    const qgforge::StructureReport st = qgforge::structure_report(m);
    const auto cert = qgforge::fan_certificate(m);
    const auto lunits = qgforge::left_units(m);
    const auto runits = qgforge::right_units(m);
    std::vector<int> gap;
    if (m.latin_square() && m.unit())
        for (int g = 0; g < m.order(); ++g)
            if (m.div_r(g, *m.unit()) != m.div_l(g, *m.unit())) gap.push_back(g);

    if (json) {
        ojson j;
        j["format_version"] = qgforge::kFormatVersion;
        j["kind"] = "analysis";
        j["order"] = m.order();
        j["left_quasigroup"] = m.left_quasigroup();
        j["right_quasigroup"] = m.right_quasigroup();
        j["latin_square"] = m.latin_square();
        j["unit"] = m.unit() ? ojson(*m.unit()) : ojson();
        j["left_units"] = lunits;
        j["right_units"] = runits;
        j["associative"] = m.associative();
        j["commutative"] = m.commutative();
        j["structure"] = {{"commutant", subset_json(st.com)},
                          {"left_nucleus", subset_json(st.n_l)},
                          {"middle_nucleus", subset_json(st.n_m)},
                          {"right_nucleus", subset_json(st.n_r)},
                          {"nucleus", subset_json(st.nucleus)},
                          {"center", subset_json(st.center)}};
        j["fan"] = cert ? ojson({{"exists", true}, {"elements", cert->fan.elements()}})
                        : ojson({{"exists", false}});
        j["inverse_gap"] = gap;
        std::cout << qgforge::canonical_json_text(j);
        return 0;
    }
    std::cout << "order: " << m.order() << '\n'
              << "left quasigroup: " << yesno(m.left_quasigroup()) << '\n'
              << "right quasigroup: " << yesno(m.right_quasigroup()) << '\n'
              << "latin square: " << yesno(m.latin_square()) << '\n';
    if (m.unit()) std::cout << "unit: " << *m.unit() << '\n';
    else std::cout << "unit: none\n";
    std::cout << "left units: " << join_ints(lunits) << '\n'
              << "right units: " << join_ints(runits) << '\n'
              << "associative: " << yesno(m.associative()) << '\n'
              << "commutative: " << yesno(m.commutative()) << '\n'
              << "commutant: " << join_ints(st.com.elements()) << '\n'
              << "left nucleus: " << join_ints(st.n_l.elements()) << '\n'
              << "middle nucleus: " << join_ints(st.n_m.elements()) << '\n'
              << "right nucleus: " << join_ints(st.n_r.elements()) << '\n'
              << "nucleus: " << join_ints(st.nucleus.elements()) << '\n'
              << "center: " << join_ints(st.center.elements()) << '\n';
    if (cert) std::cout << "fan certificate: yes\nfan: " << join_ints(cert->fan.elements()) << '\n';
    else std::cout << "fan certificate: no\n";
    if (m.latin_square() && m.unit())
        std::cout << "inverse gap elements: " << join_ints(gap) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// constructions
// ---------------------------------------------------------------------------

int cmd_product(const std::vector<std::string>& paths, bool json, const std::string& out) {
    std::vector<qgforge::FiniteMagma> factors;
    factors.reserve(paths.size());
    for (const auto& p : paths) factors.push_back(qgforge::load_magma_document(p).magma);
    const qgforge::FiniteMagma g = qgforge::direct_product(factors);
    ojson meta = {{"construction", "product"}, {"inputs", paths}};
    emit_magma(g, meta, json, out);
    return 0;
}

int cmd_smash(const std::string& path_a, const std::string& path_b,
              const std::string& factors_path, bool json, const std::string& out) {
    const qgforge::FiniteMagma a = qgforge::load_magma_document(path_a).magma;
    const qgforge::FiniteMagma b = qgforge::load_magma_document(path_b).magma;
    const auto doc = qgforge::load_factors_document(factors_path);
    if (!doc.smash)
        throw qgforge::invalid_input("smash: factors file has kind \"" + doc.kind +
                                     "\", expected \"smash\"");
    const qgforge::FiniteMagma g = qgforge::smashed_product(a, b, *doc.smash);
    ojson meta = {{"construction", "smash"},
                  {"inputs", std::vector<std::string>{path_a, path_b, factors_path}}};
    emit_magma(g, meta, json, out);
    return 0;
}

int cmd_skew_smash(const std::string& path_a, const std::string& path_b,
                   const std::string& factors_path, bool json, const std::string& out) {
    const qgforge::FiniteMagma a = qgforge::load_magma_document(path_a).magma;
    const qgforge::FiniteMagma b = qgforge::load_magma_document(path_b).magma;
    const auto doc = qgforge::load_factors_document(factors_path);
    if (!doc.skew)
        throw qgforge::invalid_input("skew-smash: factors file has kind \"" + doc.kind +
                                     "\", expected \"skew\"");
    const auto report = qgforge::validate_skew_factors(a, b, *doc.skew);
    if (!report.ok()) {
        std::cerr << "skew factor validation failed, " << report.issues.size()
                  << " issue(s):\n";
        std::size_t shown = 0;
        for (const auto& issue : report.issues) {
            if (shown++ == 20) {
                std::cerr << "  ... " << (report.issues.size() - 20) << " more\n";
                break;
            }
            std::cerr << "  " << issue.condition << " at (" << join_ints(issue.args)
                      << "): expected " << issue.expected << ", got " << issue.got << '\n';
        }
        return 1;
    }
    const qgforge::FanCertificate cert = qgforge::skew_smashed_product(a, b, *doc.skew);
    ojson meta = {{"construction", "skew-smash"},
                  {"inputs", std::vector<std::string>{path_a, path_b, factors_path}},
                  {"fan", cert.fan.elements()}};
    emit_magma(cert.base, meta, json, out);
    return 0;
}

int cmd_quotient(const std::string& path, const std::vector<int>& subgroup_elements, bool json,
                 const std::string& out) {
    const qgforge::FiniteMagma m = qgforge::load_magma_document(path).magma;
    qgforge::ElementSubset h(m.order());
    for (int e : subgroup_elements) h.insert(e);
    const qgforge::QuotientGroup q = qgforge::quotient(m, h);
    ojson cosets = ojson::array();
    for (const auto& c : q.cosets) cosets.push_back(c);
    ojson meta = {{"construction", "quotient"},
                  {"inputs", std::vector<std::string>{path}},
                  {"subgroup", h.elements()},
                  {"cosets", cosets},
                  {"projection", q.projection}};
    if (!json && out.empty()) {
        // table on stdout stays canonical; coset data goes to stderr
        for (std::size_t i = 0; i < q.cosets.size(); ++i)
            std::cerr << "coset " << i << ": " << join_ints(q.cosets[i]) << '\n';
    }
    emit_magma(q.quotient, meta, json, out);
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

// "70-79,82-94,60-65,80-81" -> set of selected numeric ids
std::set<int> parse_identity_selection(const std::string& spec) {
    std::set<int> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string token = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (token.empty()) throw qgforge::invalid_input("identity selection: empty token");
        const std::size_t dash = token.find('-');
        try {
            if (dash == std::string::npos) {
                out.insert(std::stoi(token));
            } else {
                const int lo = std::stoi(token.substr(0, dash));
                const int hi = std::stoi(token.substr(dash + 1));
                if (lo > hi)
                    throw qgforge::invalid_input("identity selection: empty range " + token);
                for (int v = lo; v <= hi; ++v) out.insert(v);
            }
        } catch (const std::logic_error&) {
            throw qgforge::invalid_input("identity selection: bad token \"" + token + "\"");
        }
    }
    if (out.empty()) throw qgforge::invalid_input("identity selection: nothing selected");
    return out;
}

int cmd_verify(const std::string& path, const std::string& selection_spec, bool json) {
    const qgforge::FiniteMagma m = qgforge::load_magma_document(path).magma;
    if (!m.latin_square())
        throw qgforge::precondition_error("verify: input is not a quasigroup");
    std::optional<std::set<int>> selection;
    if (!selection_spec.empty()) selection = parse_identity_selection(selection_spec);
    auto selected = [&selection](const std::string& id) {
        return !selection || selection->count(qgforge::identity_id_number(id)) > 0;
    };

    // the division basics (80, 81) hold in any quasigroup; everything else
    // needs a fan certificate
    bool any_selected = false, needs_certificate = false;
    for (const auto& entry : qgforge::identity_catalog())
        if (selected(entry.id)) {
            any_selected = true;
            const int num = qgforge::identity_id_number(entry.id);
            if (num != 80 && num != 81) needs_certificate = true;
        }
    if (!any_selected)
        throw qgforge::invalid_input("verify: selection matches no catalog identity");

    std::vector<qgforge::IdentityReport> all;
    if (needs_certificate) {
        if (!m.unit())
            throw qgforge::precondition_error(
                "verify: the selected identities need a unital quasigroup");
        const auto cert = qgforge::fan_certificate(m);
        if (!cert)
            throw qgforge::precondition_error(
                "verify: input has no fan certificate (associator values leave the nucleus)");
        all = qgforge::check_all_identities(*cert, qgforge::kBigDomainCeiling);
    } else {
        all = qgforge::check_division_basics(m);
    }
    // catalog order, filtered
    std::vector<qgforge::IdentityReport> reports;
    for (const auto& entry : qgforge::identity_catalog())
        for (auto& r : all)
            if (r.id == entry.id && selected(r.id)) reports.push_back(r);
    std::vector<std::string> skipped;
    if (m.order() > qgforge::kBigDomainCeiling)
        for (const char* id : {"63", "64", "65"})
            if (selected(id)) skipped.push_back(id);

    std::int64_t total_cases = 0, total_failures = 0;
    for (const auto& r : reports) {
        total_cases += r.cases;
        total_failures += r.failure_count;
    }

    if (json) {
        ojson j;
        j["format_version"] = qgforge::kFormatVersion;
        j["kind"] = "verification";
        j["order"] = m.order();
        ojson items = ojson::array();
        for (const auto& r : reports) {
            ojson item;
            item["id"] = r.id;
            item["domain"] = r.domain;
            item["cases"] = r.cases;
            item["failures"] = r.failure_count;
            if (!r.failures.empty()) {
                ojson fs = ojson::array();
                for (const auto& f : r.failures)
                    fs.push_back({{"args", f.args}, {"lhs", f.lhs}, {"rhs", f.rhs}});
                item["witnesses"] = std::move(fs);
            }
            items.push_back(std::move(item));
        }
        j["identities"] = std::move(items);
        j["skipped"] = skipped;
        j["total_cases"] = total_cases;
        j["total_failures"] = total_failures;
        j["pass"] = total_failures == 0;
        std::cout << qgforge::canonical_json_text(j);
    } else {
        for (const auto& r : reports) {
            std::cout << "identity " << r.id << ": " << r.cases << " cases, "
                      << r.failure_count << " failures";
            if (!r.failures.empty()) {
                const auto& f = r.failures.front();
                std::cout << "; first at (" << join_ints(f.args) << ") lhs " << f.lhs
                          << " rhs " << f.rhs;
            }
            std::cout << '\n';
        }
        for (const auto& id : skipped)
            std::cout << "identity " << id << ": skipped, order " << m.order()
                      << " above ceiling " << qgforge::kBigDomainCeiling << '\n';
        std::cout << "result: " << (total_failures == 0 ? "PASS" : "FAIL") << " ("
                  << reports.size() << " identities, " << total_cases << " cases, "
                  << total_failures << " failures)\n";
    }
    return total_failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// search and census
// ---------------------------------------------------------------------------

int cmd_search(const qgforge::SearchTask& task, bool json, const std::string& out) {
    const qgforge::SearchResult res = qgforge::run_search(task);
    const ojson j = qgforge::search_result_to_json(res);
    if (!out.empty()) qgforge::write_text_file(out, qgforge::canonical_json_text(j));
    if (json) {
        std::cout << qgforge::canonical_json_text(j);
    } else {
        std::cout << "target: " << qgforge::to_string(task.target) << '\n'
                  << "candidates tried: " << res.stats.candidates << '\n';
        if (!res.stats.rejections.empty()) {
            std::cout << "rejections:";
            for (const auto& [k, v] : res.stats.rejections) std::cout << ' ' << k << '=' << v;
            std::cout << '\n';
        }
        if (res.census) {
            std::cout << "order " << res.census->order << ": " << res.census->reduced_count
                      << " reduced, " << res.census->total_count << " total\n";
        } else if (res.smash) {
            const auto& w = *res.smash;
            std::cout << "witness at candidate " << w.candidate_index << '\n'
                      << "column (" << w.probe.divisor.first << ',' << w.probe.divisor.second
                      << "): equation x*(" << w.probe.divisor.first << ','
                      << w.probe.divisor.second << ") = (" << w.probe.target.first << ','
                      << w.probe.target.second << ") has " << w.probe.solutions.size()
                      << " solutions\n";
        } else if (res.skew) {
            const auto& w = *res.skew;
            std::cout << "witness at candidate " << w.candidate_index << '\n'
                      << "fan: " << join_ints(w.fan) << '\n'
                      << "inverse gap elements: " << join_ints(w.gap) << '\n';
        } else {
            std::cout << "no witness within budget\n";
        }
    }
    return res.found ? 0 : 3;
}

int cmd_census(int order, bool reduced, bool json) {
    const qgforge::CensusResult c = qgforge::count_latin_squares(order);
    if (json) {
        ojson j;
        j["format_version"] = qgforge::kFormatVersion;
        j["kind"] = "census";
        j["order"] = c.order;
        j["reduced_count"] = c.reduced_count;
        j["total_count"] = c.total_count;
        std::cout << qgforge::canonical_json_text(j);
    } else {
        std::cout << (reduced ? c.reduced_count : c.total_count) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite left quasigroup tables: products, structure, identity verification"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "structure report for a table file");
    std::string analyze_path;
    bool analyze_json = false;
    analyze->add_option("file", analyze_path, "magma file (text or JSON)")->required();
    analyze->add_flag("--json", analyze_json, "machine-readable output");

    // product
    auto* product = app.add_subcommand("product", "direct product of table files");
    std::vector<std::string> product_paths;
    bool product_json = false;
    std::string product_out;
    product->add_option("files", product_paths, "factor files")->required()->expected(-2);
    product->add_flag("--json", product_json, "emit the JSON document");
    product->add_option("-o,--output", product_out, "also write the result to this file");

    // smash
    auto* smash = app.add_subcommand("smash", "smashed product of two tables");
    std::string smash_a, smash_b, smash_factors, smash_out;
    bool smash_json = false;
    smash->add_option("a", smash_a, "left factor file")->required();
    smash->add_option("b", smash_b, "right factor file")->required();
    smash->add_option("--factors", smash_factors, "smash factors JSON file")->required();
    smash->add_flag("--json", smash_json, "emit the JSON document");
    smash->add_option("-o,--output", smash_out, "also write the result to this file");

    // skew-smash
    auto* skew = app.add_subcommand("skew-smash", "skew smashed product of two tables");
    std::string skew_a, skew_b, skew_factors, skew_out;
    bool skew_json = false;
    skew->add_option("a", skew_a, "left factor file")->required();
    skew->add_option("b", skew_b, "right factor file")->required();
    skew->add_option("--factors", skew_factors, "skew factors JSON file")->required();
    skew->add_flag("--json", skew_json, "emit the JSON document");
    skew->add_option("-o,--output", skew_out, "also write the result to this file");

    // quotient
    auto* quot = app.add_subcommand("quotient", "quotient by a normal subgroup");
    std::string quot_path, quot_out;
    std::vector<int> quot_subgroup;
    bool quot_json = false;
    quot->add_option("file", quot_path, "magma file")->required();
    quot->add_option("--subgroup", quot_subgroup, "subgroup elements, comma separated")
        ->required()
        ->delimiter(',');
    quot->add_flag("--json", quot_json, "emit the JSON document");
    quot->add_option("-o,--output", quot_out, "also write the result to this file");

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity catalog on a fan quasigroup");
    std::string verify_path, verify_ids;
    bool verify_json = false;
    verify->add_option("file", verify_path, "magma file")->required();
    verify->add_option("--identities", verify_ids,
                       "selection like 70-79,82-94,60-65,80-81 (default: all)");
    verify->add_flag("--json", verify_json, "machine-readable output");

    // search
    auto* search = app.add_subcommand("search", "seeded search for a target phenomenon");
    std::string search_target = "left-not-right", search_out;
    qgforge::SearchTask task;
    bool search_json = false;
    search->add_option("--target", search_target,
                       "left-not-right | nontrivial-fan | one-sided-inverse-gap | "
                       "latin-square-census")
        ->required();
    search->add_option("--order-a", task.order_a, "order of factor A")->required();
    search->add_option("--order-b", task.order_b, "order of factor B");
    search->add_option("--order-n", task.order_n, "order of the embedded subgroup (skew targets)");
    search->add_option("--seed", task.seed, "64-bit seed");
    search->add_option("--budget", task.budget, "max candidates");
    search->add_flag("--json", search_json, "machine-readable output");
    search->add_option("-o,--output", search_out, "write the witness document to this file");

    // census
    auto* census = app.add_subcommand("census", "exact Latin square counts");
    int census_order = 0;
    bool census_reduced = false, census_json = false;
    census->add_option("--order", census_order, "square order (1..7)")->required();
    census->add_flag("--reduced", census_reduced, "print the reduced count");
    census->add_flag("--json", census_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_path, analyze_json);
        if (*product) return cmd_product(product_paths, product_json, product_out);
        if (*smash) return cmd_smash(smash_a, smash_b, smash_factors, smash_json, smash_out);
        if (*skew) return cmd_skew_smash(skew_a, skew_b, skew_factors, skew_json, skew_out);
        if (*quot) return cmd_quotient(quot_path, quot_subgroup, quot_json, quot_out);
        if (*verify) return cmd_verify(verify_path, verify_ids, verify_json);
        if (*search) {
            task.target = qgforge::search_target_from_string(search_target);
            return cmd_search(task, search_json, search_out);
        }
        if (*census) return cmd_census(census_order, census_reduced, census_json);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const qgforge::capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qgforge::search_exhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qgforge::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
