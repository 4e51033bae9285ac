// Acceptance gate. Each criterion prints exactly one line:
//   [PASS] criterion N: <what was established> (<elapsed>)
//   [FAIL] criterion N: <what was established>: <first problem>
// The process exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgforge/builders.hpp"
#include "qgforge/identities.hpp"
#include "qgforge/io.hpp"
#include "qgforge/products.hpp"
#include "qgforge/search.hpp"
#include "qgforge/structure.hpp"

using namespace qgforge;

namespace {

struct Checker {
    bool ok = true;
    std::string note;
    void require(bool cond, const std::string& what) {
        if (ok && !cond) {
            ok = false;
            note = what;
        }
    }
};

std::vector<std::pair<std::string, FiniteMagma>> group_corpus() {
    std::vector<std::pair<std::string, FiniteMagma>> out;
    for (int n = 2; n <= 8; ++n) out.emplace_back("Z" + std::to_string(n), cyclic_group(n));
    out.emplace_back("K4", klein_four());
    out.emplace_back("S3", symmetric_group3());
    out.emplace_back("D4", dihedral_group(4));
    out.emplace_back("Q8", quaternion_group());
    return out;
}

FiniteMagma nonassociative_five() {
    return FiniteMagma::from_rows({{0, 1, 2, 3, 4},
                                   {1, 0, 3, 4, 2},
                                   {2, 3, 4, 0, 1},
                                   {3, 4, 1, 2, 0},
                                   {4, 2, 0, 1, 3}});
}

// --------------------------------------------------------------------------

void criterion_1(Checker& c) {
    for (const auto& [name, g] : group_corpus()) {
        const auto cert = fan_certificate(g);
        c.require(static_cast<bool>(cert), name + ": no fan certificate");
        if (!cert) return;
        c.require(cert->report.nucleus == ElementSubset::full(g.order()),
                  name + ": nucleus is not the whole group");
        c.require(cert->fan == ElementSubset(g.order(), {*g.unit()}),
                  name + ": fan is not the unit alone");
        const int e = *g.unit();
        for (int v : cert->t_table) c.require(v == e, name + ": nonunit t value");
        for (int v : cert->p_table) c.require(v == e, name + ": nonunit p value");
    }
}

void criterion_2(Checker& c) {
    std::vector<FiniteMagma> pool;
    for (auto& [name, g] : group_corpus()) pool.push_back(g);
    pool.push_back(nonassociative_five());
    pool.push_back(subtraction_mod(3));
    pool.push_back(subtraction_mod(4));

    detail::SplitMix64 rng(2026);
    int checked = 0;
    while (checked < 24) {
        const FiniteMagma& a = pool[static_cast<std::size_t>(rng.below(static_cast<int>(pool.size())))];
        const FiniteMagma& b = pool[static_cast<std::size_t>(rng.below(static_cast<int>(pool.size())))];
        if (a.order() * b.order() > 64) continue;
        ++checked;
        const FiniteMagma g = direct_product({a, b});
        const StructureReport ra = structure_report(a), rb = structure_report(b);
        const StructureReport rg = structure_report(g);
        ElementSubset nucleus(g.order()), center(g.order());
        for (int x : ra.nucleus.elements())
            for (int y : rb.nucleus.elements()) nucleus.insert(pair_encode(x, y, b.order()));
        for (int x : ra.center.elements())
            for (int y : rb.center.elements()) center.insert(pair_encode(x, y, b.order()));
        c.require(rg.nucleus == nucleus, "product nucleus is not componentwise");
        c.require(rg.center == center, "product center is not componentwise");
    }
}

void criterion_3(Checker& c) {
    const std::vector<std::pair<FiniteMagma, FiniteMagma>> shapes = {
        {cyclic_group(3), cyclic_group(3)},
        {cyclic_group(2), cyclic_group(4)},
        {symmetric_group3(), cyclic_group(3)}};
    int left_ok = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto& [a, b] = shapes[static_cast<std::size_t>(k % 3)];
        const SmashFactors f = random_smash_factors(a, b, 1000 + static_cast<std::uint64_t>(k));
        const FiniteMagma g = smashed_product(a, b, f);
        if (!g.left_quasigroup()) continue;
        ++left_ok;
        const int n = g.order(), nb = b.order();
        for (int g1 = 0; g1 < n && c.ok; ++g1)
            for (int g2 = 0; g2 < n; ++g2) {
                const auto [x, y] =
                    smashed_div_l(a, b, f, pair_decode(g1, nb), pair_decode(g2, nb));
                if (pair_encode(x, y, nb) != g.div_l(g1, g2)) {
                    c.require(false, "closed-form left division disagrees with the table");
                    break;
                }
            }
        if (!c.ok) return;
    }
    c.require(left_ok == 1000,
              "only " + std::to_string(left_ok) + "/1000 products were left quasigroups");
}

void criterion_4(Checker& c) {
    SearchTask task;
    task.target = SearchTarget::left_not_right;
    task.order_a = 3;
    task.order_b = 3;
    task.seed = 1; // the documented search seed
    task.budget = 1000000;
    const SearchResult res = run_search(task);
    c.require(res.found, "no witness within the budget");
    if (!res.found) return;

    // replay from the serialized document alone
    const WitnessDocument w = witness_from_json(search_result_to_json(res));
    c.require(static_cast<bool>(w.smash), "witness lost its factors in serialization");
    if (!w.smash) return;
    const FiniteMagma g = smashed_product(w.a, w.b, *w.smash);
    c.require(g.left_quasigroup(), "replayed witness is not a left quasigroup");
    c.require(!g.right_quasigroup(), "replayed witness is right-solvable after all");
}

void criterion_5(Checker& c) {
    for (const auto& inst : skew_corpus()) {
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        const FiniteMagma& g = cert.base;
        c.require(g.latin_square() && g.unit().has_value(),
                  inst.name + ": not a unital quasigroup");
        const ElementSubset hull = detail::embedded_n_subgroup(g, inst.factors);
        for (int x = 0; x < g.order() && c.ok; ++x)
            for (int y = 0; y < g.order() && c.ok; ++y)
                for (int z = 0; z < g.order(); ++z)
                    if (!hull.contains(cert.t(x, y, z)) || !hull.contains(cert.p(x, y, z))) {
                        c.require(false, inst.name + ": associator value escapes the"
                                                     " embedded subgroup");
                        break;
                    }
        const int nb = inst.b.order();
        for (int e1 = 0; e1 < g.order() && c.ok; ++e1)
            for (int e2 = 0; e2 < g.order(); ++e2) {
                const auto p1 = pair_decode(e1, nb), p2 = pair_decode(e2, nb);
                const auto l = skew_div(inst.a, inst.b, inst.factors, cert, DivSide::left, p1, p2);
                const auto r = skew_div(inst.a, inst.b, inst.factors, cert, DivSide::right, p1, p2);
                if (pair_encode(l.first, l.second, nb) != g.div_l(e1, e2) ||
                    pair_encode(r.first, r.second, nb) != g.div_r(e1, e2)) {
                    c.require(false, inst.name + ": closed-form division disagrees");
                    break;
                }
            }
        if (!c.ok) return;
    }
}

void criterion_6(Checker& c) {
    const FiniteMagma z2 = cyclic_group(2), z3 = cyclic_group(3), s3 = symmetric_group3();
    c.require(smashed_product(z2, z3, SmashFactors::trivial(2, 3, 0)) ==
                  direct_product({z2, z3}),
              "trivial smashed product differs from the direct product");
    c.require(smashed_product(s3, z3, SmashFactors::trivial(6, 3, 0)) ==
                  direct_product({s3, z3}),
              "trivial smashed product over S3 differs from the direct product");
    for (auto [a, b] : {std::pair<FiniteMagma, FiniteMagma>{z2, z3}, {z2, z2}}) {
        const FanCertificate cert = skew_smashed_product(a, b, SkewFactors::trivial(a, b));
        c.require(cert.base == direct_product({a, b}),
                  "trivial skew product differs from the direct product");
    }
}

void criterion_7(Checker& c) {
    std::vector<std::pair<std::string, FanCertificate>> targets;
    for (const auto& [name, g] : group_corpus()) {
        auto cert = fan_certificate(g);
        if (!cert) {
            c.require(false, name + ": no certificate");
            return;
        }
        targets.emplace_back(name, std::move(*cert));
    }
    for (const auto& inst : skew_corpus()) {
        FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        if (cert.base.order() <= 12) targets.emplace_back(inst.name, std::move(cert));
    }
    for (const auto& [name, cert] : targets)
        for (const auto& rep : check_all_identities(cert))
            c.require(rep.ok(), name + ": identity " + rep.id + " failed " +
                                    std::to_string(rep.failure_count) + " of " +
                                    std::to_string(rep.cases) + " cases");
}

void criterion_8(Checker& c) {
    std::vector<std::pair<std::string, FanCertificate>> targets;
    for (const auto& [name, g] : group_corpus()) targets.emplace_back(name, *fan_certificate(g));
    for (const auto& inst : skew_corpus())
        targets.emplace_back(inst.name, skew_smashed_product(inst.a, inst.b, inst.factors));
    for (const auto& [name, cert] : targets) {
        c.require(is_normal(cert.base, cert.fan), name + ": fan is not normal");
        const QuotientGroup q = quotient(cert.base, cert.fan);
        c.require(q.quotient.associative(), name + ": quotient is not associative");
        const int e = *q.quotient.unit();
        for (int i = 0; i < q.quotient.order(); ++i) {
            const int j = q.quotient.div_l(i, e);
            c.require(q.quotient.mul(j, i) == e, name + ": quotient element " +
                                                     std::to_string(i) +
                                                     " lacks a two-sided inverse");
        }
    }
}

void criterion_9(Checker& c) {
    // order 3: every one of the 3^9 tables
    int total3 = 0, reduced3 = 0;
    {
        std::vector<int> flat(9);
        for (int code = 0; code < 19683; ++code) {
            int v = code;
            for (int i = 0; i < 9; ++i) { flat[static_cast<std::size_t>(i)] = v % 3; v /= 3; }
            const FiniteMagma m = FiniteMagma::from_flat(3, flat);
            if (!m.latin_square()) continue;
            ++total3;
            bool red = true;
            for (int i = 0; i < 3; ++i) red = red && m.mul(0, i) == i && m.mul(i, 0) == i;
            if (red) ++reduced3;
        }
    }
    // order 4: every 4-tuple of row permutations, checking column injectivity
    int total4 = 0, reduced4 = 0;
    {
        std::vector<std::vector<int>> perms;
        std::vector<int> p{0, 1, 2, 3};
        do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
        for (const auto& r0 : perms)
            for (const auto& r1 : perms)
                for (const auto& r2 : perms)
                    for (const auto& r3 : perms) {
                        const std::vector<const std::vector<int>*> rows{&r0, &r1, &r2, &r3};
                        bool cols_ok = true;
                        for (int col = 0; col < 4 && cols_ok; ++col) {
                            unsigned mask = 0;
                            for (int row = 0; row < 4; ++row)
                                mask |= 1u << (*rows[static_cast<std::size_t>(row)])[
                                    static_cast<std::size_t>(col)];
                            cols_ok = mask == 0xF;
                        }
                        if (!cols_ok) continue;
                        ++total4;
                        bool red = r0 == std::vector<int>{0, 1, 2, 3};
                        for (int row = 0; row < 4 && red; ++row)
                            red = (*rows[static_cast<std::size_t>(row)])[0] == row;
                        if (red) ++reduced4;
                    }
    }
    const CensusResult c3 = count_latin_squares(3), c4 = count_latin_squares(4);
    c.require(c3.reduced_count == 1 && static_cast<int>(c3.reduced_count) == reduced3,
              "order-3 reduced census mismatch");
    c.require(static_cast<int>(c3.total_count) == total3, "order-3 total census mismatch");
    c.require(c4.reduced_count == 4 && static_cast<int>(c4.reduced_count) == reduced4,
              "order-4 reduced census mismatch");
    c.require(c4.total_count == 576 && static_cast<int>(c4.total_count) == total4,
              "order-4 total census mismatch");
}

void criterion_10(Checker& c) {
    std::vector<FiniteMagma> pool;
    for (const auto& inst : skew_corpus())
        pool.push_back(skew_smashed_product(inst.a, inst.b, inst.factors).base);
    pool.push_back(symmetric_group3());
    pool.push_back(cyclic_group(6));

    for (std::int64_t k = 0; k < 50; ++k) {
        detail::SplitMix64 rng(detail::candidate_seed(99, k));
        const FiniteMagma& base = pool[static_cast<std::size_t>(
            rng.below(static_cast<int>(pool.size())))];
        const int n = base.order();
        std::vector<int> flat = base.flat();
        const int cell = rng.below(n * n);
        const int old = flat[static_cast<std::size_t>(cell)];
        int next = rng.below(n - 1);
        if (next >= old) ++next; // uniform over values other than the old one
        flat[static_cast<std::size_t>(cell)] = next;

        const FiniteMagma mutant = FiniteMagma::from_flat(n, flat);
        bool detected = !mutant.latin_square() || !mutant.unit().has_value();
        if (!detected) {
            const auto cert = fan_certificate(mutant);
            if (!cert) {
                detected = true;
            } else {
                for (const auto& rep : check_all_identities(*cert))
                    detected = detected || !rep.ok();
            }
        }
        c.require(detected, "mutation " + std::to_string(k) + " (cell " + std::to_string(cell) +
                                ") slipped through every check");
    }
}

// --------------------------------------------------------------------------

struct Criterion {
    int id;
    std::string label;
    std::function<void(Checker&)> run;
    double time_limit_s; // 0 = no limit stated
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "group corpus certifies with trivial fans and full nuclei", criterion_1, 1.0},
        {2, "direct product nuclei and centers are componentwise", criterion_2, 0},
        {3, "1000 sampled smashed products are left-solvable with exact division replay",
         criterion_3, 30.0},
        {4, "left-not-right search finds a witness that replays from its file", criterion_4,
         60.0},
        {5, "skew corpus certifies; associators stay in the embedded subgroup; divisions match",
         criterion_5, 0},
        {6, "trivial factors collapse both products to the direct product", criterion_6, 0},
        {7, "identity catalog passes exhaustively across the corpus", criterion_7, 300.0},
        {8, "fans are normal and their quotients are groups", criterion_8, 0},
        {9, "latin square census matches the independent oracles", criterion_9, 0},
        {10, "seeded single-cell mutations are always detected", criterion_10, 0},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        Checker check;
        const auto start = std::chrono::steady_clock::now();
        try {
            crit.run(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (crit.time_limit_s > 0 && elapsed >= crit.time_limit_s)
            check.require(false, "took " + std::to_string(elapsed) + " s, limit " +
                                     std::to_string(crit.time_limit_s) + " s");
        std::ostringstream line;
        if (check.ok) {
            line << "[PASS] criterion " << crit.id << ": " << crit.label;
            line.setf(std::ios::fixed);
            line.precision(2);
            line << " (" << elapsed << " s)";
        } else {
            line << "[FAIL] criterion " << crit.id << ": " << crit.label << ": " << check.note;
            ++failures;
        }
        std::cout << line.str() << '\n' << std::flush;
    }
    std::cout << "acceptance: " << (criteria.size() - static_cast<std::size_t>(failures)) << "/"
              << criteria.size() << " criteria passed\n";
    return failures;
}
