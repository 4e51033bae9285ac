#pragma once

// Seeded searches for the phenomena the library is built around: smashed
// products that are left but not right quasigroups, skew products with a
// nontrivial fan, elements whose two one-sided inverses differ, and exact
// Latin square censuses.
//
// Reproducibility contract: identical SearchTask (seed included) gives an
// identical SearchResult. Candidates are evaluated by index with a
// per-candidate generator, and the reported witness is the one with the
// smallest succeeding index, so chunked parallel evaluation and serial
// evaluation agree.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgforge/builders.hpp"
#include "qgforge/errors.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/parallel.hpp"
#include "qgforge/products.hpp"
#include "qgforge/structure.hpp"

namespace qgforge {

inline constexpr int kLatinEnumerationCeiling = 7;
inline constexpr int kAutomorphismEnumerationCeiling = 8;

namespace detail {

// Fixed portable generator so sampling sequences do not depend on the
// standard library implementation.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int bound) { // uniform in [0, bound), rejection sampled
        const auto b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = ~0ULL - ~0ULL % b;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return static_cast<int>(v % b);
    }
    void shuffle(std::vector<int>& v) { // Fisher-Yates, portable
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(below(i + 1))]);
    }
};

inline std::uint64_t candidate_seed(std::uint64_t seed, std::int64_t index) {
    return seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1);
}

} // namespace detail

enum class SearchTarget {
    left_not_right,
    nontrivial_fan,
    one_sided_inverse_gap,
    latin_square_census,
};

inline std::string to_string(SearchTarget t) {
    switch (t) {
        case SearchTarget::left_not_right: return "left-not-right";
        case SearchTarget::nontrivial_fan: return "nontrivial-fan";
        case SearchTarget::one_sided_inverse_gap: return "one-sided-inverse-gap";
        case SearchTarget::latin_square_census: return "latin-square-census";
    }
    throw consistency_error("to_string: unknown search target");
}

inline SearchTarget search_target_from_string(const std::string& s) {
    if (s == "left-not-right") return SearchTarget::left_not_right;
    if (s == "nontrivial-fan") return SearchTarget::nontrivial_fan;
    if (s == "one-sided-inverse-gap") return SearchTarget::one_sided_inverse_gap;
    if (s == "latin-square-census") return SearchTarget::latin_square_census;
    throw invalid_input("unknown search target: " + s);
}

struct SearchTask {
    SearchTarget target = SearchTarget::left_not_right;
    int order_a = 3, order_b = 3;
    int order_n = 2; // embedded subgroup order for the skew targets
    std::uint64_t seed = 0;
    std::int64_t budget = 100000;
};

struct SearchStats {
    std::int64_t candidates = 0;
    std::map<std::string, std::int64_t> rejections;
};

struct SmashWitness {
    FiniteMagma a, b;
    SmashFactors factors;
    std::int64_t candidate_index = 0;
    RightSolvabilityReport probe;
};

struct SkewWitness {
    FiniteMagma a, b;
    SkewFactors factors;
    std::int64_t candidate_index = 0;
    std::vector<int> fan; // encoded elements of the product
    std::vector<int> gap; // encoded g with e/g != g\e
};

struct CensusResult {
    int order = 0;
    unsigned long long reduced_count = 0;
    unsigned long long total_count = 0;
};

struct SearchResult {
    SearchTask task;
    bool found = false;
    SearchStats stats;
    std::optional<SmashWitness> smash;
    std::optional<SkewWitness> skew;
    std::optional<CensusResult> census;
};

// ---------------------------------------------------------------------------
// Latin square enumeration
// ---------------------------------------------------------------------------

namespace detail {

// Cell-by-cell backtracking over rows with column bitmasks. emit gets the
// flat table and returns false to stop; emit == nullptr just counts.
inline unsigned long long latin_backtrack(
    int n, bool reduced, const std::function<bool(const std::vector<int>&)>* emit) {
    std::vector<int> table(static_cast<std::size_t>(n) * n, -1);
    std::vector<std::uint32_t> col_used(static_cast<std::size_t>(n), 0);
    unsigned long long count = 0;
    bool stop = false;
    // fills cells in row-major order
    std::function<void(int)> rec = [&](int cell) {
        if (stop) return;
        if (cell == n * n) {
            ++count;
            if (emit && !(*emit)(table)) stop = true;
            return;
        }
        const int r = cell / n, c = cell % n;
        std::uint32_t row_used = 0;
        for (int j = 0; j < c; ++j)
            row_used |= 1u << table[static_cast<std::size_t>(r) * n + j];
        for (int v = 0; v < n; ++v) {
            if (reduced && r == 0 && v != c) continue;
            if (reduced && c == 0 && v != r) continue;
            const std::uint32_t bit = 1u << v;
            if ((row_used & bit) || (col_used[static_cast<std::size_t>(c)] & bit)) continue;
            table[static_cast<std::size_t>(cell)] = v;
            col_used[static_cast<std::size_t>(c)] |= bit;
            rec(cell + 1);
            col_used[static_cast<std::size_t>(c)] &= ~bit;
            table[static_cast<std::size_t>(cell)] = -1;
            if (stop) return;
        }
    };
    rec(0);
    return count;
}

inline unsigned long long factorial(int n) {
    unsigned long long f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
    return f;
}

} // namespace detail

// Streams every order-n Latin square (reduced: first row and column fixed to
// the identity) to the visitor; return false from it to stop early.
inline void enumerate_latin_squares(int n, bool reduced,
                                    const std::function<bool(const FiniteMagma&)>& visit) {
    if (n < 1 || n > kLatinEnumerationCeiling)
        throw capacity_error("enumerate_latin_squares: order outside 1.." +
                             std::to_string(kLatinEnumerationCeiling));
    std::function<bool(const std::vector<int>&)> emit = [&](const std::vector<int>& flat) {
        return visit(FiniteMagma::from_flat(n, flat));
    };
    detail::latin_backtrack(n, reduced, &emit);
}

// Exact counts. The unreduced total is reduced * n! * (n-1)!: every square
// normalizes uniquely by sorting columns then rows, and each reduced square
// lifts back in exactly n! * (n-1)! ways.
inline CensusResult count_latin_squares(int n) {
    if (n < 1 || n > kLatinEnumerationCeiling)
        throw capacity_error("count_latin_squares: order outside 1.." +
                             std::to_string(kLatinEnumerationCeiling));
    CensusResult r;
    r.order = n;
    r.reduced_count = detail::latin_backtrack(n, true, nullptr);
    r.total_count = r.reduced_count * detail::factorial(n) * detail::factorial(n - 1);
    return r;
}

// ---------------------------------------------------------------------------
// automorphisms and the constrained smash sampler
// ---------------------------------------------------------------------------

inline bool is_automorphism(const FiniteMagma& m, const std::vector<int>& perm) {
    const int n = m.order();
    if (static_cast<int>(perm.size()) != n)
        throw invalid_input("is_automorphism: permutation size differs from the order");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (perm[static_cast<std::size_t>(m.mul(x, y))] !=
                m.mul(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)]))
                return false;
    return true;
}

// All table automorphisms by brute force over the n! permutations.
inline std::vector<std::vector<int>> automorphism_group(const FiniteMagma& m) {
    if (m.order() > kAutomorphismEnumerationCeiling)
        throw capacity_error("automorphism_group: order above the enumeration ceiling " +
                             std::to_string(kAutomorphismEnumerationCeiling));
    std::vector<int> perm(static_cast<std::size_t>(m.order()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (is_automorphism(m, perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Constraints on sampled smash factors: phi_fix_unit[j] forces every row of
// phi_{j+1} to fix the unit of B; phi_non_automorphism[j] requires at least
// one row of phi_{j+1} to not be a table automorphism of B;
// xi_non_homomorphism[i] requires some slice b -> xi_{i+1}(a1, b, a2) to not
// be multiplicative.
struct SmashConstraints {
    std::array<bool, 3> phi_fix_unit{false, false, false};
    std::array<bool, 3> phi_non_automorphism{false, false, false};
    std::array<bool, 2> xi_non_homomorphism{false, false};
};

namespace detail {

inline std::vector<int> random_permutation(int n, SplitMix64& rng, std::optional<int> fixed) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    if (fixed) {
        std::swap(p[static_cast<std::size_t>(*fixed)], p.back());
        p.pop_back();
        rng.shuffle(p);
        // reinsert so that p[*fixed] == *fixed
        p.insert(p.begin() + *fixed, *fixed);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (static_cast<int>(i) != *fixed && p[i] == *fixed)
                throw consistency_error("random_permutation: fixed point bookkeeping failed");
    } else {
        rng.shuffle(p);
    }
    return p;
}

inline bool xi_slice_non_homomorphism(const FiniteMagma& b, const SmashFactors& f,
                                      const std::vector<int>& xi) {
    const int na = f.order_a, nb = f.order_b;
    for (int a1 = 0; a1 < na; ++a1)
        for (int a2 = 0; a2 < na; ++a2)
            for (int x = 0; x < nb; ++x)
                for (int y = 0; y < nb; ++y) {
                    const auto at = [&](int bv) {
                        return xi[(static_cast<std::size_t>(a1) * nb + bv) * na + a2];
                    };
                    if (at(b.mul(x, y)) != b.mul(at(x), at(y))) return true;
                }
    return false;
}

} // namespace detail

// Deterministic sampler for smash factors. Throws search_exhausted when a
// constraint is unsatisfiable (proved exactly by permutation enumeration for
// |B| <= 8) or keeps failing after the internal retry budget.
inline SmashFactors random_smash_factors(const FiniteMagma& a, const FiniteMagma& b,
                                         std::uint64_t seed,
                                         const SmashConstraints& constraints = {},
                                         int attempts = 256) {
    const int na = a.order(), nb = b.order();
    const bool wants_fix =
        constraints.phi_fix_unit[0] || constraints.phi_fix_unit[1] || constraints.phi_fix_unit[2];
    if (wants_fix && !b.unit())
        throw invalid_input("random_smash_factors: phi_fix_unit needs a unital B");

    // exact unsatisfiability: a constrained family needs one non-automorphism
    // row drawn from the allowed permutation pool
    if (nb <= kAutomorphismEnumerationCeiling) {
        for (int j = 0; j < 3; ++j) {
            if (!constraints.phi_non_automorphism[static_cast<std::size_t>(j)]) continue;
            std::vector<int> perm(static_cast<std::size_t>(nb));
            std::iota(perm.begin(), perm.end(), 0);
            bool witness = false;
            do {
                if (constraints.phi_fix_unit[static_cast<std::size_t>(j)] &&
                    perm[static_cast<std::size_t>(*b.unit())] != *b.unit())
                    continue;
                if (!is_automorphism(b, perm)) { witness = true; break; }
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!witness)
                throw search_exhausted(
                    "random_smash_factors: phi" + std::to_string(j + 1) +
                    " constraint unsatisfiable, every allowed permutation is an automorphism");
        }
    }
    if ((constraints.xi_non_homomorphism[0] || constraints.xi_non_homomorphism[1]) && nb < 2)
        throw search_exhausted(
            "random_smash_factors: xi constraint unsatisfiable, every map on one point is "
            "multiplicative");

    detail::SplitMix64 rng(seed);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        SmashFactors f;
        f.order_a = na;
        f.order_b = nb;
        std::array<std::vector<int>*, 3> phis{&f.phi1, &f.phi2, &f.phi3};
        bool ok = true;
        for (int j = 0; j < 3 && ok; ++j) {
            auto& phi = *phis[static_cast<std::size_t>(j)];
            phi.reserve(static_cast<std::size_t>(na) * nb);
            bool some_non_aut = false;
            for (int av = 0; av < na; ++av) {
                const std::optional<int> fixed =
                    constraints.phi_fix_unit[static_cast<std::size_t>(j)]
                        ? std::optional<int>(*b.unit())
                        : std::nullopt;
                auto row = detail::random_permutation(nb, rng, fixed);
                if (constraints.phi_non_automorphism[static_cast<std::size_t>(j)] &&
                    !is_automorphism(b, row))
                    some_non_aut = true;
                phi.insert(phi.end(), row.begin(), row.end());
            }
            if (constraints.phi_non_automorphism[static_cast<std::size_t>(j)] && !some_non_aut)
                ok = false;
        }
        if (!ok) continue;
        const std::size_t nxi = static_cast<std::size_t>(na) * nb * na;
        std::array<std::vector<int>*, 2> xis{&f.xi1, &f.xi2};
        for (int i = 0; i < 2 && ok; ++i) {
            auto& xi = *xis[static_cast<std::size_t>(i)];
            xi.resize(nxi);
            for (auto& v : xi) v = rng.below(nb);
            if (constraints.xi_non_homomorphism[static_cast<std::size_t>(i)] &&
                !detail::xi_slice_non_homomorphism(b, f, xi))
                ok = false;
        }
        if (ok) return f;
    }
    throw search_exhausted("random_smash_factors: constraints not met within " +
                           std::to_string(attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// skew factor sampler
// ---------------------------------------------------------------------------

// Candidate embedded subgroup for sampled skew products: the cyclic group of
// this order, embedded in cyclic factors as the multiples subgroup.
struct SkewSubgroupSpec {
    int order = 2;
};

namespace detail {

// Random skew factors over cyclic A, B with N = Z_k embedded as multiples.
// phi is the identity family and eta = kappa = unit, so every condition
// except the xi ones holds trivially; xi is drawn constant on the residue
// classes mod |A|/k resp. |B|/k (the orbits of the embedded shifts) and unit
// on the classes of the unit pair, which makes the candidate pass the
// validator by construction.
inline SkewFactors random_cyclic_skew_factors(const FiniteMagma& a, const FiniteMagma& b,
                                              int order_n, SplitMix64& rng) {
    const int na = a.order(), nb = b.order();
    const int da = na / order_n, db = nb / order_n;
    std::vector<int> classes(static_cast<std::size_t>(da) * db * da * db);
    for (auto& v : classes) v = rng.below(order_n);
    for (int c1 = 0; c1 < da; ++c1)
        for (int c2 = 0; c2 < db; ++c2) {
            classes[(static_cast<std::size_t>(0) * db + 0) * (static_cast<std::size_t>(da) * db) +
                    static_cast<std::size_t>(c1) * db + c2] = 0;
            classes[(static_cast<std::size_t>(c1) * db + c2) * (static_cast<std::size_t>(da) * db) +
                    static_cast<std::size_t>(0) * db + 0] = 0;
        }
    std::vector<int> embed_a(static_cast<std::size_t>(order_n));
    std::vector<int> embed_b(static_cast<std::size_t>(order_n));
    for (int x = 0; x < order_n; ++x) { embed_a[static_cast<std::size_t>(x)] = x * da;
                                        embed_b[static_cast<std::size_t>(x)] = x * db; }
    auto xi = [&classes, da, db](int u, int c, int v, int bv) {
        return classes[(static_cast<std::size_t>(u % da) * db + c % db) *
                           (static_cast<std::size_t>(da) * db) +
                       static_cast<std::size_t>(v % da) * db + bv % db];
    };
    return make_skew_factors(a, b, cyclic_group(order_n), std::move(embed_a),
                             std::move(embed_b), identity_phi, zero3, zero3, xi);
}

inline bool xi_all_unit(const SkewFactors& f) {
    for (int v : f.xi)
        if (v != 0) return false;
    return true;
}

} // namespace detail

// First validator-passing nontrivial candidate within the budget, absent if
// none. N trivial returns the trivial factors immediately (nothing else is
// reachable) as long as the budget admits one candidate.
inline std::optional<SkewFactors> sample_skew_factors(const FiniteMagma& a, const FiniteMagma& b,
                                                      const SkewSubgroupSpec& spec,
                                                      std::uint64_t seed, std::int64_t budget) {
    if (spec.order < 1) throw invalid_input("sample_skew_factors: subgroup order must be positive");
    if (budget <= 0) return std::nullopt;
    if (spec.order == 1) return SkewFactors::trivial(a, b);
    if (a.order() % spec.order != 0 || b.order() % spec.order != 0)
        throw invalid_input("sample_skew_factors: subgroup order must divide both factor orders");
    for (std::int64_t k = 0; k < budget; ++k) {
        detail::SplitMix64 rng(detail::candidate_seed(seed, k));
        SkewFactors f = detail::random_cyclic_skew_factors(a, b, spec.order, rng);
        if (detail::xi_all_unit(f)) continue;
        if (validate_skew_factors(a, b, f).ok()) return f;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// run_search
// ---------------------------------------------------------------------------

namespace detail {

// Evaluates candidates 0..budget-1 in parallel chunks; eval(k) returns
// nullptr on success or a static rejection label. Returns the smallest
// succeeding index (or budget), accumulating rejection labels of all
// candidates before it into stats, in index order.
template <class Eval>
std::int64_t first_success(std::int64_t budget, SearchStats& stats, Eval&& eval) {
    const std::int64_t chunk =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(worker_count()) * 16);
    std::vector<const char*> verdicts;
    for (std::int64_t base = 0; base < budget; base += chunk) {
        const auto len = static_cast<int>(std::min<std::int64_t>(chunk, budget - base));
        verdicts.assign(static_cast<std::size_t>(len), nullptr);
        parallel_for(0, len, [&](int i) { verdicts[static_cast<std::size_t>(i)] = eval(base + i); });
        for (int i = 0; i < len; ++i) {
            ++stats.candidates;
            const char* verdict = verdicts[static_cast<std::size_t>(i)];
            if (verdict == nullptr) return base + i;
            ++stats.rejections[verdict];
        }
    }
    return budget;
}

} // namespace detail

// Runs the task to the first witness or to budget exhaustion. Exhaustion is
// a result (found = false with statistics), not an exception; capacity and
// precondition problems still throw.
inline SearchResult run_search(const SearchTask& task) {
    if (task.budget < 1) throw invalid_input("run_search: budget must be at least 1");
    if (task.order_a < 1 || task.order_b < 1)
        throw invalid_input("run_search: orders must be at least 1");
    SearchResult res;
    res.task = task;

    switch (task.target) {
        case SearchTarget::latin_square_census: {
            res.census = count_latin_squares(task.order_a);
            res.found = true;
            res.stats.candidates = 0;
            return res;
        }
        case SearchTarget::left_not_right: {
            const FiniteMagma a = cyclic_group(task.order_a);
            const FiniteMagma b = cyclic_group(task.order_b);
            auto eval = [&](std::int64_t k) -> const char* {
                const SmashFactors f =
                    random_smash_factors(a, b, detail::candidate_seed(task.seed, k));
                return right_solvability_probe(a, b, f).right_quasigroup ? "right-solvable"
                                                                         : nullptr;
            };
            const std::int64_t hit = detail::first_success(task.budget, res.stats, eval);
            if (hit == task.budget) return res;
            SmashWitness w{a, b, random_smash_factors(a, b, detail::candidate_seed(task.seed, hit)),
                           hit, {}};
            w.probe = right_solvability_probe(a, b, w.factors);
            res.found = true;
            res.smash = std::move(w);
            return res;
        }
        case SearchTarget::nontrivial_fan:
        case SearchTarget::one_sided_inverse_gap:
            break;
    }

    // skew targets over cyclic factors with N = Z_{order_n}
    if (task.order_n < 1) throw invalid_input("run_search: order_n must be at least 1");
    if (task.order_n == 1) {
        // the trivial subgroup admits only the trivial candidate, whose
        // product is a group: fan {e} and e/a = a\e throughout
        res.stats.rejections["trivial-subgroup-forces-trivial-witness"] = 1;
        return res;
    }
    if (task.order_a % task.order_n != 0 || task.order_b % task.order_n != 0)
        throw invalid_input("run_search: order_n must divide order_a and order_b");
    const FiniteMagma a = cyclic_group(task.order_a);
    const FiniteMagma b = cyclic_group(task.order_b);
    const bool want_fan = task.target == SearchTarget::nontrivial_fan;

    struct Outcome {
        std::vector<int> fan, gap;
    };
    auto build = [&](std::int64_t k) -> std::optional<Outcome> {
        detail::SplitMix64 rng(detail::candidate_seed(task.seed, k));
        const SkewFactors f = detail::random_cyclic_skew_factors(a, b, task.order_n, rng);
        if (detail::xi_all_unit(f)) return std::nullopt; // trivial draw
        const FanCertificate cert = skew_smashed_product(a, b, f);
        Outcome o;
        o.fan = cert.fan.elements();
        const FiniteMagma& g = cert.base;
        for (int x = 0; x < g.order(); ++x)
            if (g.div_r(x, *g.unit()) != g.div_l(x, *g.unit())) o.gap.push_back(x);
        return o;
    };
    auto eval = [&](std::int64_t k) -> const char* {
        const auto o = build(k);
        if (!o) return "trivial-xi-draw";
        if (want_fan) return o->fan.size() > 1 ? nullptr : "trivial-fan";
        return o->gap.empty() ? "no-inverse-gap" : nullptr;
    };
    const std::int64_t hit = detail::first_success(task.budget, res.stats, eval);
    if (hit == task.budget) return res;
    detail::SplitMix64 rng(detail::candidate_seed(task.seed, hit));
    SkewWitness w{a, b, detail::random_cyclic_skew_factors(a, b, task.order_n, rng), hit, {}, {}};
    const auto outcome = build(hit);
    w.fan = outcome->fan;
    w.gap = outcome->gap;
    res.found = true;
    res.skew = std::move(w);
    return res;
}

} // namespace qgforge
