#pragma once

// Stock Cayley tables (small groups and quasigroups) and a small corpus of
// skew smashed product instances with known properties, used as fixtures by
// tests and as ready-made inputs for the command line tool.

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgforge/errors.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/products.hpp"

namespace qgforge {

inline FiniteMagma cyclic_group(int n) {
    if (n < 1) throw invalid_input("cyclic_group: order must be positive");
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return FiniteMagma::from_flat(n, std::move(t));
}

inline FiniteMagma klein_four() {
    return FiniteMagma::from_flat(4, {0, 1, 2, 3,
                                      1, 0, 3, 2,
                                      2, 3, 0, 1,
                                      3, 2, 1, 0});
}

// Permutations of {0,1,2} in lexicographic order; (p*q)(x) = p(q(x)).
// Index 0 is the unit, 1 = (1 2), 2 = (0 1), 3 = (0 1 2), 4 = (0 2 1),
// 5 = (0 2) in cycle notation.
inline FiniteMagma symmetric_group3() {
    std::array<std::array<int, 3>, 6> perms{};
    std::array<int, 3> base{0, 1, 2};
    for (int i = 0; i < 6; ++i) {
        perms[static_cast<std::size_t>(i)] = {base[0], base[1], base[2]};
        std::next_permutation(base.begin(), base.end());
    }
    auto index_of = [&perms](const std::array<int, 3>& p) {
        for (int i = 0; i < 6; ++i)
            if (perms[static_cast<std::size_t>(i)] == p) return i;
        throw consistency_error("symmetric_group3: permutation index lookup failed");
    };
    std::vector<int> t(36);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const auto& p = perms[static_cast<std::size_t>(i)];
            const auto& q = perms[static_cast<std::size_t>(j)];
            std::array<int, 3> comp{p[static_cast<std::size_t>(q[0])],
                                    p[static_cast<std::size_t>(q[1])],
                                    p[static_cast<std::size_t>(q[2])]};
            t[static_cast<std::size_t>(i) * 6 + j] = index_of(comp);
        }
    return FiniteMagma::from_flat(6, std::move(t));
}

// Order 2k. Element f*k + r stands for rotation^r reflection^f, so
// (f1,r1)(f2,r2) = (f1 xor f2, r1 - r2 if f1 else r1 + r2).
inline FiniteMagma dihedral_group(int k) {
    if (k < 1) throw invalid_input("dihedral_group: parameter must be positive");
    const int n = 2 * k;
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int f1 = 0; f1 < 2; ++f1)
        for (int r1 = 0; r1 < k; ++r1)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int r2 = 0; r2 < k; ++r2) {
                    const int f = f1 ^ f2;
                    const int r = ((f1 ? r1 - r2 : r1 + r2) % k + k) % k;
                    t[static_cast<std::size_t>(f1 * k + r1) * n + (f2 * k + r2)] = f * k + r;
                }
    return FiniteMagma::from_flat(n, std::move(t));
}

// Elements 0..7 = 1, i, j, k, -1, -i, -j, -k.
inline FiniteMagma quaternion_group() {
    auto mul = [](int x, int y) {
        const int sx = x / 4, bx = x % 4;
        const int sy = y / 4, by = y % 4;
        int sign = sx ^ sy, base;
        if (bx == 0) base = by;
        else if (by == 0) base = bx;
        else if (bx == by) { base = 0; sign ^= 1; }
        else {
            base = 6 - bx - by;
            const bool cyclic = (bx == 1 && by == 2) || (bx == 2 && by == 3) ||
                                (bx == 3 && by == 1);
            if (!cyclic) sign ^= 1;
        }
        return sign * 4 + base;
    };
    std::vector<int> t(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) t[static_cast<std::size_t>(x) * 8 + y] = mul(x, y);
    return FiniteMagma::from_flat(8, std::move(t));
}

// a * b = a - b mod n: a quasigroup without a unit for n >= 2.
inline FiniteMagma subtraction_mod(int n) {
    if (n < 1) throw invalid_input("subtraction_mod: order must be positive");
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[static_cast<std::size_t>(a) * n + b] = ((a - b) % n + n) % n;
    return FiniteMagma::from_flat(n, std::move(t));
}

// ---------------------------------------------------------------------------
// skew product corpus
// ---------------------------------------------------------------------------

struct SkewInstance {
    std::string name;
    FiniteMagma a, b;
    SkewFactors factors;
};

namespace detail {

// Fills the flat factor tables from callables; all three correction maps
// return N indices.
inline SkewFactors make_skew_factors(
    const FiniteMagma& a, const FiniteMagma& b, FiniteMagma n_group,
    std::vector<int> embed_a, std::vector<int> embed_b,
    const std::function<int(int, int)>& phi,
    const std::function<int(int, int, int)>& eta,
    const std::function<int(int, int, int)>& kappa,
    const std::function<int(int, int, int, int)>& xi) {
    SkewFactors f;
    f.n_group = std::move(n_group);
    f.embed_a = std::move(embed_a);
    f.embed_b = std::move(embed_b);
    f.order_a = a.order();
    f.order_b = b.order();
    const int na = f.order_a, nb = f.order_b;
    f.phi.resize(static_cast<std::size_t>(na) * nb);
    for (int av = 0; av < na; ++av)
        for (int bv = 0; bv < nb; ++bv)
            f.phi[static_cast<std::size_t>(av) * nb + bv] = phi(av, bv);
    f.eta.resize(static_cast<std::size_t>(na) * na * nb);
    for (int v = 0; v < na; ++v)
        for (int u = 0; u < na; ++u)
            for (int bv = 0; bv < nb; ++bv)
                f.eta[(static_cast<std::size_t>(v) * na + u) * nb + bv] = eta(v, u, bv);
    f.kappa.resize(static_cast<std::size_t>(na) * nb * nb);
    for (int u = 0; u < na; ++u)
        for (int c = 0; c < nb; ++c)
            for (int bv = 0; bv < nb; ++bv)
                f.kappa[(static_cast<std::size_t>(u) * nb + c) * nb + bv] = kappa(u, c, bv);
    f.xi.resize(static_cast<std::size_t>(na) * nb * na * nb);
    for (int u = 0; u < na; ++u)
        for (int c = 0; c < nb; ++c)
            for (int v = 0; v < na; ++v)
                for (int bv = 0; bv < nb; ++bv) {
                    const std::size_t lhs = static_cast<std::size_t>(u) * nb + c;
                    f.xi[lhs * (static_cast<std::size_t>(na) * nb) +
                         static_cast<std::size_t>(v) * nb + bv] = xi(u, c, v, bv);
                }
    return f;
}

inline int identity_phi(int, int b) { return b; }
inline int zero3(int, int, int) { return 0; }

} // namespace detail

// Order 12 over Z2 and Z6 with N = Z2 embedded as {0,3} in Z6. The twist
// fires exactly when both Z6 slots of xi are in residue class 1 mod 3.
// Commutative, nonassociative, fan {(0,0), (0,3)}, no one-sided inverse gap.
inline SkewInstance skew_instance_commutative_12() {
    FiniteMagma a = cyclic_group(2), b = cyclic_group(6);
    auto xi = [](int, int c, int, int bv) {
        return (c % 3 == 1 && bv % 3 == 1) ? 1 : 0;
    };
    auto f = detail::make_skew_factors(a, b, cyclic_group(2), {0, 1}, {0, 3},
                                       detail::identity_phi, detail::zero3, detail::zero3, xi);
    return {"commutative-12", std::move(a), std::move(b), std::move(f)};
}

// Same family with the twist on class pair (1, 2). Noncommutative,
// nonassociative, fan {(0,0), (0,3)}, and eight elements g with
// e/g != g\e (a one-sided inverse gap).
inline SkewInstance skew_instance_gap_12() {
    FiniteMagma a = cyclic_group(2), b = cyclic_group(6);
    auto xi = [](int, int c, int, int bv) {
        return (c % 3 == 1 && bv % 3 == 2) ? 1 : 0;
    };
    auto f = detail::make_skew_factors(a, b, cyclic_group(2), {0, 1}, {0, 3},
                                       detail::identity_phi, detail::zero3, detail::zero3, xi);
    return {"gap-12", std::move(a), std::move(b), std::move(f)};
}

// Order 16 over Z4 and Z4 with N = Z2 embedded as {0,2} on both sides. The
// twist depends on parities and fires exactly on class pair ((0,1),(1,0)).
// Noncommutative, nonassociative, fan {(0,0), (0,2)}, nucleus = center =
// {(0,0), (0,2), (2,0), (2,2)}.
inline SkewInstance skew_instance_16() {
    FiniteMagma a = cyclic_group(4), b = cyclic_group(4);
    auto xi = [](int u, int c, int v, int bv) {
        return (u % 2 == 0 && c % 2 == 1 && v % 2 == 1 && bv % 2 == 0) ? 1 : 0;
    };
    auto f = detail::make_skew_factors(a, b, cyclic_group(2), {0, 2}, {0, 2},
                                       detail::identity_phi, detail::zero3, detail::zero3, xi);
    return {"noncommutative-16", std::move(a), std::move(b), std::move(f)};
}

// The three nontrivial instances above plus trivially twisted group pairs
// (which collapse to direct products).
inline std::vector<SkewInstance> skew_corpus() {
    std::vector<SkewInstance> out;
    out.push_back(skew_instance_commutative_12());
    out.push_back(skew_instance_gap_12());
    out.push_back(skew_instance_16());
    {
        FiniteMagma a = cyclic_group(2), b = cyclic_group(3);
        SkewFactors f = SkewFactors::trivial(a, b);
        out.push_back({"trivial-6", std::move(a), std::move(b), std::move(f)});
    }
    {
        FiniteMagma a = cyclic_group(2), b = cyclic_group(2);
        SkewFactors f = SkewFactors::trivial(a, b);
        out.push_back({"trivial-4", std::move(a), std::move(b), std::move(f)});
    }
    return out;
}

} // namespace qgforge
