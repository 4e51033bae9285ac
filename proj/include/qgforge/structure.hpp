#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgforge/errors.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/subset.hpp"

namespace qgforge {

// Commutant, the three one-sided nuclei, their intersection, and the center
// of a finite magma:
//   com     = { a : ab = ba for all b }
//   n_l     = { a : (ab)c = a(bc) for all b, c }
//   n_m     = { a : (ba)c = b(ac) for all b, c }
//   n_r     = { a : (bc)a = b(ca) for all b, c }
//   nucleus = n_l & n_m & n_r
//   center  = com & nucleus
struct StructureReport {
    ElementSubset com, n_l, n_m, n_r, nucleus, center;
};

inline StructureReport structure_report(const FiniteMagma& m) {
    const int n = m.order();
    StructureReport r{ElementSubset(n), ElementSubset(n), ElementSubset(n),
                      ElementSubset(n), ElementSubset(n), ElementSubset(n)};
    for (int a = 0; a < n; ++a) {
        bool com = true, nl = true, nm = true, nr = true;
        for (int b = 0; b < n && com; ++b) com = m.mul(a, b) == m.mul(b, a);
        for (int b = 0; b < n && (nl || nm || nr); ++b)
            for (int c = 0; c < n && (nl || nm || nr); ++c) {
                if (nl && m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c))) nl = false;
                if (nm && m.mul(m.mul(b, a), c) != m.mul(b, m.mul(a, c))) nm = false;
                if (nr && m.mul(m.mul(b, c), a) != m.mul(b, m.mul(c, a))) nr = false;
            }
        if (com) r.com.insert(a);
        if (nl) r.n_l.insert(a);
        if (nm) r.n_m.insert(a);
        if (nr) r.n_r.insert(a);
        if (nl && nm && nr) {
            r.nucleus.insert(a);
            if (com) r.center.insert(a);
        }
    }
    return r;
}

// Elements e with e*g = g for all g.
inline std::vector<int> left_units(const FiniteMagma& m) {
    std::vector<int> out;
    for (int e = 0; e < m.order(); ++e) {
        bool ok = true;
        for (int g = 0; g < m.order() && ok; ++g) ok = m.mul(e, g) == g;
        if (ok) out.push_back(e);
    }
    return out;
}

// Elements e with g*e = g for all g.
inline std::vector<int> right_units(const FiniteMagma& m) {
    std::vector<int> out;
    for (int e = 0; e < m.order(); ++e) {
        bool ok = true;
        for (int g = 0; g < m.order() && ok; ++g) ok = m.mul(g, e) == g;
        if (ok) out.push_back(e);
    }
    return out;
}

// t(a,b,c) = ((ab)c) / (a(bc)). Requires right division.
inline int associator_t(const FiniteMagma& m, int a, int b, int c) {
    return m.div_r(m.mul(a, m.mul(b, c)), m.mul(m.mul(a, b), c));
}

// p(a,b,c) = (a(bc)) \ ((ab)c). Requires left division.
inline int associator_p(const FiniteMagma& m, int a, int b, int c) {
    return m.div_l(m.mul(a, m.mul(b, c)), m.mul(m.mul(a, b), c));
}

// Witness that a magma is a fan quasigroup: a unital quasigroup all of whose
// associator values t(a,b,c), p(a,b,c) lie in the nucleus. The fan is the
// smallest subgroup of the nucleus containing every associator value,
// computed as the multiplicative closure of the values plus the unit (the
// closure of a finite subset of a finite group is a subgroup).
//
// Associator tables are materialized up to the order below; past it t() and
// p() compute entries on demand. Fields are plain so self-tests can corrupt
// a certificate and watch downstream checks fail.
inline constexpr int kAssociatorTableLimit = 24;

struct FanCertificate {
    FiniteMagma base;
    StructureReport report;
    ElementSubset fan;
    std::vector<int> t_table, p_table; // order^3 entries each, or empty

    int t(int a, int b, int c) const {
        if (t_table.empty()) return associator_t(base, a, b, c);
        const int n = base.order();
        return t_table[(static_cast<std::size_t>(a) * n + b) * n + c];
    }
    int p(int a, int b, int c) const {
        if (p_table.empty()) return associator_p(base, a, b, c);
        const int n = base.order();
        return p_table[(static_cast<std::size_t>(a) * n + b) * n + c];
    }
    bool materialized() const { return !t_table.empty(); }
};

// Certifies m as a fan quasigroup, or returns nullopt when it is not one
// (not a quasigroup, no unit, or some associator value outside the nucleus).
inline std::optional<FanCertificate> fan_certificate(const FiniteMagma& m) {
    if (!m.latin_square() || !m.unit()) return std::nullopt;
    const int n = m.order();
    FanCertificate cert{m, structure_report(m), ElementSubset(n), {}, {}};

    const bool materialize = n <= kAssociatorTableLimit;
    if (materialize) {
        cert.t_table.resize(static_cast<std::size_t>(n) * n * n);
        cert.p_table.resize(static_cast<std::size_t>(n) * n * n);
    }
    ElementSubset values(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const int t = associator_t(m, a, b, c);
                const int p = associator_p(m, a, b, c);
                if (!cert.report.nucleus.contains(t) || !cert.report.nucleus.contains(p))
                    return std::nullopt;
                values.insert(t);
                values.insert(p);
                if (materialize) {
                    const std::size_t i = (static_cast<std::size_t>(a) * n + b) * n + c;
                    cert.t_table[i] = t;
                    cert.p_table[i] = p;
                }
            }

    // multiplicative closure of the associator values and the unit
    cert.fan = values;
    cert.fan.insert(*m.unit());
    for (bool grew = true; grew;) {
        grew = false;
        const auto elems = cert.fan.elements();
        for (int x : elems)
            for (int y : elems) {
                const int z = m.mul(x, y);
                if (!cert.fan.contains(z)) {
                    cert.fan.insert(z);
                    grew = true;
                }
            }
    }
    return cert;
}

namespace detail {

// image of h under g -> x*g (left = true) or g -> g*x (left = false)
inline ElementSubset translate(const FiniteMagma& m, const ElementSubset& h, int x, bool left) {
    ElementSubset out(m.order());
    for (int g : h.elements()) out.insert(left ? m.mul(x, g) : m.mul(g, x));
    return out;
}

} // namespace detail

// True when h is closed under multiplication and both divisions within m.
inline bool is_subquasigroup(const FiniteMagma& m, const ElementSubset& h) {
    if (h.parent_order() != m.order())
        throw invalid_input("is_subquasigroup: subset parent order mismatch");
    if (!m.latin_square())
        throw precondition_error("is_subquasigroup: magma is not a quasigroup");
    const auto elems = h.elements();
    for (int a : elems)
        for (int b : elems)
            if (!h.contains(m.mul(a, b)) || !h.contains(m.div_l(a, b)) ||
                !h.contains(m.div_r(a, b)))
                return false;
    return true;
}

// Normality of a subquasigroup h in m, as literal set equalities:
//   xH = Hx                                    for all x
//   (xy)H = x(yH), (xH)y = x(Hy), H(xy) = (Hx)y  for all x, y
inline bool is_normal(const FiniteMagma& m, const ElementSubset& h) {
    if (!is_subquasigroup(m, h))
        throw precondition_error("is_normal: subset is not a subquasigroup");
    const int n = m.order();
    using detail::translate;
    for (int x = 0; x < n; ++x)
        if (translate(m, h, x, true) != translate(m, h, x, false)) return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const int xy = m.mul(x, y);
            if (translate(m, h, xy, true) != translate(m, translate(m, h, y, true), x, true))
                return false;
            if (translate(m, translate(m, h, x, true), y, false) !=
                translate(m, translate(m, h, y, false), x, true))
                return false;
            if (translate(m, h, xy, false) != translate(m, translate(m, h, x, false), y, false))
                return false;
        }
    return true;
}

// Conjugation pair ( (a*beta)/a , a\(beta*a) ). Requires both divisions.
inline std::pair<int, int> conj_maps(const FiniteMagma& m, int a, int beta) {
    return {m.div_r(a, m.mul(a, beta)), m.div_l(a, m.mul(beta, a))};
}

// Quotient of a fan quasigroup by a normal subgroup n1 between the fan and
// the nucleus. Cosets are the sets a*N1, indexed in order of their smallest
// member; the projection is checked to be well defined on every pair and the
// quotient is checked to be a group.
struct QuotientGroup {
    FiniteMagma base;
    ElementSubset subgroup;
    std::vector<int> projection;         // element -> coset index
    std::vector<std::vector<int>> cosets; // coset index -> ascending members
    FiniteMagma quotient;
};

inline QuotientGroup quotient(const FiniteMagma& m, const ElementSubset& n1) {
    auto cert = fan_certificate(m);
    if (!cert)
        throw precondition_error("quotient: magma has no fan certificate");
    if (!cert->fan.is_subset_of(n1) || !n1.is_subset_of(cert->report.nucleus))
        throw precondition_error("quotient: subgroup must contain the fan and lie in the nucleus");
    const int n = m.order();
    const int e = *m.unit();
    if (!n1.contains(e))
        throw precondition_error("quotient: subgroup must contain the unit");
    for (int a : n1.elements())
        for (int b : n1.elements())
            if (!n1.contains(m.mul(a, b)))
                throw precondition_error("quotient: subset is not closed under multiplication");
    for (int x = 0; x < n; ++x)
        if (detail::translate(m, n1, x, true) != detail::translate(m, n1, x, false))
            throw precondition_error("quotient: xN != Nx for x = " + std::to_string(x));

    QuotientGroup q{m, n1, std::vector<int>(static_cast<std::size_t>(n), -1), {}, {}};
    for (int a = 0; a < n; ++a) {
        if (q.projection[a] != -1) continue;
        const auto coset = detail::translate(m, n1, a, true).elements();
        // a = a*e is its own coset's smallest unassigned representative
        const int idx = static_cast<int>(q.cosets.size());
        for (int g : coset) {
            if (q.projection[g] != -1)
                throw consistency_error("quotient: cosets do not partition the magma");
            q.projection[g] = idx;
        }
        q.cosets.push_back(coset);
    }

    const int k = static_cast<int>(q.cosets.size());
    std::vector<int> table(static_cast<std::size_t>(k) * k, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int i = q.projection[a], j = q.projection[b];
            int& cell = table[static_cast<std::size_t>(i) * k + j];
            const int v = q.projection[m.mul(a, b)];
            if (cell == -1) cell = v;
            else if (cell != v)
                throw consistency_error("quotient: product not well defined on cosets (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
        }
    q.quotient = FiniteMagma::from_flat(k, std::move(table));

    if (!q.quotient.latin_square() || !q.quotient.unit() || !q.quotient.associative())
        throw consistency_error("quotient: result is not a group");
    const int qe = *q.quotient.unit();
    for (int i = 0; i < k; ++i) {
        const int j = q.quotient.div_l(i, qe);
        if (q.quotient.mul(j, i) != qe)
            throw consistency_error("quotient: element without a two-sided inverse");
    }
    return q;
}

} // namespace qgforge
