#pragma once

// Exhaustive checks of the identity catalog satisfied by fan quasigroups.
// Every identity is verified over its full quantifier domain; a report per
// identity carries the case count and the lexicographically first failures.
//
// Identities are addressed by short catalog ids. Ids sharing a numeric
// prefix ("72" and "72b") are variants of one statement; "62-grouping"
// records that the two bracketings of the right side of "62" agree, which
// must hold before "62" itself is meaningful.
//
// The four-variable identities 63, 64, 65 cost order^4 cases and run only
// when the order is at most big_domain_ceiling; callers see the omission as
// the absence of those ids from the returned reports.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "qgforge/errors.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/structure.hpp"

namespace qgforge {

inline constexpr int kBigDomainCeiling = 10;
inline constexpr int kMaxRecordedFailures = 64;

struct IdentityFailure {
    std::vector<int> args;
    int lhs = 0, rhs = 0;
};

struct IdentityReport {
    std::string id;
    std::string domain;
    std::int64_t cases = 0;
    std::int64_t failure_count = 0;
    std::vector<IdentityFailure> failures; // first kMaxRecordedFailures, in domain order
    bool ok() const { return failure_count == 0; }
};

struct IdentityCatalogEntry {
    std::string id;
    std::string domain;
    std::string statement;
};

// t = t(a,b,c), p = p(a,b,c); ^-1 is inversion in the nucleus, x\y and y/x
// the two divisions, e the unit, N the nucleus, Z the center.
inline const std::vector<IdentityCatalogEntry>& identity_catalog() {
    static const std::vector<IdentityCatalogEntry> entries = {
        {"60", "a,b in N; x in G", "x\\(ab) = (x\\a)b"},
        {"61", "a,b in N; x in G", "(ab)/x = a(b/x)"},
        {"62-grouping", "a,b in N; x in G",
         "((((x\\a)x)((x\\b)x)) p1^-1) p2 = (((x\\a)x)((x\\b)x)) (p1^-1 p2) with "
         "p1 = p(x\\a, x, (x\\b)x), p2 = p(x, x\\b, x)"},
        {"62", "a,b in N; x in G",
         "(x\\(ab))x = ((((x\\a)x)((x\\b)x)) p(x\\a, x, (x\\b)x)^-1) p(x, x\\b, x)"},
        {"63", "u,v,x,y in G",
         "x\\((u\\v)y) = (s p(u,x,s)) p(u, u\\v, y)^-1 with s = (ux)\\(vy)"},
        {"64", "a,b,c,x in G",
         "x\\(p(a,b,c) x) = (((p(b,c,x) p(a,bc,x))^-1 p(a,b,cx)) p(ab,c,x)) p(u,x,s) "
         "with u = a(bc), s = (ux)\\(((ab)c)x)"},
        {"65", "a,b,c,z in G",
         "z\\(tz) = ((x\\(px)) p(u, u\\(tu), x)) p(u, x, (ux)\\(t(ux)))^-1 "
         "with u = a(bc), x = u\\z"},
        {"70", "b in G", "b\\e = t(e/b, b, b\\e) (e/b)"},
        {"71", "b in G", "b\\e = (e/b) p(e/b, b, b\\e)"},
        {"72", "a,b in G", "(a\\e)b = (t(e/a, a, a\\e) t(e/a, a, a\\b)^-1) (a\\b)"},
        {"72b", "a,b in G", "a\\b = ((a\\e)b) p(a, a\\e, b)"},
        {"73", "a,b,c in G", "(bc)\\a = (c\\(b\\a)) p(b, c, (bc)\\a)^-1"},
        {"74", "a,b,c in G", "(a\\b)c = (a\\(bc)) p(a, a\\b, c)^-1"},
        {"75", "a,b in G",
         "(ab)\\e = (((b\\e)(a\\e)) t(a, b, b\\e)^-1) t(ab, b\\e, a\\e)"},
        {"76a", "a,b in G",
         "b(e/a) = ((b/a) p(b/a, a, a\\e)) p(e/a, a, a\\e)^-1"},
        {"76", "a,b in G", "b/a = t(b, e/a, a)^-1 (b(e/a))"},
        {"77", "a,b,c in G", "a/(bc) = t(a/(bc), b, c) ((a/c)/b)"},
        {"78", "a,b,c in G", "c(b/a) = t(c, b/a, a) ((cb)/a)"},
        {"79", "a,b in G",
         "e/(ab) = (p(e/b, e/a, ab)^-1 p(e/a, a, b)) ((e/b)(e/a))"},
        {"80a", "a,b in G", "b(b\\a) = a"},
        {"80b", "a,b in G", "b\\(ba) = a"},
        {"81a", "a,b in G", "(a/b)b = a"},
        {"81b", "a,b in G", "(ab)/b = a"},
        {"82", "z1,z2,z3 in Z; a1,a2,a3 in G", "t(z1 a1, z2 a2, z3 a3) = t(a1, a2, a3)"},
        {"83", "z1,z2,z3 in Z; a1,a2,a3 in G", "p(z1 a1, z2 a2, z3 a3) = p(a1, a2, a3)"},
        {"84", "a in G", "t(a, a\\e, a) a = a p(a, a\\e, a)"},
        {"85", "a in G", "t(a, e/a, a) a = a p(a, e/a, a)"},
        {"86", "a in G", "p(a, a\\e, a) t(e/a, a, a\\e) = e"},
        {"87", "b in N; a1,a2,a3 in G", "t(a1, a2, a3 b) = t(a1, a2, a3)"},
        {"88", "b in N; a1,a2,a3 in G", "p(b a1, a2, a3) = p(a1, a2, a3)"},
        {"89", "b in N; a1,a2,a3 in G", "t(b a1, a2, a3) = (b t(a1, a2, a3)) b^-1"},
        {"90", "b in N; a1,a2,a3 in G", "p(a1, a2, a3 b) = (b^-1 p(a1, a2, a3)) b"},
        {"94", "a in G", "(t(a, a\\e, a) a) t(e/a, a, a\\e) = a"},
    };
    return entries;
}

// Numeric prefix of a catalog id ("72b" -> 72, "62-grouping" -> 62).
inline int identity_id_number(const std::string& id) {
    int v = 0;
    std::size_t i = 0;
    while (i < id.size() && id[i] >= '0' && id[i] <= '9') v = v * 10 + (id[i++] - '0');
    if (i == 0) throw invalid_input("identity id has no numeric prefix: " + id);
    return v;
}

namespace detail {

struct IdentityRecorder {
    IdentityReport rep;
    IdentityRecorder(std::string id, std::string domain) {
        rep.id = std::move(id);
        rep.domain = std::move(domain);
    }
    void tally(bool ok, std::initializer_list<int> args, int lhs, int rhs) {
        ++rep.cases;
        if (ok) return;
        ++rep.failure_count;
        if (rep.failures.size() < static_cast<std::size_t>(kMaxRecordedFailures))
            rep.failures.push_back(IdentityFailure{std::vector<int>(args), lhs, rhs});
    }
};

inline std::string catalog_domain(const std::string& id) {
    for (const auto& entry : identity_catalog())
        if (entry.id == id) return entry.domain;
    throw consistency_error("identity id missing from the catalog: " + id);
}

// Shared accessors over a certificate. Associator values are nucleus
// elements, so inv() below is well defined.
struct IdentityContext {
    const FanCertificate& cert;
    const FiniteMagma& g;
    int n, e;
    explicit IdentityContext(const FanCertificate& c)
        : cert(c), g(c.base), n(c.base.order()), e(*c.base.unit()) {}
    int mul(int a, int b) const { return g.mul(a, b); }
    int dl(int a, int b) const { return g.div_l(a, b); }
    int dr(int a, int b) const { return g.div_r(a, b); }
    int t(int a, int b, int c) const { return cert.t(a, b, c); }
    int p(int a, int b, int c) const { return cert.p(a, b, c); }
    int el(int b) const { return g.div_l(b, e); } // b \ e
    int er(int b) const { return g.div_r(b, e); } // e / b
    int inv(int x) const { return g.div_l(x, e); }
};

} // namespace detail

// Division cancellation laws 80a, 80b, 81a, 81b; meaningful for any
// quasigroup, unit or not.
inline std::vector<IdentityReport> check_division_basics(const FiniteMagma& g) {
    if (!g.latin_square())
        throw precondition_error("check_division_basics: table is not a quasigroup");
    detail::IdentityRecorder r80a("80a", detail::catalog_domain("80a"));
    detail::IdentityRecorder r80b("80b", detail::catalog_domain("80b"));
    detail::IdentityRecorder r81a("81a", detail::catalog_domain("81a"));
    detail::IdentityRecorder r81b("81b", detail::catalog_domain("81b"));
    const int n = g.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            r80a.tally(g.mul(b, g.div_l(b, a)) == a, {a, b}, g.mul(b, g.div_l(b, a)), a);
            r80b.tally(g.div_l(b, g.mul(b, a)) == a, {a, b}, g.div_l(b, g.mul(b, a)), a);
            r81a.tally(g.mul(g.div_r(b, a), b) == a, {a, b}, g.mul(g.div_r(b, a), b), a);
            r81b.tally(g.div_r(b, g.mul(a, b)) == a, {a, b}, g.div_r(b, g.mul(a, b)), a);
        }
    return {r80a.rep, r80b.rep, r81a.rep, r81b.rep};
}

// Identities 70-79 expressing divisions through associators.
inline std::vector<IdentityReport> check_division_identities(const FanCertificate& cert) {
    detail::IdentityContext c(cert);
    const int n = c.n, e = c.e;
    detail::IdentityRecorder r70("70", detail::catalog_domain("70"));
    detail::IdentityRecorder r71("71", detail::catalog_domain("71"));
    detail::IdentityRecorder r72("72", detail::catalog_domain("72"));
    detail::IdentityRecorder r72b("72b", detail::catalog_domain("72b"));
    detail::IdentityRecorder r73("73", detail::catalog_domain("73"));
    detail::IdentityRecorder r74("74", detail::catalog_domain("74"));
    detail::IdentityRecorder r75("75", detail::catalog_domain("75"));
    detail::IdentityRecorder r76a("76a", detail::catalog_domain("76a"));
    detail::IdentityRecorder r76("76", detail::catalog_domain("76"));
    detail::IdentityRecorder r77("77", detail::catalog_domain("77"));
    detail::IdentityRecorder r78("78", detail::catalog_domain("78"));
    detail::IdentityRecorder r79("79", detail::catalog_domain("79"));
    for (int b = 0; b < n; ++b) {
        {
            const int lhs = c.el(b), rhs = c.mul(c.t(c.er(b), b, c.el(b)), c.er(b));
            r70.tally(lhs == rhs, {b}, lhs, rhs);
        }
        {
            const int lhs = c.el(b), rhs = c.mul(c.er(b), c.p(c.er(b), b, c.el(b)));
            r71.tally(lhs == rhs, {b}, lhs, rhs);
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            {
                const int lhs = c.mul(c.el(a), b);
                const int rhs = c.mul(
                    c.mul(c.t(c.er(a), a, c.el(a)), c.inv(c.t(c.er(a), a, c.dl(a, b)))),
                    c.dl(a, b));
                r72.tally(lhs == rhs, {a, b}, lhs, rhs);
            }
            {
                const int lhs = c.dl(a, b);
                const int rhs = c.mul(c.mul(c.el(a), b), c.p(a, c.el(a), b));
                r72b.tally(lhs == rhs, {a, b}, lhs, rhs);
            }
            {
                const int lhs = c.dl(c.mul(a, b), e);
                const int rhs = c.mul(c.mul(c.mul(c.el(b), c.el(a)), c.inv(c.t(a, b, c.el(b)))),
                                      c.t(c.mul(a, b), c.el(b), c.el(a)));
                r75.tally(lhs == rhs, {a, b}, lhs, rhs);
            }
            {
                const int lhs = c.mul(b, c.er(a));
                const int rhs = c.mul(c.mul(c.dr(a, b), c.p(c.dr(a, b), a, c.el(a))),
                                      c.inv(c.p(c.er(a), a, c.el(a))));
                r76a.tally(lhs == rhs, {a, b}, lhs, rhs);
            }
            {
                const int lhs = c.dr(a, b);
                const int rhs = c.mul(c.inv(c.t(b, c.er(a), a)), c.mul(b, c.er(a)));
                r76.tally(lhs == rhs, {a, b}, lhs, rhs);
            }
            {
                const int lhs = c.er(c.mul(a, b));
                const int rhs = c.mul(c.mul(c.inv(c.p(c.er(b), c.er(a), c.mul(a, b))),
                                            c.p(c.er(a), a, b)),
                                      c.mul(c.er(b), c.er(a)));
                r79.tally(lhs == rhs, {a, b}, lhs, rhs);
            }
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc) {
                {
                    const int lhs = c.dl(c.mul(b, cc), a);
                    const int rhs = c.mul(c.dl(cc, c.dl(b, a)),
                                          c.inv(c.p(b, cc, c.dl(c.mul(b, cc), a))));
                    r73.tally(lhs == rhs, {a, b, cc}, lhs, rhs);
                }
                {
                    const int lhs = c.mul(c.dl(a, b), cc);
                    const int rhs = c.mul(c.dl(a, c.mul(b, cc)), c.inv(c.p(a, c.dl(a, b), cc)));
                    r74.tally(lhs == rhs, {a, b, cc}, lhs, rhs);
                }
                {
                    const int lhs = c.dr(c.mul(b, cc), a);
                    const int rhs = c.mul(c.t(c.dr(c.mul(b, cc), a), b, cc),
                                          c.dr(b, c.dr(cc, a)));
                    r77.tally(lhs == rhs, {a, b, cc}, lhs, rhs);
                }
                {
                    const int lhs = c.mul(cc, c.dr(a, b));
                    const int rhs = c.mul(c.t(cc, c.dr(a, b), a), c.dr(a, c.mul(cc, b)));
                    r78.tally(lhs == rhs, {a, b, cc}, lhs, rhs);
                }
            }
    std::vector<IdentityReport> out;
    for (auto* r : {&r70, &r71, &r72, &r72b, &r73, &r74, &r75, &r76a, &r76, &r77, &r78, &r79})
        out.push_back(std::move(r->rep));
    return out;
}

// Identities 82-90 and 84-86, 94 relating associators to the center, the
// nucleus, and the one-sided inverses.
inline std::vector<IdentityReport> check_associator_identities(const FanCertificate& cert) {
    detail::IdentityContext c(cert);
    const int n = c.n, e = c.e;
    const auto center = cert.report.center.elements();
    const auto nucleus = cert.report.nucleus.elements();
    std::vector<detail::IdentityRecorder> rs;
    for (const char* id : {"82", "83", "84", "85", "86", "87", "88", "89", "90", "94"})
        rs.emplace_back(id, detail::catalog_domain(id));
    auto& r82 = rs[0]; auto& r83 = rs[1]; auto& r84 = rs[2]; auto& r85 = rs[3];
    auto& r86 = rs[4]; auto& r87 = rs[5]; auto& r88 = rs[6]; auto& r89 = rs[7];
    auto& r90 = rs[8]; auto& r94 = rs[9];
    for (int z1 : center)
        for (int z2 : center)
            for (int z3 : center)
                for (int a1 = 0; a1 < n; ++a1)
                    for (int a2 = 0; a2 < n; ++a2)
                        for (int a3 = 0; a3 < n; ++a3) {
                            const int m1 = c.mul(z1, a1), m2 = c.mul(z2, a2), m3 = c.mul(z3, a3);
                            const int lt = c.t(m1, m2, m3), rt = c.t(a1, a2, a3);
                            r82.tally(lt == rt, {z1, z2, z3, a1, a2, a3}, lt, rt);
                            const int lp = c.p(m1, m2, m3), rp = c.p(a1, a2, a3);
                            r83.tally(lp == rp, {z1, z2, z3, a1, a2, a3}, lp, rp);
                        }
    for (int a = 0; a < n; ++a) {
        {
            const int lhs = c.mul(c.t(a, c.el(a), a), a), rhs = c.mul(a, c.p(a, c.el(a), a));
            r84.tally(lhs == rhs, {a}, lhs, rhs);
        }
        {
            const int lhs = c.mul(c.t(a, c.er(a), a), a), rhs = c.mul(a, c.p(a, c.er(a), a));
            r85.tally(lhs == rhs, {a}, lhs, rhs);
        }
        {
            const int lhs = c.mul(c.p(a, c.el(a), a), c.t(c.er(a), a, c.el(a)));
            r86.tally(lhs == e, {a}, lhs, e);
        }
        {
            const int lhs = c.mul(c.mul(c.t(a, c.el(a), a), a), c.t(c.er(a), a, c.el(a)));
            r94.tally(lhs == a, {a}, lhs, a);
        }
    }
    for (int b : nucleus)
        for (int a1 = 0; a1 < n; ++a1)
            for (int a2 = 0; a2 < n; ++a2)
                for (int a3 = 0; a3 < n; ++a3) {
                    {
                        const int lhs = c.t(a1, a2, c.mul(a3, b)), rhs = c.t(a1, a2, a3);
                        r87.tally(lhs == rhs, {b, a1, a2, a3}, lhs, rhs);
                    }
                    {
                        const int lhs = c.p(c.mul(b, a1), a2, a3), rhs = c.p(a1, a2, a3);
                        r88.tally(lhs == rhs, {b, a1, a2, a3}, lhs, rhs);
                    }
                    {
                        const int lhs = c.t(c.mul(b, a1), a2, a3);
                        const int rhs = c.mul(c.mul(b, c.t(a1, a2, a3)), c.inv(b));
                        r89.tally(lhs == rhs, {b, a1, a2, a3}, lhs, rhs);
                    }
                    {
                        const int lhs = c.p(a1, a2, c.mul(a3, b));
                        const int rhs = c.mul(c.mul(c.inv(b), c.p(a1, a2, a3)), b);
                        r90.tally(lhs == rhs, {b, a1, a2, a3}, lhs, rhs);
                    }
                }
    std::vector<IdentityReport> out;
    out.reserve(rs.size());
    for (auto& r : rs) out.push_back(std::move(r.rep));
    return out;
}

// Identities 60-65 on nucleus arguments and iterated associator shifts.
// 63, 64, 65 quantify over four free elements and run only when
// order <= big_domain_ceiling; otherwise their reports are omitted.
inline std::vector<IdentityReport> check_nucleus_identities(
    const FanCertificate& cert, int big_domain_ceiling = kBigDomainCeiling) {
    detail::IdentityContext c(cert);
    const int n = c.n;
    const auto nucleus = cert.report.nucleus.elements();
    detail::IdentityRecorder r60("60", detail::catalog_domain("60"));
    detail::IdentityRecorder r61("61", detail::catalog_domain("61"));
    detail::IdentityRecorder r62g("62-grouping", detail::catalog_domain("62-grouping"));
    detail::IdentityRecorder r62("62", detail::catalog_domain("62"));
    for (int a : nucleus)
        for (int b : nucleus)
            for (int x = 0; x < n; ++x) {
                {
                    const int lhs = c.dl(x, c.mul(a, b)), rhs = c.mul(c.dl(x, a), b);
                    r60.tally(lhs == rhs, {a, b, x}, lhs, rhs);
                }
                {
                    const int lhs = c.dr(x, c.mul(a, b)), rhs = c.mul(a, c.dr(x, b));
                    r61.tally(lhs == rhs, {a, b, x}, lhs, rhs);
                }
                {
                    const int r1 = c.mul(c.dl(x, a), x), r2 = c.mul(c.dl(x, b), x);
                    const int prod = c.mul(r1, r2);
                    const int q1 = c.p(c.dl(x, a), x, r2), q2 = c.p(x, c.dl(x, b), x);
                    const int v1 = c.mul(c.mul(prod, c.inv(q1)), q2);
                    const int v2 = c.mul(prod, c.mul(c.inv(q1), q2));
                    r62g.tally(v1 == v2, {a, b, x}, v1, v2);
                    const int lhs = c.mul(c.dl(x, c.mul(a, b)), x);
                    r62.tally(lhs == v1, {a, b, x}, lhs, v1);
                }
            }
    std::vector<IdentityReport> out{std::move(r60.rep), std::move(r61.rep),
                                    std::move(r62g.rep), std::move(r62.rep)};
    if (n > big_domain_ceiling) return out;

    detail::IdentityRecorder r63("63", detail::catalog_domain("63"));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    const int s = c.dl(c.mul(u, x), c.mul(v, y));
                    const int lhs = c.dl(x, c.mul(c.dl(u, v), y));
                    const int rhs = c.mul(c.mul(s, c.p(u, x, s)), c.inv(c.p(u, c.dl(u, v), y)));
                    r63.tally(lhs == rhs, {u, v, x, y}, lhs, rhs);
                }
    out.push_back(std::move(r63.rep));

    detail::IdentityRecorder r64("64", detail::catalog_domain("64"));
    detail::IdentityRecorder r65("65", detail::catalog_domain("65"));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc) {
                const int u = c.mul(a, c.mul(b, cc));
                const int v = c.mul(c.mul(a, b), cc);
                for (int x = 0; x < n; ++x) {
                    const int q1 = c.p(b, cc, x);
                    const int q2 = c.p(a, c.mul(b, cc), x);
                    const int q3 = c.p(a, b, c.mul(cc, x));
                    const int q4 = c.p(c.mul(a, b), cc, x);
                    const int s = c.dl(c.mul(u, x), c.mul(v, x));
                    const int lhs = c.dl(x, c.mul(c.p(a, b, cc), x));
                    const int rhs =
                        c.mul(c.mul(c.mul(c.inv(c.mul(q1, q2)), q3), q4), c.p(u, x, s));
                    r64.tally(lhs == rhs, {a, b, cc, x}, lhs, rhs);
                }
                const int tt = c.t(a, b, cc), pp = c.p(a, b, cc);
                const int w1 = c.dl(u, c.mul(tt, u));
                for (int z = 0; z < n; ++z) {
                    const int x = c.dl(u, z);
                    const int r1 = c.dl(x, c.mul(pp, x));
                    const int q1 = c.p(u, w1, x);
                    const int ux = c.mul(u, x);
                    const int w2 = c.dl(ux, c.mul(tt, ux));
                    const int q2 = c.p(u, x, w2);
                    const int lhs = c.dl(z, c.mul(tt, z));
                    const int rhs = c.mul(c.mul(r1, q1), c.inv(q2));
                    r65.tally(lhs == rhs, {a, b, cc, z}, lhs, rhs);
                }
            }
    out.push_back(std::move(r64.rep));
    out.push_back(std::move(r65.rep));
    return out;
}

// Full catalog in catalog order.
inline std::vector<IdentityReport> check_all_identities(
    const FanCertificate& cert, int big_domain_ceiling = kBigDomainCeiling) {
    std::vector<IdentityReport> out = check_nucleus_identities(cert, big_domain_ceiling);
    for (auto& r : check_division_identities(cert)) out.push_back(std::move(r));
    for (auto& r : check_division_basics(cert.base)) out.push_back(std::move(r));
    for (auto& r : check_associator_identities(cert)) out.push_back(std::move(r));
    return out;
}

} // namespace qgforge
