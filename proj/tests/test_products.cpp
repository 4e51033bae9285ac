#include <catch2/catch_amalgamated.hpp>

#include <utility>
#include <vector>

#include "qgforge/builders.hpp"
#include "qgforge/errors.hpp"
#include "qgforge/products.hpp"
#include "qgforge/structure.hpp"
#include "qgforge/search.hpp"

using namespace qgforge;

TEST_CASE("direct products", "[products]") {
    SECTION("Z2 x Z3 is cyclic of order 6") {
        const FiniteMagma g = direct_product({cyclic_group(2), cyclic_group(3)});
        REQUIRE(g.order() == 6);
        CHECK(g.latin_square());
        CHECK(g.associative());
        CHECK(g.commutative());
        // (1,1) = 1*3+1 = 4 generates
        int x = *g.unit();
        int ord = 0;
        do { x = g.mul(x, 4); ++ord; } while (x != *g.unit());
        CHECK(ord == 6);
    }
    SECTION("pair encoding") {
        CHECK(pair_encode(2, 1, 3) == 7);
        CHECK(pair_decode(7, 3) == std::pair<int, int>(2, 1));
    }
    SECTION("three factors, mixed radix") {
        const FiniteMagma g = direct_product({cyclic_group(2), cyclic_group(3), cyclic_group(2)});
        REQUIRE(g.order() == 12);
        // (1,2,1) * (1,2,0) = (0,1,1)
        const int lhs = (1 * 3 + 2) * 2 + 1, rhs = (1 * 3 + 2) * 2 + 0;
        CHECK(g.mul(lhs, rhs) == (0 * 3 + 1) * 2 + 1);
    }
    SECTION("nuclei and associators are componentwise") {
        const FiniteMagma a = FiniteMagma::from_rows({{0, 1, 2, 3, 4},
                                                      {1, 0, 3, 4, 2},
                                                      {2, 3, 4, 0, 1},
                                                      {3, 4, 1, 2, 0},
                                                      {4, 2, 0, 1, 3}});
        const FiniteMagma g = direct_product({a, a});
        const StructureReport ra = structure_report(a), rg = structure_report(g);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                CHECK(rg.nucleus.contains(x * 5 + y) ==
                      (ra.nucleus.contains(x) && ra.nucleus.contains(y)));
        for (int t = 0; t < 125; t += 7) {
            const int x = t % 5, y = (t / 5) % 5, z = t / 25;
            CHECK(associator_t(g, x * 5 + y, y * 5 + z, z * 5 + x) ==
                  associator_t(a, x, y, z) * 5 + associator_t(a, y, z, x));
        }
    }
    SECTION("order ceiling") {
        CHECK_THROWS_AS(direct_product({cyclic_group(70), cyclic_group(70)}), capacity_error);
        CHECK_THROWS_AS(direct_product({cyclic_group(5), cyclic_group(5)}, 24), capacity_error);
        CHECK_THROWS_AS(direct_product({}), precondition_error);
    }
}

TEST_CASE("smashed products", "[products]") {
    const FiniteMagma z2 = cyclic_group(2), z3 = cyclic_group(3);

    SECTION("trivial factors collapse to the direct product") {
        const FiniteMagma g = smashed_product(z2, z3, SmashFactors::trivial(2, 3, 0));
        CHECK(g == direct_product({z2, z3}));
    }
    SECTION("a twisting permutation family changes only the twisted rows") {
        // phi1(1) doubles mod 3, everything else stays trivial:
        // (a1,b1) * (a2,b2) = (a1+a2, b1 + phi1(a1) b2)
        SmashFactors f = SmashFactors::trivial(2, 3, 0);
        for (int b = 0; b < 3; ++b) f.phi1[static_cast<std::size_t>(1) * 3 + b] = (2 * b) % 3;
        const FiniteMagma g = smashed_product(z2, z3, f);
        REQUIRE(g.latin_square()); // this twist keeps right solvability
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b1 = 0; b1 < 3; ++b1)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2) {
                        const int expect_b = (b1 + (a1 == 1 ? 2 * b2 : b2)) % 3;
                        CHECK(g.mul(pair_encode(a1, b1, 3), pair_encode(a2, b2, 3)) ==
                              pair_encode((a1 + a2) % 2, expect_b, 3));
                    }
        CHECK(right_solvability_probe(z2, z3, f).right_quasigroup);
    }
    SECTION("factor validation") {
        SmashFactors f = SmashFactors::trivial(2, 3, 0);
        CHECK_THROWS_AS(smashed_product(z2, cyclic_group(4), f), invalid_input);
        f.phi2[0] = 1; // row 0 now hits 1 twice
        CHECK_THROWS_AS(smashed_product(z2, z3, f), invalid_input);
        f = SmashFactors::trivial(2, 3, 0);
        f.xi1[0] = 3;
        CHECK_THROWS_AS(smashed_product(z2, z3, f), invalid_input);
        CHECK_THROWS_AS(smashed_product(FiniteMagma::from_rows({{0, 0}, {1, 1}}), z3,
                                        SmashFactors::trivial(2, 3, 0)),
                        precondition_error);
    }
    SECTION("closed-form left division agrees with the table") {
        const FiniteMagma a = cyclic_group(3), b = cyclic_group(4);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const SmashFactors f = random_smash_factors(a, b, seed);
            const FiniteMagma g = smashed_product(a, b, f);
            REQUIRE(g.left_quasigroup());
            for (int g1 = 0; g1 < 12; ++g1)
                for (int g2 = 0; g2 < 12; ++g2) {
                    const auto [x, y] = smashed_div_l(a, b, f, pair_decode(g1, 4),
                                                      pair_decode(g2, 4));
                    CHECK(pair_encode(x, y, 4) == g.div_l(g1, g2));
                }
        }
    }
    SECTION("right solvability probe pinpoints a defective column") {
        const FiniteMagma a = cyclic_group(3);
        bool found = false;
        for (std::uint64_t seed = 0; seed < 50 && !found; ++seed) {
            const SmashFactors f = random_smash_factors(a, a, seed);
            const RightSolvabilityReport rep = right_solvability_probe(a, a, f);
            if (rep.right_quasigroup) continue;
            found = true;
            CHECK(rep.solutions.size() != 1);
            const FiniteMagma g = smashed_product(a, a, f);
            const int col = pair_encode(rep.divisor.first, rep.divisor.second, 3);
            const int target = pair_encode(rep.target.first, rep.target.second, 3);
            int hits = 0;
            for (int row = 0; row < 9; ++row)
                if (g.mul(row, col) == target) ++hits;
            CHECK(hits == static_cast<int>(rep.solutions.size()));
            for (const auto& s : rep.solutions)
                CHECK(g.mul(pair_encode(s.first, s.second, 3), col) == target);
        }
        CHECK(found); // random smash factors break right solvability quickly
    }
}

TEST_CASE("skew factor validation", "[products]") {
    const auto inst = skew_instance_16();

    SECTION("the frozen instances validate cleanly") {
        for (const auto& corpus_inst : skew_corpus())
            CHECK(validate_skew_factors(corpus_inst.a, corpus_inst.b, corpus_inst.factors).ok());
    }
    SECTION("a non-group N is the only reported issue") {
        SkewFactors f = inst.factors;
        f.n_group = FiniteMagma::from_rows({{0, 0}, {1, 1}});
        const auto rep = validate_skew_factors(inst.a, inst.b, f);
        REQUIRE(rep.issues.size() == 1);
        CHECK(rep.issues.front().condition == "group-n");
    }
    SECTION("a broken embedding is caught and pinpointed") {
        SkewFactors f = inst.factors;
        f.embed_b = {0, 1}; // 1 is not in a subgroup of order 2 of Z4
        const auto rep = validate_skew_factors(inst.a, inst.b, f);
        REQUIRE_FALSE(rep.ok());
        bool hom_issue = false;
        for (const auto& issue : rep.issues)
            hom_issue = hom_issue || issue.condition == "embed-b-hom";
        CHECK(hom_issue);
    }
    SECTION("a corrupted eta entry is pinpointed with its arguments") {
        SkewFactors f = inst.factors;
        // eta(v=1, u=3, b=1) = 1; none of these lie in an embedded image
        f.eta[(static_cast<std::size_t>(1) * 4 + 3) * 4 + 1] = 1;
        const auto rep = validate_skew_factors(inst.a, inst.b, f);
        REQUIRE_FALSE(rep.ok());
        bool comp_at_args = false;
        for (const auto& issue : rep.issues)
            comp_at_args = comp_at_args ||
                           (issue.condition == "comp" && issue.args == std::vector<int>{1, 3, 1});
        CHECK(comp_at_args);
    }
    SECTION("a non-permutation phi row stops validation early") {
        SkewFactors f = inst.factors;
        f.phi[static_cast<std::size_t>(0) * 4 + 1] = f.phi[static_cast<std::size_t>(0) * 4 + 0];
        const auto rep = validate_skew_factors(inst.a, inst.b, f);
        REQUIRE_FALSE(rep.ok());
        for (const auto& issue : rep.issues) CHECK(issue.condition == "phi-perm");
    }
    SECTION("a xi value breaking shift invariance is reported") {
        SkewFactors f = inst.factors;
        // xi is constant on mod-2 residue classes; break one cell of a class
        const std::size_t idx = (static_cast<std::size_t>(0) * 4 + 1) * 16 +
                                static_cast<std::size_t>(1) * 4 + 0;
        f.xi[idx] = 1 - f.xi[idx];
        const auto rep = validate_skew_factors(inst.a, inst.b, f);
        REQUIRE_FALSE(rep.ok());
        bool shift_issue = false;
        for (const auto& issue : rep.issues)
            shift_issue = shift_issue || issue.condition == "xi-shift";
        CHECK(shift_issue);
    }
    SECTION("shape errors throw before condition checking") {
        SkewFactors f = inst.factors;
        f.xi.pop_back();
        CHECK_THROWS_AS(validate_skew_factors(inst.a, inst.b, f), invalid_input);
    }
}

TEST_CASE("skew smashed products", "[products]") {
    SECTION("trivial factors collapse to the direct product over abelian B") {
        for (auto [na, nb] : {std::pair<int, int>{2, 3}, {2, 2}, {3, 4}}) {
            const FiniteMagma a = cyclic_group(na), b = cyclic_group(nb);
            const FanCertificate cert = skew_smashed_product(a, b, SkewFactors::trivial(a, b));
            CHECK(cert.base == direct_product({a, b}));
            CHECK(cert.fan.count() == 1);
        }
    }
    SECTION("commutative instance of order 12") {
        const auto inst = skew_instance_commutative_12();
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        const FiniteMagma& g = cert.base;
        REQUIRE(g.order() == 12);
        CHECK(g.latin_square());
        CHECK(g.unit() == std::optional<int>(0));
        CHECK_FALSE(g.associative());
        CHECK(g.commutative());
        CHECK(cert.fan == ElementSubset(12, {0, 3}));
        for (int x = 0; x < 12; ++x) CHECK(g.div_l(x, 0) == g.div_r(x, 0));
    }
    SECTION("noncommutative instance of order 12 with a one-sided inverse gap") {
        const auto inst = skew_instance_gap_12();
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        const FiniteMagma& g = cert.base;
        CHECK_FALSE(g.associative());
        CHECK_FALSE(g.commutative());
        int gap = 0;
        for (int x = 0; x < 12; ++x)
            if (g.div_l(x, 0) != g.div_r(x, 0)) ++gap;
        CHECK(gap == 8);
    }
    SECTION("noncommutative instance of order 16") {
        const auto inst = skew_instance_16();
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        const FiniteMagma& g = cert.base;
        REQUIRE(g.order() == 16);
        CHECK_FALSE(g.associative());
        CHECK_FALSE(g.commutative());
        CHECK(cert.fan == ElementSubset(16, {0, 2}));
        CHECK(cert.report.nucleus == ElementSubset(16, {0, 2, 8, 10}));
        CHECK(cert.report.center == cert.report.nucleus);
    }
    SECTION("the left factor embeds along the first coordinate") {
        const auto inst = skew_instance_commutative_12();
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        // (a1, e) * (a2, e) = (a1 a2, xi correction), trivial on the unit class
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2)
                CHECK(cert.base.mul(pair_encode(a1, 0, 6), pair_encode(a2, 0, 6)) ==
                      pair_encode(inst.a.mul(a1, a2), 0, 6));
    }
    SECTION("invalid factors are refused") {
        auto inst = skew_instance_16();
        SkewFactors f = inst.factors;
        f.eta[(static_cast<std::size_t>(1) * 4 + 3) * 4 + 1] = 1;
        CHECK_THROWS_AS(skew_smashed_product(inst.a, inst.b, f), precondition_error);
    }
}

TEST_CASE("skew product divisions", "[products]") {
    SECTION("closed forms match the table on every pair") {
        for (const auto& inst : skew_corpus()) {
            const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
            const FiniteMagma& g = cert.base;
            const int nb = inst.b.order(), eg = *g.unit();
            for (int enc = 0; enc < g.order(); ++enc) {
                const auto p = pair_decode(enc, nb);
                const auto ul = skew_unit_div_l(inst.a, inst.b, inst.factors, p);
                CHECK(pair_encode(ul.first, ul.second, nb) == g.div_l(enc, eg));
                const auto ur = skew_unit_div_r(inst.a, inst.b, inst.factors, p);
                CHECK(pair_encode(ur.first, ur.second, nb) == g.div_r(enc, eg));
            }
            for (int e1 = 0; e1 < g.order(); ++e1)
                for (int e2 = 0; e2 < g.order(); ++e2) {
                    const auto p1 = pair_decode(e1, nb), p2 = pair_decode(e2, nb);
                    const auto l = skew_div(inst.a, inst.b, inst.factors, cert,
                                            DivSide::left, p1, p2);
                    CHECK(pair_encode(l.first, l.second, nb) == g.div_l(e1, e2));
                    const auto r = skew_div(inst.a, inst.b, inst.factors, cert,
                                            DivSide::right, p1, p2);
                    CHECK(pair_encode(r.first, r.second, nb) == g.div_r(e1, e2));
                }
        }
    }
    SECTION("the rebuilding overload agrees with the certificate overload") {
        const auto inst = skew_instance_gap_12();
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        const auto direct = skew_div(inst.a, inst.b, inst.factors, DivSide::left, {1, 2}, {0, 5});
        const auto cached =
            skew_div(inst.a, inst.b, inst.factors, cert, DivSide::left, {1, 2}, {0, 5});
        CHECK(direct == cached);
    }
    SECTION("the associators determine each other through translation by x(yz)") {
        for (const auto& inst : skew_corpus()) {
            const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
            const FiniteMagma& g = cert.base;
            for (int x = 0; x < g.order(); ++x)
                for (int y = 0; y < g.order(); ++y)
                    for (int z = 0; z < g.order(); ++z) {
                        const int w = g.mul(x, g.mul(y, z));
                        CHECK(cert.t(x, y, z) == g.div_r(w, g.mul(w, cert.p(x, y, z))));
                    }
        }
    }
}
