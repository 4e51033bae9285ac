#include <catch2/catch_amalgamated.hpp>

#include "qgforge/builders.hpp"
#include "qgforge/errors.hpp"
#include "qgforge/magma.hpp"
#include "qgforge/subset.hpp"

using namespace qgforge;

TEST_CASE("table construction rejects malformed input", "[core]") {
    CHECK_THROWS_AS(FiniteMagma::from_flat(0, {}), invalid_input);
    CHECK_THROWS_AS(FiniteMagma::from_flat(2, {0, 1, 1}), invalid_input);
    CHECK_THROWS_AS(FiniteMagma::from_rows({{0, 1}, {1}}), invalid_input);

    // the offending cell is named in the message
    try {
        FiniteMagma::from_flat(2, {0, 1, 1, 7});
        FAIL("expected invalid_input");
    } catch (const invalid_input& e) {
        CHECK(std::string(e.what()).find("(1,1) = 7") != std::string::npos);
    }
}

TEST_CASE("cyclic group basics", "[core]") {
    const FiniteMagma z4 = cyclic_group(4);
    REQUIRE(z4.order() == 4);
    CHECK(z4.latin_square());
    CHECK(z4.associative());
    CHECK(z4.commutative());
    REQUIRE(z4.unit());
    CHECK(*z4.unit() == 0);
    CHECK(z4.mul(3, 2) == 1);

    // divisions invert multiplication on both sides
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CHECK(z4.mul(a, z4.div_l(a, b)) == b);
            CHECK(z4.mul(z4.div_r(a, b), a) == b);
        }
}

TEST_CASE("subtraction table is a quasigroup without a unit", "[core]") {
    const FiniteMagma m = subtraction_mod(3);
    CHECK(m.rows() == std::vector<std::vector<int>>{{0, 2, 1}, {1, 0, 2}, {2, 1, 0}});
    CHECK(m.latin_square());
    CHECK_FALSE(m.unit());
    CHECK_FALSE(m.associative());
    CHECK_FALSE(m.commutative());
    // 1 \ 0: 1 - x = 0, and 0 / 1: y - 1 = 0
    CHECK(m.div_l(1, 0) == 1);
    CHECK(m.div_r(1, 0) == 1);
}

TEST_CASE("one-sided quasigroup detection", "[core]") {
    // left projection: rows constant, columns the identity
    const FiniteMagma m = FiniteMagma::from_rows({{0, 0}, {1, 1}});
    CHECK_FALSE(m.left_quasigroup());
    CHECK(m.right_quasigroup());
    CHECK_FALSE(m.latin_square());
    CHECK_THROWS_AS(m.div_l(0, 1), axiom_error);
    CHECK(m.div_r(0, 1) == 1);
}

TEST_CASE("unit detection picks the unique two-sided unit", "[core]") {
    const FiniteMagma k4 = klein_four();
    REQUIRE(k4.unit());
    CHECK(*k4.unit() == 0);
    for (int x = 0; x < 4; ++x) CHECK(k4.mul(x, x) == 0); // every element is an involution
    CHECK(k4.associative());
    CHECK(k4.commutative());

    // left unit without a right unit: subtraction has e - b = b for no e,
    // but a - 0 = a for all a
    const FiniteMagma s = subtraction_mod(5);
    bool right_unit_0 = true;
    for (int a = 0; a < 5; ++a) right_unit_0 = right_unit_0 && s.mul(a, 0) == a;
    CHECK(right_unit_0);
    CHECK_FALSE(s.unit());
}

TEST_CASE("group builders produce groups", "[core]") {
    for (const auto& g : {symmetric_group3(), dihedral_group(4), quaternion_group()}) {
        CHECK(g.latin_square());
        CHECK(g.associative());
        CHECK_FALSE(g.commutative());
        REQUIRE(g.unit());
        CHECK(*g.unit() == 0);
    }
    CHECK(quaternion_group().order() == 8);
    CHECK(dihedral_group(4).order() == 8);

    // i * j = k, j * i = -k in the quaternion numbering 1,i,j,k,-1,-i,-j,-k
    const FiniteMagma q8 = quaternion_group();
    CHECK(q8.mul(1, 2) == 3);
    CHECK(q8.mul(2, 1) == 7);
    CHECK(q8.mul(1, 1) == 4);
}

TEST_CASE("flat and row views round-trip", "[core]") {
    const FiniteMagma m = symmetric_group3();
    CHECK(FiniteMagma::from_flat(6, m.flat()) == m);
    CHECK(FiniteMagma::from_rows(m.rows()) == m);
    CHECK(m != cyclic_group(6));
}

TEST_CASE("element subsets", "[core]") {
    ElementSubset s(10, {1, 4, 7});
    CHECK(s.count() == 3);
    CHECK(s.contains(4));
    CHECK_FALSE(s.contains(5));
    CHECK(s.elements() == std::vector<int>{1, 4, 7});
    s.erase(4);
    CHECK(s.elements() == std::vector<int>{1, 7});
    CHECK_THROWS_AS(s.insert(10), invalid_input);
    CHECK_THROWS_AS(s.contains(-1), invalid_input);

    const ElementSubset a(10, {1, 2, 3}), b(10, {2, 3, 4});
    CHECK((a & b) == ElementSubset(10, {2, 3}));
    CHECK((a | b) == ElementSubset(10, {1, 2, 3, 4}));
    CHECK(ElementSubset(10, {2, 3}).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(b));
    CHECK(ElementSubset::full(3).count() == 3);
    CHECK_THROWS_AS(a.is_subset_of(ElementSubset(9)), invalid_input);
}
