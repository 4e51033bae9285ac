#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "qgforge/builders.hpp"
#include "qgforge/errors.hpp"
#include "qgforge/identities.hpp"
#include "qgforge/products.hpp"

using namespace qgforge;

namespace {

const IdentityReport& find_report(const std::vector<IdentityReport>& reports,
                                  const std::string& id) {
    for (const auto& r : reports)
        if (r.id == id) return r;
    FAIL("no report with id " + id);
    throw consistency_error("unreachable");
}

bool has_report(const std::vector<IdentityReport>& reports, const std::string& id) {
    for (const auto& r : reports)
        if (r.id == id) return true;
    return false;
}

} // namespace

TEST_CASE("catalog integrity", "[identities]") {
    const auto& catalog = identity_catalog();
    CHECK(catalog.size() == 33);
    std::set<std::string> ids;
    for (const auto& e : catalog) {
        CHECK(ids.insert(e.id).second); // unique
        CHECK_FALSE(e.domain.empty());
        CHECK_FALSE(e.statement.empty());
    }
    CHECK(identity_id_number("72b") == 72);
    CHECK(identity_id_number("62-grouping") == 62);
    CHECK(identity_id_number("94") == 94);
    CHECK_THROWS_AS(identity_id_number("grouping"), invalid_input);
}

TEST_CASE("groups satisfy the whole catalog", "[identities]") {
    for (const auto& g : {cyclic_group(6), symmetric_group3(), dihedral_group(4),
                          quaternion_group(), klein_four()}) {
        const auto cert = fan_certificate(g);
        REQUIRE(cert);
        const auto reports = check_all_identities(*cert);
        CHECK(reports.size() == 33); // orders <= 10, nothing omitted
        for (const auto& r : reports) {
            INFO("identity " << r.id << " on order " << g.order());
            CHECK(r.ok());
            CHECK(r.cases > 0);
        }
    }
}

TEST_CASE("case counts follow the quantifier domains", "[identities]") {
    const auto cert = fan_certificate(symmetric_group3());
    REQUIRE(cert);
    const auto reports = check_all_identities(*cert);
    CHECK(find_report(reports, "70").cases == 6);
    CHECK(find_report(reports, "72b").cases == 36);
    CHECK(find_report(reports, "73").cases == 216);
    CHECK(find_report(reports, "80a").cases == 36);
    // center of S3 is trivial, so 82 quantifies over 1^3 * 6^3 tuples
    CHECK(find_report(reports, "82").cases == 216);
    // the nucleus is all of S3, so 87 quantifies over 6^4
    CHECK(find_report(reports, "87").cases == 1296);
    CHECK(find_report(reports, "63").cases == 1296);
}

TEST_CASE("the skew corpus passes exhaustively", "[identities]") {
    for (const auto& inst : skew_corpus()) {
        const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
        const auto reports = check_all_identities(cert);
        for (const auto& r : reports) {
            INFO(inst.name << ", identity " << r.id);
            CHECK(r.ok());
        }
        // the four-variable identities appear exactly when the order is small
        CHECK(has_report(reports, "63") == (cert.base.order() <= kBigDomainCeiling));
        CHECK(has_report(reports, "65") == (cert.base.order() <= kBigDomainCeiling));
    }
}

TEST_CASE("the four-variable identities hold on the order-16 instance", "[identities]") {
    // costs 16^4 cases per identity, so it is opted into explicitly
    const auto inst = skew_instance_16();
    const FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
    const auto reports = check_nucleus_identities(cert, 16);
    REQUIRE(reports.size() == 7);
    for (const auto& r : reports) {
        INFO("identity " << r.id);
        CHECK(r.ok());
    }
    CHECK(find_report(reports, "63").cases == 65536);
    CHECK(find_report(reports, "64").cases == 65536);
    CHECK(find_report(reports, "65").cases == 65536);
}

TEST_CASE("division basics run on unit-free quasigroups", "[identities]") {
    const auto reports = check_division_basics(subtraction_mod(5));
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
        CHECK(r.cases == 25);
        CHECK(r.ok());
    }
    CHECK_THROWS_AS(check_division_basics(FiniteMagma::from_rows({{0, 0}, {1, 1}})),
                    precondition_error);
}

TEST_CASE("a corrupted associator table is flagged with a witness", "[identities]") {
    const auto inst = skew_instance_commutative_12();
    FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
    REQUIRE(cert.materialized());
    {
        const auto clean = check_division_identities(cert);
        for (const auto& r : clean) CHECK(r.ok());
    }
    // break exactly the t value feeding identity 70 at b = 1
    const FiniteMagma& g = cert.base;
    const int er = g.div_r(1, 0), el = g.div_l(1, 0);
    const std::size_t idx = (static_cast<std::size_t>(er) * 12 + 1) * 12 + el;
    cert.t_table[idx] = g.mul(3, cert.t_table[idx]);

    const auto reports = check_division_identities(cert);
    const auto& r70 = find_report(reports, "70");
    CHECK(r70.failure_count >= 1);
    REQUIRE_FALSE(r70.failures.empty());
    CHECK(r70.failures.front().args == std::vector<int>{1});
}

TEST_CASE("a corrupted nucleus breaks the shift identities", "[identities]") {
    const auto inst = skew_instance_16();
    FanCertificate cert = skew_smashed_product(inst.a, inst.b, inst.factors);
    REQUIRE(cert.report.nucleus == ElementSubset(16, {0, 2, 8, 10}));
    cert.report.nucleus.insert(1);

    const auto reports = check_associator_identities(cert);
    std::int64_t shift_failures = 0;
    for (const char* id : {"87", "88", "89", "90"})
        shift_failures += find_report(reports, id).failure_count;
    CHECK(shift_failures > 0);
}

TEST_CASE("failure recording caps at the limit but keeps counting", "[identities]") {
    // poisoning the whole t table of Z6 breaks identity 77 on all 216 cases
    const auto cert_opt = fan_certificate(cyclic_group(6));
    REQUIRE(cert_opt);
    FanCertificate cert = *cert_opt;
    for (auto& v : cert.t_table) v = 1;
    const auto reports = check_division_identities(cert);
    const auto& r77 = find_report(reports, "77");
    CHECK(r77.failure_count == 216);
    CHECK(r77.failures.size() == static_cast<std::size_t>(kMaxRecordedFailures));
}
