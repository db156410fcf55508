#include <doctest.h>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "fderange/counting.hpp"
#include "fderange/errors.hpp"
#include "fderange/experiments.hpp"
#include "fderange/types.hpp"

using namespace fderange;

TEST_CASE("rational conversion") {
    CHECK(rational_to_double(Rational(1, 3)) ==
          doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(rational_to_double(Rational(240, 720)) ==
          doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("worst total 2-max deviation sits at the all-collided profile") {
    const DeviationRow r4 = exhaustive_profile_deviation(4);
    CHECK(r4.max_deviation == doctest::Approx(0.0345461).epsilon(1e-4));
    CHECK(r4.worst_profile.sizes == std::vector<int>{2, 2});

    const DeviationRow r6 = exhaustive_profile_deviation(6);
    CHECK(r6.max_deviation == doctest::Approx(0.0345461).epsilon(1e-4));
    CHECK(r6.worst_profile.sizes == std::vector<int>{2, 2, 2});
    CHECK(r6.worst_ratio == Rational(1, 3));

    CHECK(exhaustive_profile_deviation(20).max_deviation <= 0.012);
    CHECK_THROWS_AS(exhaustive_profile_deviation(1), ValidationError);
}

TEST_CASE("k=1 sweep reproduces the classical alternating-series bound") {
    const auto rows = limit_sweep(1, {6, 8, 10}, 0, 1);
    REQUIRE(rows.size() == 3);
    for (const DeviationRow& row : rows) {
        const double exact = rational_to_double(
            Rational(classical_derangement_count(row.n), factorial(row.n)));
        CHECK(row.max_deviation ==
              doctest::Approx(std::abs(exact - kInvE)).epsilon(1e-12));
        CHECK(row.max_deviation <
              1.0 / rational_to_double(Rational(factorial(row.n + 1))));
    }
}

TEST_CASE("k=2 sweep decreases strictly over growing n") {
    const auto rows = limit_sweep(2, {6, 10, 20}, 0, 1);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].max_deviation > rows[1].max_deviation);
    CHECK(rows[1].max_deviation > rows[2].max_deviation);
}

TEST_CASE("k=3 sweep samples deterministically") {
    const auto a = limit_sweep(3, {6, 8}, 60, 7);
    const auto b = limit_sweep(3, {6, 8}, 60, 7);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].max_deviation == b[i].max_deviation);
        CHECK(a[i].worst_profile == b[i].worst_profile);
        CHECK(a[i].worst_profile.sizes.front() <= 3);
        CHECK(a[i].worst_profile.defined_count() == a[i].n);
    }
}

TEST_CASE("equitable splits: exact counts, ratios, limits") {
    const EquitableSplit e42 = equitable_split_ratio(4, 2);
    CHECK(e42.count == 8);
    CHECK(e42.ratio == Rational(1, 3));
    CHECK(e42.limit == Rational(1, 4));

    const EquitableSplit e62 = equitable_split_ratio(6, 2);
    CHECK(e62.count == 216);  // (n/2)^2 (n-2)! = 9 * 24
    CHECK(e62.ratio == Rational(3, 10));

    const EquitableSplit e63 = equitable_split_ratio(6, 3);
    CHECK(e63.count == 240);
    CHECK(e63.ratio == Rational(1, 3));
    CHECK(e63.limit == Rational(8, 27));
    CHECK(std::abs(e63.ratio_double - kInvE) ==
          doctest::Approx(0.0345461).epsilon(1e-4));

    const EquitableSplit e82 = equitable_split_ratio(8, 2);
    CHECK(e82.count == 16 * 720);

    // s = n is the 1-max split: plain derangements.
    CHECK(equitable_split_ratio(6, 6).count == 265);

    CHECK_THROWS_AS(equitable_split_ratio(6, 4), NotDivisible);
    CHECK_THROWS_AS(equitable_split_ratio(7, 2), NotDivisible);
    CHECK_THROWS_AS(equitable_split_ratio(4, 0), ValidationError);
}

TEST_CASE("lemma audit catalogs the known bound misses and nothing worse") {
    const LemmaAuditReport report = lemma_audit(6, 5);
    CHECK(report.star_violations == 0);        // monotonicity always held
    CHECK(report.bound_violations_r2 == 0);    // the r=2 bound always held
    CHECK(report.bound_violations > 0);

    bool found_n3_r3 = false;
    std::set<std::pair<int, int>> violating_nr;
    for (const LemmaAuditRecord& rec : report.records) {
        CHECK(rec.holds_star);
        if (rec.r == 2) CHECK(rec.holds_bound);
        if (!rec.holds_bound) violating_nr.insert({rec.n, rec.r});
        if (rec.n == 3 && rec.r == 3) {
            found_n3_r3 = true;
            CHECK(rec.images == std::vector<int>{1, 1, 1});
            CHECK(rec.d_f == 0);
            CHECK(rec.d_fstar == 2);  // difference 2 > (n-2)! = 1
            CHECK_FALSE(rec.holds_bound);
        }
        if (rec.n == 4 && rec.r == 3 &&
            rec.images == std::vector<int>{1, 1, 1, 4}) {
            CHECK(rec.d_f == 6);
            CHECK(rec.d_fstar == 8);  // difference exactly (n-2)! = 2
            CHECK(rec.holds_bound);
        }
        if (rec.n == 3 && rec.r == 2) {
            CHECK(rec.d_f == 2);
            CHECK(rec.d_fstar == 2);
        }
    }
    CHECK(found_n3_r3);
    // Every catalogued miss needs r >= 3.
    for (const auto& [n, r] : violating_nr) {
        CAPTURE(n);
        CHECK(r >= 3);
    }

    CHECK_THROWS_AS(lemma_audit(1, 0), ValidationError);
    CHECK_THROWS_AS(lemma_audit(9, 0), ValidationError);
}

TEST_CASE("lemma audit restricted to n<=4 finds exactly two misses") {
    const LemmaAuditReport report = lemma_audit(4, 5);
    std::set<std::pair<int, int>> violating_nr;
    for (const LemmaAuditRecord& rec : report.records) {
        if (!rec.holds_bound) violating_nr.insert({rec.n, rec.r});
    }
    CHECK(violating_nr ==
          std::set<std::pair<int, int>>{{3, 3}, {4, 4}});
}

TEST_CASE("property suite passes and covers every advertised invariant") {
    const PropertyReport report = property_suite(6, 3);
    CHECK(report.passed());
    CHECK(report.checks.size() == 9);
    for (const PropertyCheck& check : report.checks) {
        CAPTURE(check.name);
        CHECK(check.checked > 0);
        CHECK(check.failures == 0);
        CHECK(check.first_failure.empty());
    }
    CHECK_THROWS_AS(property_suite(1, 0), ValidationError);
    CHECK_THROWS_AS(property_suite(13, 0), ValidationError);
}
