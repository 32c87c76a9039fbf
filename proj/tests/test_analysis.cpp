// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "test_util.hpp"
#include "vexp/analysis.hpp"
#include "vexp/duality.hpp"
#include "vexp/embedding.hpp"
#include "vexp/errors.hpp"
#include "vexp/norm.hpp"

using namespace vexp;
using namespace vexp_test;

namespace {

// deterministic exponent mix alternating between blocks at `dip` and blocks
// at 4; used to exercise the clamp and the estimate checkers
ExponentSeq wandering_exponents(double dip) {
    EnumeratedTail t;
    t.gen = [dip](index_t n) {
        return ((n >> 3) & 1) ? ExponentValue(4.0) : ExponentValue(dip);
    };
    t.liminf = ExponentValue(dip);
    t.limsup = ExponentValue(4.0);
    t.range = EnumeratedTail::Range{1, ExponentValue(dip), ExponentValue(4.0)};
    return ExponentSeq::enumerated(std::move(t));
}

} // namespace

TEST_CASE("classification fixtures") {
    auto flat = classify_reflexivity(ExponentSeq::constant(2.0));
    CHECK(flat.verdict == Reflexivity::Superreflexive);
    REQUIRE(flat.super.has_value());
    CHECK(flat.super->p0.value() == 2.0);
    CHECK(flat.super->q0.value() == 2.0);
    CHECK(flat.super->k0 == 1);

    auto l1 = classify_reflexivity(
        ExponentSeq::convergent(ConvergentRule::harmonic(1.0, 1.0)));
    CHECK(l1.verdict == Reflexivity::NonReflexive);
    REQUIRE(l1.non_reflexive.has_value());
    CHECK(l1.non_reflexive->side == NonReflexiveSide::ContainsL1);
    CHECK(l1.non_reflexive->seed_target.value() == 1.0);
    CHECK(l1.liminf.value() == 1.0);

    auto linf = classify_reflexivity(
        ExponentSeq::convergent(ConvergentRule::linear(1.0, 0.0)));
    CHECK(linf.verdict == Reflexivity::NonReflexive);
    CHECK(linf.non_reflexive->side == NonReflexiveSide::ContainsLinf);
    CHECK(linf.limsup.is_infinite());

    auto clamped = classify_reflexivity(ExponentSeq::clamp(wandering_exponents(1.01), 1.5, 3.0));
    CHECK(clamped.verdict == Reflexivity::Superreflexive);
    CHECK(clamped.super->p0.value() == 1.5);
    CHECK(clamped.super->q0.value() == 3.0);
    CHECK(clamped.super->k0 == 1);
}

TEST_CASE("the classification seed really embeds") {
    auto p = ExponentSeq::convergent(ConvergentRule::harmonic(1.0, 1.0));
    auto verdict = classify_reflexivity(p);
    REQUIRE(verdict.non_reflexive.has_value());
    auto target =
        ExponentSeq::constant(verdict.non_reflexive->seed_target).with_prefix_length(4);
    auto map = build_embedding(target, p, 0.3);
    CHECK(map.forward_bound <= 1.3);
    CHECK(map.backward_bound <= 1.3);
}

TEST_CASE("classification ignores finite prefix changes") {
    std::vector<ExponentValue> noisy{ExponentValue(1.0), ExponentValue::infinity(),
                                     ExponentValue(7.0)};
    auto p = ExponentSeq::constant(2.0, noisy);
    auto verdict = classify_reflexivity(p);
    CHECK(verdict.verdict == Reflexivity::Superreflexive);
    // the membership interval starts past the offending prefix values
    CHECK(verdict.super->k0 == 3);
    CHECK(verdict.super->p0.value() == 2.0);
    CHECK(verdict.super->q0.value() == 7.0);

    auto still_l1 = classify_reflexivity(ExponentSeq::convergent(
        ConvergentRule::harmonic(1.0, 1.0), {ExponentValue(3.0), ExponentValue(2.0)}));
    CHECK(still_l1.verdict == Reflexivity::NonReflexive);
}

TEST_CASE("classification requires tail metadata") {
    EnumeratedTail bare;
    bare.gen = [](index_t) { return ExponentValue(2.0); };
    auto p = ExponentSeq::enumerated(std::move(bare));
    CHECK_THROWS_AS(classify_reflexivity(p), TailMetadataMissing);
}

TEST_CASE("estimate margins on exact fixtures") {
    auto p2 = ExponentSeq::constant(2.0);
    std::vector<SeqVector> units{SeqVector::unit(1), SeqVector::unit(2)};
    auto upper = check_upper_estimate(units, p2, 2.0);
    CHECK(upper.margin == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_FALSE(upper.violation.has_value());
    auto lower = check_lower_estimate(units, p2, 2.0);
    CHECK(lower.margin == doctest::Approx(0.0).epsilon(1e-14));

    std::vector<SeqVector> solo{SeqVector::dense({0.3, -0.7})};
    CHECK(check_upper_estimate(solo, p2, 1.5).margin == doctest::Approx(0.0));
    CHECK(check_lower_estimate(solo, p2, 3.0).margin == doctest::Approx(0.0));
}

TEST_CASE("overlapping supports are rejected") {
    auto p2 = ExponentSeq::constant(2.0);
    std::vector<SeqVector> overlap{SeqVector::dense({1.0, 2.0}), SeqVector::unit(2)};
    CHECK_THROWS_AS(check_upper_estimate(overlap, p2, 2.0), NotDisjoint);
}

TEST_CASE("random families under a clamp pass both estimates") {
    auto p = ExponentSeq::clamp(wandering_exponents(1.01), 1.5, 3.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto family = random_disjoint_family(4, 8, seed);
        CHECK(check_upper_estimate(family, p, 1.5).margin >= -1e-10);
        CHECK(check_lower_estimate(family, p, 3.0).margin >= -1e-10);
    }
}

TEST_CASE("removing the clamp lets the checker find violations") {
    auto p = wandering_exponents(1.01); // dips to 1.01 on whole blocks

    // deterministic violation: two units folded with exponent 1.01 nearly
    // add up, far above the l^1.5 aggregate of their norms
    std::vector<SeqVector> units{SeqVector::unit(1), SeqVector::unit(2)};
    auto direct = check_upper_estimate(units, p, 1.5);
    CHECK(direct.margin < -0.3);
    REQUIRE(direct.violation.has_value());

    bool found = false;
    for (std::uint64_t seed = 0; seed < 60 && !found; ++seed) {
        auto family = random_disjoint_family(4, 8, seed);
        auto r = check_upper_estimate(family, p, 1.5);
        if (r.violation) {
            found = true;
            CHECK(r.violation->margin < -1e-10);
            CHECK(r.violation->shrunk_margin < -1e-10);
            CHECK(r.violation->shrunk.size() <= r.violation->family.size());
            // the shrunk family still violates, i.e. it is disjoint and
            // evaluates to a negative margin
            auto again =
                check_upper_estimate(r.violation->shrunk, p, 1.5);
            CHECK(again.margin < -1e-10);
        }
    }
    CHECK(found);
}

TEST_CASE("random families are disjoint and deterministic") {
    auto a = random_disjoint_family(5, 6, 99);
    auto b = random_disjoint_family(5, 6, 99);
    REQUIRE(a.size() == 5);
    std::set<index_t> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].entries().size() == b[i].entries().size());
        for (std::size_t j = 0; j < a[i].entries().size(); ++j) {
            CHECK(a[i].entries()[j].index == b[i].entries()[j].index);
            CHECK(a[i].entries()[j].coeff == b[i].entries()[j].coeff);
            if (a[i].entries()[j].coeff != 0.0)
                CHECK(seen.insert(a[i].entries()[j].index).second);
        }
    }
    CHECK(random_disjoint_family(1, 4, 3).size() == 1);
}

TEST_CASE("rotundity witness construction") {
    double budget = std::sqrt(2.0);
    auto w = build_wlur_counterexample(budget);
    CHECK(w.c == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(w.product_value - std::exp2(0.5)) <= 1e-12);
    CHECK(w.product_value < 2.0);
    // p(k) = 1/(1 - 2^-(k+1)) for this budget
    CHECK(w.exponents.value(1).value() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    // the functional vanishes at coordinate 1 and carries 1 - 2^-i at n_i+1
    CHECK(w.functional.coefficients.coeff(1) == 0.0);
    for (std::size_t i = 0; i < w.indices.size(); ++i) {
        double level = 1.0 - std::exp2(-static_cast<double>(i + 1));
        CHECK(w.functional.coefficients.coeff(w.indices[i] + 1) == level);
        if (i > 0) CHECK(w.indices[i] > w.indices[i - 1]);
        // the defining two-dimensional inequality at each recorded index
        double cap = 1.0 - std::exp2(-static_cast<double>(i + 2));
        double fold = boxplus(level, level, w.functional.exponents.value(w.indices[i]));
        CHECK(fold <= cap * (1.0 + 1e-15));
    }

    // the functional sits inside the unit dual ball
    double dual_norm = phi_norm_exact(w.functional.coefficients, w.functional.exponents);
    CHECK(dual_norm <= 1.0 + 1e-12);
    // and the pairing certifies it against sample vectors
    std::mt19937_64 rng(55);
    for (int i = 0; i < 200; ++i) {
        auto x = random_vector(rng, 40);
        auto pairing = holder_pairing(w.functional.coefficients, x, w.functional.exponents);
        CHECK(std::abs(w.functional.apply(x)) <=
              phi_norm_exact(x, w.exponents) * (1.0 + 1e-9) + 1e-12);
        CHECK(pairing.sum <= pairing.bound * (1.0 + 1e-12));
    }

    CHECK_THROWS_AS(build_wlur_counterexample(1.0), BudgetOutOfRange);
    CHECK_THROWS_AS(build_wlur_counterexample(2.0), BudgetOutOfRange);
}

TEST_CASE("rotundity witness evaluation exhibits the failure") {
    auto w = build_wlur_counterexample(std::sqrt(2.0));
    auto report = evaluate_wlur_witness(w, 20);
    REQUIRE(report.pair_norms.size() == 20);

    CHECK(report.functional_values[0] == 0.5);
    for (int i = 0; i < 20; ++i) {
        double level = 1.0 - std::exp2(-static_cast<double>(i + 1));
        CHECK(report.functional_values[static_cast<std::size_t>(i)] == level);
        CHECK(report.pair_norms[static_cast<std::size_t>(i)] <= 2.0);
        if (i > 0)
            CHECK(report.pair_norms[static_cast<std::size_t>(i)] >=
                  report.pair_norms[static_cast<std::size_t>(i - 1)]);
        // quantified growth toward 2
        CHECK(report.pair_norms[static_cast<std::size_t>(i)] >
              2.0 - w.product_value * std::exp2(-static_cast<double>(i)));
    }
    CHECK(report.pair_norms.back() >= 1.99);

    // residual products certify near-isometric deep tails
    for (std::size_t j = 0; j < report.residual_products.size(); ++j) {
        CHECK(report.residual_products[j] >= 1.0);
        if (j > 0) CHECK(report.residual_products[j] <= report.residual_products[j - 1]);
    }
    CHECK(report.residual_products.front() ==
          doctest::Approx(w.product_value).epsilon(1e-12));
    CHECK(report.residual_products.back() <= 1.0 + 1e-5);
}
