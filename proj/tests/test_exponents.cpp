// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "vexp/errors.hpp"
#include "vexp/exponent.hpp"
#include "vexp/exponent_seq.hpp"

using namespace vexp;

TEST_CASE("exponent values live in [1, inf]") {
    CHECK(ExponentValue(1.0).value() == 1.0);
    CHECK(ExponentValue(3.5).value() == 3.5);
    CHECK(ExponentValue::infinity().is_infinite());
    CHECK_THROWS_AS(ExponentValue(0.999), std::invalid_argument);
    CHECK_THROWS_AS(ExponentValue(-2.0), std::invalid_argument);
    CHECK_THROWS_AS(ExponentValue(std::nan("")), std::invalid_argument);
}

TEST_CASE("conjugation swaps the endpoints and is an involution") {
    CHECK(ExponentValue(1.0).conjugate().is_infinite());
    CHECK(ExponentValue::infinity().conjugate().value() == 1.0);
    CHECK(ExponentValue(2.0).conjugate().value() == 2.0);
    CHECK(ExponentValue(3.0).conjugate().value() == doctest::Approx(1.5).epsilon(1e-15));
    for (double p : {1.25, 1.5, 2.0, 2.75, 7.0}) {
        double back = ExponentValue(p).conjugate().conjugate().value();
        CHECK(back == doctest::Approx(p).epsilon(1e-14));
    }
}

TEST_CASE("chart sends [1, inf] onto [0, 1]") {
    CHECK(ExponentValue(1.0).chart() == 1.0);
    CHECK(ExponentValue(2.0).chart() == 0.5);
    CHECK(ExponentValue::infinity().chart() == 0.0);
    CHECK(ExponentValue::from_chart(0.0).is_infinite());
    CHECK(ExponentValue::from_chart(0.25).value() == 4.0);
}

TEST_CASE("sequence values come from the prefix, then the tail") {
    auto p = ExponentSeq::constant(2.0, {ExponentValue(5.0), ExponentValue(1.0)});
    CHECK(p.value(1).value() == 5.0);
    CHECK(p.value(2).value() == 1.0);
    CHECK(p.value(3).value() == 2.0);
    CHECK(p.value(1000).value() == 2.0);
    CHECK_THROWS_AS(p.value(0), std::invalid_argument);
}

TEST_CASE("convergent rules evaluate their closed forms") {
    auto harmonic = ExponentSeq::convergent(ConvergentRule::harmonic(1.0, 1.0));
    CHECK(harmonic.value(1).value() == 2.0);
    CHECK(harmonic.value(4).value() == 1.25);
    CHECK(harmonic.liminf().value() == 1.0);

    auto linear = ExponentSeq::convergent(ConvergentRule::linear(1.0, 0.0));
    CHECK(linear.value(7).value() == 7.0);
    CHECK(linear.limsup().is_infinite());

    auto geo = ExponentSeq::convergent(ConvergentRule::geometric(2.0, -0.5, 0.5));
    CHECK(geo.value(1).value() == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(geo.liminf().value() == 2.0);

    CHECK_THROWS_AS(ConvergentRule::harmonic(1.0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(ConvergentRule::linear(-1.0, 5.0), std::invalid_argument);
}

TEST_CASE("clamping pins values into [lo, hi]") {
    auto inner = ExponentSeq::convergent(ConvergentRule::harmonic(1.0, 1.0),
                                         {ExponentValue::infinity(), ExponentValue(1.0)});
    auto clamped = ExponentSeq::clamp(inner, 1.5, 3.0);
    CHECK(clamped.value(1).value() == 3.0);   // inf pinned down
    CHECK(clamped.value(2).value() == 1.5);   // 1 pinned up
    CHECK(clamped.value(3).value() == 1.5);   // 1 + 1/3 pinned up
    CHECK(clamped.liminf().value() == 1.5);
    CHECK(clamped.limsup().value() == 1.5);
    CHECK_THROWS_AS(ExponentSeq::clamp(inner, 1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(ExponentSeq::clamp(inner, 1.5, ExponentValue::infinity()),
                    std::invalid_argument);
}

TEST_CASE("dual sequences conjugate pointwise and unwrap") {
    auto p = ExponentSeq::constant(3.0, {ExponentValue(1.0), ExponentValue(2.0)});
    auto ps = dual_exponent(p);
    CHECK(ps.value(1).is_infinite());
    CHECK(ps.value(2).value() == 2.0);
    CHECK(ps.value(5).value() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(ps.liminf().value() == doctest::Approx(1.5).epsilon(1e-15));

    auto back = dual_exponent(ps);
    for (index_t n = 1; n <= 8; ++n)
        CHECK(back.value(n).value() == p.value(n).value());
}

TEST_CASE("materializing a prefix never changes values") {
    auto p = ExponentSeq::convergent(ConvergentRule::harmonic(2.0, -1.0));
    auto q = p.with_prefix_length(10);
    CHECK(q.prefix_length() == 10);
    for (index_t n = 1; n <= 20; ++n)
        CHECK(q.value(n).value() == p.value(n).value());
}

TEST_CASE("range_from is exact for rule tails") {
    auto p = ExponentSeq::convergent(ConvergentRule::harmonic(2.0, -1.0));
    auto r = p.range_from(2);
    REQUIRE(r.has_value());
    CHECK(r->first.value() == 1.5);
    CHECK(r->second.value() == 2.0);
}

TEST_CASE("enumerated tails without metadata refuse limit queries") {
    EnumeratedTail tail;
    tail.gen = [](index_t n) { return ExponentValue(n % 2 ? 1.5 : 2.5); };
    auto p = ExponentSeq::enumerated(std::move(tail));
    CHECK_THROWS_AS(p.liminf(), TailMetadataMissing);
    CHECK_FALSE(p.range_from(1).has_value());
}

TEST_CASE("registered enumerations are addressable by name") {
    auto universal = registered_enumeration("universal-rationals", {});
    CHECK(universal.value(1).value() == 1.0);
    CHECK(universal.liminf().value() == 1.0);
    CHECK(universal.limsup().is_infinite());

    auto wlur = registered_enumeration("wlur", {{"c", 0.5}});
    CHECK(wlur.value(1).value() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(registered_enumeration("no-such-name", {}), std::invalid_argument);
    CHECK_THROWS_AS(registered_enumeration("wlur", {}), std::invalid_argument);
}
