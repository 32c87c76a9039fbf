// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "vexp/duality.hpp"
#include "vexp/errors.hpp"

using namespace vexp;
using namespace vexp_test;

TEST_CASE("pairing examples") {
    auto p2 = ExponentSeq::constant(2.0);
    auto both = SeqVector::dense({1.0, 1.0});
    auto r = holder_pairing(both, both, p2);
    CHECK(r.sum == 2.0);
    CHECK(r.bound == doctest::Approx(2.0).epsilon(1e-14)); // equality at parallel vectors

    auto disjoint = holder_pairing(SeqVector::dense({1.0, 0.0}),
                                   SeqVector::dense({0.0, 1.0}), p2);
    CHECK(disjoint.sum == 0.0);
}

TEST_CASE("pairing bound holds on random finite inputs") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 3000; ++i) {
        auto p = random_exponent_seq(rng, 8);
        auto x = random_vector(rng, 32);
        auto y = random_vector(rng, 32);
        auto r = holder_pairing(x, y, p);
        CHECK(r.sum <= r.bound * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("pairing with certified tails keeps the bound") {
    auto p = ExponentSeq::constant(1.0);
    auto x = SeqVector::generated(
        [](index_t n) { return std::exp2(-static_cast<double>(n)); },
        SeqVector::TailCertificate{8, ExponentValue(1.0), std::exp2(-8.0)});
    auto y = SeqVector::dense({1.0, 1.0, 1.0});
    auto r = holder_pairing(x, y, p);
    CHECK(r.sum == doctest::Approx(0.875).epsilon(1e-14)); // 1/2 + 1/4 + 1/8
    CHECK(r.sum <= r.bound * (1.0 + 1e-12));

    auto bare = SeqVector::generated([](index_t n) { return 1.0 / static_cast<double>(n); },
                                     std::nullopt);
    CHECK_THROWS_AS(holder_pairing(bare, y, p), TailBoundMissing);
}

TEST_CASE("brute-force dual norm on known sections") {
    auto p2 = ExponentSeq::constant(2.0);
    auto e1 = DualFunctional::from_dual_coefficients(SeqVector::unit(1), p2);
    CHECK(dual_norm_bruteforce(e1, p2, 2) == doctest::Approx(1.0).epsilon(1e-6));

    auto ones = DualFunctional::from_dual_coefficients(SeqVector::dense({1.0, 1.0}), p2);
    CHECK(dual_norm_bruteforce(ones, p2, 2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    // over the l^1 section the dual norm is the max norm
    auto p1 = ExponentSeq::constant(1.0);
    auto f = DualFunctional::from_dual_coefficients(SeqVector::dense({1.0, 1.0}), p1);
    CHECK(dual_norm_bruteforce(f, p1, 2) == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(dual_norm_bruteforce(f, p1, 7), DimensionTooLarge);
    auto wide = DualFunctional::from_dual_coefficients(SeqVector::unit(5), p1);
    CHECK_THROWS_AS(dual_norm_bruteforce(wide, p1, 3), std::invalid_argument);
}

TEST_CASE("brute-force dual norm matches the conjugate-exponent norm") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 40; ++i) {
        int m = static_cast<int>(range_int(rng, 2, 4));
        auto p = random_exponent_seq(rng, static_cast<std::size_t>(m), 4.0);
        std::vector<double> coeffs = dense_coeffs(rng, static_cast<std::size_t>(m), 1.5);
        auto f = DualFunctional::from_dual_coefficients(SeqVector::dense(coeffs), p);
        double oracle = dual_norm_bruteforce(f, p, m);
        double closed = phi_norm_exact(f.coefficients, f.exponents);
        CHECK(std::abs(oracle - closed) <= 1e-3 * (1.0 + closed));
    }
}

TEST_CASE("norming vectors realize the pairing bound on sections") {
    // the brute-force maximum is attained, so the bound is tight within
    // optimization tolerance
    std::mt19937_64 rng(33);
    for (int i = 0; i < 15; ++i) {
        int m = 3;
        auto p = random_exponent_seq(rng, 3, 4.0);
        auto f = DualFunctional::from_dual_coefficients(
            SeqVector::dense(dense_coeffs(rng, 3, 1.5)), p);
        double best = dual_norm_bruteforce(f, p, m);
        double closed = phi_norm_exact(f.coefficients, f.exponents);
        CHECK(best >= closed - 1e-3 * (1.0 + closed));
    }
}

TEST_CASE("subspace extraction follows the doubled-first-block convention") {
    auto p = ExponentSeq::convergent(ConvergentRule::linear(1.0, 0.0)); // p(n) = n
    auto map = extract_subspace(p, {2, 4});
    CHECK(map.source_exponents().value(1).value() == 2.0);
    CHECK(map.source_exponents().value(2).value() == 4.0);
    CHECK(map.target_index(1) == 2);
    CHECK(map.target_index(2) == 3);
    CHECK(map.target_index(3) == 5);
    CHECK_THROWS_AS(extract_subspace(p, {4, 2}), NonIncreasingIndices);
    CHECK_THROWS_AS(extract_subspace(p, {3, 3}), NonIncreasingIndices);
}

TEST_CASE("identity selection is the identity map") {
    auto p = ExponentSeq::constant(2.0, {ExponentValue(3.0), ExponentValue(1.5)});
    auto map = extract_subspace(p, {1, 2, 3});
    for (index_t j = 1; j <= 4; ++j) CHECK(map.target_index(j) == j);
    auto y = SeqVector::dense({0.5, -1.0, 2.0});
    auto lifted = lift_vector(y, map);
    for (index_t n = 1; n <= 4; ++n) CHECK(lifted.coeff(n) == y.coeff(n));
}

TEST_CASE("lifting is an exact isometry") {
    auto p = ExponentSeq::convergent(ConvergentRule::linear(1.0, 0.0));
    auto map = extract_subspace(p, {2});
    auto y = SeqVector::dense({1.0, 1.0});
    auto lifted = lift_vector(y, map);
    CHECK(lifted.coeff(2) == 1.0);
    CHECK(lifted.coeff(3) == 1.0);
    CHECK(phi_norm_exact(lifted, p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(phi_norm_exact(lifted, p) == phi_norm_exact(y, map.source_exponents()));

    std::mt19937_64 rng(34);
    for (int i = 0; i < 500; ++i) {
        auto host = random_exponent_seq(rng, 12);
        std::vector<index_t> selected;
        index_t n = range_int(rng, 1, 3);
        for (int k = 0; k < 6; ++k) {
            selected.push_back(n);
            n += range_int(rng, 1, 4);
        }
        auto sub = extract_subspace(host, selected);
        auto vec = SeqVector::dense(dense_coeffs(rng, 7));
        double source = phi_norm_exact(vec, sub.source_exponents());
        double image = phi_norm_exact(lift_vector(vec, sub), host);
        CHECK(image == source); // identical folds, bit for bit
    }
}

TEST_CASE("lifting rejects vectors outside the mapped coordinates") {
    auto p = ExponentSeq::constant(2.0);
    auto map = extract_subspace(p, {3, 5});
    CHECK_THROWS_AS(lift_vector(SeqVector::dense({1.0, 1.0, 1.0, 1.0}), map),
                    std::out_of_range);
    CHECK_THROWS_AS(lift_vector(SeqVector::generated([](index_t) { return 1.0; },
                                                     std::nullopt),
                                map),
                    std::invalid_argument);
}
