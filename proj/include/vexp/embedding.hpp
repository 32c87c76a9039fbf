// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vexp/duality.hpp"
#include "vexp/exponent_seq.hpp"
#include "vexp/vector.hpp"

namespace vexp {

// Identity operator norm between the two-dimensional sections
// ||I : l^p_2 -> l^q_2|| = 2^(max(0, 1/q - 1/p)), with 1/inf = 0.
double op_norm_2d(ExponentValue p_from, ExponentValue q_to);

// Independent grid oracle for the closed form: maximizes the norm ratio
// over (t, 1), t in [0, 1], on a dense grid with golden-section refinement.
double op_norm_2d_grid(ExponentValue p_from, ExponentValue q_to,
                       int grid_points = 10'000);

// A certified almost-isometric copy of the source space inside the host:
// coordinates go to positions {n_1, n_1+1, n_2+1, ...} and the distortion
// is bounded by the products of two-dimensional identity norms.
struct EmbeddingMap {
    std::vector<index_t> selected;        // n_1 < n_2 < ... < n_K
    ExponentSeq source;                   // target exponents q
    ExponentSeq host;                     // host exponents p
    std::vector<double> forward_factors;  // ||I : l^{q(k)}_2 -> l^{p(n_k)}_2||
    std::vector<double> backward_factors; // ||I : l^{p(n_k)}_2 -> l^{q(k)}_2||
    double forward_bound{1.0};            // product of forward factors, <= 1+eps
    double backward_bound{1.0};           // product of backward factors, <= 1+eps
    double epsilon{0.0};

    index_t target_index(index_t j) const;
    SubspaceMap subspace() const;
    // residual products prod_{k >= j} factor_k for j = 1..K; each is >= 1,
    // nonincreasing in j, and tends to 1 along a convergent certificate
    std::vector<double> forward_residuals() const;
    std::vector<double> backward_residuals() const;
};

// Greedy embedding of the target's explicit prefix (K = max(1, prefix
// length) steps) into the host. Step k gets budget 1+delta_k =
// (1+eps)^(2^-k), so both factor products stay below 1+eps; n_k is the
// smallest admissible index above n_{k-1}. Throws SearchHorizonExceeded
// when no admissible index exists below the horizon, which signals that
// the host does not approximate the target value.
EmbeddingMap build_embedding(const ExponentSeq& target, const ExponentSeq& host,
                             double epsilon, index_t horizon = 1'000'000);

// The n-th term of the breadth-first enumeration of reduced fractions
// a/b >= 1 ordered by a+b, then a. Every rational >= 1 appears exactly
// once and every point of [1, inf] is a cluster point.
double universal_rational(index_t n);

// The enumerated exponent sequence built from universal_rational; hosts an
// almost-isometric copy of every sequence space in this family.
ExponentSeq universal_exponents();

struct ConvergentPick {
    ExponentValue limit;          // cluster point estimate in [1, inf]
    std::vector<index_t> indices; // witness subsequence inside the window
    double chart_oscillation;     // error bar, measured in the chart
};

// Extracts a convergent subsequence of (q(n)) from the probe window
// [1, probe_depth] by majority bisection in the chart. Existence is
// guaranteed by compactness; the estimate carries the final window's
// oscillation as its error bar.
ConvergentPick convergent_subsequence(const ExponentSeq& q, index_t probe_depth);

// Block sequence taking value rates[l] on the l-th block of length
// block_lengths[l], continuing at the limit value p afterwards. Rates must
// approach p monotonically from below when p <= 2 and from above when
// p > 2.
ExponentSeq pathological_exponents(ExponentValue p,
                                   std::span<const index_t> block_lengths,
                                   std::span<const double> rates);

struct DistortionReport {
    double max_ratio{1.0};
    double min_ratio{1.0};
    std::vector<double> forward_residuals;
    std::vector<double> backward_residuals;
};

// Samples random finitely supported vectors through the embedding and
// reports the extreme norm ratios, which must respect the certified
// product bounds, together with the residual products.
DistortionReport certify_distortion(const EmbeddingMap& map, int samples,
                                    std::uint64_t seed);

} // namespace vexp
