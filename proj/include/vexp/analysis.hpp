// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vexp/duality.hpp"
#include "vexp/exponent_seq.hpp"
#include "vexp/vector.hpp"

namespace vexp {

enum class Reflexivity { Superreflexive, NonReflexive };

// p(n) lies in [p0, q0] for all n >= k0, with 1 < p0 <= q0 < inf.
struct SuperreflexiveEvidence {
    ExponentValue p0;
    ExponentValue q0;
    index_t k0;
};

enum class NonReflexiveSide { ContainsL1, ContainsLinf };

struct NonReflexiveEvidence {
    NonReflexiveSide side;
    // constant exponent to feed build_embedding as the contained space
    ExponentValue seed_target;
};

struct ReflexivityVerdict {
    Reflexivity verdict;
    ExponentValue liminf;
    ExponentValue limsup;
    std::optional<SuperreflexiveEvidence> super;
    std::optional<NonReflexiveEvidence> non_reflexive;
};

// Decides reflexivity from the tail limits: both liminf > 1 and
// limsup < inf give superreflexivity with a checkable clamping interval;
// otherwise the violated side names the contained space (l^1 or l^inf).
ReflexivityVerdict classify_reflexivity(const ExponentSeq& p);

struct EstimateViolation {
    std::vector<SeqVector> family;
    double margin;
    // greedily minimized counterexample (vectors dropped, coefficients
    // zeroed while the violation persists)
    std::vector<SeqVector> shrunk;
    double shrunk_margin;
};

struct EstimateResult {
    double lhs;    // ||sum x_i||
    double rhs;    // (sum ||x_i||^e)^(1/e)
    double margin; // signed slack, >= 0 when the estimate holds
    std::optional<EstimateViolation> violation;
};

// Upper e-estimate on a disjointly supported family:
//   ||sum x_i|| <= (sum ||x_i||^e)^(1/e).
// margin = rhs - lhs; margins below -1e-10 are reported as shrunk
// counterexamples. Throws NotDisjoint on overlapping supports.
EstimateResult check_upper_estimate(std::span<const SeqVector> family,
                                    const ExponentSeq& p, ExponentValue e);

// Lower e-estimate (reversed inequality); margin = lhs - rhs.
EstimateResult check_lower_estimate(std::span<const SeqVector> family,
                                    const ExponentSeq& p, ExponentValue e);

// Round-robin partition of a random index window into `count` disjoint
// supports with random coefficients; bit-identical per seed.
std::vector<SeqVector> random_disjoint_family(int count, int max_support,
                                              std::uint64_t seed);

// The exponent sequence p(k) = 1/(1 - c*2^-k), c in (0, 1). It decreases
// to 1 and the product of the l^{p(k)}_2 -> l^1_2 identity norms
// telescopes to exactly 2^c.
ExponentSeq wlur_exponents(double c);

// A weak-rotundity failure certificate: unit vectors e_{n_i+1} whose
// midpoints with e_1 approach the sphere while the functional below
// separates them from e_1.
struct WlurWitness {
    ExponentSeq exponents;        // p with certified product 2^c < 2
    double c;                     // log2 of the product
    double product_value;         // 2^c, equals the requested budget
    std::vector<index_t> indices; // n_i, smallest admissible, increasing
    DualFunctional functional;    // coefficients 1 - 2^-i at n_i + 1, 0 at 1
};

// Builds the witness for a product budget in (1, 2): picks c = log2(budget)
// and selects each n_i as the smallest index with
//   ||(1-2^-i, 1-2^-i)|| in l^{p*(n_i)}_2 <= 1 - 2^-(i+1),
// which keeps the functional inside the unit dual ball. depth is capped at
// 50 (beyond that 1 - 2^-i is not representable away from 1).
WlurWitness build_wlur_counterexample(double budget, int depth = 48);

struct WlurReport {
    std::vector<double> pair_norms;        // ||e_1 + e_{n_i+1}||, increasing to 2
    std::vector<double> functional_values; // f(e_{n_i+1}) = 1 - 2^-i, f(e_1) = 0
    std::vector<double> residual_products; // prod_{k>=j} 2D factors = 2^(c*2^(1-j))
};

// Evaluates the witness to the given depth: the pair norms must rise
// toward 2 while the functional values rise toward 1 and vanish at e_1;
// the residual products certify that the deep tails are near-isometric
// copies of l^1.
WlurReport evaluate_wlur_witness(const WlurWitness& w, int depth);

} // namespace vexp
