// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vexp/exponent.hpp"
#include "vexp/exponent_seq.hpp"
#include "vexp/vector.hpp"

namespace vexp {

// Two-term fold t (+)_p s = (t^p + s^p)^(1/p), max(t, s) at p = inf.
// Commutative, monotone in both arguments and in 1/p, with identity 0.
// Computed by factoring out the larger argument so that arbitrarily large
// finite p cannot overflow: m * (1 + (r/m)^p)^(1/p).
double boxplus(double t, double s, ExponentValue p);

// The k-th recursive semi-norm:
//   |||x|||_(1) = |x_1| (+)_{p(1)} |x_2|,
//   |||x|||_(k) = |||x|||_(k-1) (+)_{p(k)} |x_{k+1}|.
// Consumes coordinates 1..k+1 and exponents 1..k; nondecreasing in k.
double seminorm_prefix(const SeqVector& x, const ExponentSeq& p, index_t k);

// Guaranteed interval around the limit norm of x. lower == upper for
// finitely supported vectors (the recursion is stationary past the
// support). tol_met == false flags an enclosure still wider than the
// requested relative tolerance when the depth horizon was reached.
struct NormEnclosure {
    double lower{0.0};
    double upper{0.0};
    index_t k_used{0};
    bool exact{false};
    bool tol_met{true};

    double width() const { return upper - lower; }
    double relative_width() const {
        return upper > 0.0 ? (upper - lower) / upper : 0.0;
    }
};

struct NormParams {
    double tol{1e-9};            // relative enclosure width target
    index_t horizon{1'000'000};  // max fold depth for certified tails
};

// Norm of x under p. Finite supports are evaluated exactly. Generator
// vectors require a tail certificate: the lower bound is a finite fold, the
// upper bound collapses the unconsumed tail onto its certified pmin mass
// (collapsing exponents to their infimum only increases the fold). The fold
// is deepened, consuming certificate mass, until the relative width meets
// tol or the horizon is reached.
NormEnclosure phi_norm(const SeqVector& x, const ExponentSeq& p,
                       NormParams params = {});

// Exact value for finitely supported vectors.
double phi_norm_exact(const SeqVector& x, const ExponentSeq& p);

} // namespace vexp
