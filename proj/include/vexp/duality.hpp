// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "vexp/exponent_seq.hpp"
#include "vexp/norm.hpp"
#include "vexp/vector.hpp"

namespace vexp {

// A functional represented by its coefficient sequence, acting by
// x -> sum_n coefficients(n) * x_n, together with the conjugate exponents
// under which its norm is the plain sequence norm.
struct DualFunctional {
    SeqVector coefficients;
    ExponentSeq exponents; // the conjugate sequence p*

    static DualFunctional from_dual_coefficients(SeqVector coeffs,
                                                 const ExponentSeq& primal_p) {
        return DualFunctional{std::move(coeffs), dual_exponent(primal_p)};
    }

    double apply(const SeqVector& x) const;
};

struct PairingResult {
    double sum;   // sum_n |x_n y_n|
    double bound; // ||x||_p * ||y||_p*  (upper enclosure ends)
};

// Hoelder pairing: sum <= bound, up to rounding. Generator vectors are
// truncated past their certificate depth, so sum is then a lower estimate
// of the full series while bound still dominates it.
PairingResult holder_pairing(const SeqVector& x, const SeqVector& y,
                             const ExponentSeq& p, NormParams params = {});

// Numerically maximizes |f(x)| over the unit sphere of the head section
// [e_1, ..., e_m] (dense grid plus local refinement; m <= 6). Serves as the
// independent oracle for the conjugate-exponent norm formula.
double dual_norm_bruteforce(const DualFunctional& f, const ExponentSeq& p, int m);

// Coordinate subspace determined by strictly increasing indices (n_k): the
// span of positions {n_1, n_1+1, n_2+1, n_3+1, ...} with source exponents
// q(k) = p(n_k). Lifting along target_index is an exact isometry because
// both folds traverse identical exponents in identical order.
class SubspaceMap {
public:
    SubspaceMap(std::vector<index_t> selected, ExponentSeq source);

    const std::vector<index_t>& selected() const { return selected_; }
    const ExponentSeq& source_exponents() const { return source_; }
    // j = 1 -> n_1, j = k+1 -> n_k + 1; defined for j <= selected.size()+1
    index_t target_index(index_t j) const;
    index_t max_source_support() const { return selected_.size() + 1; }

private:
    std::vector<index_t> selected_;
    ExponentSeq source_;
};

SubspaceMap extract_subspace(const ExponentSeq& p, std::vector<index_t> selected);

// Places y_j at map.target_index(j); y must be finitely supported within
// the map's source dimension.
SeqVector lift_vector(const SeqVector& y, const SubspaceMap& map);

} // namespace vexp
