// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vexp/errors.hpp"

namespace vexp {

double boxplus(double t, double s, ExponentValue p) {
    if (!(t >= 0.0) || !(s >= 0.0))
        throw std::invalid_argument("boxplus needs nonnegative arguments");
    if (p.is_infinite()) return std::max(t, s);
    if (p.value() == 1.0) return t + s;
    double m = std::max(t, s);
    if (m == 0.0) return 0.0;
    double r = std::min(t, s) / m;
    if (r == 0.0) return m; // 0 is the exact identity of the fold
    return m * std::pow(1.0 + std::pow(r, p.value()), 1.0 / p.value());
}

namespace {

// Fold |x_1| through |x_{k+1}| for a finite vector, skipping zero
// coefficients (folding a zero is the exact identity, so skipping is
// bit-identical to the dense recursion).
double fold_finite(const SeqVector& x, const ExponentSeq& p, index_t upto) {
    double v = 0.0;
    for (const auto& e : x.entries()) {
        if (e.index > upto) break;
        if (e.coeff == 0.0) continue;
        double c = std::abs(e.coeff);
        // folding against the accumulated 0 is the identity
        v = (v == 0.0) ? c : boxplus(v, c, p.value(e.index - 1));
    }
    return v;
}

} // namespace

double seminorm_prefix(const SeqVector& x, const ExponentSeq& p, index_t k) {
    if (k < 1) throw std::invalid_argument("seminorm depth k must be >= 1");
    if (x.is_finite()) return fold_finite(x, p, k + 1);
    double v = std::abs(x.coeff(1));
    for (index_t j = 2; j <= k + 1; ++j) {
        double c = std::abs(x.coeff(j));
        if (c != 0.0) v = boxplus(v, c, p.value(j - 1));
    }
    return v;
}

NormEnclosure phi_norm(const SeqVector& x, const ExponentSeq& p, NormParams params) {
    NormEnclosure out;
    if (x.is_finite()) {
        index_t m = x.max_index();
        if (m == 0) return {0.0, 0.0, 0, true, true};
        index_t k = std::max<index_t>(m - 1, 1);
        double v = fold_finite(x, p, k + 1);
        return {v, v, k, true, true};
    }

    const auto& cert_opt = x.certificate();
    if (!cert_opt)
        throw TailBoundMissing("generator-backed vector carries no tail certificate");
    const auto& cert = *cert_opt;

    const bool pmin_inf = cert.pmin.is_infinite();
    const double pmin = cert.pmin.value();
    const double mass_budget = pmin_inf ? cert.bound : std::pow(cert.bound, pmin);

    index_t k = std::max<index_t>(cert.k0, 1);
    double v = std::abs(x.coeff(1));
    if (!std::isfinite(v)) throw std::invalid_argument("generator produced a non-finite value");
    double consumed = 0.0;

    auto step = [&](index_t j) {
        // consume coordinate j (folded with exponent j-1)
        double c = std::abs(x.coeff(j));
        if (!std::isfinite(c))
            throw std::invalid_argument("generator produced a non-finite value");
        ExponentValue pj = p.value(j - 1);
        if (j - 1 >= cert.k0 && pj.value() < pmin)
            throw std::invalid_argument(
                "tail certificate inconsistent: pmin exceeds an exponent past k0");
        if (c != 0.0) v = boxplus(v, c, pj);
        if (j > cert.k0 && !pmin_inf) consumed += std::pow(c, pmin);
    };

    for (index_t j = 2; j <= k + 1; ++j) step(j);

    auto enclosure_at = [&](index_t depth) {
        // unconsumed tail mass: the certificate budget minus what the fold
        // has already seen past k0 (collapsing the remaining exponents to
        // pmin only increases the fold)
        double remaining = pmin_inf
                               ? cert.bound
                               : std::pow(std::max(0.0, mass_budget - consumed), 1.0 / pmin);
        double upper = boxplus(v, remaining, cert.pmin);
        out.lower = v;
        out.upper = upper;
        out.k_used = depth;
        out.exact = false;
        out.tol_met = out.relative_width() <= params.tol;
    };

    enclosure_at(k);
    while (!out.tol_met && k < params.horizon) {
        ++k;
        step(k + 1);
        enclosure_at(k);
    }

    // spot-check the certificate on a window past the stopping depth
    for (index_t n = k + 1; n <= k + 64; ++n)
        if (p.value(n).value() < pmin)
            throw std::invalid_argument(
                "tail certificate inconsistent: pmin exceeds an exponent past k0");

    return out;
}

double phi_norm_exact(const SeqVector& x, const ExponentSeq& p) {
    if (!x.is_finite())
        throw std::invalid_argument("phi_norm_exact needs a finitely supported vector");
    return phi_norm(x, p).lower;
}

} // namespace vexp
