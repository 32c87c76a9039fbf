// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "vexp/errors.hpp"
#include "vexp/norm.hpp"

namespace vexp {

namespace {

double uniform01(std::mt19937_64& rng) {
    // top 53 bits; identical on every platform, unlike the std distributions
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

double op_norm_2d(ExponentValue p_from, ExponentValue q_to) {
    double gap = q_to.chart() - p_from.chart();
    return gap <= 0.0 ? 1.0 : std::exp2(gap);
}

double op_norm_2d_grid(ExponentValue p_from, ExponentValue q_to, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
    auto ratio = [&](double t) {
        return boxplus(t, 1.0, q_to) / boxplus(t, 1.0, p_from);
    };
    // (t, 1) with t in [0, 1] covers all directions up to symmetry and scale
    double best = ratio(0.0);
    double best_t = 0.0;
    for (int i = 1; i <= grid_points; ++i) {
        double t = static_cast<double>(i) / grid_points;
        double r = ratio(t);
        if (r > best) {
            best = r;
            best_t = t;
        }
    }
    // golden-section refinement around the best grid point
    constexpr double inv_phi = 0.6180339887498949;
    double step = 1.0 / grid_points;
    double a = std::max(0.0, best_t - step), b = std::min(1.0, best_t + step);
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = ratio(x1), f2 = ratio(x2);
    for (int i = 0; i < 80; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = ratio(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = ratio(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

index_t EmbeddingMap::target_index(index_t j) const {
    if (j == 0 || j > selected.size() + 1)
        throw std::out_of_range("target coordinate outside the selected range");
    return j == 1 ? selected[0] : selected[j - 2] + 1;
}

SubspaceMap EmbeddingMap::subspace() const {
    return extract_subspace(host, selected);
}

namespace {

std::vector<double> residuals_of(const std::vector<double>& factors) {
    std::vector<double> out(factors.size(), 1.0);
    double prod = 1.0;
    for (std::size_t j = factors.size(); j-- > 0;) {
        prod *= factors[j];
        out[j] = prod;
    }
    return out;
}

} // namespace

std::vector<double> EmbeddingMap::forward_residuals() const {
    return residuals_of(forward_factors);
}

std::vector<double> EmbeddingMap::backward_residuals() const {
    return residuals_of(backward_factors);
}

EmbeddingMap build_embedding(const ExponentSeq& target, const ExponentSeq& host,
                             double epsilon, index_t horizon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("distortion budget must be positive");

    const std::size_t steps = std::max<std::size_t>(1, target.prefix_length());
    EmbeddingMap map{{}, target, host, {}, {}, 1.0, 1.0, epsilon};
    map.selected.reserve(steps);
    map.forward_factors.reserve(steps);
    map.backward_factors.reserve(steps);

    index_t n = 0;
    for (std::size_t k = 1; k <= steps; ++k) {
        // per-step budget (1+eps)^(2^-k); the full product telescopes to 1+eps
        double budget = std::pow(1.0 + epsilon, std::exp2(-static_cast<double>(k)));
        ExponentValue qk = target.value(k);
        double fwd = 0.0, bwd = 0.0;
        bool found = false;
        for (index_t cand = n + 1; cand <= horizon; ++cand) {
            ExponentValue pv = host.value(cand);
            fwd = op_norm_2d(qk, pv);
            if (fwd > budget) continue;
            bwd = op_norm_2d(pv, qk);
            if (bwd > budget) continue;
            n = cand;
            found = true;
            break;
        }
        if (!found)
            throw SearchHorizonExceeded(
                "no admissible host index below the horizon at step " + std::to_string(k) +
                "; the host does not approximate the target value there");
        map.selected.push_back(n);
        map.forward_factors.push_back(fwd);
        map.backward_factors.push_back(bwd);
        map.forward_bound *= fwd;
        map.backward_bound *= bwd;
    }

    if (map.forward_bound > 1.0 + epsilon || map.backward_bound > 1.0 + epsilon)
        throw std::logic_error("certified products exceed the distortion budget");
    return map;
}

double universal_rational(index_t n) {
    if (n == 0) throw std::invalid_argument("enumeration is 1-based");
    // shared memoized breadth-first enumeration; grows one a+b block at a
    // time so sequential scans stay amortized O(1)
    static std::mutex mu;
    static std::vector<double> values;
    static index_t next_sum = 2;
    std::lock_guard<std::mutex> lock(mu);
    while (values.size() < n) {
        index_t s = next_sum++;
        // reduced a/b with a >= b >= 1 and a + b = s, ordered by a
        for (index_t a = s - s / 2; a < s; ++a) {
            index_t b = s - a;
            if (std::gcd(a, b) == 1)
                values.push_back(static_cast<double>(a) / static_cast<double>(b));
        }
    }
    return values[n - 1];
}

ExponentSeq universal_exponents() {
    return registered_enumeration("universal-rationals", {});
}

ConvergentPick convergent_subsequence(const ExponentSeq& q, index_t probe_depth) {
    if (probe_depth == 0) throw std::invalid_argument("probe window must be nonempty");

    std::vector<double> u(probe_depth);
    for (index_t n = 1; n <= probe_depth; ++n) u[n - 1] = q.value(n).chart();

    // majority bisection in the chart: always descend into the half holding
    // at least as many window points (ties toward smaller exponents/larger
    // chart values is arbitrary; we pick the lower chart half)
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 64; ++iter) {
        double mid = 0.5 * (lo + hi);
        std::size_t lower = 0, upper = 0, total = 0;
        for (double v : u) {
            if (v < lo || v > hi) continue;
            ++total;
            (v <= mid ? lower : upper)++;
        }
        if (total <= 1 || hi - lo <= 1e-15) break;
        if (lower >= upper)
            hi = mid;
        else
            lo = mid;
    }

    ConvergentPick pick{ExponentValue(1.0), {}, 0.0};
    double vmin = 1.0, vmax = 0.0;
    for (index_t n = 1; n <= probe_depth; ++n) {
        double v = u[n - 1];
        if (v < lo || v > hi) continue;
        pick.indices.push_back(n);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    pick.chart_oscillation = pick.indices.empty() ? hi - lo : vmax - vmin;

    // a repeated value is a genuine cluster point and is reported exactly
    bool repeated_value = pick.indices.size() >= 2;
    for (index_t n : pick.indices)
        if (u[n - 1] != u[pick.indices.front() - 1]) repeated_value = false;

    if (repeated_value) {
        pick.limit = q.value(pick.indices.front());
    } else {
        double est = 0.5 * (vmin + vmax);
        // below the window's resolution the cluster is indistinguishable
        // from the boundary point 0, i.e. from infinity
        double resolution = 2.0 / static_cast<double>(probe_depth);
        if (est <= resolution) {
            pick.limit = ExponentValue::infinity();
            pick.chart_oscillation = std::max(pick.chart_oscillation, est);
        } else {
            pick.limit = ExponentValue::from_chart(est);
        }
    }
    return pick;
}

ExponentSeq pathological_exponents(ExponentValue p,
                                   std::span<const index_t> block_lengths,
                                   std::span<const double> rates) {
    if (p.is_infinite() || !(p.value() > 1.0))
        throw std::invalid_argument("limit exponent must lie in (1, inf)");
    if (block_lengths.size() != rates.size() || rates.empty())
        throw std::invalid_argument("need matching nonempty block lengths and rates");

    const bool below = p.value() <= 2.0;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double r : rates) {
        if (!(r > 1.0) || !std::isfinite(r))
            throw std::invalid_argument("rates must lie in (1, inf)");
        if (below ? !(r < p.value()) : !(r > p.value()))
            throw InvalidRateSide(below ? "rates must approach the limit from below"
                                        : "rates must approach the limit from above");
        double gap = std::abs(r - p.value());
        if (!(gap <= prev_gap))
            throw InvalidRateSide("rates must approach the limit monotonically");
        prev_gap = gap;
    }

    std::vector<ExponentValue> prefix;
    for (std::size_t l = 0; l < rates.size(); ++l) {
        if (block_lengths[l] == 0)
            throw std::invalid_argument("block lengths must be positive");
        for (index_t i = 0; i < block_lengths[l]; ++i)
            prefix.push_back(ExponentValue(rates[l]));
    }
    // past the explicit blocks the sequence continues at its limit, so the
    // convergence q(n) -> p is preserved
    return ExponentSeq::constant(p, std::move(prefix));
}

DistortionReport certify_distortion(const EmbeddingMap& map, int samples,
                                    std::uint64_t seed) {
    DistortionReport report;
    report.forward_residuals = map.forward_residuals();
    report.backward_residuals = map.backward_residuals();
    if (samples <= 0) return report;

    SubspaceMap sub = map.subspace();
    const index_t dim = map.selected.size() + 1;
    std::mt19937_64 rng(seed);
    double max_ratio = 0.0, min_ratio = std::numeric_limits<double>::infinity();

    for (int s = 0; s < samples; ++s) {
        std::vector<double> coeffs(dim, 0.0);
        bool nonzero = false;
        for (index_t i = 0; i < dim; ++i) {
            if (uniform01(rng) < 0.25) continue; // keep some sparsity
            coeffs[i] = 2.0 * uniform01(rng) - 1.0;
            nonzero |= coeffs[i] != 0.0;
        }
        if (!nonzero) coeffs[static_cast<index_t>(s) % dim] = 1.0;
        SeqVector y = SeqVector::dense(coeffs);
        double source = phi_norm_exact(y, map.source);
        double image = phi_norm_exact(lift_vector(y, sub), map.host);
        double ratio = image / source;
        max_ratio = std::max(max_ratio, ratio);
        min_ratio = std::min(min_ratio, ratio);
    }
    report.max_ratio = max_ratio;
    report.min_ratio = min_ratio;
    return report;
}

} // namespace vexp
