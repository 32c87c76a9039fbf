// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "vexp/errors.hpp"
#include "vexp/norm.hpp"

namespace vexp {

namespace {

constexpr double kMarginSlack = -1e-10;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_disjoint(std::span<const SeqVector> family) {
    std::set<index_t> seen;
    for (const auto& x : family) {
        if (!x.is_finite())
            throw std::invalid_argument("estimates need finitely supported vectors");
        for (const auto& e : x.entries()) {
            if (e.coeff == 0.0) continue;
            if (!seen.insert(e.index).second)
                throw NotDisjoint("family supports overlap at index " +
                                  std::to_string(e.index));
        }
    }
}

SeqVector family_sum(std::span<const SeqVector> family) {
    SeqVector sum;
    for (const auto& x : family) sum = sum + x;
    return sum;
}

// (sum v_i^e)^(1/e), max at e = inf; factored against overflow
double lp_aggregate(const std::vector<double>& values, ExponentValue e) {
    if (values.empty()) return 0.0;
    double m = *std::max_element(values.begin(), values.end());
    if (e.is_infinite() || m == 0.0) return m;
    double acc = 0.0;
    for (double v : values) acc += std::pow(v / m, e.value());
    return m * std::pow(acc, 1.0 / e.value());
}

struct EstimateEval {
    double lhs;
    double rhs;
    double margin;
};

EstimateEval eval_estimate(std::span<const SeqVector> family, const ExponentSeq& p,
                           ExponentValue e, bool upper) {
    std::vector<double> norms;
    norms.reserve(family.size());
    for (const auto& x : family) norms.push_back(phi_norm_exact(x, p));
    double lhs = phi_norm_exact(family_sum(family), p);
    double rhs = lp_aggregate(norms, e);
    return {lhs, rhs, upper ? rhs - lhs : lhs - rhs};
}

// Greedy minimization of a violating family: drop whole vectors, then zero
// single coefficients, keeping every change that preserves the violation.
std::pair<std::vector<SeqVector>, double>
shrink_violation(std::vector<SeqVector> family, const ExponentSeq& p, ExponentValue e,
                 bool upper) {
    double margin = eval_estimate(family, p, e, upper).margin;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < family.size() && family.size() > 1; ++i) {
            std::vector<SeqVector> trial = family;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            double m = eval_estimate(trial, p, e, upper).margin;
            if (m < kMarginSlack) {
                family = std::move(trial);
                margin = m;
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto& entries = family[i].entries();
            for (std::size_t j = 0; j < entries.size(); ++j) {
                if (entries[j].coeff == 0.0) continue;
                auto trimmed = entries;
                trimmed.erase(trimmed.begin() + static_cast<std::ptrdiff_t>(j));
                std::vector<SeqVector> trial = family;
                trial[i] = SeqVector::from_entries(std::move(trimmed));
                double m = eval_estimate(trial, p, e, upper).margin;
                if (m < kMarginSlack) {
                    family = std::move(trial);
                    margin = m;
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
    return {std::move(family), margin};
}

EstimateResult run_estimate(std::span<const SeqVector> family, const ExponentSeq& p,
                            ExponentValue e, bool upper) {
    require_disjoint(family);
    if (family.empty()) throw std::invalid_argument("estimate needs a nonempty family");
    auto eval = eval_estimate(family, p, e, upper);
    EstimateResult out{eval.lhs, eval.rhs, eval.margin, std::nullopt};
    if (eval.margin < kMarginSlack) {
        std::vector<SeqVector> copy(family.begin(), family.end());
        auto [shrunk, shrunk_margin] = shrink_violation(copy, p, e, upper);
        out.violation = EstimateViolation{std::move(copy), eval.margin,
                                          std::move(shrunk), shrunk_margin};
    }
    return out;
}

} // namespace

ReflexivityVerdict classify_reflexivity(const ExponentSeq& p) {
    if (p.tail_kind() == ExponentSeq::TailKind::Clamped && p.prefix_length() == 0) {
        // clamping certifies the membership interval at every index
        auto [lo, hi] = p.clamp_bounds();
        return {Reflexivity::Superreflexive, p.liminf(), p.limsup(),
                SuperreflexiveEvidence{lo, hi, 1}, std::nullopt};
    }

    ExponentValue li = p.liminf();
    ExponentValue ls = p.limsup();

    if (li.value() > 1.0 && !ls.is_infinite()) {
        const index_t scan_limit = p.prefix_length() + 64;
        for (index_t k0 = 1; k0 <= scan_limit; ++k0) {
            auto range = p.range_from(k0);
            if (!range)
                throw TailMetadataMissing(
                    "cannot certify a membership interval without tail range metadata");
            if (range->first.value() > 1.0 && !range->second.is_infinite())
                return {Reflexivity::Superreflexive, li, ls,
                        SuperreflexiveEvidence{range->first, range->second, k0},
                        std::nullopt};
        }
        throw TailMetadataMissing("no finite membership interval found within the scan window");
    }

    NonReflexiveSide side = (li.value() == 1.0) ? NonReflexiveSide::ContainsL1
                                                : NonReflexiveSide::ContainsLinf;
    ExponentValue target = side == NonReflexiveSide::ContainsL1
                               ? ExponentValue(1.0)
                               : ExponentValue::infinity();
    return {Reflexivity::NonReflexive, li, ls, std::nullopt,
            NonReflexiveEvidence{side, target}};
}

EstimateResult check_upper_estimate(std::span<const SeqVector> family,
                                    const ExponentSeq& p, ExponentValue e) {
    return run_estimate(family, p, e, true);
}

EstimateResult check_lower_estimate(std::span<const SeqVector> family,
                                    const ExponentSeq& p, ExponentValue e) {
    return run_estimate(family, p, e, false);
}

std::vector<SeqVector> random_disjoint_family(int count, int max_support,
                                              std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("family needs at least one vector");
    if (max_support < 1) throw std::invalid_argument("max_support must be positive");

    std::mt19937_64 rng(seed);
    index_t base = 1 + rng() % 16;
    int per = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_support));

    // round-robin over a shared window keeps supports pairwise disjoint
    std::vector<std::vector<SeqVector::Entry>> entries(static_cast<std::size_t>(count));
    for (int j = 0; j < per; ++j) {
        for (int t = 0; t < count; ++t) {
            index_t idx = base + static_cast<index_t>(j * count + t);
            double c = 2.0 * uniform01(rng) - 1.0;
            entries[static_cast<std::size_t>(t)].push_back({idx, c});
        }
    }
    std::vector<SeqVector> family;
    family.reserve(static_cast<std::size_t>(count));
    for (auto& es : entries) {
        bool nonzero = false;
        for (auto& e : es) nonzero |= e.coeff != 0.0;
        if (!nonzero) es.front().coeff = 0.5;
        family.push_back(SeqVector::from_entries(std::move(es)));
    }
    return family;
}

ExponentSeq wlur_exponents(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("wlur exponents need c in (0, 1)");
    EnumeratedTail t;
    t.name = "wlur";
    t.params = {{"c", c}};
    t.gen = [c](index_t k) {
        return ExponentValue(1.0 / (1.0 - c * std::exp2(-static_cast<double>(k))));
    };
    t.liminf = ExponentValue(1.0);
    t.limsup = ExponentValue(1.0);
    t.range = EnumeratedTail::Range{1, ExponentValue(1.0),
                                    ExponentValue(1.0 / (1.0 - 0.5 * c))};
    return ExponentSeq::enumerated(std::move(t));
}

WlurWitness build_wlur_counterexample(double budget, int depth) {
    if (!(budget > 1.0 && budget < 2.0))
        throw BudgetOutOfRange("product budget must lie in (1, 2)");
    depth = std::clamp(depth, 1, 50);

    // p(k) = 1/(1 - c*2^-k) makes the telescoped product exactly 2^c
    const double c = std::log2(budget);
    ExponentSeq p = wlur_exponents(c);
    ExponentSeq ps = dual_exponent(p);

    std::vector<index_t> indices;
    std::vector<SeqVector::Entry> coords;
    indices.reserve(static_cast<std::size_t>(depth));
    index_t n = 0;
    for (int i = 1; i <= depth; ++i) {
        double level = 1.0 - std::exp2(-static_cast<double>(i));
        double cap = 1.0 - std::exp2(-static_cast<double>(i + 1));
        index_t cand = n + 1;
        // smallest index with ||(level, level)|| in the 2D conjugate
        // section at or below the cap; the conjugate exponents blow up, so
        // the factor 2^(1/p*(n)) -> 1 and the search terminates
        while (boxplus(level, level, ps.value(cand)) > cap) ++cand;
        n = cand;
        indices.push_back(n);
        coords.push_back({n + 1, level});
    }

    DualFunctional f{SeqVector::from_entries(std::move(coords)), ps};
    WlurWitness w{std::move(p), c, budget, std::move(indices), std::move(f)};

    if (!(w.product_value < 2.0))
        throw std::logic_error("certified product escaped the budget");
    return w;
}

WlurReport evaluate_wlur_witness(const WlurWitness& w, int depth) {
    int stored = static_cast<int>(w.indices.size());
    depth = std::clamp(depth, 1, stored);

    WlurReport report;
    report.pair_norms.reserve(static_cast<std::size_t>(depth));
    report.functional_values.reserve(static_cast<std::size_t>(depth));
    report.residual_products.reserve(static_cast<std::size_t>(depth));

    for (int i = 1; i <= depth; ++i) {
        index_t ni = w.indices[static_cast<std::size_t>(i - 1)];
        SeqVector pair = SeqVector::from_entries({{1, 1.0}, {ni + 1, 1.0}});
        report.pair_norms.push_back(phi_norm_exact(pair, w.exponents));
        report.functional_values.push_back(w.functional.coefficients.coeff(ni + 1));
        // prod_{k >= i} 2^(c*2^-k) in closed form
        report.residual_products.push_back(
            std::exp2(w.c * std::exp2(1.0 - static_cast<double>(i))));
    }
    return report;
}

} // namespace vexp
