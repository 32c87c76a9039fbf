// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vexp/errors.hpp"

namespace vexp {

namespace {

// Norm of the head section [e_1, ..., e_m] evaluated directly on a dense
// nonnegative array; coordinate j folds with exponent p(j-1).
double section_norm(const std::vector<double>& d, const ExponentSeq& p) {
    double v = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double c = std::abs(d[i]);
        if (c == 0.0) continue;
        v = (v == 0.0) ? c : boxplus(v, c, p.value(i));
    }
    return v;
}

// Golden-section maximization on [a, b]; returns the best evaluated value
// and its argument. Good to ~(b-a) * 0.618^iters.
template <typename F>
double golden_max(F&& f, double a, double b, int iters, double* arg = nullptr) {
    constexpr double inv_phi = 0.6180339887498949;
    double xb = a, fb = f(a);
    auto visit = [&](double x, double fx) {
        if (fx > fb) {
            fb = fx;
            xb = x;
        }
    };
    visit(b, f(b));
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    visit(x1, f1);
    visit(x2, f2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
            visit(x2, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
            visit(x1, f1);
        }
    }
    if (arg) *arg = xb;
    return fb;
}

} // namespace

double DualFunctional::apply(const SeqVector& x) const {
    if (!coefficients.is_finite() || !x.is_finite())
        throw std::invalid_argument("functional application needs finite supports");
    double sum = 0.0;
    for (const auto& e : coefficients.entries()) sum += e.coeff * x.coeff(e.index);
    return sum;
}

PairingResult holder_pairing(const SeqVector& x, const SeqVector& y,
                             const ExponentSeq& p, NormParams params) {
    ExponentSeq ps = dual_exponent(p);
    double bx = phi_norm(x, p, params).upper;   // throws TailBoundMissing if needed
    double by = phi_norm(y, ps, params).upper;

    double sum = 0.0;
    if (x.is_finite() && y.is_finite()) {
        const auto& small = x.entries().size() <= y.entries().size() ? x : y;
        const auto& other = (&small == &x) ? y : x;
        for (const auto& e : small.entries())
            sum += std::abs(e.coeff * other.coeff(e.index));
    } else {
        // truncate past the certificates; the partial sum is a lower
        // estimate of the full series and the Hoelder bound still holds
        index_t depth = 1 << 16;
        if (x.certificate()) depth = std::max(depth, x.certificate()->k0);
        if (y.certificate()) depth = std::max(depth, y.certificate()->k0);
        if (x.is_finite() && x.max_index() > 0) depth = std::max(depth, x.max_index());
        if (y.is_finite() && y.max_index() > 0) depth = std::max(depth, y.max_index());
        for (index_t n = 1; n <= depth; ++n)
            sum += std::abs(x.coeff(n) * y.coeff(n));
    }
    return PairingResult{sum, bx * by};
}

double dual_norm_bruteforce(const DualFunctional& f, const ExponentSeq& p, int m) {
    if (m < 1) throw std::invalid_argument("section dimension must be >= 1");
    if (m > 6)
        throw DimensionTooLarge("brute-force dual norm supports sections up to m = 6");
    if (!f.coefficients.is_finite())
        throw std::invalid_argument("brute-force dual norm needs a finite functional");

    std::vector<double> w(static_cast<std::size_t>(m), 0.0);
    for (const auto& e : f.coefficients.entries()) {
        if (e.coeff != 0.0 && e.index > static_cast<index_t>(m))
            throw std::invalid_argument("functional support exceeds the section dimension");
        if (e.index <= static_cast<index_t>(m)) w[e.index - 1] = std::abs(e.coeff);
    }

    auto ratio = [&](const std::vector<double>& d) {
        double num = 0.0;
        for (int i = 0; i < m; ++i) num += w[i] * d[i];
        if (num == 0.0) return 0.0;
        double nrm = section_norm(d, p);
        return nrm > 0.0 ? num / nrm : 0.0;
    };

    if (m == 1) return w[0];

    double best = 0.0;
    std::vector<double> best_d(static_cast<std::size_t>(m), 0.0);
    auto consider = [&](const std::vector<double>& d) {
        double r = ratio(d);
        if (r > best) {
            best = r;
            best_d = d;
        }
    };

    if (m == 2) {
        // dense angular grid, then golden refinement around the best angle
        const int grid = 10'000;
        const double half_pi = std::acos(0.0);
        consider({1.0, 0.0});
        consider({0.0, 1.0});
        consider({1.0, 1.0});
        double best_theta = 0.0;
        for (int i = 0; i <= grid; ++i) {
            double theta = half_pi * i / grid;
            std::vector<double> d{std::cos(theta), std::sin(theta)};
            double r = ratio(d);
            if (r > best) {
                best = r;
                best_theta = theta;
            }
        }
        double lo = std::max(0.0, best_theta - half_pi / grid);
        double hi = std::min(half_pi, best_theta + half_pi / grid);
        double refined = golden_max(
            [&](double theta) {
                return ratio({std::cos(theta), std::sin(theta)});
            },
            lo, hi, 80);
        return std::max(best, refined);
    }

    // coarse lattice over the positive cone (includes every 0/1 pattern,
    // which covers the extreme points contributed by exponents 1 and inf)
    const int levels = m <= 4 ? 9 : 5;
    std::vector<double> d(static_cast<std::size_t>(m), 0.0);
    std::size_t combos = 1;
    for (int i = 0; i < m; ++i) combos *= static_cast<std::size_t>(levels);
    std::vector<std::pair<double, std::vector<double>>> starts;
    for (std::size_t code = 1; code < combos; ++code) {
        std::size_t c = code;
        for (int i = 0; i < m; ++i) {
            d[i] = static_cast<double>(c % static_cast<std::size_t>(levels)) / (levels - 1);
            c /= static_cast<std::size_t>(levels);
        }
        double r = ratio(d);
        if (r > best) {
            best = r;
            best_d = d;
        }
        starts.emplace_back(r, d);
    }
    std::sort(starts.begin(), starts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    if (starts.size() > 10) starts.resize(10);

    // multistart pattern search; the diagonal moves track ridges that
    // single-coordinate steps stall on
    for (const auto& start : starts) {
        d = start.second;
        double local = start.first;
        for (double h = 0.4; h > 1e-10; h *= 0.5) {
            int accepts = 0;
            bool improved = true;
            while (improved && accepts < 200) {
                improved = false;
                auto try_move = [&](int i, double si, int j, double sj) {
                    std::vector<double> e = d;
                    e[static_cast<std::size_t>(i)] =
                        std::clamp(e[static_cast<std::size_t>(i)] + si, 0.0, 1.5);
                    if (j >= 0)
                        e[static_cast<std::size_t>(j)] =
                            std::clamp(e[static_cast<std::size_t>(j)] + sj, 0.0, 1.5);
                    double r = ratio(e);
                    if (r > local) {
                        local = r;
                        d = std::move(e);
                        improved = true;
                        ++accepts;
                    }
                };
                for (int i = 0; i < m && !improved; ++i) {
                    try_move(i, h, -1, 0.0);
                    if (!improved) try_move(i, -h, -1, 0.0);
                }
                for (int i = 0; i < m && !improved; ++i)
                    for (int j = i + 1; j < m && !improved; ++j)
                        for (double si : {h, -h})
                            for (double sj : {h, -h}) {
                                if (!improved) try_move(i, si, j, sj);
                            }
            }
            double top = *std::max_element(d.begin(), d.end());
            if (top > 0.0) {
                for (auto& t : d) t /= top;
                local = std::max(local, ratio(d));
            }
        }
        best = std::max(best, local);
    }
    return best;
}

SubspaceMap::SubspaceMap(std::vector<index_t> selected, ExponentSeq source)
    : selected_(std::move(selected)), source_(std::move(source)) {
    if (selected_.empty())
        throw std::invalid_argument("subspace map needs at least one index");
    index_t prev = 0;
    for (index_t n : selected_) {
        if (n <= prev) throw NonIncreasingIndices("selected indices must be strictly increasing");
        prev = n;
    }
}

index_t SubspaceMap::target_index(index_t j) const {
    if (j == 0 || j > selected_.size() + 1)
        throw std::out_of_range("target coordinate outside the selected range");
    return j == 1 ? selected_[0] : selected_[j - 2] + 1;
}

SubspaceMap extract_subspace(const ExponentSeq& p, std::vector<index_t> selected) {
    if (selected.empty())
        throw std::invalid_argument("subspace extraction needs at least one index");
    index_t prev = 0;
    for (index_t n : selected) {
        if (n <= prev) throw NonIncreasingIndices("selected indices must be strictly increasing");
        prev = n;
    }
    std::vector<ExponentValue> q;
    q.reserve(selected.size());
    for (index_t n : selected) q.push_back(p.value(n));
    ExponentValue last = q.back();
    return SubspaceMap(std::move(selected), ExponentSeq::constant(last, std::move(q)));
}

SeqVector lift_vector(const SeqVector& y, const SubspaceMap& map) {
    if (!y.is_finite())
        throw std::invalid_argument("lift needs a finitely supported vector");
    if (y.max_index() > map.max_source_support())
        throw std::out_of_range("vector support exceeds the mapped coordinates");
    std::vector<SeqVector::Entry> out;
    out.reserve(y.entries().size());
    for (const auto& e : y.entries())
        out.push_back({map.target_index(e.index), e.coeff});
    return SeqVector::from_entries(std::move(out));
}

} // namespace vexp
