// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace vexp {

namespace {

void validate_entries(const std::vector<SeqVector::Entry>& entries) {
    index_t prev = 0;
    for (const auto& e : entries) {
        if (e.index == 0)
            throw std::invalid_argument("support indices are 1-based");
        if (e.index <= prev)
            throw std::invalid_argument("support indices must be strictly increasing");
        if (!std::isfinite(e.coeff))
            throw std::invalid_argument("coefficients must be finite");
        prev = e.index;
    }
}

} // namespace

SeqVector SeqVector::from_entries(std::vector<Entry> entries) {
    validate_entries(entries);
    SeqVector v;
    v.entries_ = std::move(entries);
    return v;
}

SeqVector SeqVector::dense(std::span<const double> coeffs) {
    std::vector<Entry> entries;
    entries.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        entries.push_back({static_cast<index_t>(i + 1), coeffs[i]});
    return from_entries(std::move(entries));
}

SeqVector SeqVector::dense(std::initializer_list<double> coeffs) {
    return dense(std::span<const double>(coeffs.begin(), coeffs.size()));
}

SeqVector SeqVector::unit(index_t n) {
    return from_entries({{n, 1.0}});
}

SeqVector SeqVector::generated(std::function<double(index_t)> gen,
                               std::optional<TailCertificate> cert,
                               GeneratorInfo info) {
    if (!gen) throw std::invalid_argument("generator must be callable");
    if (cert) {
        if (cert->k0 == 0)
            throw std::invalid_argument("certificate depth k0 is 1-based");
        if (!(cert->bound >= 0.0) || !std::isfinite(cert->bound))
            throw std::invalid_argument("certificate bound must be a finite nonnegative real");
    }
    SeqVector v;
    v.gen_ = std::move(gen);
    v.cert_ = cert;
    v.info_ = std::move(info);
    return v;
}

const std::vector<SeqVector::Entry>& SeqVector::entries() const {
    if (!is_finite())
        throw std::logic_error("entries() on a generator-backed vector");
    return entries_;
}

double SeqVector::coeff(index_t n) const {
    if (n == 0) throw std::invalid_argument("indices are 1-based");
    if (!is_finite()) return gen_(n);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                               [](const Entry& e, index_t i) { return e.index < i; });
    return (it != entries_.end() && it->index == n) ? it->coeff : 0.0;
}

index_t SeqVector::max_index() const {
    if (!is_finite())
        throw std::logic_error("max_index() on a generator-backed vector");
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->coeff != 0.0) return it->index;
    return 0;
}

SeqVector SeqVector::scaled(double factor) const {
    if (!std::isfinite(factor))
        throw std::invalid_argument("scale factor must be finite");
    if (is_finite()) {
        std::vector<Entry> entries = entries_;
        for (auto& e : entries) e.coeff *= factor;
        return from_entries(std::move(entries));
    }
    auto g = gen_;
    std::optional<TailCertificate> cert = cert_;
    if (cert) cert->bound *= std::abs(factor);
    return generated([g, factor](index_t n) { return factor * g(n); }, cert);
}

SeqVector operator+(const SeqVector& a, const SeqVector& b) {
    if (!a.is_finite() || !b.is_finite())
        throw std::logic_error("vector sum needs finitely supported operands");
    std::vector<SeqVector::Entry> out;
    out.reserve(a.entries_.size() + b.entries_.size());
    std::size_t i = 0, j = 0;
    while (i < a.entries_.size() || j < b.entries_.size()) {
        if (j == b.entries_.size() ||
            (i < a.entries_.size() && a.entries_[i].index < b.entries_[j].index)) {
            out.push_back(a.entries_[i++]);
        } else if (i == a.entries_.size() || b.entries_[j].index < a.entries_[i].index) {
            out.push_back(b.entries_[j++]);
        } else {
            out.push_back({a.entries_[i].index, a.entries_[i].coeff + b.entries_[j].coeff});
            ++i;
            ++j;
        }
    }
    return SeqVector::from_entries(std::move(out));
}

SeqVector project_head(const SeqVector& x, index_t k) {
    if (x.is_finite()) {
        std::vector<SeqVector::Entry> out;
        for (const auto& e : x.entries())
            if (e.index <= k) out.push_back(e);
        return SeqVector::from_entries(std::move(out));
    }
    // a head projection of a generator is finitely supported
    std::vector<SeqVector::Entry> out;
    for (index_t n = 1; n <= k; ++n) {
        double c = x.coeff(n);
        if (c != 0.0) out.push_back({n, c});
    }
    return SeqVector::from_entries(std::move(out));
}

SeqVector project_tail(const SeqVector& x, index_t k) {
    if (x.is_finite()) {
        std::vector<SeqVector::Entry> out;
        for (const auto& e : x.entries())
            if (e.index > k) out.push_back(e);
        return SeqVector::from_entries(std::move(out));
    }
    auto cert = x.certificate();
    if (cert) cert->k0 = std::max(cert->k0, k);
    return SeqVector::generated(
        [x, k](index_t n) { return n > k ? x.coeff(n) : 0.0; }, cert);
}

SeqVector sign_flip(const SeqVector& x, const std::vector<int>& signs) {
    for (int s : signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("signs must be +1 or -1");
    auto sign_at = [&signs](index_t n) {
        return n <= signs.size() ? signs[n - 1] : 1;
    };
    if (x.is_finite()) {
        std::vector<SeqVector::Entry> out = x.entries();
        for (auto& e : out) e.coeff *= sign_at(e.index);
        return SeqVector::from_entries(std::move(out));
    }
    auto signs_copy = signs;
    return SeqVector::generated(
        [x, signs_copy](index_t n) {
            int s = n <= signs_copy.size() ? signs_copy[n - 1] : 1;
            return s * x.coeff(n);
        },
        x.certificate());
}

} // namespace vexp
