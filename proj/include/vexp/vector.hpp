// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vexp/exponent.hpp"
#include "vexp/exponent_seq.hpp"

namespace vexp {

// A real sequence, either finitely supported (sorted sparse entries) or
// backed by a deterministic generator. Generator vectors may carry a tail
// certificate which is what makes their norm rigorously enclosable:
//   bound >= (sum_{n > k0} |x_n|^pmin)^(1/pmin), pmin <= every exponent
//   combined past k0.
// Immutable after construction.
class SeqVector {
public:
    struct Entry {
        index_t index; // 1-based
        double coeff;
    };

    struct TailCertificate {
        index_t k0;
        ExponentValue pmin;
        double bound;
    };

    // Names a registered generator so serialized jobs can round-trip.
    struct GeneratorInfo {
        std::string name;
        std::map<std::string, double> params;
    };

    SeqVector() = default; // the zero vector

    // entries must be strictly increasing in index with finite coefficients;
    // zero coefficients are allowed and ignored by the norm
    static SeqVector from_entries(std::vector<Entry> entries);
    static SeqVector dense(std::span<const double> coeffs);
    static SeqVector dense(std::initializer_list<double> coeffs);
    static SeqVector unit(index_t n);
    static SeqVector generated(std::function<double(index_t)> gen,
                               std::optional<TailCertificate> cert,
                               GeneratorInfo info = {});

    bool is_finite() const { return !gen_; }
    const std::vector<Entry>& entries() const; // finite vectors only
    double coeff(index_t n) const;
    // largest index carrying a nonzero coefficient; 0 for the zero vector
    index_t max_index() const;
    const std::optional<TailCertificate>& certificate() const { return cert_; }
    const GeneratorInfo& generator_info() const { return info_; }

    SeqVector scaled(double factor) const;

    // coordinatewise sum of two finitely supported vectors
    friend SeqVector operator+(const SeqVector& a, const SeqVector& b);

private:
    std::vector<Entry> entries_;
    std::function<double(index_t)> gen_;
    std::optional<TailCertificate> cert_;
    GeneratorInfo info_;
};

// Coordinate projections: head keeps indices 1..k, tail keeps indices > k.
// They partition every vector coordinatewise.
SeqVector project_head(const SeqVector& x, index_t k);
SeqVector project_tail(const SeqVector& x, index_t k);

// Coefficientwise sign change, theta(n) in {-1, +1}; +1 past the end of
// `signs`. The norm consumes absolute values only, so it is unchanged
// bit for bit.
SeqVector sign_flip(const SeqVector& x, const std::vector<int>& signs);

} // namespace vexp
