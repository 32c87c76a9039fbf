// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vexp/exponent.hpp"

namespace vexp {

using index_t = std::uint64_t;

// Closed family of explicit rules n -> p(n) converging in the chart metric.
// Keeping the family closed (instead of accepting arbitrary callables) is
// what makes limits, tail ranges and serialization exact.
struct ConvergentRule {
    enum class Family { Harmonic, Geometric, Linear };

    Family family{Family::Harmonic};
    ExponentValue limit{1.0};
    double a{0.0};
    double b{0.0};

    // p(n) = limit + c/n
    static ConvergentRule harmonic(ExponentValue limit, double c);
    // p(n) = limit + c * ratio^n, ratio in (0, 1)
    static ConvergentRule geometric(ExponentValue limit, double c, double ratio);
    // p(n) = slope * n + offset, diverging to infinity in value but
    // converging to the chart point 0
    static ConvergentRule linear(double slope, double offset);

    ExponentValue eval(index_t n) const;
    // inclusive bounds of {eval(n) : n >= from}; exact because every family
    // is monotone in n
    std::pair<ExponentValue, ExponentValue> range_from(index_t from) const;

    std::string name() const;
    std::map<std::string, double> params() const;
};

// Deterministic generator tail. liminf/limsup and the whole-tail range are
// declared metadata: they cannot be recovered from finitely many samples.
struct EnumeratedTail {
    struct Range {
        index_t from;
        ExponentValue lo;
        ExponentValue hi;
    };

    std::string name; // registered name; empty for ad-hoc tails
    std::map<std::string, double> params;
    std::function<ExponentValue(index_t)> gen;
    std::optional<ExponentValue> liminf;
    std::optional<ExponentValue> limsup;
    std::optional<Range> range;
};

// A map p: {1, 2, ...} -> [1, inf] with a finite explicit prefix and a
// described tail. Values are defined for every index; limit behavior is
// computable exactly for all tails except undeclared enumerations.
// Immutable after construction.
class ExponentSeq {
public:
    enum class TailKind { Constant, Convergent, Enumerated, Clamped, Dual };

    static ExponentSeq constant(ExponentValue limit,
                                std::vector<ExponentValue> prefix = {});
    static ExponentSeq convergent(ConvergentRule rule,
                                  std::vector<ExponentValue> prefix = {});
    static ExponentSeq enumerated(EnumeratedTail tail,
                                  std::vector<ExponentValue> prefix = {});
    // n -> min(hi, max(inner(n), lo)) for every n; requires 1 < lo <= hi < inf
    // so that the clamped sequence always lands in the reflexive range.
    static ExponentSeq clamp(const ExponentSeq& inner, ExponentValue lo,
                             ExponentValue hi);

    ExponentValue value(index_t n) const;
    std::size_t prefix_length() const { return prefix_.size(); }
    const std::vector<ExponentValue>& prefix() const { return prefix_; }

    // Same sequence with at least n leading values materialized into the
    // prefix. Purely representational; value(.) is unchanged.
    ExponentSeq with_prefix_length(std::size_t n) const;

    bool has_limit_metadata() const;
    ExponentValue liminf() const; // throws TailMetadataMissing
    ExponentValue limsup() const; // throws TailMetadataMissing
    // inclusive bounds of {value(n) : n >= from}, when computable
    std::optional<std::pair<ExponentValue, ExponentValue>>
    range_from(index_t from) const;

    TailKind tail_kind() const;
    ExponentValue constant_limit() const;          // Constant tails
    const ConvergentRule& rule() const;            // Convergent tails
    const EnumeratedTail& enumerated_tail() const; // Enumerated tails
    const ExponentSeq& inner() const;              // Clamped/Dual tails
    std::pair<ExponentValue, ExponentValue> clamp_bounds() const;

    friend ExponentSeq dual_exponent(const ExponentSeq& p);

private:
    struct ConstantTail {
        ExponentValue limit;
    };
    struct ConvergentTail {
        ConvergentRule rule;
    };
    struct ClampedTail {
        std::shared_ptr<const ExponentSeq> inner;
        ExponentValue lo;
        ExponentValue hi;
    };
    struct DualTail {
        std::shared_ptr<const ExponentSeq> inner;
    };
    using Tail =
        std::variant<ConstantTail, ConvergentTail, EnumeratedTail, ClampedTail, DualTail>;

    ExponentSeq(std::vector<ExponentValue> prefix, Tail tail);
    ExponentValue tail_value(index_t n) const;

    std::vector<ExponentValue> prefix_;
    Tail tail_;
};

// Pointwise Hoelder conjugate of a whole sequence. Applying it twice
// unwraps back to the original sequence.
ExponentSeq dual_exponent(const ExponentSeq& p);

// Enumerations addressable by name from serialized job descriptions:
//   "universal-rationals"  {}          breadth-first reduced fractions >= 1
//   "wlur"                 {"c": c}    p(k) = 1/(1 - c*2^-k), c in (0, 1)
ExponentSeq registered_enumeration(const std::string& name,
                                   const std::map<std::string, double>& params);

} // namespace vexp
