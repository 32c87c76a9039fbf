// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/exponent_seq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vexp/analysis.hpp"
#include "vexp/embedding.hpp"
#include "vexp/errors.hpp"

namespace vexp {

namespace {

ExponentValue clamp_value(ExponentValue v, ExponentValue lo, ExponentValue hi) {
    double c = std::min(hi.value(), std::max(v.value(), lo.value()));
    return ExponentValue(c);
}

ExponentValue chart_min(ExponentValue a, ExponentValue b) {
    // smaller value, i.e. larger chart coordinate
    return a.value() <= b.value() ? a : b;
}

ExponentValue chart_max(ExponentValue a, ExponentValue b) {
    return a.value() >= b.value() ? a : b;
}

} // namespace

ConvergentRule ConvergentRule::harmonic(ExponentValue limit, double c) {
    if (limit.is_infinite())
        throw std::invalid_argument("harmonic rule needs a finite limit");
    if (c == 0.0)
        throw std::invalid_argument("harmonic rule needs c != 0; use a constant tail");
    if (!(limit.value() + c >= 1.0))
        throw std::invalid_argument("harmonic rule dips below 1 at n = 1");
    ConvergentRule r;
    r.family = Family::Harmonic;
    r.limit = limit;
    r.a = c;
    return r;
}

ConvergentRule ConvergentRule::geometric(ExponentValue limit, double c, double ratio) {
    if (limit.is_infinite())
        throw std::invalid_argument("geometric rule needs a finite limit");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("geometric rule needs ratio in (0, 1)");
    if (c == 0.0)
        throw std::invalid_argument("geometric rule needs c != 0; use a constant tail");
    if (!(limit.value() + c * ratio >= 1.0))
        throw std::invalid_argument("geometric rule dips below 1 at n = 1");
    ConvergentRule r;
    r.family = Family::Geometric;
    r.limit = limit;
    r.a = c;
    r.b = ratio;
    return r;
}

ConvergentRule ConvergentRule::linear(double slope, double offset) {
    if (!(slope > 0.0))
        throw std::invalid_argument("linear rule needs a positive slope");
    if (!(slope + offset >= 1.0))
        throw std::invalid_argument("linear rule dips below 1 at n = 1");
    ConvergentRule r;
    r.family = Family::Linear;
    r.limit = ExponentValue::infinity();
    r.a = slope;
    r.b = offset;
    return r;
}

ExponentValue ConvergentRule::eval(index_t n) const {
    switch (family) {
    case Family::Harmonic:
        return ExponentValue(limit.value() + a / static_cast<double>(n));
    case Family::Geometric:
        return ExponentValue(limit.value() + a * std::pow(b, static_cast<double>(n)));
    case Family::Linear: {
        double v = a * static_cast<double>(n) + b;
        return std::isfinite(v) ? ExponentValue(v) : ExponentValue::infinity();
    }
    }
    throw std::logic_error("unreachable rule family");
}

std::pair<ExponentValue, ExponentValue> ConvergentRule::range_from(index_t from) const {
    // every family is monotone in n, so the range is spanned by the first
    // value and the limit
    ExponentValue first = eval(from);
    return {chart_min(first, limit), chart_max(first, limit)};
}

std::string ConvergentRule::name() const {
    switch (family) {
    case Family::Harmonic: return "harmonic";
    case Family::Geometric: return "geometric";
    case Family::Linear: return "linear";
    }
    return "";
}

std::map<std::string, double> ConvergentRule::params() const {
    switch (family) {
    case Family::Harmonic: return {{"c", a}};
    case Family::Geometric: return {{"c", a}, {"ratio", b}};
    case Family::Linear: return {{"slope", a}, {"offset", b}};
    }
    return {};
}

ExponentSeq::ExponentSeq(std::vector<ExponentValue> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {}

ExponentSeq ExponentSeq::constant(ExponentValue limit, std::vector<ExponentValue> prefix) {
    return ExponentSeq(std::move(prefix), ConstantTail{limit});
}

ExponentSeq ExponentSeq::convergent(ConvergentRule rule, std::vector<ExponentValue> prefix) {
    return ExponentSeq(std::move(prefix), ConvergentTail{std::move(rule)});
}

ExponentSeq ExponentSeq::enumerated(EnumeratedTail tail, std::vector<ExponentValue> prefix) {
    if (!tail.gen)
        throw std::invalid_argument("enumerated tail needs a generator");
    return ExponentSeq(std::move(prefix), std::move(tail));
}

ExponentSeq ExponentSeq::clamp(const ExponentSeq& inner, ExponentValue lo, ExponentValue hi) {
    if (!(lo.value() > 1.0) || hi.is_infinite() || !(lo.value() <= hi.value()))
        throw std::invalid_argument("clamp needs 1 < lo <= hi < inf");
    return ExponentSeq({}, ClampedTail{std::make_shared<ExponentSeq>(inner), lo, hi});
}

ExponentValue ExponentSeq::tail_value(index_t n) const {
    if (const auto* c = std::get_if<ConstantTail>(&tail_)) return c->limit;
    if (const auto* r = std::get_if<ConvergentTail>(&tail_)) return r->rule.eval(n);
    if (const auto* e = std::get_if<EnumeratedTail>(&tail_)) return e->gen(n);
    if (const auto* cl = std::get_if<ClampedTail>(&tail_))
        return clamp_value(cl->inner->value(n), cl->lo, cl->hi);
    return std::get<DualTail>(tail_).inner->value(n).conjugate();
}

ExponentValue ExponentSeq::value(index_t n) const {
    if (n == 0) throw std::invalid_argument("indices are 1-based");
    if (n <= prefix_.size()) return prefix_[n - 1];
    return tail_value(n);
}

ExponentSeq ExponentSeq::with_prefix_length(std::size_t n) const {
    if (n <= prefix_.size()) return *this;
    std::vector<ExponentValue> prefix = prefix_;
    prefix.reserve(n);
    for (index_t i = prefix_.size() + 1; i <= n; ++i) prefix.push_back(tail_value(i));
    return ExponentSeq(std::move(prefix), tail_);
}

bool ExponentSeq::has_limit_metadata() const {
    if (const auto* e = std::get_if<EnumeratedTail>(&tail_))
        return e->liminf.has_value() && e->limsup.has_value();
    if (const auto* cl = std::get_if<ClampedTail>(&tail_))
        return cl->inner->has_limit_metadata();
    if (const auto* d = std::get_if<DualTail>(&tail_))
        return d->inner->has_limit_metadata();
    return true;
}

ExponentValue ExponentSeq::liminf() const {
    if (const auto* c = std::get_if<ConstantTail>(&tail_)) return c->limit;
    if (const auto* r = std::get_if<ConvergentTail>(&tail_)) return r->rule.limit;
    if (const auto* e = std::get_if<EnumeratedTail>(&tail_)) {
        if (!e->liminf)
            throw TailMetadataMissing("enumerated tail lacks declared liminf");
        return *e->liminf;
    }
    if (const auto* cl = std::get_if<ClampedTail>(&tail_))
        return clamp_value(cl->inner->liminf(), cl->lo, cl->hi);
    // conjugation reverses the order on [1, inf]
    return std::get<DualTail>(tail_).inner->limsup().conjugate();
}

ExponentValue ExponentSeq::limsup() const {
    if (const auto* c = std::get_if<ConstantTail>(&tail_)) return c->limit;
    if (const auto* r = std::get_if<ConvergentTail>(&tail_)) return r->rule.limit;
    if (const auto* e = std::get_if<EnumeratedTail>(&tail_)) {
        if (!e->limsup)
            throw TailMetadataMissing("enumerated tail lacks declared limsup");
        return *e->limsup;
    }
    if (const auto* cl = std::get_if<ClampedTail>(&tail_))
        return clamp_value(cl->inner->limsup(), cl->lo, cl->hi);
    return std::get<DualTail>(tail_).inner->liminf().conjugate();
}

std::optional<std::pair<ExponentValue, ExponentValue>>
ExponentSeq::range_from(index_t from) const {
    if (from == 0) throw std::invalid_argument("indices are 1-based");

    std::optional<std::pair<ExponentValue, ExponentValue>> tail_range;
    index_t tail_start = std::max<index_t>(from, prefix_.size() + 1);
    if (const auto* c = std::get_if<ConstantTail>(&tail_)) {
        tail_range = {{c->limit, c->limit}};
    } else if (const auto* r = std::get_if<ConvergentTail>(&tail_)) {
        tail_range = r->rule.range_from(tail_start);
    } else if (const auto* e = std::get_if<EnumeratedTail>(&tail_)) {
        if (!e->range) return std::nullopt;
        std::pair<ExponentValue, ExponentValue> rng{e->range->lo, e->range->hi};
        // the declared bounds cover n >= range->from; widen with the finitely
        // many explicit values in between when the query starts earlier
        for (index_t n = tail_start; n < e->range->from; ++n) {
            ExponentValue v = e->gen(n);
            rng.first = chart_min(rng.first, v);
            rng.second = chart_max(rng.second, v);
        }
        tail_range = rng;
    } else if (const auto* cl = std::get_if<ClampedTail>(&tail_)) {
        auto inner = cl->inner->range_from(tail_start);
        if (!inner) return std::nullopt;
        tail_range = {{clamp_value(inner->first, cl->lo, cl->hi),
                       clamp_value(inner->second, cl->lo, cl->hi)}};
    } else {
        const auto& d = std::get<DualTail>(tail_);
        auto inner = d.inner->range_from(tail_start);
        if (!inner) return std::nullopt;
        tail_range = {{inner->second.conjugate(), inner->first.conjugate()}};
    }

    auto rng = *tail_range;
    for (index_t n = from; n <= prefix_.size(); ++n) {
        rng.first = chart_min(rng.first, prefix_[n - 1]);
        rng.second = chart_max(rng.second, prefix_[n - 1]);
    }
    return rng;
}

ExponentSeq::TailKind ExponentSeq::tail_kind() const {
    if (std::holds_alternative<ConstantTail>(tail_)) return TailKind::Constant;
    if (std::holds_alternative<ConvergentTail>(tail_)) return TailKind::Convergent;
    if (std::holds_alternative<EnumeratedTail>(tail_)) return TailKind::Enumerated;
    if (std::holds_alternative<ClampedTail>(tail_)) return TailKind::Clamped;
    return TailKind::Dual;
}

ExponentValue ExponentSeq::constant_limit() const {
    return std::get<ConstantTail>(tail_).limit;
}

const ConvergentRule& ExponentSeq::rule() const {
    return std::get<ConvergentTail>(tail_).rule;
}

const EnumeratedTail& ExponentSeq::enumerated_tail() const {
    return std::get<EnumeratedTail>(tail_);
}

const ExponentSeq& ExponentSeq::inner() const {
    if (const auto* cl = std::get_if<ClampedTail>(&tail_)) return *cl->inner;
    return *std::get<DualTail>(tail_).inner;
}

std::pair<ExponentValue, ExponentValue> ExponentSeq::clamp_bounds() const {
    const auto& cl = std::get<ClampedTail>(tail_);
    return {cl.lo, cl.hi};
}

ExponentSeq dual_exponent(const ExponentSeq& p) {
    // conjugation is an involution: unwrap instead of stacking wrappers
    if (const auto* d = std::get_if<ExponentSeq::DualTail>(&p.tail_)) {
        if (p.prefix_.empty()) return *d->inner;
    }
    return ExponentSeq({}, ExponentSeq::DualTail{std::make_shared<ExponentSeq>(p)});
}

ExponentSeq registered_enumeration(const std::string& name,
                                   const std::map<std::string, double>& params) {
    if (name == "universal-rationals") {
        EnumeratedTail t;
        t.name = name;
        t.gen = [](index_t n) { return ExponentValue(universal_rational(n)); };
        t.liminf = ExponentValue(1.0);
        t.limsup = ExponentValue::infinity();
        t.range = EnumeratedTail::Range{1, ExponentValue(1.0), ExponentValue::infinity()};
        return ExponentSeq::enumerated(std::move(t));
    }
    if (name == "wlur") {
        auto it = params.find("c");
        if (it == params.end())
            throw std::invalid_argument("wlur enumeration needs parameter c");
        return wlur_exponents(it->second);
    }
    throw std::invalid_argument("unknown enumeration: " + name);
}

} // namespace vexp
