// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vexp {

// Extended exponent in [1, inf]. Infinity is a first-class value: the
// two-term fold degenerates to max there and conjugation swaps it with 1.
class ExponentValue {
public:
    ExponentValue(double v) : v_(v) {
        if (!(v >= 1.0)) // also rejects NaN
            throw std::invalid_argument("exponent must lie in [1, inf]");
    }

    static ExponentValue infinity() {
        return ExponentValue(std::numeric_limits<double>::infinity());
    }

    double value() const { return v_; }
    bool is_infinite() const { return std::isinf(v_); }

    // The chart t -> 1/t maps [1, inf] homeomorphically onto [0, 1]; it is
    // the metric used whenever infinity must be an ordinary point.
    double chart() const { return is_infinite() ? 0.0 : 1.0 / v_; }

    static ExponentValue from_chart(double u) {
        if (!(u >= 0.0 && u <= 1.0))
            throw std::invalid_argument("chart coordinate must lie in [0, 1]");
        return u == 0.0 ? infinity() : ExponentValue(1.0 / u);
    }

    // Hoelder conjugate: 1/p + 1/p* = 1, with 1 <-> inf.
    ExponentValue conjugate() const {
        if (v_ == 1.0) return infinity();
        if (is_infinite()) return ExponentValue(1.0);
        return ExponentValue(v_ / (v_ - 1.0));
    }

    friend bool operator==(ExponentValue a, ExponentValue b) { return a.v_ == b.v_; }
    friend bool operator!=(ExponentValue a, ExponentValue b) { return a.v_ != b.v_; }

private:
    double v_;
};

inline ExponentValue dual_exponent(ExponentValue p) { return p.conjugate(); }

} // namespace vexp
