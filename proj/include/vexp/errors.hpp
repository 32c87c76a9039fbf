// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace vexp {

// Malformed inputs and broken preconditions. The CLI maps all of these to
// exit code 1.
struct TailBoundMissing : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TailMetadataMissing : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonIncreasingIndices : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidRateSide : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotDisjoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A greedy index search ran past its horizon. Either the approximation
// precondition fails (no admissible index exists at all) or the horizon is
// too small. The CLI maps this to exit code 2.
struct SearchHorizonExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vexp
