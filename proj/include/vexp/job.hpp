// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "vexp/exponent_seq.hpp"
#include "vexp/vector.hpp"

namespace vexp {

inline constexpr const char* kToolName = "vexp";
inline constexpr const char* kToolVersion = "0.1.0";

// One fully described invocation of the tool. Parsing canonicalizes the
// document (defaults materialized, reals reformatted), so identical jobs
// serialize to identical bytes and reports can echo their job losslessly.
struct JobSpec {
    std::string command; // norm | embed | classify | check | probe
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json params;

    static JobSpec from_json(const nlohmann::ordered_json& doc);
    nlohmann::ordered_json to_json() const;

    friend bool operator==(const JobSpec& a, const JobSpec& b) {
        return a.to_json() == b.to_json();
    }
};

struct Report {
    nlohmann::ordered_json doc;
    int exit_code{0};

    std::string text() const { return doc.dump(2) + "\n"; }
};

// Dispatches the job to the library and assembles the deterministic report
// (inputs echo, results, certificates, status). Exit codes: 0 ok,
// 2 horizon exceeded, 3 property violation found. Invalid inputs throw
// before a report exists; callers map those to exit code 1.
Report run(const JobSpec& job);

// Serialization helpers shared by the CLI and the tests. Reals travel as
// decimal strings with 17 significant digits ("inf" for infinity) so that
// reports are byte-deterministic and round-trip exactly.
std::string format_real(double v);
double parse_real(const nlohmann::ordered_json& v, const char* what);

nlohmann::ordered_json exponent_seq_to_json(const ExponentSeq& s);
ExponentSeq exponent_seq_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json seq_vector_to_json(const SeqVector& v);
SeqVector seq_vector_from_json(const nlohmann::ordered_json& j);

} // namespace vexp
