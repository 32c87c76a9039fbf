// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include "vexp/job.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "vexp/analysis.hpp"
#include "vexp/embedding.hpp"
#include "vexp/errors.hpp"
#include "vexp/norm.hpp"

namespace vexp {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const ordered_json& v, const char* what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        const char* begin = s.c_str();
        char* end = nullptr;
        double parsed = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || std::isnan(parsed))
            throw std::invalid_argument(std::string(what) + ": not a real number: " + s);
        return parsed;
    }
    throw std::invalid_argument(std::string(what) + ": expected a number or numeric string");
}

namespace {

std::int64_t parse_int(const ordered_json& v, const char* what) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    throw std::invalid_argument(std::string(what) + ": expected an integer");
}

ordered_json reals(const std::vector<double>& xs) {
    ordered_json arr = ordered_json::array();
    for (double x : xs) arr.push_back(format_real(x));
    return arr;
}

ordered_json indices(const std::vector<index_t>& xs) {
    ordered_json arr = ordered_json::array();
    for (index_t x : xs) arr.push_back(x);
    return arr;
}

ExponentValue exponent_from_json(const ordered_json& j, const char* what) {
    return ExponentValue(parse_real(j, what));
}

ordered_json params_to_json(const std::map<std::string, double>& params) {
    ordered_json out = ordered_json::object();
    for (const auto& [k, v] : params) out[k] = format_real(v);
    return out;
}

std::map<std::string, double> params_from_json(const ordered_json& j, const char* what) {
    std::map<std::string, double> out;
    if (j.is_null()) return out;
    if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = parse_real(it.value(), what);
    return out;
}

ConvergentRule rule_from_json(const ordered_json& j) {
    std::string name = j.at("rule").get<std::string>();
    auto params = params_from_json(j.value("params", ordered_json::object()), "rule params");
    auto need = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("rule " + name + " needs parameter " + key);
        return it->second;
    };
    if (name == "harmonic")
        return ConvergentRule::harmonic(exponent_from_json(j.at("limit"), "rule limit"),
                                        need("c"));
    if (name == "geometric")
        return ConvergentRule::geometric(exponent_from_json(j.at("limit"), "rule limit"),
                                         need("c"), need("ratio"));
    if (name == "linear") return ConvergentRule::linear(need("slope"), need("offset"));
    throw std::invalid_argument("unknown convergent rule: " + name);
}

} // namespace

ordered_json exponent_seq_to_json(const ExponentSeq& s) {
    ordered_json out;
    ordered_json prefix = ordered_json::array();
    for (ExponentValue v : s.prefix()) prefix.push_back(format_real(v.value()));
    out["prefix"] = prefix;

    ordered_json tail;
    switch (s.tail_kind()) {
    case ExponentSeq::TailKind::Constant:
        tail["kind"] = "constant";
        tail["limit"] = format_real(s.constant_limit().value());
        break;
    case ExponentSeq::TailKind::Convergent: {
        const auto& r = s.rule();
        tail["kind"] = "convergent";
        tail["rule"] = r.name();
        tail["limit"] = format_real(r.limit.value());
        tail["params"] = params_to_json(r.params());
        break;
    }
    case ExponentSeq::TailKind::Enumerated: {
        const auto& e = s.enumerated_tail();
        if (e.name.empty())
            throw std::invalid_argument("ad-hoc enumerated tails are not serializable");
        tail["kind"] = "enumerated";
        tail["name"] = e.name;
        tail["params"] = params_to_json(e.params);
        break;
    }
    case ExponentSeq::TailKind::Clamped: {
        auto [lo, hi] = s.clamp_bounds();
        tail["kind"] = "clamped";
        tail["inner"] = exponent_seq_to_json(s.inner());
        tail["lo"] = format_real(lo.value());
        tail["hi"] = format_real(hi.value());
        break;
    }
    case ExponentSeq::TailKind::Dual:
        tail["kind"] = "dual";
        tail["inner"] = exponent_seq_to_json(s.inner());
        break;
    }
    out["tail"] = tail;
    return out;
}

ExponentSeq exponent_seq_from_json(const ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("exponent sequence: expected an object");
    std::vector<ExponentValue> prefix;
    if (j.contains("prefix")) {
        if (!j["prefix"].is_array())
            throw std::invalid_argument("exponent prefix: expected an array");
        for (const auto& v : j["prefix"]) prefix.push_back(exponent_from_json(v, "prefix"));
    }
    const ordered_json& tail = j.at("tail");
    std::string kind = tail.at("kind").get<std::string>();
    if (kind == "constant")
        return ExponentSeq::constant(exponent_from_json(tail.at("limit"), "tail limit"),
                                     std::move(prefix));
    if (kind == "convergent")
        return ExponentSeq::convergent(rule_from_json(tail), std::move(prefix));
    if (kind == "enumerated") {
        auto seq = registered_enumeration(
            tail.at("name").get<std::string>(),
            params_from_json(tail.value("params", ordered_json::object()), "tail params"));
        if (!prefix.empty())
            throw std::invalid_argument("enumerated tails take no explicit prefix");
        return seq;
    }
    if (kind == "clamped") {
        if (!prefix.empty())
            throw std::invalid_argument("clamped sequences take no explicit prefix");
        return ExponentSeq::clamp(exponent_seq_from_json(tail.at("inner")),
                                  exponent_from_json(tail.at("lo"), "clamp lo"),
                                  exponent_from_json(tail.at("hi"), "clamp hi"));
    }
    if (kind == "dual") {
        if (!prefix.empty())
            throw std::invalid_argument("dual sequences take no explicit prefix");
        return dual_exponent(exponent_seq_from_json(tail.at("inner")));
    }
    throw std::invalid_argument("unknown tail kind: " + kind);
}

ordered_json seq_vector_to_json(const SeqVector& v) {
    ordered_json out;
    if (v.is_finite()) {
        ordered_json support = ordered_json::array();
        for (const auto& e : v.entries())
            support.push_back(ordered_json::array({e.index, format_real(e.coeff)}));
        out["support"] = support;
        return out;
    }
    const auto& info = v.generator_info();
    if (info.name.empty())
        throw std::invalid_argument("ad-hoc generator vectors are not serializable");
    out["generator"] = ordered_json{{"name", info.name}, {"params", params_to_json(info.params)}};
    if (v.certificate()) {
        const auto& c = *v.certificate();
        out["certificate"] = ordered_json{{"k0", c.k0},
                                          {"pmin", format_real(c.pmin.value())},
                                          {"bound", format_real(c.bound)}};
    }
    return out;
}

SeqVector seq_vector_from_json(const ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("vector: expected an object");
    if (j.contains("support")) {
        std::vector<SeqVector::Entry> entries;
        for (const auto& pair : j["support"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("vector support: expected [index, coeff] pairs");
            auto idx = parse_int(pair[0], "support index");
            if (idx < 1) throw std::invalid_argument("support indices are 1-based");
            entries.push_back({static_cast<index_t>(idx), parse_real(pair[1], "coefficient")});
        }
        return SeqVector::from_entries(std::move(entries));
    }
    if (!j.contains("generator"))
        throw std::invalid_argument("vector needs either support or generator");

    const ordered_json& g = j["generator"];
    std::string name = g.at("name").get<std::string>();
    auto params = params_from_json(g.value("params", ordered_json::object()), "generator params");
    std::function<double(index_t)> gen;
    if (name == "geometric") {
        auto scale_it = params.find("scale");
        auto ratio_it = params.find("ratio");
        if (scale_it == params.end() || ratio_it == params.end())
            throw std::invalid_argument("geometric generator needs scale and ratio");
        double scale = scale_it->second, ratio = ratio_it->second;
        if (!(std::abs(ratio) < 1.0))
            throw std::invalid_argument("geometric generator needs |ratio| < 1");
        gen = [scale, ratio](index_t n) {
            return scale * std::pow(ratio, static_cast<double>(n));
        };
    } else {
        throw std::invalid_argument("unknown vector generator: " + name);
    }

    std::optional<SeqVector::TailCertificate> cert;
    if (j.contains("certificate")) {
        const ordered_json& c = j["certificate"];
        auto k0 = parse_int(c.at("k0"), "certificate k0");
        if (k0 < 1) throw std::invalid_argument("certificate k0 is 1-based");
        cert = SeqVector::TailCertificate{static_cast<index_t>(k0),
                                          exponent_from_json(c.at("pmin"), "certificate pmin"),
                                          parse_real(c.at("bound"), "certificate bound")};
    }
    return SeqVector::generated(std::move(gen), cert, SeqVector::GeneratorInfo{name, params});
}

namespace {

double param_real(const ordered_json& params, const char* key, double fallback) {
    return params.contains(key) ? parse_real(params.at(key), key) : fallback;
}

std::int64_t param_int(const ordered_json& params, const char* key, std::int64_t fallback) {
    return params.contains(key) ? parse_int(params.at(key), key) : fallback;
}

} // namespace

JobSpec JobSpec::from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("job: expected a JSON object");
    JobSpec job;
    job.command = doc.at("command").get<std::string>();
    ordered_json in = doc.value("inputs", ordered_json::object());
    ordered_json pr = doc.value("params", ordered_json::object());
    job.inputs = ordered_json::object();
    job.params = ordered_json::object();

    if (job.command == "norm") {
        job.inputs["vector"] = seq_vector_to_json(seq_vector_from_json(in.at("vector")));
        job.inputs["exponents"] =
            exponent_seq_to_json(exponent_seq_from_json(in.at("exponents")));
        job.params["tol"] = format_real(param_real(pr, "tol", 1e-9));
        job.params["horizon"] = param_int(pr, "horizon", 1'000'000);
    } else if (job.command == "embed") {
        job.inputs["target"] = exponent_seq_to_json(exponent_seq_from_json(in.at("target")));
        job.inputs["host"] = exponent_seq_to_json(exponent_seq_from_json(in.at("host")));
        job.params["epsilon"] = format_real(param_real(pr, "epsilon", 0.1));
        job.params["horizon"] = param_int(pr, "horizon", 1'000'000);
        job.params["samples"] = param_int(pr, "samples", 200);
        job.params["seed"] = param_int(pr, "seed", 1);
    } else if (job.command == "classify") {
        job.inputs["exponents"] =
            exponent_seq_to_json(exponent_seq_from_json(in.at("exponents")));
    } else if (job.command == "check") {
        job.inputs["exponents"] =
            exponent_seq_to_json(exponent_seq_from_json(in.at("exponents")));
        std::string estimate = in.value("estimate", std::string("both"));
        if (estimate != "upper" && estimate != "lower" && estimate != "both")
            throw std::invalid_argument("estimate must be upper, lower or both");
        job.inputs["estimate"] = estimate;
        if (estimate != "lower")
            job.inputs["p0"] = format_real(parse_real(in.at("p0"), "p0"));
        if (estimate != "upper")
            job.inputs["q0"] = format_real(parse_real(in.at("q0"), "q0"));
        ordered_json family = in.value("family", ordered_json::object());
        job.inputs["family"] =
            ordered_json{{"count", param_int(family, "count", 4)},
                         {"max_support", param_int(family, "max_support", 8)}};
        job.params["samples"] = param_int(pr, "samples", 100);
        job.params["seed"] = param_int(pr, "seed", 1);
    } else if (job.command == "probe") {
        job.inputs["budget"] = format_real(parse_real(in.at("budget"), "budget"));
        job.inputs["depth"] = param_int(in, "depth", 20);
    } else {
        throw std::invalid_argument("unknown command: " + job.command);
    }
    return job;
}

ordered_json JobSpec::to_json() const {
    return ordered_json{{"command", command}, {"inputs", inputs}, {"params", params}};
}

namespace {

void run_norm(const JobSpec& job, ordered_json& result, std::string& status, int& code) {
    SeqVector x = seq_vector_from_json(job.inputs.at("vector"));
    ExponentSeq p = exponent_seq_from_json(job.inputs.at("exponents"));
    NormParams params;
    params.tol = parse_real(job.params.at("tol"), "tol");
    params.horizon = static_cast<index_t>(parse_int(job.params.at("horizon"), "horizon"));
    NormEnclosure enc = phi_norm(x, p, params);
    result["lower"] = format_real(enc.lower);
    result["upper"] = format_real(enc.upper);
    result["k_used"] = enc.k_used;
    result["exact"] = enc.exact;
    result["tol_met"] = enc.tol_met;
    if (!enc.tol_met) {
        status = "horizon-exceeded";
        code = 2;
    }
}

void run_embed(const JobSpec& job, ordered_json& result, std::string& status, int& code) {
    ExponentSeq target = exponent_seq_from_json(job.inputs.at("target"));
    ExponentSeq host = exponent_seq_from_json(job.inputs.at("host"));
    double epsilon = parse_real(job.params.at("epsilon"), "epsilon");
    auto horizon = static_cast<index_t>(parse_int(job.params.at("horizon"), "horizon"));
    auto samples = static_cast<int>(parse_int(job.params.at("samples"), "samples"));
    auto seed = static_cast<std::uint64_t>(parse_int(job.params.at("seed"), "seed"));

    try {
        EmbeddingMap map = build_embedding(target, host, epsilon, horizon);
        result["selected"] = indices(map.selected);
        ordered_json targets = ordered_json::array();
        for (index_t j = 1; j <= map.selected.size() + 1; ++j)
            targets.push_back(map.target_index(j));
        result["target_indices"] = targets;
        result["forward_bound"] = format_real(map.forward_bound);
        result["backward_bound"] = format_real(map.backward_bound);
        result["forward_factors"] = reals(map.forward_factors);
        result["backward_factors"] = reals(map.backward_factors);
        DistortionReport cert = certify_distortion(map, samples, seed);
        result["forward_residuals"] = reals(cert.forward_residuals);
        result["backward_residuals"] = reals(cert.backward_residuals);
        if (samples > 0)
            result["distortion"] = ordered_json{{"samples", samples},
                                                {"max_ratio", format_real(cert.max_ratio)},
                                                {"min_ratio", format_real(cert.min_ratio)}};
    } catch (const SearchHorizonExceeded& e) {
        result["error"] = e.what();
        status = "horizon-exceeded";
        code = 2;
    }
}

void run_classify(const JobSpec& job, ordered_json& result) {
    ExponentSeq p = exponent_seq_from_json(job.inputs.at("exponents"));
    ReflexivityVerdict verdict = classify_reflexivity(p);
    result["verdict"] = verdict.verdict == Reflexivity::Superreflexive ? "superreflexive"
                                                                       : "non-reflexive";
    result["liminf"] = format_real(verdict.liminf.value());
    result["limsup"] = format_real(verdict.limsup.value());
    if (verdict.super) {
        result["evidence"] = ordered_json{{"p0", format_real(verdict.super->p0.value())},
                                          {"q0", format_real(verdict.super->q0.value())},
                                          {"k0", verdict.super->k0}};
    } else {
        const auto& non = *verdict.non_reflexive;
        result["evidence"] = ordered_json{
            {"side", non.side == NonReflexiveSide::ContainsL1 ? "contains-l1"
                                                              : "contains-linf"},
            {"seed_target", format_real(non.seed_target.value())}};
    }
}

ordered_json violation_to_json(const EstimateViolation& v) {
    ordered_json family = ordered_json::array();
    for (const auto& x : v.family) family.push_back(seq_vector_to_json(x));
    ordered_json shrunk = ordered_json::array();
    for (const auto& x : v.shrunk) shrunk.push_back(seq_vector_to_json(x));
    return ordered_json{{"family", family},
                        {"margin", format_real(v.margin)},
                        {"shrunk", shrunk},
                        {"shrunk_margin", format_real(v.shrunk_margin)}};
}

void run_check(const JobSpec& job, ordered_json& result, std::string& status, int& code) {
    ExponentSeq p = exponent_seq_from_json(job.inputs.at("exponents"));
    std::string estimate = job.inputs.at("estimate").get<std::string>();
    auto count = static_cast<int>(parse_int(job.inputs.at("family").at("count"), "count"));
    auto max_support = static_cast<int>(
        parse_int(job.inputs.at("family").at("max_support"), "max_support"));
    auto samples = static_cast<int>(parse_int(job.params.at("samples"), "samples"));
    auto seed = static_cast<std::uint64_t>(parse_int(job.params.at("seed"), "seed"));

    bool violated = false;
    auto run_side = [&](bool upper) {
        ExponentValue e = exponent_from_json(job.inputs.at(upper ? "p0" : "q0"),
                                             upper ? "p0" : "q0");
        double min_margin = std::numeric_limits<double>::infinity();
        int violations = 0;
        std::optional<EstimateViolation> first;
        for (int f = 0; f < samples; ++f) {
            auto family = random_disjoint_family(count, max_support, seed + static_cast<std::uint64_t>(f));
            EstimateResult r = upper ? check_upper_estimate(family, p, e)
                                     : check_lower_estimate(family, p, e);
            min_margin = std::min(min_margin, r.margin);
            if (r.violation) {
                ++violations;
                if (!first) first = std::move(r.violation);
            }
        }
        ordered_json side{{"exponent", format_real(e.value())},
                          {"checked", samples},
                          {"min_margin", format_real(min_margin)},
                          {"violations", violations}};
        if (first) side["counterexample"] = violation_to_json(*first);
        violated |= violations > 0;
        return side;
    };

    if (estimate != "lower") result["upper"] = run_side(true);
    if (estimate != "upper") result["lower"] = run_side(false);
    if (violated) {
        status = "violation-found";
        code = 3;
    }
}

void run_probe(const JobSpec& job, ordered_json& result) {
    double budget = parse_real(job.inputs.at("budget"), "budget");
    auto depth = static_cast<int>(parse_int(job.inputs.at("depth"), "depth"));
    WlurWitness witness = build_wlur_counterexample(budget, depth);
    WlurReport report = evaluate_wlur_witness(witness, depth);
    result["c"] = format_real(witness.c);
    result["product"] = format_real(witness.product_value);
    result["indices"] = indices(witness.indices);
    ordered_json coeffs = ordered_json::array();
    for (const auto& e : witness.functional.coefficients.entries())
        coeffs.push_back(ordered_json::array({e.index, format_real(e.coeff)}));
    result["functional_support"] = coeffs;
    result["pair_norms"] = reals(report.pair_norms);
    result["functional_values"] = reals(report.functional_values);
    result["residual_products"] = reals(report.residual_products);
}

} // namespace

Report run(const JobSpec& job) {
    ordered_json doc;
    doc["tool"] = ordered_json{{"name", kToolName}, {"version", kToolVersion}};
    doc["command"] = job.command;
    doc["job"] = job.to_json();

    ordered_json result = ordered_json::object();
    std::string status = "ok";
    int code = 0;

    if (job.command == "norm")
        run_norm(job, result, status, code);
    else if (job.command == "embed")
        run_embed(job, result, status, code);
    else if (job.command == "classify")
        run_classify(job, result);
    else if (job.command == "check")
        run_check(job, result, status, code);
    else if (job.command == "probe")
        run_probe(job, result);
    else
        throw std::invalid_argument("unknown command: " + job.command);

    doc["result"] = result;
    doc["status"] = status;
    doc["exit_code"] = code;
    return Report{std::move(doc), code};
}

} // namespace vexp
