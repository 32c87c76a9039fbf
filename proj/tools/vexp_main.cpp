// Copyright (c) 2026 vexp contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vexp/job.hpp"

namespace {

std::string read_all(std::istream& in) {
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-exponent sequence space toolkit"};

    std::string input_path, output_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol, epsilon;
    std::optional<std::int64_t> horizon, samples;

    app.add_option("--input", input_path, "job JSON file (default: stdin)");
    app.add_option("--output", output_path, "report file (default: stdout)");
    app.add_option("--seed", seed, "override params.seed");
    app.add_option("--tol", tol, "override params.tol");
    app.add_option("--epsilon", epsilon, "override params.epsilon");
    app.add_option("--horizon", horizon, "override params.horizon");
    app.add_option("--samples", samples, "override params.samples");

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text;
        if (input_path.empty()) {
            text = read_all(std::cin);
        } else {
            std::ifstream file(input_path);
            if (!file) {
                std::cerr << "cannot open input file: " << input_path << "\n";
                return 1;
            }
            text = read_all(file);
        }

        auto doc = nlohmann::ordered_json::parse(text);
        // flags take precedence over the params block in the job document
        if (seed) doc["params"]["seed"] = *seed;
        if (tol) doc["params"]["tol"] = vexp::format_real(*tol);
        if (epsilon) doc["params"]["epsilon"] = vexp::format_real(*epsilon);
        if (horizon) doc["params"]["horizon"] = *horizon;
        if (samples) doc["params"]["samples"] = *samples;

        vexp::JobSpec job = vexp::JobSpec::from_json(doc);
        vexp::Report report = vexp::run(job);

        if (output_path.empty()) {
            std::cout << report.text();
        } else {
            std::ofstream out(output_path);
            if (!out) {
                std::cerr << "cannot open output file: " << output_path << "\n";
                return 1;
            }
            out << report.text();
        }
        return report.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
