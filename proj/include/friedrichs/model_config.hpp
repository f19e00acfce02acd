#pragma once

#include "friedrichs/operator_core.hpp"
#include "friedrichs/tensor_spectra.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace friedrichs {

/// A Friedrichs model read from JSON:
///
///   {"potential": {"kind": "tent_series", "coefficients": <coef>, "truncation": 12}
///               | {"kind": "monomial", "power": 2}
///               | {"kind": "table", "values": [...]}
///               | {"kind": "table", "one_minus_x_power": 8, "samples": 4097},
///    "kernel": {"basis": "tent_hats" | "sine_bumps", "lambdas": <coef>, "rank": R}}
///
/// <coef> is {"geometric": {"first": c, "ratio": r}}, {"explicit": [...]} or
/// {"harmonic": {"scale": c}}. Numbers are JSON numbers or "p/q" strings.
struct ModelConfig {
    PotentialModel potential;
    SeparableKernel kernel;
    /// False when some coefficient was a non-integer JSON number.
    bool exact = true;
};

/// Two bodies for the tensor-sum operator:
///
///   {"h1": {"edge_width": w, "discrete": {"prefix": [...], "tail": <tail>}},
///    "h2": {...}}
///
/// <tail> is omitted, null, {"harmonic": {"c": c}} or {"geometric": {"c": c, "r": r}}.
struct TensorConfig {
    BodySummary h1;
    BodySummary h2;
};

/// Every parser throws ConfigurationError naming the offending field; unknown
/// fields are rejected. A top-level "description" string is allowed.
ModelConfig parse_model_config(const nlohmann::json& doc);
TensorConfig parse_tensor_config(const nlohmann::json& doc);
CoefficientSpec parse_coefficients(const nlohmann::json& node, const std::string& path, bool* exact = nullptr);

/// Reads and parses a JSON file; I/O and syntax errors become ConfigurationError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace friedrichs
