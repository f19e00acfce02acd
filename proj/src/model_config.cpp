#include "friedrichs/model_config.hpp"

#include "friedrichs/errors.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>

namespace friedrichs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigurationError(path + ": " + message);
}

const json& require_object(const json& node, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!node.is_object()) fail(path, "expected an object");
    const std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& item : node.items()) {
        if (names.count(item.key()) == 0) fail(path + "." + item.key(), "unknown field");
    }
    return node;
}

const json& field(const json& node, const std::string& path, const char* name) {
    auto it = node.find(name);
    if (it == node.end()) fail(path + "." + name, "missing field");
    return *it;
}

Rational parse_number(const json& node, const std::string& path, bool* exact) {
    try {
        if (node.is_number_integer()) {
            return node.is_number_unsigned() ? Rational(node.get<std::uint64_t>()) : Rational(node.get<std::int64_t>());
        }
        if (node.is_number_float()) {
            const double v = node.get<double>();
            if (!std::isfinite(v)) fail(path, "number must be finite");
            if (exact != nullptr) *exact = false;
            return rational_from_double(v);
        }
        if (node.is_string()) return parse_rational(node.get<std::string>());
    } catch (const ConfigurationError&) {
        throw;
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    fail(path, "expected a number or a \"p/q\" string");
}

int parse_int(const json& node, const std::string& path, int lo, int hi) {
    if (!node.is_number_integer()) fail(path, "expected an integer");
    const auto v = node.get<std::int64_t>();
    if (v < lo || v > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigurationError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    } catch (const std::domain_error& e) {
        fail(path, e.what());
    } catch (const std::out_of_range& e) {
        fail(path, e.what());
    }
}

PotentialModel parse_potential(const json& node, const std::string& path, bool* exact) {
    if (!node.is_object()) fail(path, "expected an object");
    const json& kind_node = field(node, path, "kind");
    if (!kind_node.is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = kind_node.get<std::string>();
    if (kind == "tent_series") {
        require_object(node, path, {"kind", "coefficients", "truncation"});
        CoefficientSpec coefficients = parse_coefficients(field(node, path, "coefficients"), path + ".coefficients", exact);
        const int truncation =
            node.contains("truncation") ? parse_int(node["truncation"], path + ".truncation", 1, kMaxDyadicIndex) : 12;
        return guarded(path, [&] { return PotentialModel::tent_series(coefficients, truncation); });
    }
    if (kind == "monomial") {
        require_object(node, path, {"kind", "power"});
        const int power = parse_int(field(node, path, "power"), path + ".power", 1, 64);
        return PotentialModel::monomial(power);
    }
    if (kind == "table") {
        require_object(node, path, {"kind", "values", "one_minus_x_power", "samples"});
        if (node.contains("values")) {
            if (node.contains("one_minus_x_power") || node.contains("samples")) {
                fail(path, "\"values\" excludes \"one_minus_x_power\" and \"samples\"");
            }
            const json& values = node["values"];
            if (!values.is_array()) fail(path + ".values", "expected an array");
            std::vector<double> samples;
            for (std::size_t i = 0; i < values.size(); ++i) {
                samples.push_back(to_double(parse_number(values[i], path + ".values[" + std::to_string(i) + "]", exact)));
            }
            return guarded(path, [&] { return PotentialModel::table(std::move(samples)); });
        }
        const int power = parse_int(field(node, path, "one_minus_x_power"), path + ".one_minus_x_power", 1, 64);
        const int samples = node.contains("samples")
                                ? parse_int(node["samples"], path + ".samples", 2, 1 << 20)
                                : PotentialModel::kDefaultTableSamples;
        return PotentialModel::tabulate([power](double x) { return std::pow(1.0 - x, power); }, samples);
    }
    fail(path + ".kind", "expected \"tent_series\", \"monomial\" or \"table\"");
}

BasisFamily parse_basis(const json& node, const std::string& path) {
    if (node == "tent_hats") return BasisFamily::TentHats;
    if (node == "sine_bumps") return BasisFamily::SineBumps;
    fail(path, "expected \"tent_hats\" or \"sine_bumps\"");
}

SeparableKernel parse_kernel(const json& node, const std::string& path, bool* exact) {
    require_object(node, path, {"basis", "lambdas", "rank"});
    const BasisFamily basis = parse_basis(field(node, path, "basis"), path + ".basis");
    CoefficientSpec lambdas = parse_coefficients(field(node, path, "lambdas"), path + ".lambdas", exact);
    const int rank = parse_int(field(node, path, "rank"), path + ".rank", 0, kMaxDyadicIndex);
    return guarded(path, [&] { return SeparableKernel(lambdas, basis, rank); });
}

EigenSequence parse_sequence(const json& node, const std::string& path, bool* exact) {
    require_object(node, path, {"prefix", "tail"});
    std::vector<Rational> prefix;
    if (node.contains("prefix")) {
        const json& p = node["prefix"];
        if (!p.is_array()) fail(path + ".prefix", "expected an array");
        for (std::size_t i = 0; i < p.size(); ++i) {
            prefix.push_back(parse_number(p[i], path + ".prefix[" + std::to_string(i) + "]", exact));
        }
    }
    EigenSequence::Tail tail = EigenSequence::NoTail{};
    if (node.contains("tail") && !node["tail"].is_null()) {
        const std::string tpath = path + ".tail";
        const json& t = node["tail"];
        if (!t.is_object() || t.size() != 1) fail(tpath, "expected {\"harmonic\": ...} or {\"geometric\": ...}");
        if (t.contains("harmonic")) {
            const json& h = require_object(t["harmonic"], tpath + ".harmonic", {"c"});
            tail = EigenSequence::HarmonicTail{parse_number(field(h, tpath + ".harmonic", "c"), tpath + ".harmonic.c", exact)};
        } else if (t.contains("geometric")) {
            const std::string gpath = tpath + ".geometric";
            const json& g = require_object(t["geometric"], gpath, {"c", "r"});
            tail = EigenSequence::GeometricTail{parse_number(field(g, gpath, "c"), gpath + ".c", exact),
                                                parse_number(field(g, gpath, "r"), gpath + ".r", exact)};
        } else {
            fail(tpath, "expected {\"harmonic\": ...} or {\"geometric\": ...}");
        }
    }
    return guarded(path, [&] { return EigenSequence(std::move(prefix), std::move(tail)); });
}

BodySummary parse_body(const json& node, const std::string& path) {
    require_object(node, path, {"edge_width", "discrete"});
    BodySummary body;
    body.edge_width = parse_number(field(node, path, "edge_width"), path + ".edge_width", &body.exact);
    if (body.edge_width < 0) fail(path + ".edge_width", "must be non-negative");
    body.discrete = parse_sequence(field(node, path, "discrete"), path + ".discrete", &body.exact);
    if (body.discrete.infinite() && body.edge_width == 0) {
        fail(path + ".edge_width", "must be positive when the eigenvalues have an infinite tail");
    }
    return body;
}

}  // namespace

CoefficientSpec parse_coefficients(const json& node, const std::string& path, bool* exact) {
    if (!node.is_object() || node.size() != 1) {
        fail(path, "expected exactly one of \"geometric\", \"explicit\", \"harmonic\"");
    }
    if (node.contains("explicit")) {
        const json& values = node["explicit"];
        if (!values.is_array()) fail(path + ".explicit", "expected an array");
        std::vector<Rational> out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.push_back(parse_number(values[i], path + ".explicit[" + std::to_string(i) + "]", exact));
        }
        return CoefficientSpec::explicit_values(std::move(out));
    }
    if (node.contains("geometric")) {
        const std::string gpath = path + ".geometric";
        const json& g = require_object(node["geometric"], gpath, {"first", "ratio"});
        Rational first = parse_number(field(g, gpath, "first"), gpath + ".first", exact);
        Rational ratio = parse_number(field(g, gpath, "ratio"), gpath + ".ratio", exact);
        return guarded(gpath, [&] { return CoefficientSpec::geometric(first, ratio); });
    }
    if (node.contains("harmonic")) {
        const std::string hpath = path + ".harmonic";
        const json& h = require_object(node["harmonic"], hpath, {"scale"});
        return CoefficientSpec::harmonic(parse_number(field(h, hpath, "scale"), hpath + ".scale", exact));
    }
    fail(path, "expected exactly one of \"geometric\", \"explicit\", \"harmonic\"");
}

ModelConfig parse_model_config(const json& doc) {
    require_object(doc, "$", {"description", "potential", "kernel"});
    bool exact = true;
    PotentialModel potential = parse_potential(field(doc, "$", "potential"), "$.potential", &exact);
    SeparableKernel kernel = parse_kernel(field(doc, "$", "kernel"), "$.kernel", &exact);
    return ModelConfig{std::move(potential), std::move(kernel), exact};
}

TensorConfig parse_tensor_config(const json& doc) {
    require_object(doc, "$", {"description", "h1", "h2"});
    return TensorConfig{parse_body(field(doc, "$", "h1"), "$.h1"), parse_body(field(doc, "$", "h2"), "$.h2")};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError(path.string() + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigurationError(path.string() + ": " + e.what());
    }
}

}  // namespace friedrichs
