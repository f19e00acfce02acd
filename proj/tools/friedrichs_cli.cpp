#include "friedrichs/efimov_detector.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/examples_oracle.hpp"
#include "friedrichs/model_config.hpp"
#include "friedrichs/serialize.hpp"
#include "friedrichs/spectral_engine.hpp"
#include "friedrichs/tensor_spectra.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace friedrichs;

constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

struct Options {
    std::string config;
    std::string out;
    std::string format = "json";
    int n = 1024;
    std::optional<int> rank;
    bool galerkin = false;
    std::optional<double> gap_tol;
    std::size_t depth = 64;
    std::vector<double> eps{1e-2, 1e-3, 1e-4};
    std::vector<int> ranks;
    std::optional<int> k_max;
    std::string family;
    int oracle_case = 1;
    int n_max = 8;
};

/// Output files keyed by suffix; the empty suffix is the main artifact.
using Artifacts = std::map<std::string, std::string>;

void emit(const Options& opt, const Artifacts& artifacts) {
    if (opt.out.empty()) {
        bool first = true;
        for (const auto& [suffix, text] : artifacts) {
            if (!first) std::cout << '\n';
            if (!suffix.empty()) std::cout << "# " << suffix << '\n';
            std::cout << text;
            first = false;
        }
        return;
    }
    for (const auto& [suffix, text] : artifacts) {
        const std::string path = suffix.empty() ? opt.out : opt.out + "." + suffix;
        std::ofstream file(path, std::ios::binary);
        if (!file) throw ConfigurationError("cannot write " + path);
        file << text;
    }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

ModelConfig load_model(const Options& opt) {
    if (opt.config.empty()) throw ConfigurationError("--config is required");
    ModelConfig model = parse_model_config(read_json_file(opt.config));
    if (opt.rank) {
        const auto available = model.kernel.lambdas().length();
        if (*opt.rank < 0 || *opt.rank > kMaxDyadicIndex || (available && *opt.rank > *available)) {
            throw ConfigurationError("--rank: out of range for the configured kernel");
        }
        model.kernel = model.kernel.truncated(*opt.rank);
    }
    return model;
}

DiscretizedOperator build_operator(const Options& opt, const ModelConfig& model) {
    if (opt.galerkin) return galerkin_operator(model.potential, model.kernel, model.kernel.rank());
    return discretize_nystrom(model.potential, model.kernel, opt.n);
}

const char* representation_name(Representation r) {
    switch (r) {
        case Representation::Nystrom: return "nystrom";
        case Representation::Galerkin: return "galerkin";
        case Representation::Matrix: return "matrix";
    }
    return "unknown";
}

Artifacts run_spectrum(const Options& opt) {
    const ModelConfig model = load_model(opt);
    const DiscretizedOperator op = build_operator(opt, model);
    const SpectralResult result = discrete_spectrum(op, opt.gap_tol);
    if (opt.format == "csv") return {{"", spectrum_csv(result)}};
    json doc = to_json(result);
    doc["representation"] = representation_name(op.representation);
    doc["size"] = op.size();
    return {{"", dump(doc)}};
}

std::vector<int> default_ranks(int rank) {
    std::set<int> ranks;
    for (int r = rank - 8; r <= rank; r += 2) {
        if (r >= 1) ranks.insert(r);
    }
    if (ranks.empty()) ranks.insert(rank);
    return {ranks.begin(), ranks.end()};
}

Artifacts run_efimov(const Options& opt) {
    const ModelConfig model = load_model(opt);
    if (model.kernel.rank() < 1) throw ConfigurationError("efimov: kernel rank must be at least 1");
    BasisFamily family = model.kernel.basis();
    if (opt.family == "tent_hats") family = BasisFamily::TentHats;
    if (opt.family == "sine_bumps") family = BasisFamily::SineBumps;

    const DiscretizedOperator op = build_operator(opt, model);
    const SpectralResult result = discrete_spectrum(op, opt.gap_tol);
    const NecessaryProfile below = necessary_condition_profile(result, op, Side::Below);
    const NecessaryProfile above = necessary_condition_profile(result, op, Side::Above);
    const ConditionScan scan = sufficient_condition_scan(model.potential, model.kernel, family,
                                                         opt.k_max.value_or(model.kernel.rank()));

    AccumulationOptions acc;
    acc.mode = opt.galerkin ? AccumulationOptions::Mode::Galerkin : AccumulationOptions::Mode::Nystrom;
    acc.nodes = opt.n;
    for (int r : opt.ranks) {
        if (r < 1 || r > model.kernel.rank()) throw ConfigurationError("--ranks: each rank must lie in [1, kernel rank]");
    }
    const std::vector<int> ranks = opt.ranks.empty() ? default_ranks(model.kernel.rank()) : opt.ranks;
    const AccumulationTable table = accumulation_profile(model.potential, model.kernel, ranks, opt.eps, acc);

    if (opt.format == "csv") {
        if (opt.out.empty()) throw ConfigurationError("efimov --format csv requires --out");
        return {{"", accumulation_csv(table)},
                {"scan.csv", scan_csv(scan)},
                {"profile.csv", profile_csv(below) + profile_csv(above).substr(profile_csv(above).find('\n') + 1)}};
    }
    json doc;
    doc["signature"] = to_json(kernel_signature(model.kernel));
    doc["spectrum"] = to_json(result);
    doc["profile"] = {{"below", to_json(below)}, {"above", to_json(above)}};
    doc["scan"] = to_json(scan);
    doc["accumulation"] = to_json(table);
    return {{"", dump(doc)}};
}

Artifacts run_tensor(const Options& opt) {
    if (opt.config.empty()) throw ConfigurationError("--config is required");
    const TensorConfig config = parse_tensor_config(read_json_file(opt.config));
    const TensorSpectrum spectrum = spectrum_T(config.h1, config.h2, opt.depth);
    if (opt.format == "csv") return {{"", intervals_csv(spectrum.essential)}};
    return {{"", dump(to_json(spectrum))}};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

Artifacts run_oracle_case1(const Options& opt) {
    const Case1Model model = Case1Model::standard();
    const auto exact = case1_exact_spectrum(model.a, model.lambda, opt.n_max);
    const Eigen::MatrixXd galerkin = discretize_galerkin(model.potential(), model.kernel(), model.rank);
    const SpectralResult nystrom = discrete_spectrum(discretize_nystrom(model.potential(), model.kernel(), opt.n));

    std::vector<Rational> negatives;
    for (const auto& e : exact) {
        if (e.sign < 0) negatives.push_back(e.omega);
    }
    std::sort(negatives.begin(), negatives.end());

    json rows = json::array();
    std::string csv = "n,omega_exact,omega,sign,galerkin,nystrom,diff_nystrom\n";
    for (const auto& e : exact) {
        std::optional<double> g;
        std::optional<double> ny;
        if (e.n <= model.rank) g = galerkin(e.n - 1, e.n - 1);
        if (e.sign < 0) {
            const auto pos = static_cast<std::size_t>(std::lower_bound(negatives.begin(), negatives.end(), e.omega) -
                                                      negatives.begin());
            if (pos < nystrom.below.size()) ny = nystrom.below[pos];
        }
        const double w = to_double(e.omega);
        std::optional<double> diff;
        if (ny) diff = *ny - w;
        rows.push_back({{"n", e.n},
                        {"omega", rational_json(e.omega)},
                        {"sign", e.sign},
                        {"galerkin", optional_number(g)},
                        {"nystrom", optional_number(ny)},
                        {"diff_nystrom", optional_number(diff)}});
        const auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
        csv += std::to_string(e.n) + "," + to_string(e.omega) + "," + format_double(w) + "," +
               std::to_string(e.sign) + "," + cell(g) + "," + cell(ny) + "," + cell(diff) + "\n";
    }
    if (opt.format == "csv") return {{"", csv}};
    json doc = oracle_json(exact, model.potential().u_max());
    doc["case"] = 1;
    doc["nodes"] = opt.n;
    doc["table"] = std::move(rows);
    return {{"", dump(doc)}};
}

Artifacts run_oracle_case2(const Options& opt) {
    const PotentialModel u = case2_potential();
    const CoefficientSpec lambda = CoefficientSpec::geometric(Rational(1, 2), Rational(1, 2));
    const Case2Family family = case2_sufficient_family(u, lambda, opt.n_max);
    const SeparableKernel kernel(lambda, BasisFamily::SineBumps, opt.n_max);
    const ConditionScan scan = sufficient_condition_scan(u, kernel, BasisFamily::SineBumps, opt.n_max);
    if (opt.format == "csv") {
        std::string csv = "n,q,lambda\n";
        for (int n = 1; n <= opt.n_max; ++n) {
            csv += std::to_string(n) + "," + format_double(family.q[static_cast<std::size_t>(n - 1)]) + "," +
                   to_string(lambda.exact(n)) + "\n";
        }
        return {{"", csv}};
    }
    json doc = to_json(family);
    doc["case"] = 2;
    doc["exact"] = true;
    json lambdas = json::array();
    for (int n = 1; n <= opt.n_max; ++n) lambdas.push_back(rational_json(lambda.exact(n)));
    doc["lambda"] = std::move(lambdas);
    doc["scan"] = to_json(scan);
    return {{"", dump(doc)}};
}

Artifacts run_oracle_case3(const Options& opt) {
    SeparableKernel kernel(CoefficientSpec::geometric(Rational(1, 3), Rational(1, 3)), BasisFamily::TentHats, 8);
    if (!opt.config.empty()) kernel = load_model(opt).kernel;
    else if (opt.rank) kernel = kernel.truncated(*opt.rank);
    const Case3Report report = case3_reference(kernel);
    if (opt.format == "csv") {
        std::string csv = "nodes,below_count\n";
        for (std::size_t i = 0; i < report.nodes.size(); ++i) {
            csv += std::to_string(report.nodes[i]) + "," + std::to_string(report.below_counts[i]) + "\n";
        }
        return {{"", csv}};
    }
    json doc = to_json(report);
    doc["case"] = 3;
    return {{"", dump(doc)}};
}

Artifacts run_oracle(const Options& opt) {
    if (opt.n_max < 1 || opt.n_max > kMaxDyadicIndex) throw ConfigurationError("--n-max: must lie in [1, 50]");
    switch (opt.oracle_case) {
        case 1: return run_oracle_case1(opt);
        case 2: return run_oracle_case2(opt);
        case 3: return run_oracle_case3(opt);
        default: throw ConfigurationError("--case: expected 1, 2 or 3");
    }
}

int report_error(const char* kind, const std::string& message, int code) {
    std::cerr << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Friedrichs-model spectra, Efimov diagnostics and tensor-sum spectra"};
    app.require_subcommand(1);
    Options opt;

    const auto add_io = [&opt](CLI::App* cmd) {
        cmd->add_option("--out", opt.out, "Output path (stdout when omitted)");
        cmd->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    const auto add_model = [&opt](CLI::App* cmd) {
        cmd->add_option("--n", opt.n, "Nystrom node budget")->check(CLI::Range(16, 8193));
        cmd->add_option("--rank", opt.rank, "Kernel rank override");
        cmd->add_flag("--galerkin", opt.galerkin, "Use the Galerkin matrix in the kernel basis");
        cmd->add_option("--gap-tol", opt.gap_tol, "Gap tolerance")->check(CLI::PositiveNumber);
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "Discrete spectrum of U - K");
    spectrum->add_option("--config", opt.config, "Model config JSON")->required();
    add_model(spectrum);
    add_io(spectrum);

    CLI::App* efimov = app.add_subcommand("efimov", "Efimov-effect diagnostics");
    efimov->add_option("--config", opt.config, "Model config JSON")->required();
    add_model(efimov);
    efimov->add_option("--eps", opt.eps, "Thresholds below the band edge, descending");
    efimov->add_option("--ranks", opt.ranks, "Kernel ranks for the accumulation table");
    efimov->add_option("--k-max", opt.k_max, "Family size for the sufficient-condition scan (default: kernel rank)")->check(CLI::Range(1, kMaxDyadicIndex));
    efimov->add_option("--family", opt.family, "Scan family")->check(CLI::IsMember({"tent_hats", "sine_bumps"}));
    add_io(efimov);

    CLI::App* tensor = app.add_subcommand("tensor", "Spectrum of H1 (x) E + E (x) H2");
    tensor->add_option("--config", opt.config, "Tensor config JSON")->required();
    tensor->add_option("--depth", opt.depth, "Tail terms enumerated beyond each prefix")->check(CLI::Range(1, 100000));
    add_io(tensor);

    CLI::App* oracle = app.add_subcommand("oracle", "Exact reference models");
    oracle->add_option("--case", opt.oracle_case, "1: plateau-aligned tents, 2: decreasing table, 3: quadratic potential");
    oracle->add_option("--n-max", opt.n_max, "Number of terms");
    oracle->add_option("--n", opt.n, "Nystrom node budget for the comparison column")->check(CLI::Range(16, 8193));
    oracle->add_option("--rank", opt.rank, "Kernel rank (case 3)");
    oracle->add_option("--config", opt.config, "Model config whose kernel replaces the default (case 3)");
    add_io(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage", e.what(), kExitValidation);
    }

    try {
        Artifacts artifacts;
        if (app.got_subcommand(spectrum)) artifacts = run_spectrum(opt);
        else if (app.got_subcommand(efimov)) artifacts = run_efimov(opt);
        else if (app.got_subcommand(tensor)) artifacts = run_tensor(opt);
        else artifacts = run_oracle(opt);
        emit(opt, artifacts);
    } catch (const InternalConsistencyError& e) {
        return report_error("internal_consistency", e.what(), kExitInternal);
    } catch (const ConfigurationError& e) {
        return report_error("configuration", e.what(), kExitValidation);
    } catch (const ContractViolation& e) {
        return report_error("contract_violation", e.what(), kExitValidation);
    } catch (const std::invalid_argument& e) {
        return report_error("invalid_argument", e.what(), kExitValidation);
    } catch (const std::domain_error& e) {
        return report_error("domain_error", e.what(), kExitValidation);
    } catch (const std::out_of_range& e) {
        return report_error("out_of_range", e.what(), kExitValidation);
    } catch (const std::exception& e) {
        return report_error("internal", e.what(), kExitInternal);
    }
    return 0;
}
