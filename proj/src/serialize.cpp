#include "friedrichs/serialize.hpp"

#include "friedrichs/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace friedrichs {

using nlohmann::json;

namespace {

json integer_json(const boost::multiprecision::cpp_int& value) {
    if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
        return value.convert_to<std::int64_t>();
    }
    return value.str();
}

boost::multiprecision::cpp_int integer_from_json(const json& node) {
    if (node.is_number_unsigned()) return node.get<std::uint64_t>();
    if (node.is_number_integer()) return node.get<std::int64_t>();
    if (node.is_string()) {
        try {
            return boost::multiprecision::cpp_int(node.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigurationError("expected an integer or an integer string");
}

json doubles(const std::vector<double>& values) {
    json out = json::array();
    for (double v : values) out.push_back(v);
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

json rational_json(const Rational& value) {
    return {{"num", integer_json(numerator(value))},
            {"den", integer_json(denominator(value))},
            {"decimal", to_double(value)}};
}

Rational rational_from_json(const json& node) {
    if (!node.is_object() || !node.contains("num") || !node.contains("den")) {
        throw ConfigurationError("expected {\"num\": ..., \"den\": ...}");
    }
    const auto den = integer_from_json(node["den"]);
    if (den <= 0) throw ConfigurationError("rational denominator must be positive");
    return Rational(integer_from_json(node["num"]), den);
}

json to_json(const SpectralResult& result) {
    return {{"e_min", result.e_min},
            {"e_max", result.e_max},
            {"gap_tol", result.gap_tol},
            {"below", doubles(result.below)},
            {"above", doubles(result.above)},
            {"bulk_count", result.bulk_count}};
}

json to_json(const KernelSignature& sig) {
    return {{"n_pos", sig.n_pos},
            {"n_neg", sig.n_neg},
            {"analytic", to_string(sig.analytic)},
            {"efimov_below_possible", sig.efimov_below_possible},
            {"efimov_above_possible", sig.efimov_above_possible}};
}

json to_json(const NecessaryProfile& profile) {
    json entries = json::array();
    for (const auto& e : profile.entries) {
        entries.push_back({{"index", e.index}, {"eigenvalue", e.eigenvalue}, {"potential_energy", e.value}});
    }
    return {{"side", to_string(profile.side)},
            {"edge_value", profile.edge_value},
            {"trend", to_string(profile.trend)},
            {"entries", std::move(entries)}};
}

json to_json(const ConditionScan& scan) {
    json records = json::array();
    for (const auto& r : scan.records) {
        records.push_back(
            {{"k", r.k}, {"quadratic_form_u", r.quadratic_form_u}, {"coupling", r.coupling}, {"margin", r.margin}});
    }
    return {{"family", to_string(scan.family)},
            {"u_max", scan.u_max},
            {"verdict", to_string(scan.verdict)},
            {"n0", scan.n0 ? json(*scan.n0) : json(nullptr)},
            {"records", std::move(records)}};
}

json to_json(const AccumulationTable& table) {
    json stabilized = json::array();
    for (bool s : table.stabilized) stabilized.push_back(s);
    return {{"label", table.label},
            {"ranks", table.ranks},
            {"eps", doubles(table.eps)},
            {"counts", table.counts},
            {"stabilized", std::move(stabilized)},
            {"efimov_signature", table.efimov_signature}};
}

json to_json(const IntervalUnion& intervals) {
    json out = json::array();
    for (const auto& c : intervals.components()) out.push_back({{"lo", rational_json(c.lo)}, {"hi", rational_json(c.hi)}});
    return out;
}

json to_json(const TensorSpectrum& spectrum) {
    json points = json::array();
    for (const auto& p : spectrum.discrete.points) points.push_back({{"value", rational_json(p.value)}, {"count", p.count}});
    json certificates = json::array();
    for (const auto& c : spectrum.discrete.certificates) {
        certificates.push_back({{"kind", to_string(c.kind)},
                                {"lower", rational_json(c.lower)},
                                {"anchor", rational_json(c.anchor)},
                                {"source", c.source}});
    }
    json efimov = json::array();
    for (const auto& e : spectrum.efimov_points) {
        efimov.push_back({{"value", rational_json(e.value)},
                          {"component", e.component},
                          {"anchor", e.anchor == EfimovPoint::Anchor::Alpha ? "alpha" : "beta"},
                          {"anchor_index", e.anchor_index},
                          {"witness", e.witness}});
    }
    return {{"exact", spectrum.exact},
            {"essential", to_json(spectrum.essential)},
            {"n_e", spectrum.n_e},
            {"discrete",
             {{"points", std::move(points)},
              {"expanded_alpha", spectrum.discrete.expanded_alpha},
              {"expanded_beta", spectrum.discrete.expanded_beta},
              {"truncated", spectrum.discrete.truncated},
              {"certificates", std::move(certificates)}}},
            {"efimov_points", std::move(efimov)}};
}

json to_json(const Case2Family& family) {
    return {{"q", doubles(family.q)}, {"n0", family.n0 ? json(*family.n0) : json(nullptr)}};
}

json to_json(const Case3Report& report) {
    return {{"nodes", report.nodes},
            {"below_counts", report.below_counts},
            {"n_pos", report.n_pos},
            {"within_bound", report.within_bound},
            {"stabilized", report.stabilized},
            {"truncation_artifact", report.truncation_artifact},
            {"note", report.note}};
}

json oracle_json(const std::vector<ExactEigenvalue>& values, double e_max) {
    json below = json::array();
    json embedded = json::array();
    for (const auto& v : values) {
        if (v.sign < 0) below.push_back(rational_json(v.omega));
        else embedded.push_back(rational_json(v.omega));
    }
    std::sort(below.begin(), below.end(),
              [](const json& a, const json& b) { return rational_from_json(a) < rational_from_json(b); });
    return {{"exact", true},
            {"e_min", 0.0},
            {"e_max", e_max},
            {"below", std::move(below)},
            {"above", json::array()},
            {"embedded", std::move(embedded)},
            {"bulk_count", nullptr}};
}

std::string spectrum_csv(const SpectralResult& result) {
    std::ostringstream out;
    out << "side,index,eigenvalue\n";
    for (std::size_t i = 0; i < result.below.size(); ++i) out << "below," << i + 1 << ',' << format_double(result.below[i]) << '\n';
    for (std::size_t i = 0; i < result.above.size(); ++i) out << "above," << i + 1 << ',' << format_double(result.above[i]) << '\n';
    return out.str();
}

std::string scan_csv(const ConditionScan& scan) {
    std::ostringstream out;
    out << "k,quadratic_form_u,coupling,margin\n";
    for (const auto& r : scan.records) {
        out << r.k << ',' << format_double(r.quadratic_form_u) << ',' << format_double(r.coupling) << ','
            << format_double(r.margin) << '\n';
    }
    return out.str();
}

std::string profile_csv(const NecessaryProfile& profile) {
    std::ostringstream out;
    out << "side,index,eigenvalue,potential_energy\n";
    for (const auto& e : profile.entries) {
        out << to_string(profile.side) << ',' << e.index << ',' << format_double(e.eigenvalue) << ','
            << format_double(e.value) << '\n';
    }
    return out.str();
}

std::string accumulation_csv(const AccumulationTable& table) {
    std::ostringstream out;
    out << "rank,eps,count\n";
    for (std::size_t r = 0; r < table.ranks.size(); ++r) {
        for (std::size_t e = 0; e < table.eps.size(); ++e) {
            out << table.ranks[r] << ',' << format_double(table.eps[e]) << ',' << table.counts[r][e] << '\n';
        }
    }
    return out.str();
}

std::string intervals_csv(const IntervalUnion& intervals) {
    std::ostringstream out;
    out << "component,lo,hi,lo_exact,hi_exact\n";
    std::size_t k = 0;
    for (const auto& c : intervals.components()) {
        out << ++k << ',' << format_double(to_double(c.lo)) << ',' << format_double(to_double(c.hi)) << ','
            << to_string(c.lo) << ',' << to_string(c.hi) << '\n';
    }
    return out.str();
}

}  // namespace friedrichs
