#pragma once

#include "friedrichs/efimov_detector.hpp"
#include "friedrichs/examples_oracle.hpp"
#include "friedrichs/spectral_engine.hpp"
#include "friedrichs/tensor_spectra.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace friedrichs {

/// {"num": n, "den": d, "decimal": x}. Integers that do not fit in 64 bits
/// are written as decimal strings.
nlohmann::json rational_json(const Rational& value);
/// Inverse of rational_json; throws ConfigurationError on malformed input.
Rational rational_from_json(const nlohmann::json& node);

nlohmann::json to_json(const SpectralResult& result);
nlohmann::json to_json(const KernelSignature& signature);
nlohmann::json to_json(const NecessaryProfile& profile);
nlohmann::json to_json(const ConditionScan& scan);
nlohmann::json to_json(const AccumulationTable& table);
nlohmann::json to_json(const IntervalUnion& intervals);
nlohmann::json to_json(const TensorSpectrum& spectrum);
nlohmann::json to_json(const Case2Family& family);
nlohmann::json to_json(const Case3Report& report);

/// Exact eigenvalues in the SpectralResult layout with "exact": true.
nlohmann::json oracle_json(const std::vector<ExactEigenvalue>& values, double e_max);

/// Header "side,index,eigenvalue".
std::string spectrum_csv(const SpectralResult& result);
/// Header "k,quadratic_form_u,coupling,margin".
std::string scan_csv(const ConditionScan& scan);
/// Header "side,index,eigenvalue,potential_energy".
std::string profile_csv(const NecessaryProfile& profile);
/// Header "rank,eps,count", one row per (rank, eps).
std::string accumulation_csv(const AccumulationTable& table);
/// Header "component,lo,hi,lo_exact,hi_exact".
std::string intervals_csv(const IntervalUnion& intervals);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace friedrichs
